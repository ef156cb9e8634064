#pragma once

#include "hflat/rational.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace hflat {

/// Bit i-1 marks the covector e^i.
using Mask = std::uint32_t;

inline Mask mask_of(std::initializer_list<int> idx) {
  Mask m = 0;
  for (int i : idx) m |= Mask(1) << (i - 1);
  return m;
}

inline std::vector<int> indices_of(Mask m) {
  std::vector<int> out;
  for (int i = 0; m != 0; ++i, m >>= 1)
    if (m & 1u) out.push_back(i + 1);
  return out;
}

/// Sign of e^a ∧ e^b relative to the sorted monomial, or 0 on a repeated index.
inline int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  int swaps = 0;
  for (Mask rest = b; rest != 0; rest &= rest - 1) {
    Mask low = rest & (~rest + 1);
    swaps += std::popcount(a & ~(low | (low - 1)));
  }
  return (swaps & 1) ? -1 : 1;
}

/// Homogeneous exterior form of fixed degree on R^N with canonical sorted monomials.
template <class S, int N = 6>
class Form {
 public:
  using Terms = std::map<Mask, S>;

  Form() = default;
  explicit Form(int degree) : degree_(degree) {
    if (degree < 0 || degree > N) throw std::invalid_argument("form degree out of range");
  }

  static Form scalar(const S& c) {
    Form f(0);
    f.add(0, c);
    return f;
  }

  /// Monomial c·e^{i1}∧...∧e^{ik}; indices may come in any order, the sign is absorbed.
  static Form basis(std::initializer_list<int> idx, const S& c = S(1)) {
    Form f(static_cast<int>(idx.size()));
    Mask m = 0;
    int sign = 1;
    for (int i : idx) {
      if (i < 1 || i > N) throw std::invalid_argument("basis index out of range");
      Mask bit = Mask(1) << (i - 1);
      int s = wedge_sign(m, bit);
      if (s == 0) return Form(static_cast<int>(idx.size()));
      sign *= s;
      m |= bit;
    }
    f.add(m, sign > 0 ? c : S(-c));
    return f;
  }

  static Form from_mask(Mask m, const S& c) {
    Form f(std::popcount(m));
    f.add(m, c);
    return f;
  }

  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  S coeff(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? S(0) : it->second;
  }
  S coeff(std::initializer_list<int> idx) const {
    Form b = basis(idx);
    if (b.is_zero()) return S(0);
    auto [m, sign] = *b.terms_.begin();
    return Scalar<S>::is_zero(sign - S(1)) ? coeff(m) : S(-coeff(m));
  }

  void add(Mask m, const S& c) {
    if (std::popcount(m) != degree_) throw std::invalid_argument("monomial degree mismatch");
    if (Scalar<S>::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (Scalar<S>::is_zero(it->second)) terms_.erase(it);
    }
  }

  double max_abs() const {
    double r = 0.0;
    for (const auto& [m, c] : terms_) r = std::max(r, Scalar<S>::magnitude(c));
    return r;
  }

  /// Drops float coefficients below tol (no-op for exact scalars with tol = 0).
  Form pruned(double tol) const {
    Form out(degree_);
    for (const auto& [m, c] : terms_)
      if (Scalar<S>::magnitude(c) > tol) out.terms_.emplace(m, c);
    return out;
  }

  Form& operator+=(const Form& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  Form& operator-=(const Form& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add(m, S(-c));
    return *this;
  }
  Form& operator*=(const S& k) {
    if (Scalar<S>::is_zero(k)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= k;
    return *this;
  }

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator-(Form a) { return a *= S(-1); }
  friend Form operator*(const S& k, Form a) { return a *= k; }
  friend Form operator*(Form a, const S& k) { return a *= k; }

  friend bool operator==(const Form& a, const Form& b) {
    if (a.degree_ != b.degree_ || a.terms_.size() != b.terms_.size()) return false;
    auto ib = b.terms_.begin();
    for (const auto& [m, c] : a.terms_) {
      if (m != ib->first || !Scalar<S>::is_zero(c - ib->second)) return false;
      ++ib;
    }
    return true;
  }

  template <class T>
  Form<T, N> cast() const {
    Form<T, N> out(degree_);
    for (const auto& [m, c] : terms_) out.add(m, convert<T>(c));
    return out;
  }

  /// Same coefficients on R^M with M ≥ N.
  template <int M>
  Form<S, M> embed() const {
    static_assert(M >= N);
    Form<S, M> out(degree_);
    for (const auto& [m, c] : terms_) out.add(m, c);
    return out;
  }

 private:
  template <class T>
  static T convert(const S& c) {
    if constexpr (std::is_same_v<T, S>) {
      return c;
    } else if constexpr (std::is_same_v<T, double>) {
      return Scalar<S>::to_double(c);
    } else {
      return T(c);
    }
  }

  void check_same(const Form& o) const {
    if (o.degree_ != degree_) throw std::invalid_argument("adding forms of different degree");
  }

  int degree_ = 0;
  Terms terms_;
};

template <class S, int N>
Form<S, N> wedge(const Form<S, N>& a, const Form<S, N>& b) {
  if (a.degree() + b.degree() > N) throw std::invalid_argument("wedge degree overflow");
  Form<S, N> out(a.degree() + b.degree());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      S c = ca * cb;
      out.add(ma | mb, s > 0 ? c : S(-c));
    }
  }
  return out;
}

/// Contraction with the vector v = Σ v_i e_i, a graded derivation of degree −1.
template <class S, int N>
Form<S, N> interior(const std::type_identity_t<std::array<S, N>>& v, const Form<S, N>& a) {
  if (a.degree() < 1) throw std::invalid_argument("interior product of a 0-form");
  Form<S, N> out(a.degree() - 1);
  for (const auto& [m, c] : a.terms()) {
    int pos = 0;
    for (int i = 0; i < N; ++i) {
      Mask bit = Mask(1) << i;
      if (!(m & bit)) continue;
      if (!Scalar<S>::is_zero(v[i])) {
        S term = c * v[i];
        out.add(m & ~bit, (pos & 1) ? S(-term) : term);
      }
      ++pos;
    }
  }
  return out;
}

/// Contraction with the basis vector e_i (1-based).
template <class S, int N>
Form<S, N> interior(int i, const Form<S, N>& a) {
  std::array<S, N> v{};
  for (auto& x : v) x = S(0);
  v.at(i - 1) = S(1);
  return interior(v, a);
}

/// Chevalley-Eilenberg differential, given by the 2-forms de^1..de^N.
template <class S, int N = 6>
struct CEOperator {
  std::array<Form<S, N>, N> images;

  CEOperator() {
    for (auto& f : images) f = Form<S, N>(2);
  }
  explicit CEOperator(const std::array<Form<S, N>, N>& im) : images(im) {
    for (const auto& f : images)
      if (f.degree() != 2) throw std::invalid_argument("CE image must be a 2-form");
  }

  const Form<S, N>& operator[](int i) const { return images.at(i - 1); }

  template <class T>
  CEOperator<T, N> cast() const {
    CEOperator<T, N> out;
    for (int i = 0; i < N; ++i) out.images[i] = images[i].template cast<T>();
    return out;
  }

  friend bool operator==(const CEOperator& a, const CEOperator& b) { return a.images == b.images; }
};

/// Extends d to all degrees as an anti-derivation.
template <class S, int N>
Form<S, N> apply_d(const CEOperator<S, N>& d, const Form<S, N>& a) {
  if (a.degree() == N) return Form<S, N>(N);
  Form<S, N> out(a.degree() + 1);
  for (const auto& [m, c] : a.terms()) {
    int pos = 0;
    for (int i = 0; i < N; ++i) {
      Mask bit = Mask(1) << i;
      if (!(m & bit)) continue;
      Mask before = m & (bit - 1);
      Mask after = m & ~(bit | (bit - 1));
      for (const auto& [md, cd] : d.images[i].terms()) {
        int s1 = wedge_sign(before, md);
        if (s1 == 0) continue;
        int s2 = wedge_sign(before | md, after);
        if (s2 == 0) continue;
        int sign = s1 * s2 * ((pos & 1) ? -1 : 1);
        S term = c * cd;
        out.add(before | md | after, sign > 0 ? term : S(-term));
      }
      ++pos;
    }
  }
  return out;
}

/// d(d e^i) for i = 1..N; all vanish iff the Jacobi identity holds.
template <class S, int N>
std::array<Form<S, N>, N> jacobi_residuals(const CEOperator<S, N>& d) {
  std::array<Form<S, N>, N> out;
  for (int i = 0; i < N; ++i) out[i] = apply_d(d, d.images[i]);
  return out;
}

/// Largest |coefficient| of d(d e^i); exactly zero for a Lie algebra in the exact kind.
template <class S, int N>
double d_squared_residual(const CEOperator<S, N>& d) {
  double r = 0.0;
  for (const auto& f : jacobi_residuals(d)) r = std::max(r, f.max_abs());
  return r;
}

template <class S, int N>
bool is_lie(const CEOperator<S, N>& d) {
  for (const auto& f : jacobi_residuals(d))
    if (!f.is_zero()) return false;
  return true;
}

/// Pulls a form back along the substitution e^j ↦ images[j-1] (a 1-form each).
template <class S, int N>
Form<S, N> substitute(const Form<S, N>& a, const std::type_identity_t<std::array<Form<S, N>, N>>& images) {
  Form<S, N> out(a.degree());
  for (const auto& [m, c] : a.terms()) {
    Form<S, N> term = Form<S, N>::scalar(c);
    for (int i : indices_of(m)) term = wedge(term, images[i - 1]);
    out += term;
  }
  return out;
}

/// 1-forms Σ_j M(i,j) e^j for each row i of a dense N×N matrix.
template <class S, int N, class Matrix>
std::array<Form<S, N>, N> coframe_rows(const Matrix& M) {
  std::array<Form<S, N>, N> rows;
  for (int i = 0; i < N; ++i) {
    rows[i] = Form<S, N>(1);
    for (int j = 0; j < N; ++j) rows[i].add(Mask(1) << j, M(i, j));
  }
  return rows;
}

/// The CE operator written in the coframe f^i = Σ_j M(i,j) e^j, given M and its inverse.
template <class S, int N, class Matrix>
CEOperator<S, N> change_coframe(const CEOperator<S, N>& d, const Matrix& M, const Matrix& Minv) {
  auto back = coframe_rows<S, N>(Minv);
  CEOperator<S, N> out;
  for (int i = 0; i < N; ++i) {
    Form<S, N> df(2);
    for (int j = 0; j < N; ++j) {
      S mij = M(i, j);
      if (!Scalar<S>::is_zero(mij)) df += mij * d.images[j];
    }
    out.images[i] = substitute(df, back);
  }
  return out;
}

using KForm = Form<Rational, 6>;
using KFormD = Form<double, 6>;
using CEOp = CEOperator<Rational, 6>;
using CEOpD = CEOperator<double, 6>;

}  // namespace hflat
