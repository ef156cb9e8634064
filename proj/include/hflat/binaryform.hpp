#pragma once

#include "hflat/rational.hpp"

#include <array>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace hflat {

/// Homogeneous polynomial of degree k in u1, u2; coeffs[j] multiplies u1^{k-j} u2^j.
template <class S>
class BinaryForm {
 public:
  BinaryForm() : c_{S(0)} {}
  explicit BinaryForm(int degree) {
    if (degree < 0) throw std::invalid_argument("negative binary form degree");
    c_.assign(static_cast<std::size_t>(degree) + 1, S(0));
  }
  BinaryForm(std::initializer_list<S> coeffs) : c_(coeffs) {
    if (c_.empty()) throw std::invalid_argument("binary form needs coefficients");
  }
  explicit BinaryForm(std::vector<S> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("binary form needs coefficients");
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<S>& coeffs() const { return c_; }
  const S& operator[](int j) const { return c_.at(j); }
  S& operator[](int j) { return c_.at(j); }

  bool is_zero() const {
    for (const auto& v : c_)
      if (!Scalar<S>::is_zero(v)) return false;
    return true;
  }

  double max_abs() const {
    double r = 0.0;
    for (const auto& v : c_) r = std::max(r, Scalar<S>::magnitude(v));
    return r;
  }

  S evaluate(const S& a, const S& b) const {
    S r(0);
    const int k = degree();
    for (int j = 0; j <= k; ++j) {
      S term = c_[j];
      for (int i = 0; i < k - j; ++i) term *= a;
      for (int i = 0; i < j; ++i) term *= b;
      r += term;
    }
    return r;
  }

  /// ∂/∂u1 and ∂/∂u2.
  BinaryForm d1() const {
    const int k = degree();
    if (k == 0) return BinaryForm(0);
    BinaryForm out(k - 1);
    for (int j = 0; j < k; ++j) out.c_[j] = c_[j] * S(k - j);
    return out;
  }
  BinaryForm d2() const {
    const int k = degree();
    if (k == 0) return BinaryForm(0);
    BinaryForm out(k - 1);
    for (int j = 1; j <= k; ++j) out.c_[j - 1] = c_[j] * S(j);
    return out;
  }

  BinaryForm& operator+=(const BinaryForm& o) {
    check(o);
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
    return *this;
  }
  BinaryForm& operator-=(const BinaryForm& o) {
    check(o);
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
    return *this;
  }
  BinaryForm& operator*=(const S& k) {
    for (auto& v : c_) v *= k;
    return *this;
  }
  friend BinaryForm operator+(BinaryForm a, const BinaryForm& b) { return a += b; }
  friend BinaryForm operator-(BinaryForm a, const BinaryForm& b) { return a -= b; }
  friend BinaryForm operator-(BinaryForm a) { return a *= S(-1); }
  friend BinaryForm operator*(const S& k, BinaryForm a) { return a *= k; }
  friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t j = 0; j < a.c_.size(); ++j)
      if (!Scalar<S>::is_zero(a.c_[j] - b.c_[j])) return false;
    return true;
  }

  template <class T>
  BinaryForm<T> cast() const {
    std::vector<T> out;
    out.reserve(c_.size());
    for (const auto& v : c_) {
      if constexpr (std::is_same_v<T, S>)
        out.push_back(v);
      else
        out.push_back(T(Scalar<S>::to_double(v)));
    }
    return BinaryForm<T>(std::move(out));
  }

 private:
  void check(const BinaryForm& o) const {
    if (o.c_.size() != c_.size()) throw std::invalid_argument("binary forms of different degree");
  }
  std::vector<S> c_;
};

/// 2×2 matrix [[x, y], [z, w]].
template <class S>
struct Mat2 {
  S x{1}, y{0}, z{0}, w{1};

  static Mat2 identity() { return Mat2{S(1), S(0), S(0), S(1)}; }
  S det() const { return S(x * w - y * z); }
  Mat2 adjugate() const { return Mat2{w, S(-y), S(-z), x}; }
  Mat2 inverse() const {
    S d = det();
    if (Scalar<S>::is_zero(d)) throw std::domain_error("singular 2x2 matrix");
    return Mat2{S(w / d), S(-y / d), S(-z / d), S(x / d)};
  }
  Mat2 transpose() const { return Mat2{x, z, y, w}; }
  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return Mat2{S(a.x * b.x + a.y * b.z), S(a.x * b.y + a.y * b.w), S(a.z * b.x + a.w * b.z),
                S(a.z * b.y + a.w * b.w)};
  }
  friend bool operator==(const Mat2& a, const Mat2& b) {
    return Scalar<S>::is_zero(a.x - b.x) && Scalar<S>::is_zero(a.y - b.y) &&
           Scalar<S>::is_zero(a.z - b.z) && Scalar<S>::is_zero(a.w - b.w);
  }
  template <class T>
  Mat2<T> cast() const {
    return Mat2<T>{T(Scalar<S>::to_double(x)), T(Scalar<S>::to_double(y)), T(Scalar<S>::to_double(z)),
                   T(Scalar<S>::to_double(w))};
  }
};

using BForm = BinaryForm<Rational>;
using BFormD = BinaryForm<double>;
using GL2 = Mat2<Rational>;
using GL2D = Mat2<double>;

template <class S>
BinaryForm<S> multiply(const BinaryForm<S>& a, const BinaryForm<S>& b) {
  BinaryForm<S> out(a.degree() + b.degree());
  for (int i = 0; i <= a.degree(); ++i)
    for (int j = 0; j <= b.degree(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

/// f(M·u): u1 ↦ M.x u1 + M.y u2, u2 ↦ M.z u1 + M.w u2.
template <class S>
BinaryForm<S> substitute(const BinaryForm<S>& f, const Mat2<S>& M) {
  const int k = f.degree();
  const BinaryForm<S> v1{M.x, M.y};
  const BinaryForm<S> v2{M.z, M.w};
  std::vector<BinaryForm<S>> p1(k + 1), p2(k + 1);
  p1[0] = BinaryForm<S>{S(1)};
  p2[0] = BinaryForm<S>{S(1)};
  for (int i = 1; i <= k; ++i) {
    p1[i] = multiply(p1[i - 1], v1);
    p2[i] = multiply(p2[i - 1], v2);
  }
  BinaryForm<S> out(k);
  for (int j = 0; j <= k; ++j) {
    if (Scalar<S>::is_zero(f[j])) continue;
    out += f[j] * multiply(p1[k - j], p2[j]);
  }
  return out;
}

/// Left action f ↦ f(adj(g)·u); on cubics this is the torsion of the coframe u g^{-1}.
template <class S>
BinaryForm<S> act(const Mat2<S>& g, const BinaryForm<S>& f) {
  return substitute(f, g.adjugate());
}

/// Discriminant of a quadratic (y2² − 4y1y3) or a cubic.
template <class S>
S discriminant(const BinaryForm<S>& f) {
  if (f.degree() == 2) return S(f[1] * f[1] - S(4) * f[0] * f[2]);
  if (f.degree() == 3) {
    const S &q1 = f[0], &q2 = f[1], &q3 = f[2], &q4 = f[3];
    return S(q2 * q2 * q3 * q3 - S(4) * q1 * q3 * q3 * q3 - S(4) * q2 * q2 * q2 * q4 +
             S(18) * q1 * q2 * q3 * q4 - S(27) * q1 * q1 * q4 * q4);
  }
  throw std::invalid_argument("discriminant only for degrees 2 and 3");
}

/// Resultant x2²y1 + y3x1² − y2x2x1 of a linear and a quadratic form.
template <class S>
S resultant(const BinaryForm<S>& x, const BinaryForm<S>& y) {
  if (x.degree() != 1 || y.degree() != 2) throw std::invalid_argument("resultant needs degrees 1 and 2");
  return S(x[1] * x[1] * y[0] + y[2] * x[0] * x[0] - y[1] * x[1] * x[0]);
}

/// B¹⊗B² = B³ ⊕ B¹: the product x·y and the linear remainder.
template <class S>
std::pair<BinaryForm<S>, BinaryForm<S>> split_b1_b2(const BinaryForm<S>& x, const BinaryForm<S>& y) {
  if (x.degree() != 1 || y.degree() != 2) throw std::invalid_argument("split needs degrees 1 and 2");
  const S two_thirds = from_rational<S>(Rational(2, 3));
  BinaryForm<S> lin{S(two_thirds * (S(2) * x[1] * y[0] - x[0] * y[1])),
                    S(two_thirds * (x[1] * y[1] - S(2) * x[0] * y[2]))};
  return {multiply(x, y), lin};
}

/// Antisymmetric SL(2)-invariant pairing of cubics, p1q4 − ⅓p2q3 + ⅓p3q2 − p4q1.
template <class S>
S cubic_pairing(const BinaryForm<S>& p, const BinaryForm<S>& q) {
  const S third = from_rational<S>(Rational(1, 3));
  return S(p[0] * q[3] - third * p[1] * q[2] + third * p[2] * q[1] - p[3] * q[0]);
}

/// Q(g) = ⅓(xu1+yu2)³ − (xu1+yu2)(zu1+wu2)².
template <class S>
BinaryForm<S> q_map(const Mat2<S>& g) {
  const BinaryForm<S> a{g.x, g.y};
  const BinaryForm<S> b{g.z, g.w};
  const S third = from_rational<S>(Rational(1, 3));
  BinaryForm<S> a3 = multiply(multiply(a, a), a);
  return third * a3 - multiply(a, multiply(b, b));
}

/// Preimages of q under Q with det g > 0, ordered by the root of the factor f1.
std::vector<GL2D> q_invert(const BFormD& q);
std::vector<GL2D> q_invert(const BForm& q);

/// Real linear factors a u1 + b u2 of a cubic (unit-normalized, ordered by angle) and
/// the constant c with q = c·Π(a_i u1 + b_i u2); fewer than three when roots are complex.
struct CubicFactors {
  std::vector<std::array<double, 2>> linear;
  double constant = 0.0;
};
CubicFactors real_linear_factors(const BFormD& q);

/// Real roots of a c0 + c1 t + ... polynomial of degree ≤ 4, ascending.
std::vector<double> real_roots(const std::vector<double>& coeffs);
/// Distinct real roots with their multiplicities.
std::vector<std::pair<double, int>> real_roots_with_multiplicity(const std::vector<double>& coeffs);

/// Σ3 → GL(2,R); perm lists the images of 1, 2, 3.
GL2D sigma3_element(const std::array<int, 3>& perm);
std::vector<std::array<int, 3>> sigma3_elements();

/// The order-three matrix [[−½, ½], [−3/2, −½]].
GL2 triality_matrix();

/// Univariate polynomial c0 + c1 s + ..., used for discriminants along lines.
template <class S>
struct Poly {
  std::vector<S> c;

  static Poly constant(const S& v) { return Poly{{v}}; }
  static Poly linear(const S& a, const S& b) { return Poly{{a, b}}; }

  S operator()(const S& s) const {
    S r(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = S(r * s + *it);
    return r;
  }
  Poly derivative() const {
    Poly out;
    for (std::size_t i = 1; i < c.size(); ++i) out.c.push_back(S(c[i] * S(static_cast<long>(i))));
    if (out.c.empty()) out.c.push_back(S(0));
    return out;
  }
  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly out{std::vector<S>(std::max(a.c.size(), b.c.size()), S(0))};
    for (std::size_t i = 0; i < a.c.size(); ++i) out.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) out.c[i] += b.c[i];
    return out;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out{std::vector<S>(a.c.size() + b.c.size() - 1, S(0))};
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
    return out;
  }
  friend Poly operator*(const S& k, Poly a) {
    for (auto& v : a.c) v *= k;
    return a;
  }
};

/// Δ(q0 + s·p) as a quartic polynomial in s.
template <class S>
Poly<S> discriminant_along_line(const BinaryForm<S>& q0, const BinaryForm<S>& p) {
  std::array<Poly<S>, 4> q;
  for (int i = 0; i < 4; ++i) q[i] = Poly<S>::linear(q0[i], p[i]);
  auto m = [](S k) { return Poly<S>::constant(k); };
  return q[1] * q[1] * q[2] * q[2] + m(S(-4)) * q[0] * q[2] * q[2] * q[2] +
         m(S(-4)) * q[1] * q[1] * q[1] * q[3] + m(S(18)) * q[0] * q[1] * q[2] * q[3] +
         m(S(-27)) * q[0] * q[0] * q[3] * q[3];
}

}  // namespace hflat
