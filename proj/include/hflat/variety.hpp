#pragma once

#include "hflat/binaryform.hpp"
#include "hflat/exterior.hpp"
#include "hflat/linalg.hpp"
#include "hflat/stableform.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hflat {

/// Formal product x·y of a linear and a quadratic binary form.
template <class S>
struct ModelPoint {
  BinaryForm<S> x{S(1), S(0)};
  BinaryForm<S> y{S(1), S(0), S(0)};

  bool is_zero() const { return x.is_zero() || y.is_zero(); }

  template <class T>
  ModelPoint<T> cast() const {
    return {x.template cast<T>(), y.template cast<T>()};
  }
};

using Model = ModelPoint<Rational>;
using ModelD = ModelPoint<double>;

/// (λ, μ) ∈ B³ ⊕ B¹.
template <class S>
struct TorsionData {
  BinaryForm<S> lambda = BinaryForm<S>(3);
  BinaryForm<S> mu = BinaryForm<S>(1);
};

enum class LieAlgebraClass { SO3xSO3, SO3C, SO3semidirectR3, SO3directR3, Nilpotent, Abelian };

std::string to_string(LieAlgebraClass c);
/// Human-readable algebra, e.g. "so(3)+so(3)".
std::string algebra_name(LieAlgebraClass c);

/// Coefficients of de¹ = a e³⁵ + b e⁴⁶ + c(e³⁶+e⁴⁵), de² = q e³⁵ + p e⁴⁶ + r(e³⁶+e⁴⁵) and their cyclic images.
template <class S>
struct CECoefficients {
  S a{0}, b{0}, c{0}, q{0}, p{0}, r{0};
};

template <class S>
CEOperator<S, 6> ce_from_coefficients(const CECoefficients<S>& k) {
  using F = Form<S, 6>;
  CEOperator<S, 6> d;
  const int triples[3][3] = {{1, 3, 5}, {3, 5, 1}, {5, 1, 3}};
  for (const auto& t : triples) {
    const int i = t[0], j = t[1], l = t[2];
    auto block = [&](const S& u, const S& v, const S& w) {
      return F::basis({j, l}, u) + F::basis({j + 1, l + 1}, v) + F::basis({j, l + 1}, w) +
             F::basis({j + 1, l}, w);
    };
    d.images[i - 1] = block(k.a, k.b, k.c);
    d.images[i] = block(k.q, k.p, k.r);
  }
  return d;
}

template <class S>
CECoefficients<S> coefficients_of(const ModelPoint<S>& m) {
  const auto &x = m.x, &y = m.y;
  return {S(x[1] * y[0] - x[0] * y[1]), S(-x[1] * y[2]),           S(-x[0] * y[2]),
          S(x[0] * y[0]),               S(x[1] * y[1] - x[0] * y[2]), S(x[1] * y[0])};
}

template <class S>
CECoefficients<S> coefficients_of(const TorsionData<S>& t) {
  const auto &l = t.lambda, &m = t.mu;
  const S third = from_rational<S>(Rational(1, 3)), half = from_rational<S>(Rational(1, 2));
  return {S(-third * l[1] + m[0]), S(-l[3]),         S(-third * l[2] + half * m[1]),
          S(l[0]),                 S(third * l[2] + m[1]), S(third * l[1] + half * m[0])};
}

/// The Lie algebra attached to a model point.
template <class S>
CEOperator<S, 6> structure_constants(const ModelPoint<S>& m) {
  return ce_from_coefficients(coefficients_of(m));
}

/// κ_{λ,μ} as a map e^i ↦ 2-form; a Lie algebra exactly when membership_rank ≤ 1.
template <class S>
CEOperator<S, 6> kappa(const TorsionData<S>& t) {
  return ce_from_coefficients(coefficients_of(t));
}

template <class S>
BinaryForm<S> torsion_of(const ModelPoint<S>& m) {
  return multiply(m.x, m.y);
}

template <class S>
TorsionData<S> split(const ModelPoint<S>& m) {
  auto [cubic, lin] = split_b1_b2(m.x, m.y);
  return {cubic, lin};
}

/// GL(2) acting by substitution on both factors.
template <class S>
ModelPoint<S> act(const Mat2<S>& g, const ModelPoint<S>& m) {
  return {act(g, m.x), act(g, m.y)};
}

template <class S>
Matrix<S> q_matrix(const TorsionData<S>& t) {
  const auto k = coefficients_of(t);
  Matrix<S> Q(2, 3);
  Q(0, 0) = S(k.a - k.r);
  Q(0, 1) = k.c;
  Q(0, 2) = k.q;
  Q(1, 0) = S(k.c - k.p);
  Q(1, 1) = k.b;
  Q(1, 2) = k.r;
  return Q;
}

template <class S>
int membership_rank(const TorsionData<S>& t, double tol = 1e-12) {
  return rank(q_matrix(t), tol);
}

/// Reads λ off dσ = Φ(λ) and checks the remaining invariant-form differentials against λ.
/// Throws std::domain_error("not-invariant-torsion") when the coframe has no invariant torsion.
template <class S>
BinaryForm<S> torsion_from_coframe(const CEOperator<S, 6>& d, double tol = 0.0) {
  using F = Form<S, 6>;
  const F sigma = sigma_form<S>();
  const F s2 = wedge(sigma, sigma);
  BinaryForm<S> lambda;
  try {
    lambda = invariant_3form_coefficients(apply_d(d, sigma), tol);
  } catch (const std::domain_error&) {
    throw std::domain_error("not-invariant-torsion");
  }
  auto R = [](long n, long m) { return from_rational<S>(Rational(n, m)); };
  const EtaSplit eta = eta_split();
  const F even = eta.even.cast<S>(), odd = eta.odd.cast<S>(), eta0 = eta.eta0.cast<S>();
  const std::pair<F, F> checks[] = {
      {apply_d(d, eta0), S(R(-1, 2) * lambda[3]) * s2},
      {apply_d(d, even), S(R(1, 16) * (S(3) * lambda[1] + lambda[3])) * s2},
      {apply_d(d, odd), S(R(1, 16) * (S(3) * lambda[0] + lambda[2])) * s2},
      {apply_d(d, gamma_hat_form<S>()), S(R(1, 2) * (lambda[2] - lambda[0])) * s2},
  };
  for (const auto& [lhs, rhs] : checks)
    if ((lhs - rhs).max_abs() > tol) throw std::domain_error("not-invariant-torsion");
  return lambda;
}

/// SU(3) torsion components W1+, W1−, W3.
template <class S>
struct SU3Components {
  S w1_plus, w1_minus;
  Form<S, 6> w3;
};

template <class S>
SU3Components<S> su3_components(const BinaryForm<S>& l) {
  const S half = from_rational<S>(Rational(1, 2));
  return {S(half * (l[1] - l[3])), S(half * (l[2] - l[0])), beta_form(l)};
}

/// Totally skew torsion 3-form of the adjusted canonical connection.
template <class S>
Form<S, 6> skew_torsion_3form(const BinaryForm<S>& l) {
  using F = Form<S, 6>;
  const S half = from_rational<S>(Rational(1, 2));
  F a = F::basis({2, 3, 5}) + F::basis({1, 4, 5}) + F::basis({1, 3, 6});
  F b = F::basis({1, 4, 6}) + F::basis({2, 3, 6}) + F::basis({2, 4, 5});
  return S(half * l[0]) * a + F::basis({2, 4, 6}, S(half * (S(2) * l[0] + l[2]))) -
         F::basis({1, 3, 5}, S(half * (l[1] + S(2) * l[3]))) - S(half * l[3]) * b;
}

/// Element Σ_a e^a ⊗ ω_a of T*⊗Λ²T*.
template <class S>
using TwoFormValued = std::array<Form<S, 6>, 6>;

/// τ_λ ∈ T*⊗so(3)^⊥.
template <class S>
TwoFormValued<S> tau_lambda(const BinaryForm<S>& l) {
  using F = Form<S, 6>;
  TwoFormValued<S> tau;
  for (auto& w : tau) w = F(2);
  const S q = from_rational<S>(Rational(1, 4)), h = from_rational<S>(Rational(1, 2));
  const S c13 = S(q * (l[0] + l[2])), c4 = S(-h * l[3]), c24 = S(q * (l[1] + l[3])), c1 = S(h * l[0]);
  // Each block is e^{a}⊗(e^{..} ± e^{..}) over the three cyclic pairs.
  auto put = [&](int a, std::initializer_list<int> i1, std::initializer_list<int> i2, const S& c, int s2) {
    tau[a - 1] += F::basis(i1, c) + F::basis(i2, s2 > 0 ? c : S(-c));
  };
  put(2, {4, 6}, {3, 5}, c13, -1);
  put(4, {2, 6}, {1, 5}, S(-c13), -1);
  put(6, {2, 4}, {1, 3}, c13, -1);
  put(2, {4, 5}, {3, 6}, c4, 1);
  put(4, {2, 5}, {1, 6}, S(-c4), 1);
  put(6, {1, 4}, {2, 3}, c4, 1);
  put(1, {4, 6}, {3, 5}, c24, -1);
  put(3, {2, 6}, {1, 5}, S(-c24), -1);
  put(5, {2, 4}, {1, 3}, c24, -1);
  put(1, {4, 5}, {3, 6}, c1, 1);
  put(3, {2, 5}, {1, 6}, S(-c1), 1);
  put(5, {1, 4}, {2, 3}, c1, 1);
  return tau;
}

/// Alternation T*⊗Λ²T* → Λ²T*⊗T: the image of e^k is −Σ_a e^a ∧ (e_k ⌟ ω_a).
/// With this sign κ(λ, 0) = ∂τ_λ modulo ∂(T*⊗so(3)).
template <class S>
CEOperator<S, 6> alternation(const TwoFormValued<S>& tau) {
  CEOperator<S, 6> out;
  for (int k = 1; k <= 6; ++k)
    for (int a = 1; a <= 6; ++a)
      if (!tau[a - 1].is_zero()) out.images[k - 1] -= wedge(Form<S, 6>::basis({a}), interior(k, tau[a - 1]));
  return out;
}

/// e¹³+e²⁴, e³⁵+e⁴⁶, e¹⁵+e²⁶.
template <class S>
std::array<Form<S, 6>, 3> so3_basis() {
  using F = Form<S, 6>;
  return {F::basis({1, 3}) + F::basis({2, 4}), F::basis({3, 5}) + F::basis({4, 6}),
          F::basis({1, 5}) + F::basis({2, 6})};
}

/// Flattens a CE-shaped element into the 90 coordinates of Λ²T*⊗T.
template <class S>
std::vector<S> flatten(const CEOperator<S, 6>& d) {
  std::vector<S> v;
  v.reserve(90);
  for (int k = 0; k < 6; ++k)
    for (int i = 1; i <= 6; ++i)
      for (int j = i + 1; j <= 6; ++j) v.push_back(d.images[k].coeff(mask_of({i, j})));
  return v;
}

/// The 18 generators ∂(e^a ⊗ s_b) of ∂(T*⊗so(3)).
template <class S>
std::vector<CEOperator<S, 6>> so3_alternation_span() {
  std::vector<CEOperator<S, 6>> out;
  const auto basis = so3_basis<S>();
  for (int a = 1; a <= 6; ++a)
    for (const auto& s : basis) {
      TwoFormValued<S> t;
      for (auto& w : t) w = Form<S, 6>(2);
      t[a - 1] = s;
      out.push_back(alternation(t));
    }
  return out;
}

/// True when v lies in the span of the generators.
template <class S>
bool in_span(const std::vector<CEOperator<S, 6>>& gens, const CEOperator<S, 6>& v, double tol = 1e-10) {
  const int n = static_cast<int>(gens.size());
  Matrix<S> A(90, n);
  for (int j = 0; j < n; ++j) {
    auto col = flatten(gens[j]);
    for (int i = 0; i < 90; ++i) A(i, j) = col[i];
  }
  return solve(A, flatten(v), tol).has_value();
}

/// p(τ) ∈ T*⊗so(3) with τ + p(τ) totally skew, returned as the 3-form of the sum; nullopt if none exists.
template <class S>
std::optional<Form<S, 6>> skew_completion(const TwoFormValued<S>& tau, double tol = 1e-10) {
  const auto basis = so3_basis<S>();
  // Unknowns x_{a,b}: coefficient of e^a ⊗ s_b. Equations: T_{a,ij} + T_{i,aj} = 0 for all a, i < j ... expressed
  // as T_{a,ij} = T_{i,ja} = T_{j,ai} and vanishing when indices repeat.
  auto entry = [&](const Form<S, 6>& w, int i, int j) {
    if (i == j) return S(0);
    return i < j ? w.coeff(mask_of({i, j})) : S(-w.coeff(mask_of({j, i})));
  };
  std::vector<std::vector<S>> rows;
  std::vector<S> rhs;
  auto add_equation = [&](int a1, int i1, int j1, int a2, int i2, int j2) {
    // T_{a1,i1j1} − T_{a2,i2j2} = 0 with T = τ + Σ x_{ab} e^a⊗s_b.
    std::vector<S> row(18, S(0));
    for (int b = 0; b < 3; ++b) {
      row[(a1 - 1) * 3 + b] += entry(basis[b], i1, j1);
      row[(a2 - 1) * 3 + b] -= entry(basis[b], i2, j2);
    }
    rows.push_back(row);
    rhs.push_back(S(entry(tau[a2 - 1], i2, j2) - entry(tau[a1 - 1], i1, j1)));
  };
  for (int a = 1; a <= 6; ++a)
    for (int i = 1; i <= 6; ++i)
      for (int j = i + 1; j <= 6; ++j) {
        if (a == i || a == j) {
          // T_{a,aj} must vanish.
          std::vector<S> row(18, S(0));
          for (int b = 0; b < 3; ++b) row[(a - 1) * 3 + b] = entry(basis[b], i, j);
          rows.push_back(row);
          rhs.push_back(S(-entry(tau[a - 1], i, j)));
        } else {
          add_equation(a, i, j, i, j, a);
        }
      }
  Matrix<S> A(static_cast<int>(rows.size()), 18);
  for (int r = 0; r < A.rows(); ++r)
    for (int c = 0; c < 18; ++c) A(r, c) = rows[r][c];
  auto sol = solve(A, rhs, tol);
  if (!sol) return std::nullopt;
  Form<S, 6> out(3);
  for (int a = 1; a <= 6; ++a) {
    Form<S, 6> w = tau[a - 1];
    for (int b = 0; b < 3; ++b) w += (*sol)[(a - 1) * 3 + b] * basis[b];
    for (int i = a + 1; i <= 6; ++i)
      for (int j = i + 1; j <= 6; ++j) out.add(mask_of({a, i, j}), entry(w, i, j));
  }
  return out;
}

/// Structure constants c^k_{ij} with [e_i, e_j] = Σ c^k_{ij} e_k, from de^k = −Σ_{i<j} c^k_{ij} e^{ij}.
template <class S>
std::array<std::array<std::array<S, 6>, 6>, 6> bracket_constants(const CEOperator<S, 6>& d) {
  std::array<std::array<std::array<S, 6>, 6>, 6> c;
  for (auto& plane : c)
    for (auto& row : plane) row.fill(S(0));
  for (int k = 0; k < 6; ++k)
    for (const auto& [m, v] : d.images[k].terms()) {
      auto idx = indices_of(m);
      const int i = idx[0] - 1, j = idx[1] - 1;
      c[k][i][j] = S(-v);
      c[k][j][i] = v;
    }
  return c;
}

/// B(e_i, e_j) = tr(ad_{e_i} ad_{e_j}).
template <class S>
Matrix<S> killing_form(const CEOperator<S, 6>& d, double tol = 0.0) {
  if (d_squared_residual(d) > tol) throw std::domain_error("not a Lie algebra");
  const auto c = bracket_constants(d);
  Matrix<S> B(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      S acc(0);
      for (int k = 0; k < 6; ++k)
        for (int l = 0; l < 6; ++l) acc += c[k][i][l] * c[l][j][k];
      B(i, j) = acc;
    }
  return B;
}

/// Dimensions read off the brackets: center, derived algebra, lower central series.
struct LieInvariants {
  int center_dim = 0;
  int derived_dim = 0;
  bool nilpotent = false;
  std::vector<int> lower_central;
  Inertia killing;
};

template <class S>
LieInvariants lie_invariants(const CEOperator<S, 6>& d, double tol = 1e-12) {
  const auto c = bracket_constants(d);
  LieInvariants out;
  Matrix<S> ad(36, 6);
  for (int k = 0; k < 6; ++k)
    for (int l = 0; l < 6; ++l)
      for (int i = 0; i < 6; ++i) ad(k * 6 + l, i) = c[k][i][l];
  out.center_dim = 6 - rank(ad, tol);

  // Lower central series g, [g,g], [g,[g,g]], ... as row spans.
  Matrix<S> span = Matrix<S>::identity(6);
  out.lower_central.push_back(6);
  for (int step = 0; step < 6; ++step) {
    Matrix<S> next(6 * span.rows(), 6);
    for (int i = 0; i < 6; ++i)
      for (int r = 0; r < span.rows(); ++r)
        for (int k = 0; k < 6; ++k) {
          S acc(0);
          for (int l = 0; l < 6; ++l) acc += c[k][i][l] * span(r, l);
          next(i * span.rows() + r, k) = acc;
        }
    auto piv = row_reduce(next, tol);
    const int dim = static_cast<int>(piv.size());
    Matrix<S> basis(std::max(dim, 1), 6);
    for (int r = 0; r < dim; ++r)
      for (int k = 0; k < 6; ++k) basis(r, k) = next(r, k);
    if (step == 0) out.derived_dim = dim;
    if (dim == out.lower_central.back()) break;
    out.lower_central.push_back(dim);
    if (dim == 0) break;
    span = basis;
  }
  out.nilpotent = out.lower_central.back() == 0;
  out.killing = inertia(killing_form(d, tol), tol);
  return out;
}

/// Class read off the intrinsic invariants of the bracket.
template <class S>
LieAlgebraClass classify_by_invariants(const CEOperator<S, 6>& d, double tol = 1e-12) {
  const auto inv = lie_invariants(d, tol);
  if (inv.derived_dim == 0) return LieAlgebraClass::Abelian;
  if (inv.nilpotent) return LieAlgebraClass::Nilpotent;
  if (inv.center_dim == 3 && inv.derived_dim == 3) return LieAlgebraClass::SO3directR3;
  if (inv.killing.zero == 0) {
    if (inv.killing.negative == 6) return LieAlgebraClass::SO3xSO3;
    if (inv.killing.negative == 3 && inv.killing.positive == 3) return LieAlgebraClass::SO3C;
  }
  if (inv.derived_dim == 6) return LieAlgebraClass::SO3semidirectR3;
  throw std::domain_error("algebra outside the five invariant-torsion classes");
}

/// Δ(y) and R(x, y) with the resulting class.
struct ClassifyReport {
  LieAlgebraClass cls;
  double delta;
  double resultant;
  bool snapped = false;
};

LieAlgebraClass classify(const Model& m);
/// Float input: Δ and R within tol·scale of zero are treated as zero and flagged.
ClassifyReport classify(const ModelD& m, double tol = 1e-12);

/// Projective equality of model points (both factors up to nonzero scale).
template <class S>
bool projectively_equal(const BinaryForm<S>& a, const BinaryForm<S>& b, double tol = 0.0) {
  if (a.degree() != b.degree()) return false;
  for (int i = 0; i <= a.degree(); ++i)
    for (int j = i + 1; j <= a.degree(); ++j)
      if (Scalar<S>::magnitude(S(a[i] * b[j] - a[j] * b[i])) > tol) return false;
  return !a.is_zero() && !b.is_zero();
}

/// The five orbit representatives u1·(u1²−u2²), u1·u2², u1·u1², u1·u1u2, u1·(u1²+u2²) with their classes.
std::vector<std::pair<Model, LieAlgebraClass>> table_representatives();

}  // namespace hflat
