#pragma once

#include "hflat/binaryform.hpp"
#include "hflat/exterior.hpp"

#include <array>

namespace hflat {

/// σ = e¹² + e³⁴ + e⁵⁶.
template <class S = Rational>
Form<S, 6> sigma_form() {
  return Form<S, 6>::basis({1, 2}) + Form<S, 6>::basis({3, 4}) + Form<S, 6>::basis({5, 6});
}

/// Invariant 3-form 3c1 e¹³⁵ + c2(e²³⁵+e¹⁴⁵+e¹³⁶) + c3(e¹⁴⁶+e²³⁶+e²⁴⁵) + 3c4 e²⁴⁶ of a cubic c.
/// Every SO(3)-invariant 3-form has this shape; dσ = Φ(λ) defines the torsion λ.
template <class S>
Form<S, 6> invariant_3form(const BinaryForm<S>& c) {
  if (c.degree() != 3) throw std::invalid_argument("invariant 3-form needs a cubic");
  using F = Form<S, 6>;
  F out(3);
  out += F::basis({1, 3, 5}, S(S(3) * c[0]));
  for (auto idx : {mask_of({2, 3, 5}), mask_of({1, 4, 5}), mask_of({1, 3, 6})}) out.add(idx, c[1]);
  for (auto idx : {mask_of({1, 4, 6}), mask_of({2, 3, 6}), mask_of({2, 4, 5})}) out.add(idx, c[2]);
  out += F::basis({2, 4, 6}, S(S(3) * c[3]));
  return out;
}

/// Inverse of invariant_3form; throws if the 3-form is not invariant.
template <class S>
BinaryForm<S> invariant_3form_coefficients(const Form<S, 6>& rho, double tol = 0.0) {
  if (rho.degree() != 3) throw std::invalid_argument("3-form expected");
  const S third = from_rational<S>(Rational(1, 3));
  BinaryForm<S> c{S(rho.coeff(mask_of({1, 3, 5})) * third), rho.coeff(mask_of({2, 3, 5})),
                  rho.coeff(mask_of({1, 4, 6})), S(rho.coeff(mask_of({2, 4, 6})) * third)};
  if ((rho - invariant_3form(c)).max_abs() > tol) throw std::domain_error("3-form is not SO(3)-invariant");
  return c;
}

/// γ = e¹³⁵ − e¹⁴⁶ − e²³⁶ − e²⁴⁵.
template <class S = Rational>
Form<S, 6> gamma_form() {
  return invariant_3form(BinaryForm<S>{from_rational<S>(Rational(1, 3)), S(0), S(-1), S(0)});
}

/// γ̂ = e¹³⁶ + e¹⁴⁵ + e²³⁵ − e²⁴⁶.
template <class S = Rational>
Form<S, 6> gamma_hat_form() {
  return invariant_3form(BinaryForm<S>{S(0), S(1), S(0), from_rational<S>(Rational(-1, 3))});
}

/// e¹²³⁴⁵⁶.
template <class S = Rational>
Form<S, 6> volume_form() {
  return Form<S, 6>::basis({1, 2, 3, 4, 5, 6});
}

/// η^θ = (cosθ e¹ + sinθ e²)∧(cosθ e³ + sinθ e⁴)∧(cosθ e⁵ + sinθ e⁶).
KFormD eta_form(double theta);

/// Rational parts of η1 = E + √3·O and η2 = E − √3·O; η0 = e¹³⁵.
struct EtaSplit {
  KForm eta0;
  KForm even;
  KForm odd;
};
EtaSplit eta_split();

struct InvariantFrameForms {
  KForm sigma;
  std::array<KFormD, 3> eta;
  KForm gamma;
  KForm gamma_hat;
};
InvariantFrameForms standard_forms();

/// β of the dσ decomposition.
template <class S>
Form<S, 6> beta_form(const BinaryForm<S>& l) {
  using F = Form<S, 6>;
  const S quarter = from_rational<S>(Rational(1, 4));
  F a = F::basis({2, 3, 5}) + F::basis({1, 4, 5}) + F::basis({1, 3, 6}) + F::basis({2, 4, 6}, S(3));
  F b = F::basis({2, 4, 5}) + F::basis({1, 4, 6}) + F::basis({2, 3, 6}) + F::basis({1, 3, 5}, S(3));
  return S(quarter * (l[1] + S(3) * l[3])) * a + S(quarter * (S(3) * l[0] + l[2])) * b;
}

/// Hitchin's quadratic invariant λ(ρ) = tr(K²)/6 relative to the volume form vol.
double hitchin_invariant(const KFormD& rho, const KFormD& vol);

/// ρ̂ with ρ + iρ̂ decomposable, oriented so that γ ↦ γ̂ for vol = e¹²³⁴⁵⁶.
KFormD hitchin_dual(const KFormD& rho, const KFormD& vol);

/// Stable volume ½ ρ∧ρ̂ measured against e¹²³⁴⁵⁶; equals 2 on γ.
double stable_volume(const KFormD& rho);

/// V(γ0 + a1·dσ)² as a quartic in a1 for half-flat λ.
Poly<double> volume_gamma_squared(const BFormD& lambda);

/// Positive root of the quartic above.
double volume_gamma(double a1, const BFormD& lambda);

}  // namespace hflat
