#include "hflat/stableform.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hflat {

namespace {

using Mat6 = std::array<std::array<double, 6>, 6>;

double top_coefficient(const KFormD& vol) {
  if (vol.degree() != 6) throw std::invalid_argument("volume form must have degree 6");
  const double c = vol.coeff(mask_of({1, 2, 3, 4, 5, 6}));
  if (c == 0.0) throw std::invalid_argument("volume form vanishes");
  return c;
}

// K(e_j) = u with u ⌟ vol = (e_j ⌟ ρ) ∧ ρ.
Mat6 k_operator(const KFormD& rho, double volc) {
  Mat6 K{};
  for (int j = 1; j <= 6; ++j) {
    const KFormD alpha = wedge(interior(j, rho), rho);
    for (int i = 1; i <= 6; ++i) {
      const Mask m = mask_of({1, 2, 3, 4, 5, 6}) & ~(Mask(1) << (i - 1));
      const double sign = (i % 2 == 1) ? 1.0 : -1.0;
      K[i - 1][j - 1] = sign * alpha.coeff(m) / volc;
    }
  }
  return K;
}

double trace_square(const Mat6& K) {
  double t = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) t += K[i][j] * K[j][i];
  return t;
}

}  // namespace

KFormD eta_form(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  auto pair = [&](int a) { return KFormD::basis({a}, c) + KFormD::basis({a + 1}, s); };
  return wedge(wedge(pair(1), pair(3)), pair(5));
}

EtaSplit eta_split() {
  const Rational e(1, 8), t(3, 8);
  KForm even = KForm::basis({1, 3, 5}, Rational(-e)) + KForm::basis({1, 4, 6}, Rational(-t)) +
               KForm::basis({2, 3, 6}, Rational(-t)) + KForm::basis({2, 4, 5}, Rational(-t));
  KForm odd = KForm::basis({2, 3, 5}, e) + KForm::basis({1, 4, 5}, e) + KForm::basis({1, 3, 6}, e) +
              KForm::basis({2, 4, 6}, t);
  return {KForm::basis({1, 3, 5}), even, odd};
}

InvariantFrameForms standard_forms() {
  const double third = 2.0 * std::numbers::pi / 3.0;
  return {sigma_form<Rational>(),
          {eta_form(0.0), eta_form(third), eta_form(-third)},
          gamma_form<Rational>(),
          gamma_hat_form<Rational>()};
}

double hitchin_invariant(const KFormD& rho, const KFormD& vol) {
  if (rho.degree() != 3) throw std::invalid_argument("3-form expected");
  return trace_square(k_operator(rho, top_coefficient(vol))) / 6.0;
}

KFormD hitchin_dual(const KFormD& rho, const KFormD& vol) {
  if (rho.degree() != 3) throw std::invalid_argument("3-form expected");
  const double volc = top_coefficient(vol);
  const Mat6 K = k_operator(rho, volc);
  const double lambda = trace_square(K) / 6.0;
  const double scale = rho.max_abs() * rho.max_abs() / std::fabs(volc);
  if (!(lambda < -1e-14 * scale * scale)) throw std::domain_error("not stable of complex type");
  const double n = std::sqrt(-lambda);
  std::array<KFormD, 6> images;
  for (int a = 0; a < 6; ++a) {
    images[a] = KFormD(1);
    for (int b = 0; b < 6; ++b) images[a].add(Mask(1) << b, -K[a][b] / n);
  }
  return substitute(rho, images);
}

double stable_volume(const KFormD& rho) {
  const KFormD vol = volume_form<double>();
  return 0.5 * wedge(rho, hitchin_dual(rho, vol)).coeff(mask_of({1, 2, 3, 4, 5, 6}));
}

Poly<double> volume_gamma_squared(const BFormD& lambda) {
  const double l1 = lambda[0], l2 = lambda[1], l3 = lambda[2];
  return Poly<double>{{4.0, 12.0 * (l1 - l3), -12.0 * (3.0 * l1 * l3 + 2.0 * l2 * l2 - l3 * l3),
                       -4.0 * (27.0 * l1 * l2 * l2 - 9.0 * l1 * l3 * l3 - 3.0 * l2 * l2 * l3 + l3 * l3 * l3),
                       -3.0 * (27.0 * l1 * l1 * l2 * l2 - 18.0 * l1 * l2 * l2 * l3 + 4.0 * l1 * l3 * l3 * l3 +
                               4.0 * l2 * l2 * l2 * l2 - l2 * l2 * l3 * l3)}};
}

double volume_gamma(double a1, const BFormD& lambda) {
  const double v2 = volume_gamma_squared(lambda)(a1);
  if (v2 < 0.0) throw std::domain_error("degenerate 3-form");
  return std::sqrt(v2);
}

}  // namespace hflat
