#include "doctest.h"
#include "generators.hpp"
#include "hflat/stableform.hpp"

#include <cmath>

using namespace hflat;

namespace {

KForm e(std::initializer_list<int> idx) { return KForm::basis(idx); }

KFormD random_3form(testgen::Gen& g, double scale) {
  KFormD f(3);
  for (int a = 1; a <= 6; ++a)
    for (int b = a + 1; b <= 6; ++b)
      for (int c = b + 1; c <= 6; ++c) f += KFormD::basis({a, b, c}, scale * g.real());
  return f;
}

}  // namespace

TEST_CASE("standard forms expand as expected") {
  const auto F = standard_forms();
  CHECK(F.sigma == e({1, 2}) + e({3, 4}) + e({5, 6}));
  CHECK(F.gamma == e({1, 3, 5}) - e({1, 4, 6}) - e({2, 3, 6}) - e({2, 4, 5}));
  CHECK(F.gamma_hat == e({1, 3, 6}) + e({1, 4, 5}) + e({2, 3, 5}) - e({2, 4, 6}));
  CHECK(F.gamma.coeff({1, 3, 5}) == 1);
  CHECK(F.gamma.coeff({2, 4, 6}) == 0);
  CHECK(F.gamma == gamma_form());
  CHECK(F.gamma_hat == gamma_hat_form());
}

TEST_CASE("γ is the average of the rotated simple forms") {
  const auto F = standard_forms();
  const KFormD avg = (4.0 / 3.0) * (F.eta[0] + F.eta[1] + F.eta[2]);
  CHECK((avg - F.gamma.cast<double>()).max_abs() < 1e-14);
  CHECK((F.eta[0] - eta_form(0.0)).max_abs() < 1e-15);
  CHECK(F.eta[0] == KFormD::basis({1, 3, 5}));
}

TEST_CASE("σ-compatibility and normalization") {
  const auto F = standard_forms();
  CHECK(wedge(F.gamma, F.sigma).is_zero());
  CHECK(wedge(F.gamma_hat, F.sigma).is_zero());
  const KForm s3 = wedge(wedge(F.sigma, F.sigma), F.sigma);
  CHECK(wedge(F.gamma, F.gamma_hat) == Rational(2, 3) * s3);
}

TEST_CASE("dσ decomposition") {
  testgen::Gen g(31);
  const KForm gamma = gamma_form(), gamma_hat = gamma_hat_form();
  for (int i = 0; i < 100; ++i) {
    const BForm l = g.bform(3);
    const KForm expanded = KForm::basis({1, 3, 5}, 3 * l[0]) + l[1] * (e({2, 3, 5}) + e({1, 4, 5}) + e({1, 3, 6})) +
                           l[2] * (e({1, 4, 6}) + e({2, 3, 6}) + e({2, 4, 5})) + KForm::basis({2, 4, 6}, 3 * l[3]);
    CHECK(invariant_3form(l) == expanded);
    const Rational q(3, 4);
    CHECK(expanded == q * (l[0] - l[2]) * gamma + q * (l[1] - l[3]) * gamma_hat + beta_form(l));
    CHECK(invariant_3form_coefficients(expanded) == l);
  }
  CHECK_THROWS_AS(invariant_3form_coefficients(e({1, 2, 3})), std::domain_error);
}

TEST_CASE("Hitchin dual examples") {
  const KFormD vol = volume_form<double>();
  const KFormD gamma = gamma_form<double>(), gamma_hat = gamma_hat_form<double>();
  CHECK(hitchin_invariant(gamma, vol) < 0);
  CHECK((hitchin_dual(gamma, vol) - gamma_hat).max_abs() < 1e-12);
  CHECK((hitchin_dual(gamma_hat, vol) + gamma).max_abs() < 1e-12);
  for (double c : {0.1, 2.0, 7.5}) CHECK((hitchin_dual(c * gamma, vol) - c * gamma_hat).max_abs() < 1e-11 * c);
  CHECK(stable_volume(gamma) == doctest::Approx(2.0));
}

TEST_CASE("non-stable and split forms are rejected") {
  const KFormD vol = volume_form<double>();
  CHECK_THROWS_AS(hitchin_dual(KFormD::basis({1, 3, 5}), vol), std::domain_error);
  const KFormD split = KFormD::basis({1, 2, 3}) + KFormD::basis({4, 5, 6});
  CHECK(hitchin_invariant(split, vol) > 0);
  CHECK_THROWS_AS(hitchin_dual(split, vol), std::domain_error);
}

TEST_CASE("Hitchin dual near γ") {
  testgen::Gen g(32);
  const KFormD vol = volume_form<double>();
  for (int i = 0; i < 100; ++i) {
    const KFormD rho = gamma_form<double>() + random_3form(g, 0.2);
    const KFormD hat = hitchin_dual(rho, vol);
    CHECK((hitchin_dual(hat, vol) + rho).max_abs() < 1e-10);
    // ρ ∧ ρ̂ = 2V(ρ)·vol
    const KFormD top = wedge(rho, hat);
    CHECK(top.coeff({1, 2, 3, 4, 5, 6}) == doctest::Approx(2.0 * stable_volume(rho)));
    CHECK(stable_volume(rho) > 0);
    // Independent of the scale of vol.
    CHECK((hitchin_dual(rho, 3.0 * vol) - hat).max_abs() < 1e-10);
  }
}

TEST_CASE("volume_gamma examples") {
  testgen::Gen g(33);
  for (int i = 0; i < 20; ++i) {
    CHECK(volume_gamma(0.0, g.halfflat_cubic()) == doctest::Approx(2.0));
    CHECK(volume_gamma(g.real(), BFormD{0, 0, 0, 0}) == doctest::Approx(2.0));
  }
}

TEST_CASE("volume_gamma matches the stable volume of γ + a1·dσ") {
  testgen::Gen g(34);
  const KFormD gamma = gamma_form<double>();
  int compared = 0;
  for (int i = 0; i < 100; ++i) {
    const BFormD l = g.halfflat_cubic();
    const double a1 = 0.3 * g.real();
    const KFormD rho = gamma + a1 * invariant_3form(l);
    if (hitchin_invariant(rho, volume_form<double>()) >= 0) continue;
    ++compared;
    CHECK(volume_gamma(a1, l) == doctest::Approx(stable_volume(rho)).epsilon(1e-10));
  }
  CHECK(compared > 50);
}

TEST_CASE("volume_gamma rejects a negative radicand") {
  // λ = u2(u1² + u2²): V² = 4 − 24a1² − 12a1⁴ vanishes at a1² = −1 + 2/√3.
  const BFormD l{0, 1, 0, 1};
  const double root = std::sqrt(-1.0 + 2.0 / std::sqrt(3.0));
  CHECK(volume_gamma_squared(l)(root) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(volume_gamma(0.9 * root, l) > 0);
  CHECK_THROWS_AS(volume_gamma(1.1 * root, l), std::domain_error);
}
