#include "doctest.h"
#include "generators.hpp"
#include "hflat/binaryform.hpp"

#include <cmath>

using namespace hflat;

TEST_CASE("act examples") {
  const BForm f{Rational(2), Rational(-1), Rational(3), Rational(5)};
  CHECK(act(GL2::identity(), f) == f);
  const GL2 l = triality_matrix();
  CHECK(act(l, act(l, act(l, f))) == f);
  CHECK(l * l * l == GL2::identity());
}

TEST_CASE("act is a left action") {
  testgen::Gen g(21);
  for (int i = 0; i < 100; ++i) {
    const GL2 a = g.gl2(), b = g.gl2();
    const BForm f = g.bform(g.integer(1, 3));
    CHECK(act(b, act(a, f)) == act(b * a, f));
  }
}

TEST_CASE("act is multiplicative") {
  testgen::Gen g(22);
  for (int i = 0; i < 100; ++i) {
    const GL2 a = g.gl2();
    const BForm x = g.bform(1), y = g.bform(2);
    CHECK(act(a, multiply(x, y)) == multiply(act(a, x), act(a, y)));
  }
}

TEST_CASE("discriminant examples") {
  CHECK(discriminant(BForm{Rational(1), Rational(0), Rational(-1)}) == 4);
  for (const Rational lam : {Rational(1, 3), Rational(2), Rational(-5, 7)})
    for (const Rational s : {Rational(1, 2), Rational(-3), Rational(4, 9)}) {
      CHECK(discriminant(BForm{lam, Rational(0), s, Rational(0)}) == -4 * lam * s * s * s);
      const BForm q = BForm{lam, Rational(0), Rational(0), Rational(0)} + s * BForm{1, 0, 1, 0};
      CHECK(discriminant(q) == -4 * s * s * s * (lam + s));
    }
  CHECK_THROWS_AS(discriminant(BForm{1, 2, 3, 4, 5}), std::invalid_argument);
}

TEST_CASE("discriminant of a cubic with known roots") {
  // Π(u1 − r_i u2) has Δ = Π_{i<j} (r_i − r_j)².
  testgen::Gen g(23);
  for (int i = 0; i < 50; ++i) {
    const Rational r1 = g.rational(), r2 = g.rational(), r3 = g.rational();
    const BForm f = multiply(multiply(BForm{Rational(1), -r1}, BForm{Rational(1), -r2}), BForm{Rational(1), -r3});
    const Rational v = (r1 - r2) * (r1 - r3) * (r2 - r3);
    CHECK(discriminant(f) == v * v);
  }
}

TEST_CASE("discriminant and resultant transform with det") {
  testgen::Gen g(24);
  for (int i = 0; i < 100; ++i) {
    const GL2 a = g.gl2();
    const Rational d = a.det();
    const BForm c = g.bform(3), y = g.bform(2), x = g.bform(1);
    CHECK(discriminant(act(a, c)) == d * d * d * d * d * d * discriminant(c));
    CHECK(discriminant(act(a, y)) == d * d * discriminant(y));
    CHECK(resultant(act(a, x), act(a, y)) == d * d * resultant(x, y));
  }
}

TEST_CASE("resultant examples") {
  CHECK(resultant(BForm{1, 0}, BForm{1, 0, -1}) == -1);
  CHECK(resultant(BForm{1, 0}, BForm{0, 1, 0}) == 0);
  CHECK(resultant(BForm{0, 1}, BForm{1, 0, 0}) == 1);
  // R vanishes exactly when x divides y.
  testgen::Gen g(25);
  for (int i = 0; i < 50; ++i) {
    const BForm x = g.bform(1), z = g.bform(1);
    CHECK(resultant(x, multiply(x, z)) == 0);
  }
}

TEST_CASE("split examples") {
  auto [c1, l1] = split_b1_b2(BForm{1, 0}, BForm{0, 1, 0});
  CHECK(c1 == BForm{0, 1, 0, 0});
  CHECK(l1 == BForm{Rational(-2, 3), Rational(0)});
  auto [c2, l2] = split_b1_b2(BForm{1, 0}, BForm{1, 0, 0});
  CHECK(c2 == BForm{1, 0, 0, 0});
  CHECK(l2.is_zero());
  auto [c3, l3] = split_b1_b2(BForm{0, 1}, BForm{0, 0, 1});
  CHECK(c3 == BForm{0, 0, 0, 1});
  CHECK(l3.is_zero());
}

TEST_CASE("split is equivariant") {
  testgen::Gen g(26);
  for (int i = 0; i < 100; ++i) {
    const GL2 a = g.gl2();
    const BForm x = g.bform(1), y = g.bform(2);
    const auto [c, l] = split_b1_b2(x, y);
    const auto [ca, la] = split_b1_b2(act(a, x), act(a, y));
    CHECK(ca == act(a, c));
    // The linear part is a contraction with the area form, so it picks up det(a).
    CHECK(la == a.det() * act(a, l));
  }
}

TEST_CASE("q_map examples") {
  CHECK(q_map(GL2::identity()) == BForm{Rational(1, 3), Rational(0), Rational(-1), Rational(0)});
  for (double lam : {0.5, 1.0, 2.0})
    for (double s : {0.1, 1.0, 3.0}) {
      const double k = 3.0 * (s + lam);
      const GL2D g{std::cbrt(k), 0.0, 0.0, std::pow(k, -1.0 / 6.0) * std::sqrt(s)};
      CHECK((q_map(g) - BFormD{s + lam, 0.0, -s, 0.0}).max_abs() < 1e-12);
    }
  for (double h : {1.0 / std::sqrt(3.0), -1.0 / std::sqrt(3.0)}) {
    const GL2D g{0.8, -0.3, h * 0.8, h * -0.3};
    CHECK(q_map(g).max_abs() < 1e-15);
  }
}

TEST_CASE("q_map is invariant under Σ3 on the left") {
  testgen::Gen g(27);
  for (int i = 0; i < 50; ++i) {
    const GL2D a = g.gl2_d();
    for (const auto& p : sigma3_elements()) CHECK((q_map(sigma3_element(p) * a) - q_map(a)).max_abs() < 1e-12);
  }
}

TEST_CASE("q_invert") {
  const auto pre = q_invert(BForm{Rational(1, 3), Rational(0), Rational(-1), Rational(0)});
  REQUIRE(pre.size() == 3);
  bool has_identity = false;
  for (const auto& h : pre) has_identity = has_identity || std::fabs(h.x - 1) + std::fabs(h.y) + std::fabs(h.z) + std::fabs(h.w - 1) < 1e-12;
  CHECK(has_identity);
  CHECK_THROWS_AS(q_invert(BFormD{1, 0, 0, 0}), std::domain_error);
  CHECK_THROWS_AS(q_invert(BFormD{1, 0, 1, 0}), std::domain_error);

  testgen::Gen g(28);
  for (int i = 0; i < 100; ++i) {
    GL2D a = g.gl2_d();
    if (a.det() < 0) a = GL2D{a.z, a.w, a.x, a.y};
    const BFormD q = q_map(a);
    const auto hs = q_invert(q);
    REQUIRE(hs.size() == 3);
    bool found = false;
    for (const auto& h : hs) {
      CHECK(h.det() > 0);
      CHECK((q_map(h) - q).max_abs() < 1e-9 * std::max(1.0, q.max_abs()));
      found = found || std::fabs(h.x - a.x) + std::fabs(h.y - a.y) + std::fabs(h.z - a.z) + std::fabs(h.w - a.w) < 1e-8;
    }
    CHECK(found);
  }
}

TEST_CASE("Σ3 representation") {
  CHECK(sigma3_element({1, 2, 3}) == GL2D::identity());
  CHECK(sigma3_element({1, 3, 2}) == GL2D{1, 0, 0, -1});
  const GL2D c = sigma3_element({2, 1, 3}) * sigma3_element({1, 3, 2});
  const GL2D c3 = c * c * c;
  CHECK((std::fabs(c3.x - 1) + std::fabs(c3.y) + std::fabs(c3.z) + std::fabs(c3.w - 1)) < 1e-14);
  // Homomorphism on all pairs.
  auto compose = [](const std::array<int, 3>& a, const std::array<int, 3>& b) {
    return std::array<int, 3>{a[b[0] - 1], a[b[1] - 1], a[b[2] - 1]};
  };
  for (const auto& a : sigma3_elements())
    for (const auto& b : sigma3_elements()) {
      const GL2D lhs = sigma3_element(a) * sigma3_element(b), rhs = sigma3_element(compose(a, b));
      CHECK(std::fabs(lhs.x - rhs.x) + std::fabs(lhs.y - rhs.y) + std::fabs(lhs.z - rhs.z) + std::fabs(lhs.w - rhs.w) < 1e-14);
    }
}

TEST_CASE("real roots with multiplicity") {
  // (t − 1)³(t + 2)
  const auto r = real_roots_with_multiplicity({-2, 5, -3, -1, 1});
  REQUIRE(r.size() == 2);
  CHECK(r[0].first == doctest::Approx(-2.0));
  CHECK(r[0].second == 1);
  CHECK(r[1].first == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r[1].second == 3);
  CHECK(real_roots({1, 0, 1}).empty());
}

TEST_CASE("linear factors reproduce the cubic") {
  testgen::Gen g(29);
  for (int i = 0; i < 100; ++i) {
    const BFormD q = g.bform_d(3);
    const auto f = real_linear_factors(q);
    if (f.linear.size() != 3) continue;
    BFormD prod{f.constant};
    for (const auto& l : f.linear) prod = multiply(prod, BFormD{l[0], l[1]});
    CHECK((prod - q).max_abs() < 1e-9);
  }
}
