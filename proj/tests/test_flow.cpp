#include "doctest.h"
#include "generators.hpp"
#include "hflat/flow.hpp"

#include <Eigen/Dense>

#include <cmath>

using namespace hflat;

namespace {

const BFormD kQI{1.0 / 3.0, 0.0, -1.0, 0.0};

double frame_gap(const GL2D& a, const GL2D& b) {
  return std::fabs(a.x - b.x) + std::fabs(a.y - b.y) + std::fabs(a.z - b.z) + std::fabs(a.w - b.w);
}

}  // namespace

TEST_CASE("half-flat condition examples") {
  testgen::Gen g(61);
  for (int i = 0; i < 50; ++i) {
    const BForm p{g.rational(), g.rational(), g.rational(), Rational(0)};
    BForm hf = p;
    hf[3] = hf[1];
    CHECK(sgn(halfflat_condition(hf, GL2::identity())) == 0);
    CHECK(halfflat_condition(p, GL2::identity()) == p[1] - p[3]);
  }
  CHECK(sgn(halfflat_condition(BForm{1, 0, 0, 0}, GL2::identity())) == 0);
}

TEST_CASE("half-flat condition on row-proportional frames") {
  // With (z, w) = h(x, y) the condition is (1 − 3h²)·p(y, −x).
  testgen::Gen g(62);
  for (int i = 0; i < 50; ++i) {
    const BFormD p = g.bform_d(3);
    const double x = g.real(), y = g.real();
    for (double h : {1 / std::sqrt(3.0), -1 / std::sqrt(3.0)})
      CHECK(std::fabs(halfflat_condition(p, GL2D{x, y, h * x, h * y})) < 1e-14);
    const double h = 0.3;
    CHECK(halfflat_condition(p, GL2D{x, y, h * x, h * y}) ==
          doctest::Approx((1 - 3 * h * h) * p.evaluate(y, -x)).epsilon(1e-12));
  }
}

TEST_CASE("Hermitian condition examples") {
  CHECK(sgn(hermitian_condition(BForm{1, 0, 1, 0}, GL2::identity())) == 0);
  CHECK(hermitian_condition(BForm{1, 0, 0, 0}, GL2::identity()) == 1);
  CHECK(sgn(hermitian_condition(BForm(3), GL2::identity())) == 0);
}

TEST_CASE("frame-change torsion is the action") {
  testgen::Gen g(63);
  for (int i = 0; i < 100; ++i) {
    const BForm l = g.bform(3);
    const GL2 a = g.gl2(), b = g.gl2();
    CHECK(frame_change_torsion(l, GL2::identity()) == l);
    CHECK(frame_change_torsion(l, a) == act(a, l));
    CHECK(frame_change_torsion(frame_change_torsion(l, a), b) == frame_change_torsion(l, b * a));
  }
}

TEST_CASE("static flow") {
  const FlowState st = initial_state(BFormD{0, 0, 0, 0}, kQI);
  const auto r = advance(st, 0.5);
  CHECK((r.state.q - kQI).max_abs() == 0.0);
  CHECK(r.state.t == doctest::Approx(0.5 / st.detg));
  CHECK_FALSE(r.hit_boundary);
  const auto tr = integrate_line(BFormD{0, 0, 0, 0}, kQI, 0.25, 1.0);
  CHECK(tr.static_solution);
  for (const auto& s : tr.samples) CHECK((s.q - kQI).max_abs() == 0.0);
}

TEST_CASE("detg⁶ = ¾Δ and the clock along trajectories") {
  testgen::Gen g(64);
  for (int i = 0; i < 20; ++i) {
    const BFormD p = g.halfflat_cubic();
    const auto tr = integrate_line(p, kQI, 0.05, 1.0);
    for (const auto& s : tr.samples) {
      CHECK(std::pow(s.detg, 6) == doctest::Approx(0.75 * discriminant(s.q)).epsilon(1e-10));
      CHECK((s.q - (kQI + s.s * p)).max_abs() < 1e-12);
      if (discriminant(s.q) > 1e-6) CHECK(line_parameter_at(p, kQI, s.t) == doctest::Approx(s.s).epsilon(1e-9));
    }
    for (std::size_t k = 1; k < tr.samples.size(); ++k) CHECK(tr.samples[k].t > tr.samples[k - 1].t);
  }
}

TEST_CASE("clock integral is additive") {
  testgen::Gen g(65);
  for (int i = 0; i < 30; ++i) {
    const BFormD p = g.halfflat_cubic();
    const LineInterval I = flow_interval(p, kQI);
    const double hi = I.bounded_above ? 0.9 * I.s_plus : 1.0;
    const double mid = 0.37 * hi;
    CHECK(clock_integral(kQI, p, 0, hi) ==
          doctest::Approx(clock_integral(kQI, p, 0, mid) + clock_integral(kQI, p, mid, hi)).epsilon(1e-11));
  }
}

TEST_CASE("frame along the line covers q") {
  testgen::Gen g(66);
  for (int i = 0; i < 20; ++i) {
    const BFormD p = g.halfflat_cubic();
    const LineInterval I = flow_interval(p, kQI);
    const double s = 0.5 * (I.bounded_above ? I.s_plus : 1.0);
    const GL2D gs = frame_along_line(p, kQI, s, GL2D::identity());
    CHECK((q_map(gs) - (kQI + s * p)).max_abs() < 1e-9);
    CHECK(gs.det() > 0);
  }
}

TEST_CASE("direct oracle agrees with the closed-form line") {
  const ModelD m{BFormD{0.8, 0.3}, BFormD{-0.2, 0.3 * 0.7 / 0.8, 0.5}};
  const BFormD p = torsion_from_coframe(structure_constants(m), 1e-12);
  REQUIRE(std::fabs(p[1] - p[3]) < 1e-14);
  const auto orc = direct_ode_oracle(m, GL2D::identity(), {-0.2, -0.1, 0.1, 0.3});
  REQUIRE_FALSE(orc.terminated);
  for (const auto& s : orc.samples) {
    const double sp = line_parameter_at(p, kQI, s.t);
    CHECK((s.q - (kQI + sp * p)).max_abs() < 1e-8);
    CHECK(s.c * s.c * s.c == doctest::Approx(0.75 * discriminant(s.q)).epsilon(1e-10));
  }
}

TEST_CASE("direct oracle with zero torsion is constant") {
  const ModelD flat{BFormD{0, 0}, BFormD{1, 0, 0}};
  const auto orc = direct_ode_oracle(flat, GL2D::identity(), {0.5, 1.0, 2.0});
  for (const auto& s : orc.samples) {
    CHECK((s.q - kQI).max_abs() < 1e-12);
    CHECK(s.c == doctest::Approx(1.0));
  }
}

TEST_CASE("endpoint examples") {
  for (double lam : {-1.0, 0.5, 2.0}) {
    const auto e1 = endpoint_classify(BFormD{1, 0, 1, 0}, BFormD{lam, 0, 0, 0});
    CHECK(e1.kind == EndpointKind::TripleRootDividingP);
    REQUIRE(e1.root);
    CHECK(std::fabs((*e1.root)[1]) < 1e-9);
    CHECK(e1.lambda_coefficient * std::pow((*e1.root)[0], 3) == doctest::Approx(lam));

    const auto e3 = endpoint_classify(BFormD{1, 0, -1, 0}, lam * BFormD{1, 3, 3, 1});
    REQUIRE(e3.root);
    CHECK((*e3.root)[0] == doctest::Approx((*e3.root)[1]));
    CHECK(e3.lambda_coefficient == doctest::Approx(lam * std::pow(2.0, 1.5)));
  }
  CHECK_THROWS_AS(endpoint_classify(BFormD{0, 0, 1, 0}, BFormD{0, 0, 0, 2}), std::domain_error);
  CHECK_THROWS_AS(endpoint_classify(BFormD{1, 0, 0, 0}, BFormD{2, 0, 0, 0}), std::domain_error);
  CHECK_THROWS_AS(endpoint_classify(BForm{1, 0, 1, 0}, BForm(3)), std::domain_error);
  CHECK(endpoint_classify(BFormD{1, 0, -1, 0}, BFormD{0, 0, 0, 0}).kind == EndpointKind::ZeroCubic);
}

TEST_CASE("a double root is not an endpoint") {
  // u1²(u1 + u2) has Δ = 0 without a triple root.
  try {
    endpoint_classify(BFormD{1, 0, -1, 0}, BFormD{1, 1, 0, 0});
    FAIL("accepted a double root");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("invalid endpoint") != std::string::npos);
  }
}

TEST_CASE("endpoint classification is equivariant") {
  testgen::Gen g(67);
  for (int i = 0; i < 50; ++i) {
    const GL2D a = g.gl2_d();
    const BFormD p{1, 0, -1, 0}, q{2, 0, 0, 0};
    const auto e = endpoint_classify(act(a, p), act(a, q), 1e-9);
    CHECK(e.kind == EndpointKind::TripleRootDividingP);
  }
}

TEST_CASE("flow interval of the Bryant-Salamon line") {
  const auto I = flow_interval(BFormD{1, 0, -1, 0}, BFormD{1, 0, 0, 0});
  CHECK(I.bounded_below);
  CHECK(I.s_minus == 0.0);
  CHECK_FALSE(I.bounded_above);
  const auto tr = integrate_line(BFormD{1, 0, -1, 0}, BFormD{1, 0, 0, 0}, 0.5, 10.0);
  CHECK(tr.lower.finite);
  CHECK(tr.lower.t_finite);
  REQUIRE(tr.lower.endpoint);
  CHECK(tr.lower.g_extends);
  CHECK_FALSE(tr.upper.finite);
  CHECK_FALSE(tr.upper.t_finite);
}

TEST_CASE("rejected boundaries are reported") {
  // Line through q0 with p = u1³ reaches Δ = 0 at a cubic with a double root.
  const auto tr = integrate_line(BFormD{1, 0, 0, 0}, kQI, 0.1, 5.0);
  const bool some_end = tr.lower.finite || tr.upper.finite;
  REQUIRE(some_end);
  const auto& b = tr.lower.finite ? tr.lower : tr.upper;
  CHECK_FALSE(b.endpoint.has_value());
  CHECK_FALSE(b.rejection.empty());
}

TEST_CASE("no complete half-flat line") {
  const auto w1 = no_complete_line_witness(BFormD{1, 0, 0, 0});
  CHECK(discriminant(kQI + w1.s * BFormD{1, 0, 0, 0}) <= 1e-12);
  const auto w2 = no_complete_line_witness(BFormD{1, 0, 1, 0});
  CHECK(w2.leading_coefficient < 0);
  const auto w3 = no_complete_line_witness(BFormD{1, 0, -1, 0});
  CHECK_FALSE(w3.real_roots.empty());
  CHECK_THROWS_AS(no_complete_line_witness(BFormD{0, 1, 0, 0}), std::invalid_argument);
  testgen::Gen g(68);
  for (int i = 0; i < 100; ++i) {
    const BFormD p = g.halfflat_cubic();
    const auto w = no_complete_line_witness(p);
    CHECK(discriminant(kQI + w.s * p) <= 1e-9);
  }
}

TEST_CASE("contraction field") {
  CHECK(contraction_field(1.0, 0.0, 0.0, BFormD{1, 2, 3, 4}) == BFormD{3, 2, -3, -12});
  CHECK(contraction_field(0.3, -1.0, 2.0, BFormD{0, 0, 0, 0}).is_zero());
}

TEST_CASE("contraction field is the derivative of the action") {
  testgen::Gen g(69);
  for (int i = 0; i < 30; ++i) {
    const double a = g.real(), b = g.real(), c = g.real(), eps = 1e-6;
    const BFormD l = g.bform_d(3);
    // exp(−εAᵀ) to second order.
    const GL2D At{a, c, b, -a};
    auto expm = [&](double e) {
      const GL2D A2 = At * At;
      return GL2D{1 - e * At.x + 0.5 * e * e * A2.x, -e * At.y + 0.5 * e * e * A2.y, -e * At.z + 0.5 * e * e * A2.z,
                  1 - e * At.w + 0.5 * e * e * A2.w};
    };
    const BFormD fd = (1.0 / (2 * eps)) * (act(expm(eps), l) - act(expm(-eps), l));
    CHECK((fd - contraction_field(a, b, c, l)).max_abs() < 1e-8);
  }
}

TEST_CASE("contraction planes") {
  const auto planes = halfflat_contraction_planes();
  REQUIRE(planes.size() == 3);
  CHECK(planes[0].generator == std::array<int, 3>{1, 0, 0});
  CHECK(planes[1].generator == std::array<int, 3>{0, 1, 3});
  CHECK(planes[2].generator == std::array<int, 3>{0, 1, -1});
  CHECK(planes[0].contains(BFormD{1, 0, -1, 0}));
  CHECK(planes[1].contains(BFormD{1, 1, 9, 1}));
  CHECK(planes[2].contains(BFormD{1, 1, 1, 1}));
  testgen::Gen g(70);
  for (const auto& pl : planes) {
    Eigen::Matrix<double, 2, 4> E;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 4; ++c) E(r, c) = pl.equations[r][c];
    const Eigen::MatrixXd K = E.fullPivLu().kernel();
    REQUIRE(K.cols() == 2);
    const auto [a, b, c] = pl.generator;
    for (int i = 0; i < 20; ++i) {
      const Eigen::Vector4d v = g.real() * K.col(0) + g.real() * K.col(1);
      const BFormD l{v[0], v[1], v[2], v[3]};
      CHECK(pl.contains(l, 1e-12));
      CHECK(std::fabs(l[1] - l[3]) < 1e-12);
      CHECK(pl.contains(contraction_field<double>(a, b, c, l), 1e-12));
      CHECK(std::fabs(tangency_residual(a, b, c, l)) < 1e-12);
    }
    CHECK(halfflat_invariant_dimension(a, b, c) >= 2);
  }
  CHECK(flow_preserves_plane(planes[0], BFormD{1, 0, -1, 0}, 0.2));
  CHECK_FALSE(flow_preserves_plane(planes[1], BFormD{1, 1, 9, 1}, 0.02, 1));
  CHECK_FALSE(flow_preserves_plane(planes[2], BFormD{1, 1, 1, 1}, 0.02, 1));
}

TEST_CASE("Hamiltonian examples") {
  testgen::Gen g(71);
  for (int i = 0; i < 20; ++i) CHECK(hamiltonian(0, 0, g.halfflat_cubic()) == doctest::Approx(0.0).epsilon(1e-14));
  const BFormD zero{0, 0, 0, 0};
  for (double a2 : {0.0, 0.5, 2.0}) {
    CHECK(hamiltonian(0.7, a2, zero) == doctest::Approx(2 - 2 * std::pow(1 + a2, 1.5)));
    CHECK(hamilton_rhs(0.7, a2, zero)[1] == 0.0);
  }
}

TEST_CASE("Hamiltonian flow conserves H and reproduces the line") {
  testgen::Gen g(72);
  for (int i = 0; i < 10; ++i) {
    const BFormD l = g.halfflat_cubic();
    const LineInterval I = flow_interval(l, kQI);
    const double tp = I.bounded_above ? time_at(l, kQI, I.s_plus) : 1.0;
    for (const auto& h : integrate_hamiltonian(l, 0.5 * std::min(tp, 1.0), 8)) {
      CHECK(std::fabs(h.h) < 1e-9);
      CHECK(h.a1 == doctest::Approx(line_parameter_at(l, kQI, h.t)).epsilon(1e-8));
    }
  }
}

TEST_CASE("case (2) clock") {
  for (double lam : {1.0 / 3.0, 1.0, 2.0})
    for (double t : {-0.1, -0.7, -1.5}) {
      const double s = line_parameter_at(BFormD{0, 0, 1, 0}, BFormD{lam, 0, 0, 0}, t);
      CHECK(case2_line_parameter(lam, t) == doctest::Approx(s).epsilon(1e-10));
      CHECK(discriminant(BFormD{lam, 0, s, 0}) == doctest::Approx(-4 * lam * s * s * s).epsilon(1e-12));
    }
}

TEST_CASE("invalid initial data") {
  CHECK_THROWS(integrate_line(BFormD{1, 0, 1, 0}, BFormD{0, 0, 0, 1}, 0.1, 1.0));
  CHECK_THROWS_AS(integrate_line(BFormD{1, 0, 1, 0}, kQI, 0.0, 1.0), std::invalid_argument);
  CHECK(frame_gap(frame_along_line(BFormD{1, 0, 1, 0}, kQI, 0.0, GL2D::identity()), GL2D::identity()) < 1e-12);
}
