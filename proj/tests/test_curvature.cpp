#include "doctest.h"
#include "generators.hpp"
#include "hflat/curvature.hpp"

using namespace hflat;

namespace {

const Model kBiInvariant{BForm{1, 0}, BForm{1, 0, -1}};
const Model kNearlyKahler{BForm{1, 0}, BForm{1, 0, -3}};

// Rotation by the Pythagorean angle with cos = 3/5.
const GL2 kRot{Rational(3, 5), Rational(-4, 5), Rational(4, 5), Rational(3, 5)};
const GL2 kFlip{Rational(1), Rational(0), Rational(0), Rational(-1)};

}  // namespace

TEST_CASE("abelian algebra is flat") {
  const auto T = curvature_tensors(CEOp{});
  for (const auto& v : T.riemann) CHECK(sgn(v) == 0);
  CHECK(sgn(T.scalar) == 0);
}

TEST_CASE("closed-form Ricci examples") {
  const auto bi = ricci_closed_form(TCoords<Rational>{Rational(1, 2), 0, Rational(1, 2), 0});
  CHECK(bi.scalar == 1);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(sgn(bi.ric0(i, j)) == 0);
  const auto zero = ricci_closed_form(TCoords<Rational>{});
  CHECK(zero.scalar == 0);
  CHECK(t_from_lambda(BForm{1, 0, -1, 0}).t1 == Rational(1, 2));
  CHECK(t_from_lambda(BForm{1, 0, -1, 0}).t3 == Rational(1, 2));
}

TEST_CASE("t coordinates invert") {
  testgen::Gen g(51);
  for (int i = 0; i < 50; ++i) {
    const BForm l = g.bform(3);
    CHECK(lambda_from_t(t_from_lambda(l)) == l);
  }
}

TEST_CASE("closed form agrees with Koszul exactly") {
  testgen::Gen g(52);
  for (int i = 0; i < 60; ++i) {
    const Model m = g.model();
    const auto T = curvature_tensors(structure_constants(m));
    const auto cf = ricci_closed_form(t_from_lambda(torsion_of(m)));
    CHECK(T.scalar == kScalarNormalization * cf.scalar);
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) CHECK(6 * T.ricci(a, b) - (a == b ? T.scalar : Rational(0)) == 6 * cf.ric0(a, b));
  }
}

TEST_CASE("Riemann symmetries, Bianchi identity and Weyl trace") {
  testgen::Gen g(53);
  for (int n = 0; n < 10; ++n) {
    const auto T = curvature_tensors(structure_constants(g.model()));
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        for (int k = 0; k < 6; ++k)
          for (int l = 0; l < 6; ++l) {
            const Rational& r = T.R(i, j, k, l);
            CHECK(r == -T.R(j, i, k, l));
            CHECK(r == -T.R(i, j, l, k));
            CHECK(r == T.R(k, l, i, j));
            CHECK(sgn(r + T.R(j, k, i, l) + T.R(k, i, j, l)) == 0);
          }
    for (int j = 0; j < 6; ++j)
      for (int l = 0; l < 6; ++l) {
        Rational tr = 0;
        for (int i = 0; i < 6; ++i) tr += T.W(i, j, i, l);
        CHECK(sgn(tr) == 0);
      }
  }
}

TEST_CASE("scalar curvature is O(2)-invariant") {
  testgen::Gen g(54);
  for (int i = 0; i < 50; ++i) {
    const Model m = g.model();
    const Rational s = curvature_tensors(structure_constants(m)).scalar;
    CHECK(curvature_tensors(structure_constants(act(kRot, m))).scalar == s);
    CHECK(curvature_tensors(structure_constants(act(kFlip, m))).scalar == s);
  }
}

TEST_CASE("oracle report") {
  const auto r = levi_civita_oracle(structure_constants(kBiInvariant));
  CHECK(r.scalar == doctest::Approx(6.0));
  CHECK(r.ricci_traceless_norm == 0.0);
  CHECK(r.weyl_norm > 0.1);
  CHECK(r.bianchi_residual == 0.0);
  CHECK_THROWS_AS(levi_civita_oracle(CEOp(std::array<KForm, 6>{KForm::basis({2, 3}), KForm::basis({1, 4}), KForm(2),
                                                                KForm(2), KForm(2), KForm(2)})),
                  std::domain_error);
}

TEST_CASE("Einstein examples") {
  CHECK(einstein_locus_check(kBiInvariant));
  CHECK(einstein_locus_check(kNearlyKahler));
  CHECK_FALSE(einstein_locus_check(Model{BForm{1, 0}, BForm{0, 0, 1}}));
  CHECK(einstein_locus_check(act(kRot, kNearlyKahler)));
  CHECK(einstein_locus_check(kNearlyKahler.cast<double>()));
}

TEST_CASE("conformal flatness examples") {
  CHECK(conformally_flat_check(Model{BForm{0, 0}, BForm{1, 0, 0}}));
  CHECK_FALSE(conformally_flat_check(kBiInvariant));
  for (const auto& [m, cls] : table_representatives()) CHECK_FALSE(conformally_flat_check(m));
}

TEST_CASE("Einstein scan finds three orbits") {
  const auto scan = einstein_scan({2000, 1e-10, 2});
  REQUIRE(scan.orbits.size() == 3);
  for (const Model& rep : {kBiInvariant, kNearlyKahler, Model{BForm{1, 0}, BForm{0, 1, 1}}}) {
    double best = 1e300;
    for (const auto& o : scan.orbits) best = std::min(best, isometry_orbit_distance(o.point, rep.cast<double>()));
    CHECK(best < 1e-6);
  }
  for (const auto& o : scan.orbits) {
    CHECK(o.scalar_normalized > 0);
    CHECK(o.ricci_residual < 1e-10);
  }
}

TEST_CASE("scan is deterministic and independent of the thread count") {
  const auto a = einstein_scan({500, 1e-10, 1});
  const auto b = einstein_scan({500, 1e-10, 3});
  REQUIRE(a.orbits.size() == b.orbits.size());
  for (std::size_t i = 0; i < a.orbits.size(); ++i)
    CHECK((a.orbits[i].torsion - b.orbits[i].torsion).max_abs() == 0.0);
}

TEST_CASE("orbit distance") {
  const ModelD m = kNearlyKahler.cast<double>();
  CHECK(isometry_orbit_distance(m, act(kRot.cast<double>(), m)) < 1e-9);
  CHECK(isometry_orbit_distance(m, act(kFlip.cast<double>(), m)) < 1e-9);
  CHECK(isometry_orbit_distance(m, kBiInvariant.cast<double>()) > 0.1);
}
