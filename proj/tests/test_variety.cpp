#include "doctest.h"
#include "generators.hpp"
#include "hflat/variety.hpp"

using namespace hflat;

namespace {

KForm e(std::initializer_list<int> idx) { return KForm::basis(idx); }

CEOp make(std::array<KForm, 6> im) { return CEOp(im); }

const Model kBiInvariant{BForm{1, 0}, BForm{1, 0, -1}};

}  // namespace

TEST_CASE("structure constants examples") {
  CHECK(structure_constants(kBiInvariant).images ==
        make({e({3, 6}) + e({4, 5}), e({3, 5}) + e({4, 6}), -e({1, 6}) - e({2, 5}), -e({1, 5}) - e({2, 6}),
              e({1, 4}) + e({2, 3}), e({1, 3}) + e({2, 4})})
            .images);
  const KForm z(2);
  CHECK(structure_constants(Model{BForm{1, 0}, BForm{1, 0, 0}}).images ==
        make({z, e({3, 5}), z, -e({1, 5}), z, e({1, 3})}).images);
}

TEST_CASE("the (u1, u2²) algebra") {
  const CEOp d = structure_constants(Model{BForm{1, 0}, BForm{0, 0, 1}});
  CHECK(d.images == make({-e({3, 6}) - e({4, 5}), -e({4, 6}), e({1, 6}) + e({2, 5}), -e({6, 2}), -e({1, 4}) - e({2, 3}),
                          -e({2, 4})})
                        .images);
  CHECK(is_lie(d));
  // Flipping the sign of e⁴⁵ in de¹ breaks the Jacobi identity.
  CEOp flipped = d;
  flipped.images[0] = -e({3, 6}) + e({4, 5});
  CHECK_FALSE(is_lie(flipped));
  CHECK_THROWS_AS(torsion_from_coframe(flipped), std::domain_error);
}

TEST_CASE("torsion_of examples") {
  CHECK(torsion_of(kBiInvariant) == BForm{1, 0, -1, 0});
  CHECK(torsion_of(Model{BForm{0, 1}, BForm{1, 0, 0}}) == BForm{0, 1, 0, 0});
  CHECK(torsion_of(Model{BForm{1, 1}, BForm{1, -1, 0}}) == BForm{1, 0, -1, 0});
}

TEST_CASE("torsion read back from the coframe") {
  testgen::Gen g(41);
  for (int i = 0; i < 100; ++i) {
    const Model m = g.model();
    CHECK(torsion_from_coframe(structure_constants(m)) == -torsion_of(m));
  }
  CHECK(torsion_from_coframe(CEOp{}).is_zero());
  CHECK_THROWS_AS(torsion_from_coframe(make({e({1, 2}), KForm(2), KForm(2), KForm(2), KForm(2), KForm(2)})),
                  std::domain_error);
}

TEST_CASE("model points give Lie algebras") {
  testgen::Gen g(42);
  for (int i = 0; i < 200; ++i) CHECK(is_lie(structure_constants(g.model())));
}

TEST_CASE("κ of the split equals the structure constants") {
  testgen::Gen g(43);
  for (int i = 0; i < 100; ++i) {
    const Model m = g.model();
    CHECK(kappa(split(m)).images == structure_constants(m).images);
  }
}

TEST_CASE("membership rank") {
  testgen::Gen g(44);
  for (int i = 0; i < 100; ++i) CHECK(membership_rank(split(g.model())) == 1);
  CHECK(membership_rank(TorsionData<Rational>{BForm{1, 0, 0, 1}, BForm{0, 0}}) == 2);
  CHECK(membership_rank(TorsionData<Rational>{BForm(3), BForm(1)}) == 0);
}

TEST_CASE("rank-2 torsion data fail the Jacobi identity") {
  testgen::Gen g(45);
  int tried = 0;
  while (tried < 100) {
    const TorsionData<Rational> t{g.bform(3), g.bform(1)};
    if (membership_rank(t) != 2) continue;
    ++tried;
    CHECK_FALSE(is_lie(kappa(t)));
  }
}

TEST_CASE("τ_λ alternates to κ modulo so(3) terms") {
  testgen::Gen g(46);
  const auto span = so3_alternation_span<Rational>();
  for (int i = 0; i < 30; ++i) {
    const BForm l = g.bform(3);
    const CEOp a = alternation(tau_lambda(l));
    const CEOp k = kappa(TorsionData<Rational>{l, BForm(1)});
    CEOp diff;
    for (int j = 0; j < 6; ++j) diff.images[j] = a.images[j] - k.images[j];
    CHECK(in_span(span, diff));
  }
  for (const auto& w : tau_lambda(BForm(3))) CHECK(w.is_zero());
}

TEST_CASE("skew torsion 3-form") {
  CHECK(skew_torsion_3form(BForm(3)).is_zero());
  const Rational h(1, 2);
  CHECK(skew_torsion_3form(BForm{1, 0, -1, 0}) == h * (e({2, 3, 5}) + e({1, 4, 5}) + e({1, 3, 6})) + h * e({2, 4, 6}));
  testgen::Gen g(47);
  for (int i = 0; i < 30; ++i) {
    const BForm l = g.bform(3);
    const auto completion = skew_completion(tau_lambda(l));
    REQUIRE(completion.has_value());
    CHECK(*completion == skew_torsion_3form(l));
  }
}

TEST_CASE("SU(3) components") {
  const auto c = su3_components(BForm{1, 0, -1, 0});
  CHECK(c.w1_plus == 0);
  CHECK(c.w1_minus == -1);
  const auto z = su3_components(BForm(3));
  CHECK(z.w1_plus == 0);
  CHECK(z.w1_minus == 0);
  CHECK(z.w3.is_zero());
}

TEST_CASE("classification examples") {
  CHECK(classify(kBiInvariant) == LieAlgebraClass::SO3xSO3);
  CHECK(classify(Model{BForm{1, 0}, BForm{1, 0, 1}}) == LieAlgebraClass::SO3C);
  CHECK(classify(Model{BForm{1, 0}, BForm{1, 0, 0}}) == LieAlgebraClass::Nilpotent);
  CHECK(classify(Model{BForm{1, 0}, BForm{0, 0, 1}}) == LieAlgebraClass::SO3semidirectR3);
  CHECK(classify(Model{BForm{1, 0}, BForm{0, 1, 0}}) == LieAlgebraClass::SO3directR3);
  CHECK_THROWS(classify(Model{BForm{0, 0}, BForm{1, 0, 0}}));
  for (const auto& [m, cls] : table_representatives()) {
    CHECK(classify(m) == cls);
    CHECK(classify_by_invariants(structure_constants(m)) == cls);
  }
}

TEST_CASE("classification is GL(2)-invariant and agrees with bracket invariants") {
  testgen::Gen g(48);
  for (int i = 0; i < 200; ++i) {
    const Model m = g.model();
    const auto c = classify(m);
    CHECK(classify(act(g.gl2(), m)) == c);
    CHECK(classify_by_invariants(structure_constants(m)) == c);
  }
}

TEST_CASE("floating classification snaps near the loci") {
  const auto r = classify(ModelD{BFormD{1, 0}, BFormD{1, 0, 1e-14}});
  CHECK(r.cls == LieAlgebraClass::Nilpotent);
  CHECK(r.snapped);
  const auto s = classify(ModelD{BFormD{1, 0}, BFormD{1, 0, -1}});
  CHECK(s.cls == LieAlgebraClass::SO3xSO3);
  CHECK_FALSE(s.snapped);
}

TEST_CASE("Killing form") {
  const auto F = killing_form(structure_constants(kBiInvariant));
  CHECK(determinant(F) == 4096);
  const auto N = killing_form(structure_constants(Model{BForm{1, 0}, BForm{1, 0, 0}}));
  CHECK(determinant(N) == 0);
  CHECK(rank(N) == 0);
  CHECK_THROWS_AS(killing_form(make({e({2, 3}), e({1, 4}), KForm(2), KForm(2), KForm(2), KForm(2)})), std::domain_error);
  testgen::Gen g(49);
  for (int i = 0; i < 200; ++i) {
    const Model m = g.model();
    const Rational base = 4 * discriminant(m.y) * resultant(m.x, m.y) * resultant(m.x, m.y);
    const auto K = killing_form(structure_constants(m));
    CHECK(determinant(K) == base * base * base);
    const int r = rank(K);
    CHECK((r == 0 || r == 3 || r == 6));
  }
}

TEST_CASE("coefficients of the nearly-Kähler point") {
  const auto k = coefficients_of(Model{BForm{1, 0}, BForm{1, 0, -3}});
  const std::vector<Rational> v{k.a, k.p, k.b, k.q, k.c, k.r}, want{0, 3, 0, 1, 3, 0};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(v[i] * want[j] == v[j] * want[i]);
}

TEST_CASE("projective equality") {
  CHECK(projectively_equal(BForm{1, 2, 3}, BForm{-2, -4, -6}));
  CHECK_FALSE(projectively_equal(BForm{1, 2, 3}, BForm{1, 2, 4}));
  CHECK_FALSE(projectively_equal(BForm(2), BForm(2)));
  CHECK_FALSE(projectively_equal(BForm{1, 0}, BForm{1, 0, 0}));
}
