#include "doctest.h"
#include "generators.hpp"
#include "hflat/exterior.hpp"
#include "hflat/stableform.hpp"

using namespace hflat;

namespace {

KForm e(std::initializer_list<int> idx) { return KForm::basis(idx); }

// Nilpotent algebra (0,0,0,12,13,23).
CEOp nilpotent_standard() {
  CEOp d;
  d.images[3] = e({1, 2});
  d.images[4] = e({1, 3});
  d.images[5] = e({2, 3});
  return d;
}

}  // namespace

TEST_CASE("wedge examples") {
  CHECK(wedge(e({1}), e({2})) == e({1, 2}));
  CHECK(wedge(e({2}), e({1})) == -e({1, 2}));
  CHECK(wedge(e({1, 2}), e({1, 3})).is_zero());
  const KForm s = sigma_form();
  CHECK(wedge(wedge(s, s), s) == KForm::basis({1, 2, 3, 4, 5, 6}, Rational(6)));
  CHECK_THROWS_AS(wedge(e({1, 2, 3, 4}), e({1, 2, 5})), std::invalid_argument);
}

TEST_CASE("basis normalizes index order") {
  CHECK(e({3, 1}) == -e({1, 3}));
  CHECK(e({2, 2}).is_zero());
  CHECK(e({2, 1, 3}).coeff({1, 2, 3}) == -1);
  CHECK(e({1, 2, 3}).coeff({2, 1, 3}) == -1);
}

TEST_CASE("interior product examples") {
  CHECK(interior(1, e({1, 2})) == e({2}));
  CHECK(interior(2, e({1, 2})) == -e({1}));
  CHECK(interior(1, sigma_form()) == e({2}));
  CHECK(interior(3, e({1, 2})).is_zero());
}

TEST_CASE("apply_d on the nilpotent algebra") {
  const CEOp d = nilpotent_standard();
  CHECK(apply_d(d, e({4})) == e({1, 2}));
  CHECK(apply_d(d, e({1, 4})).is_zero());
  CHECK(apply_d(d, e({4, 5})) == e({1, 2, 5}) - e({4, 1, 3}));
  CHECK(apply_d(d, KForm::scalar(Rational(1))).is_zero());
  CHECK(is_lie(d));
}

TEST_CASE("d squared residual") {
  CHECK(d_squared_residual(CEOp{}) == 0.0);
  CEOp bad;
  bad.images[0] = e({2, 3});
  bad.images[1] = e({1, 4});
  CHECK(d_squared_residual(bad) == doctest::Approx(1.0));
  CHECK_FALSE(is_lie(bad));
  // de¹ = e²³, de³ = e¹² still satisfies d² = 0.
  CEOp heis;
  heis.images[0] = e({2, 3});
  heis.images[2] = e({1, 2});
  CHECK(is_lie(heis));
}

TEST_CASE("wedge is associative and graded commutative") {
  testgen::Gen g(11);
  for (int i = 0; i < 200; ++i) {
    const int ka = g.integer(0, 3), kb = g.integer(0, 3 - std::min(ka, 3)), kc = g.integer(0, 6 - ka - kb);
    const KForm a = g.kform(ka), b = g.kform(kb), c = g.kform(kc);
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    const Rational sign = (ka * kb) % 2 ? -1 : 1;
    CHECK(wedge(a, b) == sign * wedge(b, a));
  }
}

TEST_CASE("interior is an antiderivation") {
  testgen::Gen g(12);
  for (int i = 0; i < 200; ++i) {
    const int ka = g.integer(1, 3), kb = g.integer(1, 6 - ka);
    const KForm a = g.kform(ka), b = g.kform(kb);
    const int idx = g.integer(1, 6);
    const Rational sign = ka % 2 ? -1 : 1;
    CHECK(interior(idx, wedge(a, b)) == wedge(interior(idx, a), b) + sign * wedge(a, interior(idx, b)));
  }
}

TEST_CASE("d is an antiderivation with d² = 0 on Lie algebras") {
  testgen::Gen g(13);
  for (int i = 0; i < 100; ++i) {
    const CEOp d = structure_constants(g.model());
    const int ka = g.integer(1, 3), kb = g.integer(1, 5 - ka);
    const KForm a = g.kform(ka), b = g.kform(kb);
    const Rational sign = ka % 2 ? -1 : 1;
    CHECK(apply_d(d, wedge(a, b)) == wedge(apply_d(d, a), b) + sign * wedge(a, apply_d(d, b)));
    CHECK(apply_d(d, apply_d(d, a)).is_zero());
  }
}

TEST_CASE("substitution by the identity coframe is trivial") {
  testgen::Gen g(14);
  std::array<KForm, 6> id;
  for (int i = 0; i < 6; ++i) id[i] = e({i + 1});
  for (int i = 0; i < 50; ++i) {
    const KForm a = g.kform(g.integer(1, 6));
    CHECK(substitute(a, id) == a);
  }
}

TEST_CASE("substitution commutes with wedge") {
  testgen::Gen g(15);
  for (int i = 0; i < 50; ++i) {
    std::array<KForm, 6> im;
    for (auto& f : im) f = g.kform(1, 3);
    const KForm a = g.kform(2), b = g.kform(g.integer(1, 4));
    CHECK(substitute(wedge(a, b), im) == wedge(substitute(a, im), substitute(b, im)));
  }
}

TEST_CASE("embedding into seven dimensions keeps coefficients") {
  const KForm s = sigma_form();
  const auto s7 = s.embed<7>();
  CHECK(s7.degree() == 2);
  CHECK(s7.coeff({3, 4}) == 1);
  CHECK(wedge(s7, Form<Rational, 7>::basis({7})).coeff({1, 2, 7}) == 1);
}
