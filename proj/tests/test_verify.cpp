#include "doctest.h"
#include "hflat/verify.hpp"

#include <stdexcept>

using namespace hflat;

TEST_CASE("suite registry") {
  CHECK(suite_names().size() == 13);
  CHECK_THROWS_AS(run_suite("no-such-suite"), std::invalid_argument);
}

TEST_CASE("Jacobi suite passes and its negative control fails") {
  VerifyOptions opt;
  opt.samples = 50;
  const auto ok = run_suite("jacobi", opt);
  CHECK(ok.pass);
  CHECK(ok.id == 1);
  opt.perturb_jacobi = true;
  CHECK_FALSE(run_suite("jacobi", opt).pass);
}

TEST_CASE("exact suites are reproducible for a fixed seed") {
  VerifyOptions opt;
  opt.samples = 40;
  for (const char* name : {"killing", "classification", "curvature"}) {
    const auto a = run_suite(name, opt), b = run_suite(name, opt);
    CHECK(a.pass);
    CHECK(a.detail == b.detail);
  }
}
