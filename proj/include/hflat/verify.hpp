#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hflat {

struct VerifyOptions {
  std::uint64_t seed = 20240917;
  int samples = 1000;         // random samples for the exact algebraic suites
  int einstein_grid = 10000;
  int jobs = 1;
  bool perturb_jacobi = false;  // adds a fixed non-Lie term to every sampled d (negative control)
};

struct SuiteResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double max_residual = 0.0;
  std::string detail;
};

/// jacobi, killing, classification, curvature, einstein, conformal, clock, endpoint,
/// noncomplete, g2, triality, contraction, hamiltonian.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name, const VerifyOptions& opt = {});

std::vector<SuiteResult> run_all(const VerifyOptions& opt = {});

}  // namespace hflat
