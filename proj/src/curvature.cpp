#include "hflat/curvature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <thread>

namespace hflat {

namespace {

constexpr double kPi = std::numbers::pi;

std::array<double, 3> sphere_point(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

ModelD slice_point(const std::array<double, 3>& y) { return {BFormD{1.0, 0.0}, BFormD{y[0], y[1], y[2]}}; }

// Traceless Ricci entries on the upper triangle.
Eigen::VectorXd ricci_residual(const std::array<double, 3>& y) {
  const auto T = curvature_tensors(structure_constants(slice_point(y)), 1e-9);
  Eigen::VectorXd r(21);
  int n = 0;
  const double s = T.scalar / 6.0;
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j) r(n++) = T.ricci(i, j) - (i == j ? s : 0.0);
  return r;
}

double unit_distance(const BFormD& a, const BFormD& b) {
  const double na = std::sqrt(std::inner_product(a.coeffs().begin(), a.coeffs().end(), a.coeffs().begin(), 0.0));
  const double nb = std::sqrt(std::inner_product(b.coeffs().begin(), b.coeffs().end(), b.coeffs().begin(), 0.0));
  double plus = 0.0, minus = 0.0;
  for (int i = 0; i <= a.degree(); ++i) {
    plus += std::pow(a[i] / na - b[i] / nb, 2);
    minus += std::pow(a[i] / na + b[i] / nb, 2);
  }
  return std::sqrt(std::min(plus, minus));
}

// Gauss-Newton on spherical angles; returns the refined point when it converges.
std::optional<std::array<double, 3>> refine(double theta, double phi, double tol) {
  for (int it = 0; it < 60; ++it) {
    const auto y = sphere_point(theta, phi);
    const Eigen::VectorXd r = ricci_residual(y);
    if (r.lpNorm<Eigen::Infinity>() < 0.1 * tol) return y;
    const double h = 1e-7;
    Eigen::MatrixXd J(r.size(), 2);
    J.col(0) = (ricci_residual(sphere_point(theta + h, phi)) - ricci_residual(sphere_point(theta - h, phi))) / (2 * h);
    J.col(1) = (ricci_residual(sphere_point(theta, phi + h)) - ricci_residual(sphere_point(theta, phi - h))) / (2 * h);
    const Eigen::Vector2d step = J.colPivHouseholderQr().solve(-r);
    if (!step.allFinite()) return std::nullopt;
    theta += step(0);
    phi += step(1);
  }
  const auto y = sphere_point(theta, phi);
  if (ricci_residual(y).lpNorm<Eigen::Infinity>() < tol) return y;
  return std::nullopt;
}

}  // namespace

bool einstein_locus_check(const ModelD& m, double tol) {
  return levi_civita_oracle(structure_constants(m), 1e-9).ricci_traceless_norm < tol;
}

bool einstein_locus_check(const Model& m) {
  const auto T = curvature_tensors(structure_constants(m));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      Rational v = T.ricci(i, j) * 6;
      if (i == j) v -= T.scalar;
      if (sgn(v) != 0) return false;
    }
  return true;
}

bool conformally_flat_check(const ModelD& m, double tol) {
  return levi_civita_oracle(structure_constants(m), 1e-9).weyl_norm < tol;
}

bool conformally_flat_check(const Model& m) {
  const auto T = curvature_tensors(structure_constants(m));
  return std::all_of(T.weyl.begin(), T.weyl.end(), [](const Rational& v) { return sgn(v) == 0; });
}

double rotation_orbit_distance(const BFormD& a, const BFormD& b) {
  auto at = [&](double th) {
    const double c = std::cos(th), s = std::sin(th);
    return unit_distance(act(GL2D{c, -s, s, c}, a), b);
  };
  const int n = 1440;
  double best = 1e300, best_th = 0.0;
  for (int k = 0; k < n; ++k) {
    const double th = kPi * k / n;
    const double v = at(th);
    if (v < best) {
      best = v;
      best_th = th;
    }
  }
  double lo = best_th - kPi / n, hi = best_th + kPi / n;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 80; ++it) {
    const double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
    if (at(m1) < at(m2))
      hi = m2;
    else
      lo = m1;
  }
  return std::min(best, at(0.5 * (lo + hi)));
}

double isometry_orbit_distance(const ModelD& a, const ModelD& b) {
  auto at = [&](double th, bool reflect) {
    const double c = std::cos(th), s = std::sin(th);
    GL2D g{c, -s, s, c};
    if (reflect) g = g * GL2D{1.0, 0.0, 0.0, -1.0};
    const ModelD m = act(g, a);
    return std::max(unit_distance(m.x, b.x), unit_distance(m.y, b.y));
  };
  double best = 1e300;
  for (bool reflect : {false, true}) {
    const int n = 1440;
    double local = 1e300, best_th = 0.0;
    for (int k = 0; k < n; ++k) {
      const double th = kPi * k / n;
      const double v = at(th, reflect);
      if (v < local) {
        local = v;
        best_th = th;
      }
    }
    double lo = best_th - kPi / n, hi = best_th + kPi / n;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 80; ++it) {
      const double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
      if (at(m1, reflect) < at(m2, reflect))
        hi = m2;
      else
        lo = m1;
    }
    best = std::min({best, local, at(0.5 * (lo + hi), reflect)});
  }
  return best;
}

EinsteinScanResult einstein_scan(const EinsteinScanOptions& opt) {
  EinsteinScanResult out;
  out.grid_points = opt.grid;
  // Fibonacci lattice on the sphere of y with x = u1.
  std::vector<std::pair<double, double>> grid(opt.grid);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < opt.grid; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / opt.grid;
    grid[i] = {std::acos(z), std::fmod(golden * i, 2.0 * kPi)};
  }
  std::vector<double> norm(opt.grid);
  auto eval_range = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      const auto y = sphere_point(grid[i].first, grid[i].second);
      const auto rep = levi_civita_oracle(structure_constants(slice_point(y)), 1e-9);
      double ric = 0.0;
      for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) ric += rep.ricci(a, b) * rep.ricci(a, b);
      norm[i] = rep.ricci_traceless_norm / std::sqrt(ric);
    }
  };
  const int jobs = std::max(1, opt.jobs);
  if (jobs == 1) {
    eval_range(0, opt.grid);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (opt.grid + jobs - 1) / jobs;
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back(eval_range, j * chunk, std::min(opt.grid, (j + 1) * chunk));
    for (auto& t : pool) t.join();
  }

  // Seeds: the lowest 2% of grid residuals relative to |Ric|.
  const int keep = std::max(1, opt.grid / 50);
  std::vector<double> sorted = norm;
  std::nth_element(sorted.begin(), sorted.begin() + keep, sorted.end());
  const double cut = sorted[keep];
  std::vector<std::array<double, 3>> found;
  for (int i = 0; i < opt.grid; ++i) {
    if (norm[i] > cut) continue;
    auto y = refine(grid[i].first, grid[i].second, opt.tol);
    if (!y) continue;
    ++out.converged_seeds;
    found.push_back(*y);
  }

  for (const auto& y : found) {
    const ModelD m = slice_point(y);
    const BFormD lambda = torsion_of(m);
    bool seen = false;
    for (const auto& o : out.orbits)
      if (isometry_orbit_distance(m, o.point) < 1e-6) seen = true;
    if (seen) continue;
    const auto rep = levi_civita_oracle(structure_constants(m), 1e-9);
    out.orbits.push_back({m, lambda, rep.scalar / kScalarNormalization, rep.ricci_traceless_norm});
  }
  return out;
}

}  // namespace hflat
