#include "hflat/binaryform.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>

namespace hflat {

namespace {

constexpr double kPi = std::numbers::pi;

// Real roots of t³ + a t² + b t + c.
std::vector<double> monic_cubic_roots(double a, double b, double c) {
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double shift = -a / 3.0;
  std::vector<double> out;
  const double disc = -(4.0 * p * p * p + 27.0 * q * q);
  if (p < 0.0 && disc >= 0.0) {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    double arg = 3.0 * q / (p * m);
    arg = std::clamp(arg, -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) out.push_back(m * std::cos(theta - 2.0 * kPi * k / 3.0) + shift);
  } else {
    const double inner = std::sqrt(std::max(0.0, q * q / 4.0 + p * p * p / 27.0));
    out.push_back(std::cbrt(-q / 2.0 + inner) + std::cbrt(-q / 2.0 - inner) + shift);
  }
  return out;
}

double eval_angle(const BFormD& q, double phi) { return q.evaluate(std::cos(phi), std::sin(phi)); }

double eval_angle_derivative(const BFormD& q, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return -s * q.d1().evaluate(c, s) + c * q.d2().evaluate(c, s);
}

double normalize_angle(double phi) {
  phi = std::fmod(phi, kPi);
  if (phi < 0) phi += kPi;
  if (phi >= kPi) phi -= kPi;
  return phi;
}

// Continued-fraction approximation with bounded denominator.
Rational rationalize(double v, long max_den) {
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double x = v;
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(x);
    if (std::fabs(a) > 1e15) break;
    long ai = static_cast<long>(a);
    long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    double frac = x - a;
    if (std::fabs(frac) < 1e-15) break;
    x = 1.0 / frac;
  }
  if (k1 == 0) return Rational(0);
  return Rational(h1, k1);
}

// Replaces root angles by exact rational roots where the cubic vanishes there exactly.
void snap_rational_roots(const BForm& q, std::vector<double>& angles) {
  for (double& phi : angles) {
    const double c = std::cos(phi), s = std::sin(phi);
    const bool use_u2 = std::fabs(s) >= std::fabs(c);
    const double ratio = use_u2 ? c / s : s / c;
    Rational r = rationalize(ratio, 1000000);
    Rational val = use_u2 ? q.evaluate(r, Rational(1)) : q.evaluate(Rational(1), r);
    if (sgn(val) != 0) continue;
    const double rd = r.get_d();
    phi = normalize_angle(use_u2 ? std::atan2(1.0, rd) : std::atan2(rd, 1.0));
  }
}

std::vector<double> root_angles(const BFormD& q) {
  if (q.degree() != 3) throw std::invalid_argument("cubic expected");
  if (q.is_zero()) throw std::domain_error("zero cubic has no factorization");
  double best = -1.0, theta = 0.0;
  for (int k = 0; k < 12; ++k) {
    double th = kPi * k / 12.0;
    double v = std::fabs(eval_angle(q, th));
    if (v > best) {
      best = v;
      theta = th;
    }
  }
  const double c = std::cos(theta), s = std::sin(theta);
  const BFormD qt = substitute(q, GL2D{c, -s, s, c});
  std::vector<double> angles;
  for (double r : monic_cubic_roots(qt[1] / qt[0], qt[2] / qt[0], qt[3] / qt[0])) {
    const double u1 = c * r - s, u2 = s * r + c;
    double phi = normalize_angle(std::atan2(u2, u1));
    for (int it = 0; it < 8; ++it) {
      const double f = eval_angle(q, phi), fp = eval_angle_derivative(q, phi);
      if (fp == 0.0) break;
      const double step = f / fp;
      phi -= step;
      if (std::fabs(step) < 1e-17) break;
    }
    angles.push_back(normalize_angle(phi));
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

CubicFactors factors_from_angles(const BFormD& q, const std::vector<double>& angles) {
  CubicFactors out;
  for (double phi : angles) out.linear.push_back({-std::sin(phi), std::cos(phi)});
  if (out.linear.size() == 3) {
    double best = -1.0, scale = 0.0;
    for (int k = 0; k < 24; ++k) {
      const double psi = kPi * k / 24.0;
      const double a = std::cos(psi), b = std::sin(psi);
      double prod = 1.0;
      for (const auto& l : out.linear) prod *= l[0] * a + l[1] * b;
      if (std::fabs(prod) > best) {
        best = std::fabs(prod);
        scale = q.evaluate(a, b) / prod;
      }
    }
    out.constant = scale;
  }
  return out;
}

std::vector<GL2D> invert_from_factors(const BFormD& q, const CubicFactors& fac) {
  const auto& L = fac.linear;
  auto det2 = [](const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return a[0] * b[1] - a[1] * b[0];
  };
  const double ca = std::cbrt(0.75);
  const double cb = std::pow(48.0, -1.0 / 6.0);
  std::vector<GL2D> out;
  for (int i = 0; i < 3; ++i) {
    for (int sgn = 0; sgn < 2; ++sgn) {
      const int j = (i + 1 + sgn) % 3, k = (i + 2 - sgn) % 3;
      const auto &l1 = L[i], &l2 = L[j], &l3 = L[k];
      const double a1 = det2(l2, l3), a2 = det2(l3, l1), a3 = det2(l1, l2);
      const double kappa = std::cbrt(fac.constant / (a1 * a2 * a3));
      const std::array<double, 2> f1{kappa * a1 * l1[0], kappa * a1 * l1[1]};
      const std::array<double, 2> f2{kappa * a2 * l2[0], kappa * a2 * l2[1]};
      const std::array<double, 2> f3{kappa * a3 * l3[0], kappa * a3 * l3[1]};
      GL2D g{ca * f1[0], ca * f1[1], cb * (f2[0] - f3[0]), cb * (f2[1] - f3[1])};
      if (g.det() > 0) out.push_back(g);
    }
  }
  const double scale = std::max(1.0, q.max_abs());
  for (const auto& g : out) {
    if ((q_map(g) - q).max_abs() > 1e-9 * scale)
      throw std::runtime_error("cubic inversion residual too large");
  }
  return out;
}

}  // namespace

CubicFactors real_linear_factors(const BFormD& q) { return factors_from_angles(q, root_angles(q)); }

std::vector<GL2D> q_invert(const BFormD& q) {
  if (!(discriminant(q) > 0.0)) throw std::domain_error("not in covering image");
  return invert_from_factors(q, real_linear_factors(q));
}

std::vector<GL2D> q_invert(const BForm& q) {
  if (sgn(discriminant(q)) <= 0) throw std::domain_error("not in covering image");
  const BFormD qd = q.cast<double>();
  std::vector<double> angles = root_angles(qd);
  snap_rational_roots(q, angles);
  std::sort(angles.begin(), angles.end());
  return invert_from_factors(qd, factors_from_angles(qd, angles));
}

std::vector<double> real_roots(const std::vector<double>& coeffs) {
  std::vector<double> out;
  for (const auto& [r, k] : real_roots_with_multiplicity(coeffs)) out.push_back(r);
  return out;
}

std::vector<std::pair<double, int>> real_roots_with_multiplicity(const std::vector<double>& coeffs) {
  std::vector<double> c = coeffs;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  const int n = static_cast<int>(c.size()) - 1;
  if (n <= 0) return {};
  if (n > 4) throw std::invalid_argument("real_roots supports degree ≤ 4");
  for (double& v : c) v /= coeffs[n];
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  double scale = 1.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::fabs(c[i]));

  // j-th derivative divided by j!, evaluated at s.
  auto taylor = [&](int j, double s) {
    double r = 0.0;
    for (int i = n; i >= j; --i) {
      double binom = 1.0;
      for (int m = 0; m < j; ++m) binom = binom * (i - m) / (m + 1);
      r = r * s + binom * c[i];
    }
    return r;
  };
  auto polish = [&](double s, int k) {
    // Newton on the (k−1)-th derivative, whose root is simple.
    for (int it = 0; it < 30; ++it) {
      const double f = taylor(k - 1, s), fp = k * taylor(k, s);
      if (fp == 0.0) break;
      const double step = f / fp;
      if (!std::isfinite(step)) break;
      s -= step;
      if (std::fabs(step) <= 1e-16 * std::max(1.0, std::fabs(s))) break;
    }
    return s;
  };

  // Multiple roots come back from the eigenvalue solver as tight clusters.
  std::vector<std::complex<double>> z(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::vector<int> cluster(n, -1);
  int nc = 0;
  for (int i = 0; i < n; ++i) {
    if (cluster[i] >= 0) continue;
    cluster[i] = nc;
    for (int j = i + 1; j < n; ++j)
      if (cluster[j] < 0 && std::abs(z[i] - z[j]) < 2e-3 * std::max(1.0, std::abs(z[i]))) cluster[j] = nc;
    ++nc;
  }
  std::vector<std::pair<double, int>> out;
  for (int k = 0; k < nc; ++k) {
    std::complex<double> mean(0.0, 0.0);
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (cluster[i] == k) {
        mean += z[i];
        members.push_back(i);
      }
    const int mult = static_cast<int>(members.size());
    mean /= static_cast<double>(mult);
    bool accepted = false;
    if (mult > 1 && std::fabs(mean.imag()) <= 1e-9 * scale) {
      const double s = polish(mean.real(), mult);
      bool ok = true;
      for (int j = 0; j < mult; ++j)
        if (std::fabs(taylor(j, s)) > 1e-9 * scale * std::max(1.0, std::pow(std::fabs(s), n - j))) ok = false;
      if (ok) {
        out.push_back({s, mult});
        accepted = true;
      }
    }
    if (accepted) continue;
    for (int i : members) {
      if (std::fabs(z[i].imag()) > 1e-6 * scale) continue;
      out.push_back({polish(z[i].real(), 1), 1});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::array<int, 3>> sigma3_elements() {
  return {{1, 2, 3}, {2, 1, 3}, {1, 3, 2}, {3, 2, 1}, {2, 3, 1}, {3, 1, 2}};
}

GL2D sigma3_element(const std::array<int, 3>& perm) {
  const double h = std::sqrt(3.0) / 2.0;
  const GL2D s12{-0.5, h, h, 0.5};
  const GL2D s23{1.0, 0.0, 0.0, -1.0};
  auto compose = [](const std::array<int, 3>& a, const std::array<int, 3>& b) {
    return std::array<int, 3>{a[b[0] - 1], a[b[1] - 1], a[b[2] - 1]};
  };
  std::map<std::array<int, 3>, GL2D> table{{{1, 2, 3}, GL2D::identity()}};
  std::vector<std::array<int, 3>> frontier{{1, 2, 3}};
  while (!frontier.empty()) {
    std::vector<std::array<int, 3>> next;
    for (const auto& e : frontier) {
      for (const auto& [gen, M] : {std::pair{std::array<int, 3>{2, 1, 3}, s12},
                                   std::pair{std::array<int, 3>{1, 3, 2}, s23}}) {
        auto p = compose(e, gen);
        if (table.count(p)) continue;
        table[p] = table[e] * M;
        next.push_back(p);
      }
    }
    frontier = std::move(next);
  }
  auto it = table.find(perm);
  if (it == table.end()) throw std::invalid_argument("not a permutation of {1,2,3}");
  return it->second;
}

GL2 triality_matrix() { return GL2{Rational(-1, 2), Rational(1, 2), Rational(-3, 2), Rational(-1, 2)}; }

}  // namespace hflat
