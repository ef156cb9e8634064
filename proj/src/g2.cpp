#include "hflat/g2.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hflat {

namespace {

constexpr double kOddTol = 1e-5;
constexpr int kFitDegree = 8;

Form7 dt7() { return Form7::basis({7}); }

Form7 lift(const KFormD& f) { return f.embed<7>(); }

double frame_distance(const GL2D& a, const GL2D& b) {
  return std::hypot(std::hypot(a.x - b.x, a.y - b.y), std::hypot(a.z - b.z, a.w - b.w));
}

GL2D nearest_frame(const BFormD& q, const GL2D& ref) {
  const auto cands = q_invert(q);
  if (cands.empty()) throw std::domain_error("no frame with det g > 0");
  return *std::min_element(cands.begin(), cands.end(), [&](const GL2D& a, const GL2D& b) {
    return frame_distance(a, ref) < frame_distance(b, ref);
  });
}

Mat2<double> gram(const GL2D& g) { return g.transpose() * g; }

// Block-diagonal 6×6 matrix of the coframe e'^{2i−1} = x e^{2i−1} + y e^{2i}, e'^{2i} = z e^{2i−1} + w e^{2i}.
Eigen::MatrixXd frame6(const GL2D& g) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(6, 6);
  for (int i = 0; i < 6; i += 2) {
    M(i, i) = g.x;
    M(i, i + 1) = g.y;
    M(i + 1, i) = g.z;
    M(i + 1, i + 1) = g.w;
  }
  return M;
}

Form7 d_dt(const std::vector<G2Sample>& s, std::size_t k, double h, bool star) {
  auto f = [&](std::size_t i) -> const Form7& { return star ? s[i].star_phi : s[i].phi; };
  if (s.size() >= 5) {
    return (f(k - 2) - 8.0 * f(k - 1) + 8.0 * f(k + 1) - f(k + 2)) * (1.0 / (12.0 * h));
  }
  return (f(k + 1) - f(k - 1)) * (1.0 / (2.0 * h));
}

struct Fit {
  double at_zero = 0.0;
  double odd = 0.0;
};

// Least-squares polynomial in τ = t/t_max; odd coefficients relative to the largest one.
Fit parity_fit(const std::vector<double>& t, const std::vector<double>& v) {
  const double tmax = *std::max_element(t.begin(), t.end());
  const int n = static_cast<int>(t.size());
  Eigen::MatrixXd A(n, kFitDegree + 1);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    const double tau = t[i] / tmax;
    double pw = 1.0;
    for (int k = 0; k <= kFitDegree; ++k) {
      A(i, k) = pw;
      pw *= tau;
    }
    b(i) = v[i];
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
  double big = 0.0, odd = 0.0;
  for (int k = 0; k <= kFitDegree; ++k) {
    big = std::max(big, std::fabs(c(k)));
    if (k % 2) odd = std::max(odd, std::fabs(c(k)));
  }
  return {c(0), big > 0.0 ? odd / big : 0.0};
}

std::vector<double> radial_nodes(double t_max, int n) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = 0.5 * t_max * (1.0 - std::cos(std::numbers::pi * (i + 1) / n));
  return t;
}

const BFormD kBSTorsion{1.0, 0.0, -1.0, 0.0};

}  // namespace

CEOp7 extend_to_seven(const CEOpD& d) {
  CEOp7 out;
  for (int i = 0; i < 6; ++i) out.images[i] = lift(d.images[i]);
  return out;
}

std::vector<double> uniform_times(double t0, double h, int n) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = t0 + h * i;
  return t;
}

G2Assembly assemble_g2(const BFormD& p, const BFormD& q0, const std::vector<double>& times, const G2Options& opt) {
  G2Assembly out;
  GL2D g = opt.frame0;
  const KFormD vol = volume_form<double>();
  const KFormD sigma0 = sigma_form<double>();
  for (double t : times) {
    G2Sample smp;
    smp.t = t;
    try {
      smp.s = t == 0.0 ? 0.0 : line_parameter_at(p, q0, t);
    } catch (const std::domain_error&) {
      out.truncated = true;
      out.report = "t = " + std::to_string(t) + " lies past the end of the flow";
      break;
    }
    smp.q = q0 + smp.s * p + t * opt.perturbation;
    const double delta = discriminant(smp.q);
    if (!(delta > 0.0)) {
      out.truncated = true;
      out.report = "discriminant " + std::to_string(delta) + " at t = " + std::to_string(t) +
                   "; no frame with det g > 0";
      break;
    }
    smp.detg = std::pow(0.75 * delta, 1.0 / 6.0);
    g = nearest_frame(smp.q, g);
    const KFormD gamma = invariant_3form(smp.q);
    const KFormD gamma_hat = hitchin_dual(gamma, vol);
    const KFormD sigma = smp.detg * sigma0;
    smp.phi = double(opt.convention.sigma_sign) * wedge(lift(sigma), dt7()) + lift(gamma);
    smp.star_phi = 0.5 * lift(wedge(sigma, sigma)) + double(opt.convention.dual_sign) * wedge(lift(gamma_hat), dt7());
    const auto G = gram(g);
    for (int i = 0; i < 6; i += 2) {
      smp.metric7(i, i) = G.x;
      smp.metric7(i, i + 1) = G.y;
      smp.metric7(i + 1, i) = G.z;
      smp.metric7(i + 1, i + 1) = G.w;
    }
    smp.metric7(6, 6) = 1.0;
    out.samples.push_back(std::move(smp));
  }
  return out;
}

G2Assembly assemble_g2(const Trajectory& traj, const G2Options& opt) {
  std::vector<double> times;
  for (const auto& st : traj.samples)
    if (discriminant(st.q) > 0.0) times.push_back(st.t);
  G2Options o = opt;
  if (!times.empty()) {
    const double s = line_parameter_at(traj.p, traj.q0, times.front());
    o.frame0 = q_invert(traj.q0 + s * traj.p).front();
  }
  return assemble_g2(traj.p, traj.q0, times, o);
}

ClosednessReport check_closedness(const std::vector<G2Sample>& samples, const CEOpD& d) {
  ClosednessReport r;
  if (samples.size() < 3) throw std::invalid_argument("closedness needs at least 3 samples");
  const double h = samples[1].t - samples[0].t;
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (std::fabs(samples[i].t - samples[i - 1].t - h) > 1e-9 * std::max(1.0, std::fabs(h)))
      throw std::invalid_argument("closedness needs equally spaced samples");
  const CEOp7 d7 = extend_to_seven(d);
  const std::size_t w = samples.size() >= 5 ? 2 : 1;
  for (std::size_t k = w; k + w < samples.size(); ++k) {
    const Form7 dphi = apply_d(d7, samples[k].phi) + wedge(dt7(), d_dt(samples, k, h, false));
    const Form7 dstar = apply_d(d7, samples[k].star_phi) + wedge(dt7(), d_dt(samples, k, h, true));
    r.max_dphi = std::max(r.max_dphi, dphi.max_abs());
    r.max_dstar_phi = std::max(r.max_dstar_phi, dstar.max_abs());
    ++r.interior_points;
  }
  return r;
}

std::vector<ConventionTrial> convention_scan(double h, double tol) {
  const ModelD nk{BFormD{-1.0, 0.0}, BFormD{1.0, 0.0, -3.0}};
  const CEOpD d = structure_constants(nk);
  const BFormD p = torsion_from_coframe(d, 1e-12);
  const BFormD q0 = q_map(GL2D::identity());
  std::vector<ConventionTrial> out;
  for (int a : {1, -1})
    for (int b : {1, -1}) {
      G2Options opt;
      opt.convention = {a, b};
      const auto A = assemble_g2(p, q0, uniform_times(0.2, h, 7), opt);
      ConventionTrial tr{opt.convention, check_closedness(A.samples, d), false};
      tr.closed = tr.report.max_dphi < tol && tr.report.max_dstar_phi < tol;
      out.push_back(tr);
    }
  return out;
}

BSCoefficients bs_coefficients(double lambda, double z) {
  if (!(lambda > 0.0)) throw std::invalid_argument("Bryant-Salamon parameter must be positive");
  const double r = z * z + lambda;
  return {std::cbrt(9.0) * std::pow(r, 2.0 / 3.0), 4.0 / std::cbrt(3.0 * r)};
}

Matrix<double> bs_metric(double lambda, double z) {
  const auto c = bs_coefficients(lambda, z);
  Matrix<double> M(7, 7);
  for (int i = 0; i < 3; ++i) M(i, i) = c.base;
  for (int i = 3; i < 7; ++i) M(i, i) = c.fibre;
  return M;
}

BSComparison bs_from_flow(double lambda, const std::vector<double>& z_values) {
  BSComparison out;
  const BFormD q0{lambda, 0.0, 0.0, 0.0};
  for (double z : z_values) {
    if (z == 0.0) continue;
    const double s = z * z;
    const BFormD q = q0 + s * kBSTorsion;
    const auto G = gram(q_invert(q).front());
    const double detg = std::pow(0.75 * discriminant(q), 1.0 / 6.0);
    const auto bs = bs_coefficients(lambda, z);
    out.max_base_error = std::max(out.max_base_error, std::fabs(G.x - bs.base));
    out.max_radial_error = std::max(out.max_radial_error, std::fabs(4.0 * s / (detg * detg) - bs.fibre));
    out.max_angular_error = std::max(out.max_angular_error, std::fabs(4.0 * G.w / s - bs.fibre));
    out.max_offdiag = std::max(out.max_offdiag, std::fabs(G.y));
  }
  return out;
}

SmoothnessReport smoothness_check(const std::vector<RadialSample>& samples, double bracket, double tol) {
  if (samples.size() < kFitDegree + 2) throw std::invalid_argument("too few radial samples");
  if (bracket == 0.0) throw std::invalid_argument("stabilizer bracket must be nonzero");
  const double kappa = 2.0 / bracket;
  std::vector<double> t, base, ratio;
  for (const auto& s : samples) {
    if (!(s.t > 0.0)) throw std::invalid_argument("radial samples need t > 0");
    t.push_back(s.t);
    base.push_back(s.base);
    ratio.push_back(kappa * kappa * s.fibre / (s.t * s.t));
  }
  const Fit fb = parity_fit(t, base);
  const Fit ff = parity_fit(t, ratio);
  SmoothnessReport r;
  r.base_at_zero = fb.at_zero;
  r.base_odd = fb.odd;
  r.fibre_ratio_at_zero = ff.at_zero;
  r.fibre_odd = ff.odd;
  r.obstruction = (1.0 - ff.at_zero) / 4.0;
  r.smooth = fb.at_zero > 0.0 && fb.odd < kOddTol && ff.odd < kOddTol && std::fabs(ff.at_zero - 1.0) < tol;
  return r;
}

double stabilizer_bracket(const CEOpD& d) {
  // de²(e4, e6) = −e²([e4, e6]).
  return -d[2].coeff({4, 6});
}

std::vector<RadialSample> radial_samples(const BFormD& p, const BFormD& q0, double t_max, int n) {
  if (std::fabs(discriminant(q0)) > 1e-12 * std::max(1.0, std::pow(q0.max_abs(), 4)))
    throw std::invalid_argument("radial samples start at a special orbit (discriminant zero)");
  const LineInterval I = flow_interval(p, q0);
  const double dir = I.bounded_below && I.s_minus == 0.0 ? 1.0 : -1.0;
  std::vector<RadialSample> out;
  for (double t : radial_nodes(t_max, n)) {
    const double s = line_parameter_at(p, q0, dir * t);
    const auto G = gram(q_invert(q0 + s * p).front());
    out.push_back({t, G.x, G.w});
  }
  return out;
}

std::vector<RadialSample> case2_radial_samples(double lambda, double t_max, int n) {
  return radial_samples(BFormD{0.0, 0.0, 1.0, 0.0}, BFormD{lambda, 0.0, 0.0, 0.0}, t_max, n);
}

std::vector<RadialSample> case3_radial_samples(double lambda, double t_max, int n) {
  return radial_samples(kBSTorsion, BFormD{lambda, 0.0, 0.0, 0.0}, t_max, n);
}

std::vector<RadialSample> case2_radial_samples_stated(double lambda, double t_max, int n) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  const BFormD p{0.0, 0.0, 1.0, 0.0}, q0{lambda, 0.0, 0.0, 0.0};
  std::vector<RadialSample> out;
  for (double t : radial_nodes(t_max, n)) {
    const double s = -0.25 * t * t * std::pow(3.0 * lambda, 2.0 / 3.0);
    const auto G = gram(q_invert(q0 + s * p).front());
    out.push_back({t, G.x, G.w});
  }
  return out;
}

GL2 triality_power(int k) {
  k = ((k % 3) + 3) % 3;
  GL2 out = GL2::identity();
  for (int i = 0; i < k; ++i) out = out * triality_matrix();
  return out;
}

Model triality_action(int k, const Model& m) {
  if (classify(m) != LieAlgebraClass::SO3xSO3) throw std::invalid_argument("triality acts on the so(3)+so(3) class only");
  return act(triality_power(k), m);
}

BFormD triality_boundary_cubic(int k, double lambda) {
  return act(triality_power(k).cast<double>(), BFormD{lambda, 0.0, 0.0, 0.0});
}

TrialityComparison triality_compare(double lambda, const std::vector<double>& s_values) {
  TrialityComparison out;
  const BFormD q00 = triality_boundary_cubic(0, lambda);
  for (int k = 1; k < 3; ++k) {
    const GL2D L = triality_power(k).cast<double>();
    const BFormD q0 = triality_boundary_cubic(k, lambda);
    for (double s : s_values) {
      const auto G0 = gram(q_invert(q00 + s * kBSTorsion).front());
      const auto Gk = gram(q_invert(q0 + s * kBSTorsion).front());
      const auto H = L.transpose() * Gk * L;
      out.max_metric_error = std::max({out.max_metric_error, std::fabs(H.x - G0.x), std::fabs(H.y - G0.y),
                                       std::fabs(H.z - G0.z), std::fabs(H.w - G0.w)});
      out.max_time_error =
          std::max(out.max_time_error, std::fabs(time_at(kBSTorsion, q0, s) - time_at(kBSTorsion, q00, s)));
    }
  }
  for (double s : s_values) {
    const auto G0 = gram(q_invert(q00 + s * kBSTorsion).front());
    const auto bs = bs_coefficients(lambda, std::sqrt(s));
    out.max_bs_error = std::max({out.max_bs_error, std::fabs(G0.x - bs.base), std::fabs(4.0 * G0.w / s - bs.fibre)});
  }
  return out;
}

Curvature7 curvature7(const BFormD& p, const BFormD& q0, const CEOpD& d, double t, double h) {
  using Gamma = std::array<std::array<std::array<double, 7>, 7>, 7>;
  const CEOp7 d7 = extend_to_seven(d);
  auto frame = [&](double tt, const GL2D& ref) { return nearest_frame(q0 + line_parameter_at(p, q0, tt) * p, ref); };
  const GL2D g_mid = q_invert(q0 + line_parameter_at(p, q0, t) * p).front();

  // Structure functions C[a][b][c] = c^a_{bc} of the orthonormal frame at time tt.
  auto structure = [&](double tt) {
    const GL2D g = frame(tt, g_mid);
    const Eigen::MatrixXd M = frame6(g);
    const Eigen::MatrixXd Mdot = (frame6(frame(tt - 2 * h, g)) - 8.0 * frame6(frame(tt - h, g)) +
                                  8.0 * frame6(frame(tt + h, g)) - frame6(frame(tt + 2 * h, g))) /
                                 (12.0 * h);
    const Eigen::MatrixXd Minv = M.inverse();
    std::array<Form7, 7> back;
    for (int b = 0; b < 6; ++b) {
      back[b] = Form7(1);
      for (int c = 0; c < 6; ++c) back[b].add(Mask(1) << c, Minv(b, c));
    }
    back[6] = dt7();
    std::array<std::array<std::array<double, 7>, 7>, 7> C{};
    for (int a = 0; a < 6; ++a) {
      Form7 dE(2);
      for (int b = 0; b < 6; ++b) {
        dE += M(a, b) * d7.images[b];
        dE += Mdot(a, b) * wedge(dt7(), Form7::basis({b + 1}));
      }
      const Form7 inE = substitute(dE, back);
      for (const auto& [m, c] : inE.terms()) {
        const auto idx = indices_of(m);
        C[a][idx[0] - 1][idx[1] - 1] = -c;
        C[a][idx[1] - 1][idx[0] - 1] = c;
      }
    }
    return C;
  };
  auto connection = [&](double tt) {
    const auto C = structure(tt);
    auto c = [&](int i, int j, int k) { return C[k][i][j]; };
    Gamma G{};
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        for (int k = 0; k < 7; ++k) G[i][j][k] = 0.5 * (c(i, j, k) - c(j, k, i) + c(k, i, j));
    return std::pair{C, G};
  };
  const auto [C, G] = connection(t);
  const Gamma G2m = connection(t - 2 * h).second, G1m = connection(t - h).second;
  const Gamma G1p = connection(t + h).second, G2p = connection(t + 2 * h).second;
  auto dG = [&](int i, int j, int k, int l) {
    if (i != 6) return 0.0;
    return (G2m[j][k][l] - 8.0 * G1m[j][k][l] + 8.0 * G1p[j][k][l] - G2p[j][k][l]) / (12.0 * h);
  };

  Curvature7 out;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k)
        for (int l = 0; l < 7; ++l) {
          double r = dG(i, j, k, l) - dG(j, i, k, l);
          for (int m = 0; m < 7; ++m) {
            r += G[j][k][m] * G[i][m][l] - G[i][k][m] * G[j][m][l];
            r -= C[m][i][j] * G[m][k][l];
          }
          out.riemann_max = std::max(out.riemann_max, std::fabs(r));
          if (i == l) out.ricci(j, k) += r;
        }
  return out;
}

}  // namespace hflat
