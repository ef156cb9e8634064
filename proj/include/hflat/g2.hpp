#pragma once

#include "hflat/flow.hpp"

#include <array>
#include <string>
#include <vector>

namespace hflat {

using Form7 = Form<double, 7>;
using CEOp7 = CEOperator<double, 7>;

/// Signs in φ = a·σ∧dt + γ and *φ = ½σ² + b·γ̂∧dt; dt is the seventh basis 1-form.
struct G2Convention {
  int sigma_sign = 1;
  int dual_sign = 1;
  friend bool operator==(const G2Convention&, const G2Convention&) = default;
};

/// Fixed by convention_scan on the nearly-Kähler cone.
inline constexpr G2Convention kG2Convention{1, 1};

struct G2Sample {
  double t = 0.0;
  double s = 0.0;
  BFormD q;
  double detg = 0.0;
  Form7 phi{3};
  Form7 star_phi{4};
  Matrix<double> metric7{7, 7};  // g₆(t) + dt² in the basis e¹..e⁶, dt
};

struct G2Assembly {
  std::vector<G2Sample> samples;
  bool truncated = false;
  std::string report;
};

struct G2Options {
  G2Convention convention = kG2Convention;
  BFormD perturbation{0.0, 0.0, 0.0, 0.0};  // q(t) += t·perturbation (negative control)
  GL2D frame0{1.0, 0.0, 0.0, 1.0};           // frame used to pick the q_invert branch at the first sample
};

/// d on the 7-dimensional extension with de⁷ = 0.
CEOp7 extend_to_seven(const CEOpD& d);

/// φ, *φ and the metric at the given times on the line q0 + s·p.
/// Stops with a truncation report at the first time whose cubic has Δ ≤ 0.
G2Assembly assemble_g2(const BFormD& p, const BFormD& q0, const std::vector<double>& times,
                       const G2Options& opt = {});

/// Same, at the sample times of a trajectory.
G2Assembly assemble_g2(const Trajectory& traj, const G2Options& opt = {});

/// t0, t0 + h, ..., n points.
std::vector<double> uniform_times(double t0, double h, int n);

struct ClosednessReport {
  double max_dphi = 0.0;
  double max_dstar_phi = 0.0;
  int interior_points = 0;
};

/// dφ and d*φ with the algebra part from d and ∂t by 4th-order central differences
/// (2nd order when only 3 samples exist). Samples must be equally spaced.
ClosednessReport check_closedness(const std::vector<G2Sample>& samples, const CEOpD& d);

struct ConventionTrial {
  G2Convention convention;
  ClosednessReport report;
  bool closed = false;
};

/// All four sign variants on the nearly-Kähler cone, with their closedness residuals.
std::vector<ConventionTrial> convention_scan(double h = 1e-3, double tol = 1e-6);

/// Bryant-Salamon coefficients: base 3^{2/3}(z²+λ)^{2/3}, fibre 4·3^{−1/3}(z²+λ)^{−1/3}.
struct BSCoefficients {
  double base = 0.0;
  double fibre = 0.0;
};
BSCoefficients bs_coefficients(double lambda, double z);

/// Diagonal 7×7 metric over (e¹, e³, e⁵, dx⁰..dx³).
Matrix<double> bs_metric(double lambda, double z);

/// Flow data for p = u1(u1²−u2²), q0 = λu1³ at s = z², compared with bs_coefficients.
struct BSComparison {
  double max_base_error = 0.0;     // x² against base
  double max_radial_error = 0.0;   // (dt/dz)² against fibre
  double max_angular_error = 0.0;  // 4w²/z² against fibre
  double max_offdiag = 0.0;        // off-diagonal entries of gᵀg
};
BSComparison bs_from_flow(double lambda, const std::vector<double>& z_values);

/// Metric near a special orbit: base·(e¹²+e³²+e⁵²) + fibre·(e²²+e⁴²+e⁶²) + dt², t the distance.
struct RadialSample {
  double t = 0.0;
  double base = 0.0;
  double fibre = 0.0;
};

struct SmoothnessReport {
  bool smooth = false;
  double base_at_zero = 0.0;
  double base_odd = 0.0;       // largest odd Taylor coefficient of base, relative
  double fibre_ratio_at_zero = 0.0;  // κ²·fibre/t² at t = 0, κ = 2/c
  double fibre_odd = 0.0;
  double obstruction = 0.0;    // (1 − fibre ratio)/4, the d|x|²⊗d|x|² coefficient times |x|²
};

/// Evenness-plus-matching test at t = 0. bracket is c with [e4, e6] = c·e2 on the stabilizer.
SmoothnessReport smoothness_check(const std::vector<RadialSample>& samples, double bracket, double tol = 1e-6);

/// [e4, e6] component along e2 (the stabilizer span(e2, e4, e6)).
double stabilizer_bracket(const CEOpD& d);

/// Flow metric near the special orbit at s = 0, sampled at t ∈ (0, t_max].
std::vector<RadialSample> radial_samples(const BFormD& p, const BFormD& q0, double t_max, int n);

/// p = u1u2², q0 = λu1³ and p = u1(u1²−u2²), q0 = λu1³.
std::vector<RadialSample> case2_radial_samples(double lambda, double t_max = 0.4, int n = 40);
std::vector<RadialSample> case3_radial_samples(double lambda, double t_max = 0.4, int n = 40);

/// The case-(2) metric written with the line parameter s = −¼t²(3λ)^{2/3} in place of the flow's.
std::vector<RadialSample> case2_radial_samples_stated(double lambda, double t_max = 0.4, int n = 40);

/// ℓ^k, k taken mod 3.
GL2 triality_power(int k);

/// act(ℓ^k, m); throws std::invalid_argument unless m is in the so(3)⊕so(3) class.
Model triality_action(int k, const Model& m);

/// q0 = act(ℓ^k, λu1³) for the three descriptions of the Bryant-Salamon family.
BFormD triality_boundary_cubic(int k, double lambda);

struct TrialityComparison {
  double max_metric_error = 0.0;  // ℓ^{kᵀ}·gₖᵀgₖ·ℓ^k against g₀ᵀg₀
  double max_time_error = 0.0;
  double max_bs_error = 0.0;      // g₀ᵀg₀ against the Bryant-Salamon coefficients
};
TrialityComparison triality_compare(double lambda, const std::vector<double>& s_values);

/// Curvature of g₆(t) + dt² in an orthonormal frame, 4th-order differences in t.
struct Curvature7 {
  Matrix<double> ricci{7, 7};
  double riemann_max = 0.0;
};
Curvature7 curvature7(const BFormD& p, const BFormD& q0, const CEOpD& d, double t, double h = 1e-3);

}  // namespace hflat
