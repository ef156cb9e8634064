#pragma once

#include "hflat/binaryform.hpp"
#include "hflat/stableform.hpp"
#include "hflat/variety.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hflat {

/// A point on the line q(s) = q(0) + s·p with its physical time t and det g = (¾Δ(q))^{1/6}.
struct FlowState {
  BFormD q;
  BFormD p;
  double s = 0.0;
  double t = 0.0;
  double detg = 0.0;
};

enum class EndpointKind { ZeroCubic, TripleRootDividingP };

struct EndpointInfo {
  EndpointKind kind = EndpointKind::ZeroCubic;
  std::optional<BFormD> root;  // f with q = λ f³, unit norm, first nonzero coefficient positive
  double lambda_coefficient = 0.0;
  int side = 0;  // +1: Δ(q + s p) > 0 for small s > 0; −1: for small s < 0; 2: both
};

std::string to_string(EndpointKind k);

/// p(y,−x) − y·∂₁p(w,−z) + x·∂₂p(w,−z); zero iff the frame u g^{-1} is half-flat.
template <class S>
S halfflat_condition(const BinaryForm<S>& p, const Mat2<S>& g) {
  const auto d1 = p.d1(), d2 = p.d2();
  return S(p.evaluate(g.y, S(-g.x)) - g.y * d1.evaluate(g.w, S(-g.z)) + g.x * d2.evaluate(g.w, S(-g.z)));
}

/// p(w,−z) − w·∂₁p(y,−x) + z·∂₂p(y,−x); with the half-flat condition, zero iff u g^{-1} is Hermitian.
template <class S>
S hermitian_condition(const BinaryForm<S>& p, const Mat2<S>& g) {
  const auto d1 = p.d1(), d2 = p.d2();
  return S(p.evaluate(g.w, S(-g.z)) - g.w * d1.evaluate(g.y, S(-g.x)) + g.z * d2.evaluate(g.y, S(-g.x)));
}

/// Torsion of the frame u g^{-1} written out coefficient by coefficient; equals act(g, λ).
/// Composition: frame_change_torsion(frame_change_torsion(λ, g), h) = frame_change_torsion(λ, h·g).
template <class S>
BinaryForm<S> frame_change_torsion(const BinaryForm<S>& l, const Mat2<S>& g) {
  if (l.degree() != 3) throw std::invalid_argument("torsion must be a cubic");
  const S &x = g.x, &y = g.y, &z = g.z, &w = g.w;
  const S &l1 = l[0], &l2 = l[1], &l3 = l[2], &l4 = l[3];
  return BinaryForm<S>{
      S(-l4 * z * z * z + l3 * z * z * w - l2 * z * w * w + l1 * w * w * w),
      S(S(3) * l4 * x * z * z - S(2) * l3 * x * z * w + l2 * x * w * w - l3 * y * z * z + S(2) * l2 * y * z * w -
        S(3) * l1 * y * w * w),
      S(S(-3) * l4 * x * x * z + l3 * x * x * w + S(2) * l3 * x * y * z - S(2) * l2 * x * y * w - l2 * y * y * z +
        S(3) * l1 * y * y * w),
      S(l4 * x * x * x - l3 * x * x * y + l2 * x * y * y - l1 * y * y * y)};
}

/// Starting state at s = t = 0. Requires Δ(q0) ≥ 0.
FlowState initial_state(const BFormD& p, const BFormD& q0);

/// ∫ ds (¾Δ(q0 + s·p))^{−1/6} over [a, b] ⊂ closure of a positive-discriminant interval.
/// Zeros of Δ at a or b are factored out before tanh-sinh quadrature.
double clock_integral(const BFormD& q0, const BFormD& p, double a, double b);

struct AdvanceResult {
  FlowState state;
  bool hit_boundary = false;
};

/// Moves ds along the line; stops at the first zero of Δ inside the step.
AdvanceResult advance(const FlowState& state, double ds);

/// Maximal interval around s = 0 with Δ(q0 + s p) > 0; an endpoint q0 (Δ = 0) is a closed end.
struct LineInterval {
  double s_minus = 0.0;
  double s_plus = 0.0;
  bool bounded_below = false;
  bool bounded_above = false;
};
LineInterval flow_interval(const BFormD& p, const BFormD& q0);

/// Boundary report for one end of the line interval.
struct BoundaryReport {
  bool finite = false;        // s-end is finite
  double s = 0.0;
  bool t_finite = false;      // geodesic length to this end
  double t = 0.0;             // physical time at the end when finite
  std::optional<EndpointInfo> endpoint;  // set when the boundary cubic is an admissible endpoint
  std::string rejection;      // reason when it is not
  bool g_extends = false;     // a frame g(t) has a limit at this end
};

struct Trajectory {
  BFormD p;
  BFormD q0;
  LineInterval interval;
  std::vector<FlowState> samples;  // ascending in s
  BoundaryReport lower, upper;
  bool static_solution = false;
};

/// Samples the line from the interval end (or −s_max) to the other end (or s_max) in steps of ds.
Trajectory integrate_line(const BFormD& p, const BFormD& q0, double ds, double s_max);

/// Physical time t(s) from s = 0.
double time_at(const BFormD& p, const BFormD& q0, double s);

/// Inverse of time_at on the flow interval (safeguarded Newton).
double line_parameter_at(const BFormD& p, const BFormD& q0, double t);

/// Frame g(s) with Q(g) = q0 + s·p, chosen continuously from a given frame at s = 0.
GL2D frame_along_line(const BFormD& p, const BFormD& q0, double s, const GL2D& g0);

/// Classifies a boundary cubic of the line. Throws std::domain_error with "invalid endpoint"
/// when q_end cannot bound a solution.
EndpointInfo endpoint_classify(const BFormD& p, const BFormD& q_end, double tol = 1e-10);
EndpointInfo endpoint_classify(const BForm& p, const BForm& q_end);

/// A line parameter s with Δ(⅓u1³ − u1u2² + s·p) ≤ 0.
struct LineWitness {
  double s = 0.0;
  double discriminant = 0.0;
  double leading_coefficient = 0.0;  // s⁴ coefficient of Δ(s)
  std::vector<double> real_roots;
};
LineWitness no_complete_line_witness(const BFormD& p);

/// Direct integration of γ′ = dσ, (σ²)′ = −2dγ̂ on invariant forms.
/// γ = Φ(q), σ² = c·σ0²; γ̂ is recomputed from γ by the Hitchin dual.
struct OracleSample {
  double t = 0.0;
  BFormD q;
  double c = 0.0;  // σ² = c σ0², so det g = √c
  KFormD gamma() const { return invariant_3form(q); }
  KFormD sigma2() const { return c * wedge(sigma_form<double>(), sigma_form<double>()); }
};
struct OracleResult {
  std::vector<OracleSample> samples;
  bool terminated = false;
  std::string report;
};
OracleResult direct_ode_oracle(const ModelD& m, const GL2D& g0, const std::vector<double>& times,
                               double tol = 1e-12);

/// Coefficient k with dγ̂(q) = k σ0² for the algebra d.
double dual_differential_coefficient(const CEOpD& d, const BFormD& q);

/// Fundamental vector field of A = [[a, b], [c, −a]] on cubics: d/dε act(exp(−εAᵀ), λ).
template <class S>
BinaryForm<S> contraction_field(const S& a, const S& b, const S& c, const BinaryForm<S>& l) {
  return BinaryForm<S>{S(S(3) * a * l[0] + b * l[1]), S(S(3) * c * l[0] + a * l[1] + S(2) * b * l[2]),
                       S(S(2) * c * l[1] - a * l[2] + S(3) * b * l[3]), S(c * l[2] - S(3) * a * l[3])};
}

/// Dimension of the largest X_{a,b,c}-invariant subspace of {λ2 = λ4}.
int halfflat_invariant_dimension(double a, double b, double c, double tol = 1e-9);

struct ContractionPlane {
  std::array<int, 3> generator;          // (a, b, c)
  std::array<std::array<double, 4>, 2> equations;  // λ in the plane iff both vanish
  bool contains(const BFormD& l, double tol = 1e-12) const;
};

/// Π_{1,0,0}, Π_{0,1,3}, Π_{0,1,−1}.
std::vector<ContractionPlane> halfflat_contraction_planes();

/// 2(3b²−c²+2bc−12a²)λ2 + 8a(c−b)λ3, the tangency residual of X_{a,b,c} on Π_{a,b,c}.
double tangency_residual(double a, double b, double c, const BFormD& l);

struct TangencyScan {
  int grid_points = 0;
  int passing = 0;
  std::vector<std::array<double, 3>> passing_generators;
  std::vector<int> class_of;   // index into halfflat_contraction_planes() or −1
  std::array<int, 3> class_counts{};
};

/// Grid over (a, b, c) with entries in {0, ±1, ±2, ±3, ±√3/2, ±√3, ±2√3}; passing generators
/// are matched against the three planes modulo Σ3 conjugation and rescaling.
TangencyScan contraction_tangency_scan();

/// True when the torsion act(g(s), p) of the evolved frame stays in the plane for s ∈ [0, s1].
bool flow_preserves_plane(const ContractionPlane& plane, const BFormD& p, double s1, int steps = 8);

/// H = V(γ) − 2(1+a2)^{3/2} with γ = γ0 + a1·dσ and σ²/2 = (1+a2)σ0²/2.
double hamiltonian(double a1, double a2, const BFormD& lambda);

/// (a1′, a2′) = (√(1+a2), ⅓·∂H/∂a1).
std::array<double, 2> hamilton_rhs(double a1, double a2, const BFormD& lambda);

struct HamiltonSample {
  double t = 0.0, a1 = 0.0, a2 = 0.0, h = 0.0;
};
std::vector<HamiltonSample> integrate_hamiltonian(const BFormD& lambda, double t_end, int samples,
                                                  double tol = 1e-12);

/// s(t) = −¼t²(3λ)^{1/3} for p = u1u2², q(0) = λu1³, t ≤ 0.
double case2_line_parameter(double lambda, double t);

}  // namespace hflat
