#include "hflat/flow.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace hflat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using PolyD = Poly<double>;

double poly_scale(const PolyD& d) {
  double s = 0.0;
  for (double v : d.c) s = std::max(s, std::fabs(v));
  return s;
}

// Coefficients of d(e + h) in h.
PolyD shifted(const PolyD& d, double e) {
  PolyD out{std::vector<double>(d.c.size(), 0.0)};
  // Repeated synthetic division by (s − e).
  std::vector<double> work = d.c;
  for (std::size_t k = 0; k < d.c.size(); ++k) {
    const std::size_t n = work.size();
    double carry = 0.0;
    std::vector<double> quot(n > 0 ? n - 1 : 0, 0.0);
    for (std::size_t i = n; i-- > 0;) {
      const double v = work[i] + carry;
      if (i == 0)
        out.c[k] = v;
      else
        quot[i - 1] = v;
      carry = v * e;
    }
    work = quot;
    if (work.empty()) break;
  }
  return out;
}

// Order of vanishing of d at e, relative to the size of its Taylor coefficients.
int vanishing_order(const PolyD& d, double e, double rel = 1e-9) {
  const PolyD t = shifted(d, e);
  const double scale = poly_scale(t);
  if (scale == 0.0) return 0;
  int k = 0;
  while (k + 1 < static_cast<int>(t.c.size()) && std::fabs(t.c[k]) <= rel * scale) ++k;
  return k;
}

// Multiplicities of real roots of d at a and b (within 1e-10); a root near both goes to the closer end.
std::array<int, 2> root_orders(const PolyD& d, double a, double b) {
  std::vector<double> c = d.c;
  const double scale = poly_scale(d);
  while (!c.empty() && std::fabs(c.back()) <= 1e-14 * scale) c.pop_back();
  std::array<int, 2> out{0, 0};
  if (c.size() <= 1) return out;
  for (const auto& [r, k] : real_roots_with_multiplicity(c)) {
    const double da = std::fabs(r - a), db = std::fabs(r - b);
    const bool near_a = da <= 1e-10 * std::max(1.0, std::fabs(a));
    const bool near_b = db <= 1e-10 * std::max(1.0, std::fabs(b));
    if (near_a && (!near_b || da <= db))
      out[0] = k;
    else if (near_b)
      out[1] = k;
  }
  return out;
}

// d / (s − e)^k by synthetic division, remainder dropped.
PolyD deflate(PolyD d, double e, int k) {
  for (int j = 0; j < k && d.c.size() > 1; ++j) {
    const std::size_t n = d.c.size();
    std::vector<double> quot(n - 1, 0.0);
    double carry = 0.0;
    for (std::size_t i = n; i-- > 1;) {
      const double v = d.c[i] + carry;
      quot[i - 1] = v;
      carry = v * e;
    }
    d.c = quot;
  }
  return d;
}

// Real roots of d other than those at s = 0 of order k0.
std::vector<double> roots_away_from_zero(const PolyD& d, int k0) {
  PolyD r = deflate(d, 0.0, k0);
  const double scale = poly_scale(r);
  std::vector<double> c = r.c;
  while (!c.empty() && std::fabs(c.back()) <= 1e-14 * scale) c.pop_back();
  if (c.size() <= 1) return {};
  std::vector<double> out;
  for (double s : real_roots(c))
    if (std::fabs(s) > 1e-12) out.push_back(s);
  return out;
}

double three_quarter_root(double delta) { return std::pow(0.75 * std::max(delta, 0.0), 1.0 / 6.0); }

template <class S>
bool small(const S& v, double bound) {
  return Scalar<S>::magnitude(v) <= bound;
}

// Shared endpoint analysis; tol = 0 gives exact decisions for rational input.
template <class S>
EndpointInfo classify_endpoint(const BinaryForm<S>& p, const BinaryForm<S>& q, double tol) {
  if (p.degree() != 3 || q.degree() != 3) throw std::invalid_argument("cubics expected");
  const double qs = std::max(1.0, q.max_abs()), ps = p.max_abs();
  if (p.is_zero() || ps == 0.0) throw std::domain_error("invalid endpoint: zero torsion gives a static solution");
  if (!small(discriminant(q), tol * qs * qs * qs * qs))
    throw std::domain_error("invalid endpoint: discriminant is nonzero");

  const auto line = discriminant_along_line(q, p);
  auto side_of = [&](const Poly<S>& d) {
    double scale = 0.0;
    for (const auto& v : d.c) scale = std::max(scale, Scalar<S>::magnitude(v));
    int k = 0;
    const int n = static_cast<int>(d.c.size());
    while (k < n && small(d.c[k], tol * scale)) ++k;
    if (k == n) throw std::domain_error("invalid endpoint: discriminant vanishes along the whole line");
    const bool plus = to_double(d.c[k]) > 0.0;
    const bool minus = (k % 2 == 1) ? to_double(d.c[k]) < 0.0 : plus;
    if (!plus && !minus) throw std::domain_error("invalid endpoint: no positive discriminant on either side");
    return plus && minus ? 2 : (plus ? 1 : -1);
  };

  EndpointInfo out;
  if (q.max_abs() <= tol * qs || q.is_zero()) {
    out.kind = EndpointKind::ZeroCubic;
    out.side = side_of(line);
    return out;
  }

  // Triple root: q = λ f³ with f = u1 + r u2 or f = u2.
  BinaryForm<S> f(1);
  if (Scalar<S>::magnitude(q[0]) >= Scalar<S>::magnitude(q[3])) {
    f = BinaryForm<S>{S(1), S(q[1] / (S(3) * q[0]))};
  } else {
    f = BinaryForm<S>{S(q[2] / (S(3) * q[3])), S(1)};
  }
  const BinaryForm<S> f3 = multiply(multiply(f, f), f);
  const S lam = Scalar<S>::magnitude(q[0]) >= Scalar<S>::magnitude(q[3]) ? S(q[0] / f3[0]) : S(q[3] / f3[3]);
  if (!((q - lam * f3).max_abs() <= tol * qs))
    throw std::domain_error("invalid endpoint: the repeated root is not a triple root");

  // f vanishes at (f2, −f1).
  if (!small(p.evaluate(f[1], S(-f[0])), tol * ps * 8.0))
    throw std::domain_error("invalid endpoint: the triple root does not divide p");
  if (!small(cubic_pairing(p, q), tol * ps * qs * 8.0)) throw std::domain_error("invalid endpoint: not half-flat");

  out.kind = EndpointKind::TripleRootDividingP;
  out.side = side_of(line);
  double f1 = to_double(f[0]), f2 = to_double(f[1]);
  const double n = std::hypot(f1, f2);
  double sign = (f1 > 0.0 || (f1 == 0.0 && f2 > 0.0)) ? 1.0 : -1.0;
  f1 *= sign / n;
  f2 *= sign / n;
  out.root = BFormD{f1, f2};
  out.lambda_coefficient = to_double(lam) * std::pow(sign * n, 3);
  return out;
}

double frame_distance(const GL2D& a, const GL2D& b) {
  return std::hypot(std::hypot(a.x - b.x, a.y - b.y), std::hypot(a.z - b.z, a.w - b.w));
}

// 4×4 matrix of a linear map on cubics.
template <class F>
Eigen::Matrix4d cubic_matrix(F&& map) {
  Eigen::Matrix4d M;
  for (int j = 0; j < 4; ++j) {
    BFormD e(3);
    e[j] = 1.0;
    const BFormD img = map(e);
    for (int i = 0; i < 4; ++i) M(i, j) = img[i];
  }
  return M;
}

Eigen::Matrix4d contraction_matrix(double a, double b, double c) {
  return cubic_matrix([&](const BFormD& e) { return contraction_field(a, b, c, e); });
}

}  // namespace

std::string to_string(EndpointKind k) {
  return k == EndpointKind::ZeroCubic ? "ZeroCubic" : "TripleRootDividingP";
}

FlowState initial_state(const BFormD& p, const BFormD& q0) {
  const double delta = discriminant(q0);
  const double scale = std::max(1.0, q0.max_abs());
  if (delta < -1e-12 * std::pow(scale, 4)) throw std::domain_error("initial cubic has negative discriminant");
  return FlowState{q0, p, 0.0, 0.0, three_quarter_root(delta)};
}

double clock_integral(const BFormD& q0, const BFormD& p, double a, double b) {
  if (a == b) return 0.0;
  if (a > b) return -clock_integral(q0, p, b, a);
  const PolyD d = discriminant_along_line(q0, p);
  const auto [ka, kb] = root_orders(d, a, b);
  const PolyD r = deflate(deflate(d, a, ka), b, kb);
  auto integrand = [&](double s, double xc) {
    const double da = xc < 0.0 ? -xc : s - a;
    const double db = xc > 0.0 ? xc : b - s;
    return std::pow(0.75 * std::fabs(r(s)), -1.0 / 6.0) * std::pow(da, -ka / 6.0) * std::pow(db, -kb / 6.0);
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(integrand, a, b, 1e-14);
}

AdvanceResult advance(const FlowState& state, double ds) {
  AdvanceResult out{state, false};
  if (ds == 0.0) return out;
  const PolyD d = discriminant_along_line(state.q, state.p);
  const int k0 = vanishing_order(d, 0.0);
  double step = ds;
  if (!state.p.is_zero()) {
    for (double r : roots_away_from_zero(d, k0)) {
      if (ds > 0.0 && r > 0.0 && r <= step) {
        step = r;
        out.hit_boundary = true;
      }
      if (ds < 0.0 && r < 0.0 && r >= step) {
        step = r;
        out.hit_boundary = true;
      }
    }
  }
  out.state.t += clock_integral(state.q, state.p, 0.0, step);
  out.state.q = state.q + step * state.p;
  out.state.s += step;
  out.state.detg = out.hit_boundary ? 0.0 : three_quarter_root(discriminant(out.state.q));
  return out;
}

LineInterval flow_interval(const BFormD& p, const BFormD& q0) {
  LineInterval out;
  const PolyD d = discriminant_along_line(q0, p);
  const double scale = poly_scale(d);
  const double d0 = d(0.0);
  if (p.is_zero()) {
    if (!(d0 > 0.0)) throw std::domain_error("static cubic with non-positive discriminant");
    return out;
  }
  if (d0 < -1e-12 * scale) throw std::domain_error("initial cubic has negative discriminant");
  const int k0 = vanishing_order(d, 0.0);
  int side = 1;
  if (k0 > 0) {
    const PolyD t = shifted(d, 0.0);
    const bool plus = t.c[k0] > 0.0;
    const bool minus = (k0 % 2 == 1) ? t.c[k0] < 0.0 : plus;
    if (!plus && !minus) throw std::domain_error("no positive discriminant next to the initial cubic");
    side = plus ? 1 : -1;
  }
  double lo = -kInf, hi = kInf;
  for (double r : roots_away_from_zero(d, k0)) {
    if (r > 0.0) hi = std::min(hi, r);
    if (r < 0.0) lo = std::max(lo, r);
  }
  if (k0 > 0) {
    if (side > 0)
      lo = 0.0;
    else
      hi = 0.0;
  }
  out.bounded_below = std::isfinite(lo);
  out.bounded_above = std::isfinite(hi);
  out.s_minus = out.bounded_below ? lo : 0.0;
  out.s_plus = out.bounded_above ? hi : 0.0;
  return out;
}

double time_at(const BFormD& p, const BFormD& q0, double s) { return clock_integral(q0, p, 0.0, s); }

double line_parameter_at(const BFormD& p, const BFormD& q0, double t) {
  if (t == 0.0) return 0.0;
  const LineInterval I = flow_interval(p, q0);
  const double dir = t > 0.0 ? 1.0 : -1.0;
  const bool bounded = dir > 0 ? I.bounded_above : I.bounded_below;
  const double end = dir > 0 ? I.s_plus : I.s_minus;
  double lo = 0.0, hi;
  if (bounded) {
    hi = end;
    if (std::fabs(time_at(p, q0, hi)) < std::fabs(t)) throw std::domain_error("time beyond the end of the flow");
  } else {
    hi = dir;
    while (std::fabs(time_at(p, q0, hi)) < std::fabs(t)) hi *= 2.0;
  }
  // Bracket [lo, hi] in the direction of t; f(s) = t(s) − t is monotone. Newton steps that leave
  // the bracket or fail to halve it fall back to bisection.
  double s = 0.5 * (lo + hi);
  double last_step = std::fabs(hi - lo);
  for (int it = 0; it < 300; ++it) {
    const double f = time_at(p, q0, s) - t;
    if (std::fabs(f) <= 1e-15 * std::max(1.0, std::fabs(t))) return s;
    if (f * dir > 0.0)
      hi = s;
    else
      lo = s;
    const double rate = three_quarter_root(discriminant(q0 + s * p));
    double next = s - f * rate;
    const bool inside = next * dir > std::min(lo * dir, hi * dir) && next * dir < std::max(lo * dir, hi * dir);
    if (!inside || std::fabs(next - s) > 0.5 * last_step) next = 0.5 * (lo + hi);
    last_step = std::fabs(next - s);
    if (std::fabs(hi - lo) <= 1e-16 * std::max(1.0, std::fabs(s))) return next;
    s = next;
  }
  return s;
}

GL2D frame_along_line(const BFormD& p, const BFormD& q0, double s, const GL2D& g0) {
  if ((q_map(g0) - q0).max_abs() > 1e-9 * std::max(1.0, q0.max_abs()))
    throw std::invalid_argument("initial frame does not map to q0");
  const int steps = 64;
  GL2D g = g0;
  for (int k = 1; k <= steps; ++k) {
    const auto cands = q_invert(q0 + (s * k / steps) * p);
    auto best = std::min_element(cands.begin(), cands.end(), [&](const GL2D& a, const GL2D& b) {
      return frame_distance(a, g) < frame_distance(b, g);
    });
    g = *best;
  }
  return g;
}

Trajectory integrate_line(const BFormD& p, const BFormD& q0, double ds, double s_max) {
  if (!(ds > 0.0) || !(s_max > 0.0)) throw std::invalid_argument("ds and s_max must be positive");
  Trajectory out;
  out.p = p;
  out.q0 = q0;
  out.static_solution = p.is_zero();
  out.interval = flow_interval(p, q0);
  const FlowState start = initial_state(p, q0);
  const LineInterval& I = out.interval;
  const double hi = I.bounded_above ? std::min(I.s_plus, s_max) : s_max;
  const double lo = I.bounded_below ? std::max(I.s_minus, -s_max) : -s_max;

  std::vector<FlowState> back;
  for (double dir : {-1.0, 1.0}) {
    const double end = dir > 0 ? hi : lo;
    FlowState st = start;
    while (std::fabs(end - st.s) > 1e-15 * std::max(1.0, std::fabs(end))) {
      const double step = dir * std::min(ds, std::fabs(end - st.s));
      const AdvanceResult r = advance(st, step);
      st = r.state;
      if (dir > 0)
        out.samples.push_back(st);
      else
        back.push_back(st);
      if (r.hit_boundary) break;
    }
  }
  std::reverse(back.begin(), back.end());
  back.push_back(start);
  back.insert(back.end(), out.samples.begin(), out.samples.end());
  out.samples = std::move(back);

  auto report = [&](bool bounded, double s_end) {
    BoundaryReport b;
    b.finite = bounded;
    if (!bounded) return b;
    b.s = s_end;
    b.t_finite = true;
    b.t = time_at(p, q0, s_end);
    try {
      b.endpoint = endpoint_classify(p, q0 + s_end * p, 1e-8);
      b.g_extends = true;
    } catch (const std::domain_error& e) {
      b.rejection = e.what();
    }
    return b;
  };
  out.lower = report(I.bounded_below, I.s_minus);
  out.upper = report(I.bounded_above, I.s_plus);
  return out;
}

EndpointInfo endpoint_classify(const BFormD& p, const BFormD& q_end, double tol) {
  return classify_endpoint(p, q_end, tol);
}

EndpointInfo endpoint_classify(const BForm& p, const BForm& q_end) { return classify_endpoint(p, q_end, 0.0); }

LineWitness no_complete_line_witness(const BFormD& p) {
  if (p.degree() != 3 || p.is_zero()) throw std::invalid_argument("nonzero cubic expected");
  if (std::fabs(p[1] - p[3]) > 1e-12 * p.max_abs()) throw std::invalid_argument("p is not half-flat");
  const BFormD q0 = q_map(GL2D::identity());
  const PolyD d = discriminant_along_line(q0, p);
  LineWitness out;
  out.leading_coefficient = d.c.size() > 4 ? d.c[4] : 0.0;
  std::vector<double> c = d.c;
  const double scale = poly_scale(d);
  while (!c.empty() && std::fabs(c.back()) <= 1e-14 * scale) c.pop_back();
  out.real_roots = c.size() > 1 ? real_roots(c) : std::vector<double>{};
  std::vector<double> cands = out.real_roots;
  const PolyD dd = d.derivative();
  std::vector<double> dc = dd.c;
  while (!dc.empty() && std::fabs(dc.back()) <= 1e-14 * scale) dc.pop_back();
  if (dc.size() > 1)
    for (double s : real_roots(dc)) cands.push_back(s);
  const std::size_t n = cands.size();
  std::sort(cands.begin(), cands.end());
  for (std::size_t i = 0; i + 1 < n; ++i) cands.push_back(0.5 * (cands[i] + cands[i + 1]));
  const double span = n ? std::max(1.0, cands[n - 1] - cands[0]) : 1.0;
  if (n) {
    cands.push_back(cands[0] - span);
    cands.push_back(cands[n - 1] + span);
  }
  // Prefer strictly negative values, then the closest approach to zero.
  bool found = false;
  for (double s : cands) {
    const double v = d(s);
    if (!found || v < out.discriminant) {
      out.s = s;
      out.discriminant = v;
      found = true;
    }
  }
  if (!found || out.discriminant > 1e-9 * scale)
    throw std::runtime_error("no non-positive discriminant found on the line");
  out.discriminant = discriminant(q0 + out.s * p);
  return out;
}

double dual_differential_coefficient(const CEOpD& d, const BFormD& q) {
  const KFormD dual = hitchin_dual(invariant_3form(q), volume_form<double>());
  const KFormD dd = apply_d(d, dual);
  return 0.5 * dd.coeff(mask_of({1, 2, 3, 4}));
}

OracleResult direct_ode_oracle(const ModelD& m, const GL2D& g0, const std::vector<double>& times, double tol) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<double>;
  const CEOpD d = structure_constants(m);
  const BFormD p = torsion_from_coframe(d, 1e-10);
  const BFormD q0 = q_map(g0);
  const double det = g0.det();
  if (!(det > 0.0)) throw std::invalid_argument("initial frame needs det g > 0");
  if (std::fabs(cubic_pairing(p, q0)) > 1e-10 * std::max(1.0, p.max_abs()) * std::max(1.0, q0.max_abs()))
    throw std::invalid_argument("initial frame is not half-flat");

  auto rhs = [&](const State& y, State& dy, double) {
    if (!(y[4] > 0.0)) throw std::domain_error("sigma^2 left the positive cone");
    const double rc = std::sqrt(y[4]);
    const BFormD q{y[0], y[1], y[2], y[3]};
    for (int i = 0; i < 4; ++i) dy[i] = rc * p[i];
    dy[4] = -2.0 * dual_differential_coefficient(d, q);
  };

  OracleResult out;
  std::vector<double> pos{0.0}, neg{0.0};
  for (double t : times) {
    if (t > 0.0) pos.push_back(t);
    if (t < 0.0) neg.push_back(t);
  }
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end(), std::greater<>());
  const bool want_zero = std::find(times.begin(), times.end(), 0.0) != times.end();

  std::vector<OracleSample> forward, backward;
  for (auto* list : {&pos, &neg}) {
    if (list->size() < 2) continue;
    auto& dest = list == &pos ? forward : backward;
    State y{q0[0], q0[1], q0[2], q0[3], det * det};
    auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_dopri5<State>());
    auto observer = [&](const State& s, double t) {
      if (t != 0.0) dest.push_back({t, BFormD{s[0], s[1], s[2], s[3]}, s[4]});
    };
    try {
      const double dt0 = ((*list)[1] - (*list)[0]) * 1e-3;
      odeint::integrate_times(stepper, rhs, y, list->begin(), list->end(), dt0, observer);
    } catch (const std::exception& e) {
      out.terminated = true;
      out.report = e.what();
    }
  }
  std::reverse(backward.begin(), backward.end());
  out.samples = std::move(backward);
  if (want_zero) out.samples.push_back({0.0, q0, det * det});
  out.samples.insert(out.samples.end(), forward.begin(), forward.end());
  return out;
}

int halfflat_invariant_dimension(double a, double b, double c, double tol) {
  const Eigen::Matrix4d M = contraction_matrix(a, b, c);
  Eigen::MatrixXd B(4, 3);
  B << 1, 0, 0,  //
      0, 0, 1,   //
      0, 1, 0,   //
      0, 0, 1;
  for (int it = 0; it < 4 && B.cols() > 0; ++it) {
    // Keep the vectors v of span(B) with M v ∈ span(B).
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(B);
    const Eigen::MatrixXd Qf = qr.householderQ() * Eigen::MatrixXd::Identity(4, B.cols());
    const Eigen::MatrixXd P = Eigen::MatrixXd::Identity(4, 4) - Qf * Qf.transpose();
    const Eigen::MatrixXd C = P * M * Qf;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeFullV);
    const double scale = std::max(1.0, M.norm());
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > tol * scale) ++rank;
    const int keep = static_cast<int>(Qf.cols()) - rank;
    if (keep == Qf.cols()) return keep;
    B = Qf * svd.matrixV().rightCols(keep);
  }
  return static_cast<int>(B.cols());
}

bool ContractionPlane::contains(const BFormD& l, double tol) const {
  const double scale = std::max(1.0, l.max_abs());
  for (const auto& e : equations) {
    double v = 0.0;
    for (int i = 0; i < 4; ++i) v += e[i] * l[i];
    if (std::fabs(v) > tol * scale) return false;
  }
  return true;
}

std::vector<ContractionPlane> halfflat_contraction_planes() {
  return {{{1, 0, 0}, {{{0, 1, 0, 0}, {0, 0, 0, 1}}}},
          {{0, 1, 3}, {{{9, 0, -1, 0}, {0, 1, 0, -1}}}},
          {{0, 1, -1}, {{{1, 0, -1, 0}, {0, 1, 0, -1}}}}};
}

double tangency_residual(double a, double b, double c, const BFormD& l) {
  return 2.0 * (3.0 * b * b - c * c + 2.0 * b * c - 12.0 * a * a) * l[1] + 8.0 * a * (c - b) * l[2];
}

TangencyScan contraction_tangency_scan() {
  const double r3 = std::sqrt(3.0);
  std::vector<double> values{0.0};
  for (double v : {1.0, 2.0, 3.0, r3 / 2.0, r3, 2.0 * r3}) {
    values.push_back(v);
    values.push_back(-v);
  }
  const auto planes = halfflat_contraction_planes();
  std::vector<Eigen::Matrix4d> refs;
  for (const auto& pl : planes) {
    Eigen::Matrix4d R = contraction_matrix(pl.generator[0], pl.generator[1], pl.generator[2]);
    refs.push_back(R / R.norm());
  }
  std::vector<Eigen::Matrix4d> sigma, sigma_inv;
  for (const auto& perm : sigma3_elements()) {
    const GL2D k = sigma3_element(perm);
    sigma.push_back(cubic_matrix([&](const BFormD& e) { return act(k, e); }));
    sigma_inv.push_back(sigma.back().inverse());
  }

  TangencyScan out;
  for (double a : values)
    for (double b : values)
      for (double c : values) {
        if (a == 0.0 && b == 0.0 && c == 0.0) continue;
        ++out.grid_points;
        if (halfflat_invariant_dimension(a, b, c) != 2) continue;
        ++out.passing;
        out.passing_generators.push_back({a, b, c});
        const Eigen::Matrix4d M = contraction_matrix(a, b, c);
        int cls = -1;
        for (std::size_t s = 0; s < sigma.size() && cls < 0; ++s) {
          Eigen::Matrix4d C = sigma[s] * M * sigma_inv[s];
          C /= C.norm();
          for (std::size_t r = 0; r < refs.size(); ++r)
            if ((C - refs[r]).norm() < 1e-9 || (C + refs[r]).norm() < 1e-9) {
              cls = static_cast<int>(r);
              break;
            }
        }
        out.class_of.push_back(cls);
        if (cls >= 0) ++out.class_counts[cls];
      }
  return out;
}

bool flow_preserves_plane(const ContractionPlane& plane, const BFormD& p, double s1, int steps) {
  if (!plane.contains(p)) throw std::invalid_argument("torsion is not in the plane");
  const BFormD q0 = q_map(GL2D::identity());
  GL2D g = GL2D::identity();
  double s = 0.0;
  for (int k = 1; k <= steps; ++k) {
    const double next = s1 * k / steps;
    g = frame_along_line(p, q0 + s * p, next - s, g);
    s = next;
    BFormD l = act(g, p);
    l *= 1.0 / l.max_abs();
    if (!plane.contains(l, 1e-9)) return false;
  }
  return true;
}

double hamiltonian(double a1, double a2, const BFormD& lambda) {
  if (std::fabs(lambda[1] - lambda[3]) > 1e-12 * std::max(1.0, lambda.max_abs()))
    throw std::invalid_argument("hamiltonian needs half-flat torsion");
  if (!(a2 > -1.0)) throw std::domain_error("sigma^2 coefficient must stay positive");
  return volume_gamma(a1, lambda) - 2.0 * std::pow(1.0 + a2, 1.5);
}

std::array<double, 2> hamilton_rhs(double a1, double a2, const BFormD& lambda) {
  if (!(a2 > -1.0)) throw std::domain_error("sigma^2 coefficient must stay positive");
  const auto P = volume_gamma_squared(lambda);
  const double v = volume_gamma(a1, lambda);
  const double dv = P.derivative()(a1) / (2.0 * v);
  return {std::sqrt(1.0 + a2), dv / 3.0};
}

std::vector<HamiltonSample> integrate_hamiltonian(const BFormD& lambda, double t_end, int samples, double tol) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  auto rhs = [&](const State& y, State& dy, double) {
    const auto r = hamilton_rhs(y[0], y[1], lambda);
    dy[0] = r[0];
    dy[1] = r[1];
  };
  std::vector<double> times;
  for (int i = 0; i < samples; ++i) times.push_back(t_end * i / (samples - 1));
  std::vector<HamiltonSample> out;
  State y{0.0, 0.0};
  auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_dopri5<State>());
  odeint::integrate_times(stepper, rhs, y, times.begin(), times.end(), t_end / samples * 1e-2,
                          [&](const State& s, double t) {
                            out.push_back({t, s[0], s[1], hamiltonian(s[0], s[1], lambda)});
                          });
  return out;
}

double case2_line_parameter(double lambda, double t) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  return -0.25 * t * t * std::cbrt(3.0 * lambda);
}

}  // namespace hflat
