#pragma once

#include "hflat/variety.hpp"

#include <cmath>
#include <vector>

namespace hflat {

/// Riemann, Ricci and Weyl tensors of the left-invariant metric Σ(e^i)².
template <class S>
struct CurvatureTensors {
  std::vector<S> riemann;  // R_{ijkl} = ⟨R(e_i, e_j)e_k, e_l⟩
  std::vector<S> weyl;
  Matrix<S> ricci;
  S scalar{0};

  static int index(int i, int j, int k, int l) { return ((i * 6 + j) * 6 + k) * 6 + l; }
  const S& R(int i, int j, int k, int l) const { return riemann[index(i, j, k, l)]; }
  const S& W(int i, int j, int k, int l) const { return weyl[index(i, j, k, l)]; }
};

/// Koszul formula on an orthonormal coframe.
template <class S>
CurvatureTensors<S> curvature_tensors(const CEOperator<S, 6>& d, double tol = 0.0) {
  if (d_squared_residual(d) > tol) throw std::domain_error("not a Lie algebra");
  const auto c = bracket_constants(d);  // c[k][i][j] = c^k_{ij}
  auto C = [&](int i, int j, int k) -> const S& { return c[k][i][j]; };
  // ∇_{e_i} e_j = Σ_k G[i][j][k] e_k.
  std::array<std::array<std::array<S, 6>, 6>, 6> G;
  const S half = from_rational<S>(Rational(1, 2));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k) G[i][j][k] = S(half * (C(i, j, k) - C(j, k, i) + C(k, i, j)));

  CurvatureTensors<S> out;
  out.riemann.assign(6 * 6 * 6 * 6, S(0));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k)
        for (int l = 0; l < 6; ++l) {
          S acc(0);
          for (int m = 0; m < 6; ++m) {
            acc += G[j][k][m] * G[i][m][l] - G[i][k][m] * G[j][m][l];
            acc -= C(i, j, m) * G[m][k][l];
          }
          out.riemann[CurvatureTensors<S>::index(i, j, k, l)] = acc;
        }

  out.ricci = Matrix<S>(6, 6);
  for (int j = 0; j < 6; ++j)
    for (int k = 0; k < 6; ++k) {
      S acc(0);
      for (int i = 0; i < 6; ++i) acc += out.R(i, j, k, i);
      out.ricci(j, k) = acc;
    }
  for (int i = 0; i < 6; ++i) out.scalar += out.ricci(i, i);

  // Schouten tensor A = (Ric − s/(2(n−1)) g)/(n−2), n = 6.
  Matrix<S> A(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      S v = out.ricci(i, j);
      if (i == j) v -= out.scalar / S(10);
      A(i, j) = S(v / S(4));
    }
  auto delta = [](int a, int b) { return a == b ? S(1) : S(0); };
  out.weyl.assign(out.riemann.size(), S(0));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k)
        for (int l = 0; l < 6; ++l) {
          S kn = A(j, k) * delta(i, l) - A(i, k) * delta(j, l) + A(i, l) * delta(j, k) - A(j, l) * delta(i, k);
          out.weyl[CurvatureTensors<S>::index(i, j, k, l)] = S(out.R(i, j, k, l) - kn);
        }
  return out;
}

struct CurvatureReport {
  Matrix<double> ricci;
  double scalar = 0.0;
  double ricci_traceless_norm = 0.0;
  double weyl_norm = 0.0;
  double bianchi_residual = 0.0;
};

/// Ricci, scalar and the norms of Ric₀ and W for the metric with e¹..e⁶ orthonormal.
template <class S>
CurvatureReport levi_civita_oracle(const CEOperator<S, 6>& d, double tol = 1e-12) {
  const auto T = curvature_tensors(d, tol);
  CurvatureReport r;
  r.ricci = T.ricci.template cast<double>();
  r.scalar = to_double(T.scalar);
  double ric0 = 0.0, w = 0.0, bianchi = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      double v = r.ricci(i, j) - (i == j ? r.scalar / 6.0 : 0.0);
      ric0 += v * v;
    }
  for (const auto& v : T.weyl) w += std::pow(to_double(v), 2);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k)
        for (int l = 0; l < 6; ++l)
          bianchi = std::max(bianchi, std::fabs(to_double(S(T.R(i, j, k, l) + T.R(j, k, i, l) + T.R(k, i, j, l)))));
  r.ricci_traceless_norm = std::sqrt(ric0);
  r.weyl_norm = std::sqrt(w);
  r.bianchi_residual = bianchi;
  return r;
}

/// Coordinates on C³ ⊕ C¹ with λ = (t1+t3, −3t2+t4, −3t1+t3, t2+t4).
template <class S>
struct TCoords {
  S t1{0}, t2{0}, t3{0}, t4{0};
};

template <class S>
TCoords<S> t_from_lambda(const BinaryForm<S>& l) {
  const S q = from_rational<S>(Rational(1, 4));
  return {S(q * (l[0] - l[2])), S(q * (l[3] - l[1])), S(q * (S(3) * l[0] + l[2])), S(q * (S(3) * l[3] + l[1]))};
}

template <class S>
BinaryForm<S> lambda_from_t(const TCoords<S>& t) {
  return BinaryForm<S>{S(t.t1 + t.t3), S(S(-3) * t.t2 + t.t4), S(S(-3) * t.t1 + t.t3), S(t.t2 + t.t4)};
}

/// Closed-form traceless Ricci and the normalized scalar s = 5t1²+5t2²−t3²−t4².
/// The Koszul scalar curvature equals kScalarNormalization·s.
template <class S>
struct ClosedFormRicci {
  Matrix<S> ric0;
  S scalar;
};

inline constexpr int kScalarNormalization = 6;

template <class S>
ClosedFormRicci<S> ricci_closed_form(const TCoords<S>& t) {
  const S off = S(S(-2) * (t.t4 * t.t1 + S(2) * t.t3 * t.t4 + t.t2 * t.t3));
  const S diag = S(S(2) * (t.t4 * t.t4 - t.t3 * t.t3 + t.t3 * t.t1 - t.t2 * t.t4));
  ClosedFormRicci<S> out{Matrix<S>(6, 6), S(S(5) * t.t1 * t.t1 + S(5) * t.t2 * t.t2 - t.t3 * t.t3 - t.t4 * t.t4)};
  for (int i = 0; i < 6; i += 2) {
    out.ric0(i, i) = diag;
    out.ric0(i + 1, i + 1) = S(-diag);
    out.ric0(i, i + 1) = off;
    out.ric0(i + 1, i) = off;
  }
  return out;
}

/// Ric₀ = 0 for the structure built from m (Koszul oracle).
bool einstein_locus_check(const ModelD& m, double tol = 1e-12);
bool einstein_locus_check(const Model& m);

/// Weyl tensor vanishes (Koszul oracle).
bool conformally_flat_check(const ModelD& m, double tol = 1e-11);
bool conformally_flat_check(const Model& m);

/// Einstein points on the slice x = u1, one per orbit of O(2) = U(1) ⋊ {u2 ↦ −u2} on model points.
struct EinsteinOrbit {
  ModelD point;
  BFormD torsion;
  double scalar_normalized = 0.0;
  double ricci_residual = 0.0;
};

struct EinsteinScanOptions {
  int grid = 10000;
  double tol = 1e-10;
  int jobs = 1;
};

struct EinsteinScanResult {
  std::vector<EinsteinOrbit> orbits;
  int grid_points = 0;
  int converged_seeds = 0;
};

EinsteinScanResult einstein_scan(const EinsteinScanOptions& opt = {});

/// Smallest projective distance between act(R_θ, a) and b over rotations R_θ.
double rotation_orbit_distance(const BFormD& a, const BFormD& b);

/// Same for model points under rotations and the reflection u2 ↦ −u2 (all isometries of the coframe).
double isometry_orbit_distance(const ModelD& a, const ModelD& b);

}  // namespace hflat
