// This file is part of parahorm.
// Licensed under the Apache License, Version 2.0. See the LICENSE file.

#ifndef PARAHORM_TRACE_HPP
#define PARAHORM_TRACE_HPP

#include <vector>

#include "parahorm/field.hpp"
#include "parahorm/jets.hpp"

namespace parahorm {

/// C-infinity step: 0 for y <= 0, 1 for y >= 1, strictly monotone between
/// (S(y) = f(y)/(f(y)+f(1-y)) with f(y) = exp(-1/y) for y > 0).
double smooth_step(double y);

/// Smooth cutoff with beta == 1 on [-1,1], beta == 0 outside [-2,2],
/// 0 <= beta <= 1, built from the step S(x) = f(x)/(f(x)+f(1-x)) with
/// f(x) = exp(-1/x) for x > 0. Jets are exact (Taylor arithmetic on the
/// closed form), which is what makes traces of the extension operator exact.
class BumpFunction {
 public:
  double operator()(double tau) const;
  /// Taylor jet of beta at tau (one-sided values at the joints +-1, +-2 play
  /// no role: quadratures split there and traces only use the plateau).
  RealJet jet(double tau, int depth) const;

  static constexpr double plateau_radius = 1.0;
  static constexpr double support_radius = 2.0;
};

/// Cauchy trace data (v_0, ..., v_{r-1}) on the boundary-surrogate grid.
struct TraceVector {
  FrequencyGrid grid;
  std::vector<std::vector<cplx>> v;  // v[k][mode]

  TraceVector(FrequencyGrid g, int r);
  int r() const { return static_cast<int>(v.size()); }
  std::size_t modes() const { return grid.mode_count(); }
};

TraceVector random_trace_vector(const FrequencyGrid& grid, int r, std::uint64_t seed);

double trace_vector_distance(const TraceVector& a, const TraceVector& b);

/// Space-time function represented analytically per spatial mode:
///
///   u_xi(t) = beta(bump_scale * t) * sum_terms e^{rate t} P(t),
///
/// with bump_scale == 0 meaning no cutoff. Traces at t = 0 are exact for any
/// profile; full time derivatives as fields require bump-free modes.
class ModeTimeField {
 public:
  struct ExpPoly {
    cplx rate{0.0, 0.0};
    std::vector<cplx> poly;  // P(t) = sum_q poly[q] t^q
  };
  struct Profile {
    double bump_scale = 0.0;
    std::vector<ExpPoly> terms;
  };

  ModeTimeField(FrequencyGrid grid, int jet_depth);

  const FrequencyGrid& grid() const { return grid_; }
  int jet_depth() const { return jet_depth_; }
  Profile& profile(std::size_t mode) { return modes_[mode]; }
  const Profile& profile(std::size_t mode) const { return modes_[mode]; }

  bool has_bump() const;

  cplx eval_mode(std::size_t mode, double t) const;
  /// d^k/dt^k at t = 0 of the given mode, exact.
  cplx mode_derivative_at0(std::size_t mode, int k) const;

  /// Pointwise space-time evaluation (slow path; harness-grade grids only).
  cplx evaluate(std::span<const double> x, double t) const;

  /// d/dt as a field; requires a bump-free representation.
  ModeTimeField time_derivative() const;

  ModeTimeField& operator+=(const ModeTimeField& o);
  ModeTimeField& scale(cplx s);

 private:
  FrequencyGrid grid_;
  int jet_depth_;
  std::vector<Profile> modes_;
};

/// Cauchy-data trace operator R: (u, d_t u, ..., d_t^{r-1} u) at t = 0.
TraceVector trace_R(const ModeTimeField& u, int r);

/// The explicit right inverse of R:
///   per mode, t -> beta(<xi>^{2b} t) sum_k v_k(xi) t^k / k!,
/// with <xi> = (1 + |xi|^2)^{1/2}. trace_R(extend_T1(v, b), r) == v exactly.
ModeTimeField extend_T1(const TraceVector& v, int b);

struct BumpConstants {
  double c1 = 0.0;  // int |d^m(beta tau^k)|^2 dtau
  double c2 = 0.0;  // int beta^2 |tau|^{2k} dtau
};

/// Both proof constants by adaptive quadrature to 1e-10 relative; throws
/// std::runtime_error if the quadrature does not converge.
BumpConstants bump_constants(int k, int m);

/// Gram matrix G[k][l] = int d^m(beta tau^k) d^m(beta tau^l) dtau, k,l < r.
std::vector<std::vector<double>> bump_gram(int r, int m);

struct ExtensionBoundReport {
  bool pass = false;
  double lhs = 0.0;                 // |T1 v|^2 in the equivalent (2bm, m) norm
  double rhs = 0.0;                 // sum_k w_k |v_k|^2_{H^{2bm-2bk-b}}
  double ratio = 0.0;               // lhs / rhs
  std::vector<double> weights;      // the per-k constants w_k
};

/// Checks the Lemma-3 boundedness estimate with constants assembled from
/// bump_constants (keeping the Cauchy-Schwarz prefactor sum_{k<r} 1/k!).
/// A failure indicates an implementation bug, not a math failure.
ExtensionBoundReport extension_bound_check(const TraceVector& v, int b, int m);

}  // namespace parahorm

#endif  // PARAHORM_TRACE_HPP
