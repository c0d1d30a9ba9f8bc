// This file is part of parahorm.
// Licensed under the Apache License, Version 2.0. See the LICENSE file.

#ifndef PARAHORM_WEIGHTS_HPP
#define PARAHORM_WEIGHTS_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace parahorm {

/// Slowly varying log-power parameter
///
///   phi(r) = prod_i l_i(r)^{theta_i},
///   l_1(r) = ln(e - 1 + r),  l_{j+1}(r) = ln(e - 1 + l_j(r)).
///
/// The nested shift makes every level equal to 1 at r = 1, so phi(1) = 1 and
/// phi is positive and finite on all of [1, inf) while keeping the classical
/// (log r)^{theta_1} (log log r)^{theta_2} ... asymptotics. The values on any
/// fixed compact are a convention of this toolkit (only boundedness is
/// prescribed for the class).
class PhiLogPower {
 public:
  PhiLogPower() = default;
  explicit PhiLogPower(std::vector<double> theta) : theta_(std::move(theta)) {}

  static PhiLogPower one() { return PhiLogPower{}; }
  static PhiLogPower log(double theta1 = 1.0) { return PhiLogPower({theta1}); }

  /// Evaluate at r >= 1; throws std::domain_error for r < 1.
  double operator()(double r) const;

  bool is_one() const { return theta_.empty(); }
  const std::vector<double>& exponents() const { return theta_; }

  /// Exponent-wise sum (with zero padding), the composition law under which
  /// phi is multiplicative: phi_{a (+) b} = phi_a * phi_b pointwise.
  PhiLogPower combined(const PhiLogPower& other) const;

  std::string label() const;

 private:
  std::vector<double> theta_;
};

/// Anisotropic regularity weight
///
///   mu(xi', xi_k) = rho^{s/2} phi(rho^{1/2}),  rho = 1 + |xi'|^2 + |xi_k|^{2 gamma},
///
/// with gamma = 1/(2b) in the parabolic application and gamma = 1 for the
/// isotropic spaces on G and Gamma.
struct WeightParams {
  double s = 0.0;
  double gamma = 1.0;
  PhiLogPower phi;

  WeightParams() = default;
  WeightParams(double s_, double gamma_, PhiLogPower phi_ = {});

  double rho(double xi_prime_sq, double xi_last) const;
  double mu_from_rho(double rho) const;
  double operator()(double xi_prime_sq, double xi_last) const { return mu_from_rho(rho(xi_prime_sq, xi_last)); }

  std::string label() const;
};

/// mu evaluation in the spec's calling convention: xi' as a vector, xi_k the
/// time-dual coordinate.
double mu_eval(const WeightParams& w, std::span<const double> xi_prime, double xi_k);

/// Interpolation parameter between regularity orders s0 < s < s1:
///
///   psi(r) = r^{(s-s0)/(s1-s0)} phi(r^{1/(s1-s0)})  for r >= 1,
///   psi(r) = phi(1)                                  for 0 < r < 1.
class PsiParam {
 public:
  PsiParam(double s0, double s, double s1, PhiLogPower phi);

  double operator()(double r) const;
  double order() const { return theta_; }  // (s-s0)/(s1-s0), in (0,1)
  double s0() const { return s0_; }
  double s() const { return s_; }
  double s1() const { return s1_; }
  const PhiLogPower& phi() const { return phi_; }

 private:
  double s0_, s_, s1_, theta_;
  PhiLogPower phi_;
};

PsiParam psi_from(double s0, double s, double s1, PhiLogPower phi);

/// A member of the parameter class B: Borel function on (0, inf), positive,
/// bounded on compacts, with 1/psi bounded on rays. Backed by an arbitrary
/// callable; class membership is only checkable by sampling (see
/// check_class_b), which is documented as a heuristic.
class InterpParam {
 public:
  InterpParam(std::function<double(double)> f, std::string label = "psi");

  static InterpParam power(double theta);
  static InterpParam sqrt() { return power(0.5); }
  static InterpParam from(const PsiParam& psi);

  double operator()(double r) const { return f_(r); }
  const std::string& label() const { return label_; }

 private:
  std::function<double(double)> f_;
  std::string label_;
};

struct ClassBReport {
  bool pass = false;
  double min_value = 0.0;        // min of psi over the sample
  double max_reciprocal = 0.0;   // max of 1/psi on the sampled ray [1, radius]
  double radius = 0.0;
};

/// Sampled positivity / ray-boundedness check for class-B membership.
ClassBReport check_class_b(const InterpParam& psi, double radius = 1e12, int samples = 4096);

struct SandwichBounds {
  double c0 = 0.0;
  double c1 = 0.0;
};

/// Empirical constants with c0 r^{s0-s} <= phi(r) <= c1 r^{s1-s} over the
/// given r-grid (all entries must be >= 1). Tight: both bounds are attained
/// at some grid point.
SandwichBounds sandwich_bounds(const PhiLogPower& phi, double s0, double s, double s1,
                               std::span<const double> r_grid);

struct RegularVariationReport {
  std::vector<double> r;
  std::vector<double> deviation;  // max over lambda of |psi(lambda r)/psi(r) - lambda^theta|
  bool pass = false;
  double tol = 0.0;
};

/// Numerical probe of regular variation of order theta along an increasing
/// r-sequence: deviations must shrink (last <= decrease_factor * first) and
/// end below tol. A heuristic limit detector, not a proof.
RegularVariationReport check_regularly_varying(const InterpParam& psi, double theta,
                                               std::span<const double> lambdas,
                                               std::span<const double> r_sequence,
                                               double tol = 0.5, double decrease_factor = 0.5);

/// Reiteration parameter omega(t) = alpha(t) psi(beta(t)/alpha(t)).
/// Precondition (sampled): alpha/beta bounded near infinity.
InterpParam reiteration_weight(const InterpParam& alpha, const InterpParam& beta,
                               const InterpParam& psi);

struct WeightGrowthFit {
  double c = 0.0;
  double l = 0.0;
  bool pass = false;
  double max_holdout_excess = 0.0;  // log-scale violation on the holdout half
};

/// Fits the admissibility bound mu(xi)/mu(eta) <= c (1 + |xi-eta|)^l on a
/// supplied pair sample: l by least squares on the log-transformed ratios,
/// c tight so the bound holds on the whole sample. The pass flag cross-checks
/// the fit trained on the small-separation half against the rest; weights
/// growing faster than polynomially fail it.
WeightGrowthFit verify_weight_growth(const WeightParams& w,
                                     std::span<const std::pair<std::vector<double>, std::vector<double>>> pairs);

/// Deterministic low-discrepancy point pairs in the ball of the given radius
/// (Weyl sequence); the standard sample feeding verify_weight_growth.
std::vector<std::pair<std::vector<double>, std::vector<double>>>
make_weyl_pairs(int dim, double radius, int count);

}  // namespace parahorm

#endif  // PARAHORM_WEIGHTS_HPP
