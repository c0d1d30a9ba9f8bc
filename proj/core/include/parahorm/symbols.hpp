// This file is part of parahorm.
// Licensed under the Apache License, Version 2.0. See the LICENSE file.

#ifndef PARAHORM_SYMBOLS_HPP
#define PARAHORM_SYMBOLS_HPP

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parahorm/jets.hpp"

namespace parahorm {

using cplx = std::complex<double>;

/// Coefficient specification: a constant, or a named analytic expression
/// from the built-in catalog. Catalog entries provide exact values and exact
/// time-jets at t = 0 (no numerical differencing anywhere).
///
///   const            value
///   poly_t           c0 + c1 t + c2 t^2 + ...
///   exp_t            amplitude * exp(rate * t)
///   cos_x1           offset + amplitude * cos(2 pi x1 / length)
class CoeffSpec {
 public:
  static CoeffSpec constant(cplx value);
  static CoeffSpec poly_t(std::vector<cplx> coeffs);
  static CoeffSpec exp_t(cplx amplitude, cplx rate);
  static CoeffSpec cos_x1(cplx offset, cplx amplitude, double length);

  cplx eval(std::span<const double> x, double t) const;
  ComplexJet time_jet(std::span<const double> x, int depth) const;

  bool is_constant() const { return kind_ == Kind::Constant; }
  bool time_dependent() const { return kind_ == Kind::PolyT || kind_ == Kind::ExpT; }
  bool space_dependent() const { return kind_ == Kind::CosX1; }
  cplx constant_value() const;

  std::string kind_name() const;
  // Raw pieces, used by the JSON round trip.
  const std::vector<cplx>& data() const { return data_; }
  double length() const { return length_; }

 private:
  enum class Kind { Constant, PolyT, ExpT, CosX1 };
  Kind kind_ = Kind::Constant;
  std::vector<cplx> data_;  // meaning depends on kind
  double length_ = 1.0;

  friend class CoeffSpecAccess;
};

/// One term a(x,t) D_x^alpha d_t^beta of a differential expression, with
/// D_k = i d/dx_k (so D^alpha acts on the mode e^{i xi . x} as (-xi)^alpha).
struct SymbolTerm {
  std::vector<int> alpha;
  int beta = 0;
  CoeffSpec coeff = CoeffSpec::constant({1.0, 0.0});

  int order(int parabolic_weight) const;  // |alpha| + 2b beta
};

/// Boundary operator B_j of order m_j. Coefficients may differ between the
/// two boundary components of the strip (e.g. to orient a normal
/// derivative); coeff_upper falls back to coeff when absent.
struct BoundaryOperator {
  int mj = 0;
  std::vector<SymbolTerm> terms;
  std::vector<std::optional<CoeffSpec>> upper_coeffs;  // parallel to terms

  const CoeffSpec& coeff_on_side(std::size_t term, bool upper) const;
};

enum class BoundarySide { lower, upper };

/// Model geometry: x1 on a torus of the given length, x2 in (0,1), so Gamma
/// is the two tori {x2 = 0} and {x2 = 1}. The inner normal is +e2 at the
/// lower component and -e2 at the upper one.
struct StripGeometry {
  double length_x1 = 1.0;
};

/// The problem data of a 2b-parabolic initial-boundary value problem:
/// orders b, m, m_j and the interior/boundary terms.
struct ParabolicProblem {
  int n = 2;       // spatial dimension
  int b = 1;
  int m = 1;
  double tau = 1.0;
  std::vector<SymbolTerm> interior;           // order <= 2m
  std::vector<BoundaryOperator> boundary;     // exactly m of them
  StripGeometry geometry;

  int kappa() const { return m / b; }
  /// Structural validation (kappa integral, n >= 2, order bounds, leading
  /// coefficient present). Throws std::invalid_argument on violation.
  void validate() const;

  /// The coefficient of d_t^kappa (alpha = 0, beta = kappa).
  const SymbolTerm* leading_term() const;

  std::vector<double> inner_normal(BoundarySide side) const;
};

/// Principal interior symbol A0(x,t,xi,p) = sum_{|alpha|+2b beta = 2m}
/// a(x,t) xi^alpha p^beta.
cplx eval_A0(const ParabolicProblem& P, std::span<const double> x, double t,
             std::span<const double> xi, cplx p);

/// Principal boundary symbol of B_j in the normal-slice variable zeta:
/// coefficients (ascending in zeta) of B_j0(x,t,xi + zeta nu, p).
std::vector<cplx> boundary_symbol_poly(const ParabolicProblem& P, int j, BoundarySide side,
                                       double x1, double t, double xi_tangent, cplx p);

struct SpherePoint {
  std::vector<double> xi;
  cplx p;
};

struct PetrovskiiReport {
  double min_abs = 0.0;        // polished minimum of |A0| on the sphere
  double grid_min_abs = 0.0;   // before polishing
  SpherePoint witness;
  std::vector<double> x;
  double t = 0.0;
  bool pass = false;
  double tol = 0.0;
};

/// Minimizes |A0| over sampled (x, t) and the anisotropic sphere
/// {|xi|^2 + |p|^{1/b} = 1, Re p >= 0}; homogeneity reduces Condition 1 to
/// this sphere. The best grid point is polished by a compass search in the
/// sphere parameters. Pass iff the minimum exceeds tol.
PetrovskiiReport petrovskii_check(const ParabolicProblem& P, int resolution, double tol = 1e-6);

struct RootSplit {
  std::vector<cplx> zeta_plus;   // Im > 0, with multiplicity
  std::vector<cplx> zeta_minus;  // Im < 0
};

/// Roots of A0(x,t,xi + zeta nu, p) in zeta, split by half-plane, via
/// companion-matrix eigenvalues (balanced). Roots within
/// 1e-8 (1 + |zeta|) of the real axis raise std::runtime_error.
RootSplit root_split(const ParabolicProblem& P, BoundarySide side, double x1, double t,
                     double xi_tangent, cplx p);

struct CoveringReport {
  BoundarySide side = BoundarySide::lower;
  double x1 = 0.0;
  double t = 0.0;
  double xi_tangent = 0.0;
  cplx p{0.0, 0.0};
  double abs_det = 0.0;
  double rel_det = 0.0;  // |det| / prod of remainder-row norms
  bool pass = false;
  std::vector<std::vector<cplx>> remainder;  // m x m coefficient matrix
};

/// Lopatinskii covering test at one admissible point: remainders of the
/// boundary symbols modulo prod (zeta - zeta_j^+), assembled into an m x m
/// matrix; pass iff the row-normalized |det| exceeds tol (so the flag is
/// invariant under rescaling any B_j).
CoveringReport covering_check(const ParabolicProblem& P, BoundarySide side, double x1, double t,
                              double xi_tangent, cplx p, double tol = 1e-6);

struct SweepSpec {
  int sphere_resolution = 64;  // samples per sphere parameter (>= 8)
  int x_samples = 1;
  int t_samples = 1;
};

struct CoveringSweepResult {
  CoveringReport worst;      // smallest rel_det over the sweep
  double min_abs_det = 0.0;
  double min_rel_det = 0.0;
  std::size_t points = 0;
  bool pass = false;
};

/// Worst covering_check over sampled admissible points on the anisotropic
/// sphere (both tangent directions, both boundary components).
CoveringSweepResult covering_sweep(const ParabolicProblem& P, const SweepSpec& spec,
                                   double tol = 1e-6);

// --- built-in model problems (used by tests, benchmarks and data files) ---

/// heat: d_t - Laplace, with the requested boundary operator:
///   "dirichlet"  B = 1
///   "neumann_d"  B = D_2                 (symbol zeta; covering example)
///   "neumann"    B = d/d nu              (physical normal derivative)
///   "oblique"    B = D_2 - i D_1         (covering counterexample)
ParabolicProblem make_heat_problem(const std::string& boundary = "dirichlet", double tau = 1.0,
                                   double length_x1 = 1.0);
ParabolicProblem make_backward_heat_problem();
/// d_t + Laplace^2 with (Dirichlet, D_2) boundary pair: b = 2, m = 2.
ParabolicProblem make_biharmonic_problem();

}  // namespace parahorm

#endif  // PARAHORM_SYMBOLS_HPP
