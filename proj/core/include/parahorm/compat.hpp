// This file is part of parahorm.
// Licensed under the Apache License, Version 2.0. See the LICENSE file.

#ifndef PARAHORM_COMPAT_HPP
#define PARAHORM_COMPAT_HPP

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "parahorm/field.hpp"
#include "parahorm/symbols.hpp"
#include "parahorm/trace.hpp"

namespace parahorm {

/// Least integer >= 2m and >= m_j + 1 for all j: the regularity threshold of
/// the isomorphism theorem.
int sigma0(int m, std::span<const int> m_list);
int sigma0(const ParabolicProblem& P);

/// Number of compatibility conditions for one boundary operator: integers k
/// with 0 <= k < (s - m_j - 1/2 - b)/(2b); zero when the bound is <= 0.
int condition_count(double s, int b, int mj);

/// The half-integer ladder {sigma0 + r - 1/2 : r in N} on which the data
/// space is defined by interpolation instead of by residual conditions.
bool on_half_integer_ladder(double s, int sigma0_value, double tol = 1e-9);

/// Time-jets at t = 0 of all raw problem coefficients, sampled on the model
/// grids: interior coefficients on the G collocation grid, boundary
/// coefficients per component on the Gamma collocation grid. Jets are exact
/// (catalog expressions differentiated by series arithmetic).
struct CoefficientJet {
  struct InteriorTerm {
    std::vector<int> alpha;
    int beta = 0;
    std::vector<std::vector<cplx>> jet;  // jet[q][point] = d_t^q coeff(x, 0)
  };
  struct BoundaryTerm {
    std::vector<int> alpha;
    int beta = 0;
    std::array<std::vector<std::vector<cplx>>, 2> jet;  // [side][q][point]
  };

  FrequencyGrid g_grid;      // 2-D spatial grid (x1 torus x doubled x2 torus)
  FrequencyGrid gamma_grid;  // 1-D boundary grid (x1 torus)
  int depth = 0;

  std::vector<InteriorTerm> interior;               // all interior terms
  std::vector<std::vector<BoundaryTerm>> boundary;  // [j][term]
};

CoefficientJet build_coefficient_jets(const ParabolicProblem& P, const FrequencyGrid& g_grid,
                                      int depth);

/// Solved-for-d_t^kappa form: jets of a0^{alpha,beta} = -a^{alpha,beta} /
/// a^{(0,...,0),kappa} for the non-leading interior terms, jets of the
/// right-hand-side scale 1/a^{(0,...,0),kappa}, and the (unchanged) boundary
/// jets. Throws std::runtime_error if the leading coefficient falls below
/// tolerance anywhere on the grid.
struct SolvedJets {
  FrequencyGrid g_grid;
  FrequencyGrid gamma_grid;
  int depth = 0;
  std::vector<CoefficientJet::InteriorTerm> a0;       // beta <= kappa - 1
  std::vector<std::vector<cplx>> f_scale;             // [q][point]
  std::vector<std::vector<CoefficientJet::BoundaryTerm>> boundary;
};

SolvedJets normalize_leading(const ParabolicProblem& P, const CoefficientJet& raw,
                             double tol = 1e-12);

/// Cauchy data (h_0, ..., h_{kappa-1}) on the spatial grid.
struct CauchyData {
  std::vector<SpectralField> h;
};

/// Either a torus spectral representation (last axis time-dual) or an
/// analytic per-mode representation; both expose exact time-jets at t = 0 on
/// the spatial grid.
class FieldHandle {
 public:
  FieldHandle(SpectralField torus_field);
  FieldHandle(ModeTimeField analytic_field);

  bool is_torus() const { return std::holds_alternative<SpectralField>(rep_); }
  const SpectralField& torus() const { return std::get<SpectralField>(rep_); }
  const ModeTimeField& analytic() const { return std::get<ModeTimeField>(rep_); }

  FrequencyGrid spatial_grid() const;
  /// d_t^q (.)|_{t=0} as a field on the spatial grid.
  SpectralField time_jet(int q) const;

 private:
  std::variant<SpectralField, ModeTimeField> rep_;
};

/// One boundary datum g_j on one boundary component: a base field on the
/// Gamma x (0,tau) surrogate plus the analytic corrections produced by the
/// compatibilizing projector (kept exact instead of resampled).
struct BoundaryComponent {
  FieldHandle base;
  std::vector<ModeTimeField> corrections;

  explicit BoundaryComponent(FieldHandle b) : base(std::move(b)) {}
  SpectralField time_trace(int k) const;
  double correction_magnitude() const;  // max |coef| over corrections
};

/// The right-hand-side tuple F = (f, g_1..g_m, h_0..h_{kappa-1}); each g_j
/// carries its two boundary components.
struct DataTuple {
  FieldHandle f;
  std::vector<std::array<BoundaryComponent, 2>> g;
  std::vector<SpectralField> h;

  int kappa() const { return static_cast<int>(h.size()); }
};

/// Derived index bookkeeping for the compatibility system.
struct CompatibilitySystem {
  int sigma0_value = 0;
  int kappa = 0;
  int b = 1;
  std::vector<int> mj;

  static CompatibilitySystem of(const ParabolicProblem& P);

  int q_rj(int r, int j) const;           // floor((sigma0 + r - m_j - 1 - b)/(2b))
  int interval_index(double s) const;      // r with s in D_{r-1}; requires s > sigma0, off ladder
  bool on_ladder(double s) const { return on_half_integer_ladder(s, sigma0_value); }
  int count(double s, int j) const { return condition_count(s, b, mj.at(j)); }
};

/// D^alpha as an exact spectral multiplier, with the D_k = i d/dx_k
/// convention (so a mode picks up prod (-xi_a)^{alpha_a}).
SpectralField apply_symbol_derivative(const SpectralField& f, std::span<const int> alpha);

/// Restriction of a field on the G surrogate to one boundary component
/// (x2 = 0 or x2 = 1): collapses the x2 axis with the boundary phases.
SpectralField restrict_to_boundary(const SpectralField& f, BoundarySide side);

/// v_0..v_L of the trace recurrence: v_l = h_l below kappa, and the
/// binomially weighted jet/derivative sum plus the scaled f-jet above.
/// Spatial derivatives are exact spectral multipliers; coefficient products
/// act on the collocation grid.
std::vector<SpectralField> v_sequence(std::span<const SpectralField> f_jets,
                                      std::span<const SpectralField> h, const SolvedJets& jets,
                                      int L);

/// d_t^k (B_j u)|_{t=0} expressed through the v-fields and restricted to one
/// boundary component: a field on the Gamma grid.
SpectralField b_jk_apply(const SolvedJets& jets, int j, int k,
                         std::span<const SpectralField> v, BoundarySide side);

struct ResidualRow {
  int j = 0;
  int k = 0;
  BoundarySide side = BoundarySide::lower;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// Compatibility residuals |d_t^k g_j - B_{j,k}(v)| on the boundary grid for
/// every k in the (16f8)-style range at regularity s. Preconditions: s >
/// sigma0 and s off the half-integer ladder.
std::vector<ResidualRow> compat_residuals(const DataTuple& data, const ParabolicProblem& P,
                                          const SolvedJets& jets, double s, double tol = 1e-8);

bool all_pass(std::span<const ResidualRow> rows);

/// The compatibilizing projector: replaces g_j by g_j + T(w_{j,0},...,
/// w_{j,q_{r,j}}) with w_{j,k} the residual traces; identity when data is
/// already compatible and when q_{r,j} < 0 for all j.
DataTuple project_Q(const DataTuple& data, const ParabolicProblem& P, const SolvedJets& jets,
                    double s);

/// Max coefficient distance between tuples with identical shape (base fields
/// and correction traces), used by the idempotence checks.
double tuple_distance(const DataTuple& a, const DataTuple& b);

}  // namespace parahorm

#endif  // PARAHORM_COMPAT_HPP
