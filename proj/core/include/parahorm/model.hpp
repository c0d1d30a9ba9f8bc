// This file is part of parahorm.
// Licensed under the Apache License, Version 2.0. See the LICENSE file.

#ifndef PARAHORM_MODEL_HPP
#define PARAHORM_MODEL_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "parahorm/compat.hpp"
#include "parahorm/norms.hpp"

namespace parahorm {

/// Strip model resolution: x1 spectral, x2 finite differences on [0,1]
/// (x2_points including both endpoints), Crank-Nicolson in t with t_steps
/// steps on [0, tau].
struct ModelProblemConfig {
  ParabolicProblem problem;
  int x1_cutoff = 32;
  int x2_points = 129;
  int t_steps = 128;
  bool check_covering = true;
};

/// G surrogate for the strip: x1 torus of the problem's length, x2 torus of
/// period 2 so the two boundary components stay distinct and sin(pi k x2)
/// strip modes are exact grid modes.
FrequencyGrid strip_g_grid(const ParabolicProblem& P, int x1_cutoff, int x2_cutoff);
/// Omega surrogate: strip_g_grid x a time torus of period tau.
FrequencyGrid strip_omega_grid(const ParabolicProblem& P, int x1_cutoff, int x2_cutoff,
                               int t_cutoff);

/// e^{rate t} sin(2 pi k1 x1 / L1) sin(pi k2 x2) as an analytic mode field
/// on the G surrogate (requires k2 within the x2 cutoff).
ModeTimeField sine_product_field(const FrequencyGrid& g_grid, int k1, int k2, cplx rate,
                                 cplx amplitude = {1.0, 0.0}, int jet_depth = 16);

/// The mapping Lambda u = (Au, B_1 u, ..., B_m u, u|_{t=0}, ...,
/// d_t^{kappa-1} u|_{t=0}) for an analytic-in-time field on the G surrogate.
/// All derivatives are exact (spectral in x, closed-form in t).
DataTuple apply_lambda(const ModeTimeField& u, const ParabolicProblem& P);

/// Same for a torus field on the Omega surrogate (constant-coefficient
/// problems; exact per mode).
DataTuple apply_lambda(const SpectralField& u_omega, const ParabolicProblem& P);

struct TupleNorm {
  double total = 0.0;
  double f = 0.0;
  std::vector<std::array<double, 2>> g;
  std::vector<double> h;
};

/// Norm of the data tuple in the direct-sum space at regularity s (component
/// orders s-2m, s-m_j-1/2, s-2bk-b; gamma = 1/(2b) on Omega and S, isotropic
/// on G). Requires torus representations without projector corrections.
TupleNorm tuple_norm(const DataTuple& data, const ParabolicProblem& P, double s,
                     const PhiLogPower& phi);

/// The ladder-s norm: every component is measured through the numeric-1/2
/// interpolation of the +-eps neighbors (psi = sqrt), as in the
/// interpolation definition of the data space on s = sigma0 + r - 1/2.
TupleNorm ladder_tuple_norm(const DataTuple& data, const ParabolicProblem& P, double s,
                            const PhiLogPower& phi, double eps);

/// |u|_{H^{s, s/(2b); phi}} on the Omega surrogate.
double solution_norm(const SpectralField& u_omega, const ParabolicProblem& P, double s,
                     const PhiLogPower& phi);

// ----------------------------------------------------------------- solver

/// Per-x1-mode samples of the right-hand sides on the solver grid.
struct SampledStripData {
  int x1_cutoff = 0;
  int x2_points = 0;
  int t_steps = 0;
  double tau = 1.0;
  double length_x1 = 1.0;
  std::vector<cplx> f;        // [(mode*x2_points + i2)*(t_steps+1) + it]
  std::vector<cplx> g_lower;  // [mode*(t_steps+1) + it]
  std::vector<cplx> g_upper;
  std::vector<cplx> h0;       // [mode*x2_points + i2]

  int modes() const { return 2 * x1_cutoff + 1; }
  std::size_t f_index(int mode, int i2, int it) const {
    return (static_cast<std::size_t>(mode) * x2_points + i2) * (t_steps + 1) + it;
  }
};

/// Exact sampling of an analytic (mode-time) data tuple onto the solver grid.
SampledStripData sample_tuple(const DataTuple& data, const ModelProblemConfig& config);

struct StripSolution {
  int x1_cutoff = 0;
  int x2_points = 0;
  int t_steps = 0;
  double tau = 1.0;
  double length_x1 = 1.0;
  std::vector<cplx> u;  // same layout as SampledStripData::f
  bool incompat_warning = false;
  double boundary_mismatch = 0.0;  // discrete t=0 mismatch that raised the warning

  std::size_t index(int mode, int i2, int it) const {
    return (static_cast<std::size_t>(mode) * x2_points + i2) * (t_steps + 1) + it;
  }
};

/// Crank-Nicolson / centered-difference solve of the strip model, one
/// tridiagonal system per x1 mode and time step. Scoped to second-order
/// problems (b = m = 1) with x1-independent coefficients; the covering sweep
/// is required to pass before any solve unless config.check_covering is off.
/// Incompatible data (g(.,0) vs h0 trace) only attaches a warning.
StripSolution solve_model(const ModelProblemConfig& config, const SampledStripData& data);

/// Relative discrete L2 error of a solution against an exact analytic field.
double relative_l2_error(const StripSolution& sol, const ModeTimeField& u_exact);

// ------------------------------------------------------------- experiments

struct IsoExperimentOptions {
  int ensemble = 50;
  std::uint64_t seed = 0x5eed2024;
  std::vector<double> s_list{2.25, 2.75, 3.25};
  std::vector<PhiLogPower> phi_list{PhiLogPower::one(), PhiLogPower::log(1.0),
                                    PhiLogPower::log(-1.0)};
  int base_cutoff = 12;  // modes per axis on the Omega surrogate
  int levels = 2;        // base grid plus (levels-1) doublings
  double decay_margin = 2.0;
};

struct RatioSeries {
  double s = 0.0;
  std::string phi;
  int level = 0;
  std::vector<double> ratios;  // per ensemble member, zero members excluded
  int excluded = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double spread = 0.0;  // max/min
};

struct RatioReport {
  std::vector<RatioSeries> series;
  std::uint64_t seed = 0;
  int base_cutoff = 0;
  double max_spread = 0.0;
  double max_spread_change = 0.0;  // max over combos of spread ratio between levels
  std::string note;
};

/// Theorem-1 experiment: ratios |Lambda u| / |u| over a seeded smooth random
/// ensemble; two-sidedness shows as a bounded spread that is stable under
/// grid doubling. Spreads are stability evidence, not operator norms.
RatioReport isomorphism_ratio_experiment(const ParabolicProblem& P,
                                         const IsoExperimentOptions& opts);

/// One-axis smooth window: 1 on [lo+margin, hi-margin], 0 outside [lo, hi].
struct WindowSpec {
  double lo = 0.0;
  double hi = 1.0;
  double margin = 0.1;
};
double window_eval(const WindowSpec& w, double x);

/// Space-time cutoff chi = w1(x1) w2(x2) w3(t); x1 window optional (absent
/// means the whole torus). The x2 window must stay strictly inside (0,1):
/// supp chi touching Gamma is rejected.
struct CutoffSpec {
  std::optional<WindowSpec> x1;
  WindowSpec x2{0.1, 0.9, 0.05};
  WindowSpec t{0.1, 0.9, 0.05};
};

struct SingularitySpec {
  bool enabled = true;
  double x1_center = 0.25;
  double x2_center = 0.5;
  double exponent = 1.25;   // f ~ |x - x0|^{-a}, capped
  double cap_cells = 2.0;   // cap radius in units of the x2 spacing
  double amplitude = 1.0;
};

struct LocalRegLevel {
  int x1_cutoff = 0;
  int x2_points = 0;
  int t_steps = 0;
  double local_norm = 0.0;
  double global_norm = 0.0;
};

struct LocalRegularityReport {
  double sigma = 0.0;
  std::vector<LocalRegLevel> levels;
  double local_last_change = 0.0;   // relative change of the local norm, last two levels
  double min_global_growth = 0.0;   // min consecutive global-norm ratio
  bool local_stable = false;        // last change <= 10%
  bool global_growing = false;      // every consecutive ratio >= 2
};

/// Theorem-2 experiment: solve with f smooth away from a capped point
/// singularity, then track the cutoff norms |chi u|_{H^{sigma,sigma/(2b)}}
/// under refinement. The local window must exclude the singular point; the
/// global window covers it (both stay off the lateral boundary).
LocalRegularityReport local_regularity_experiment(const ModelProblemConfig& base,
                                                  const SingularitySpec& sing,
                                                  const CutoffSpec& local_window,
                                                  const CutoffSpec& global_window, double sigma,
                                                  int levels);

}  // namespace parahorm

#endif  // PARAHORM_MODEL_HPP
