// This file is part of parahorm.
// Licensed under the Apache License, Version 2.0. See the LICENSE file.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "parahorm/fft.hpp"
#include "parahorm/model.hpp"
#include "parahorm/trace.hpp"

namespace parahorm {

RatioReport isomorphism_ratio_experiment(const ParabolicProblem& P,
                                         const IsoExperimentOptions& opts) {
  P.validate();
  if (opts.ensemble < 2) throw std::invalid_argument("iso experiment: ensemble too small");
  const auto sys = CompatibilitySystem::of(P);
  for (double s : opts.s_list) {
    if (!(s > sys.sigma0_value))
      throw std::invalid_argument("iso experiment: s must exceed sigma0");
    if (sys.on_ladder(s))
      throw std::invalid_argument("iso experiment: ladder s needs the interpolation norm path");
  }

  RatioReport rep;
  rep.seed = opts.seed;
  rep.base_cutoff = opts.base_cutoff;
  rep.note =
      "ratio spreads are refinement-stability evidence for two-sided bounds; "
      "they are not operator norms";

  const double gamma = 1.0 / (2.0 * P.b);
  for (int level = 0; level < opts.levels; ++level) {
    const int N = opts.base_cutoff << level;
    const FrequencyGrid omega = strip_omega_grid(P, N, N, N);
    for (std::size_t is = 0; is < opts.s_list.size(); ++is) {
      const double s = opts.s_list[is];
      // One ensemble per (s, level); decay guarantees membership with margin.
      std::vector<DataTuple> tuples;
      std::vector<SpectralField> members;
      members.reserve(opts.ensemble);
      for (int e = 0; e < opts.ensemble; ++e) {
        const std::uint64_t seed =
            opts.seed + 1000003ull * static_cast<std::uint64_t>(e) + 17ull * is + level;
        members.push_back(random_field(omega, seed, s + opts.decay_margin, gamma));
        tuples.push_back(apply_lambda(members.back(), P));
      }
      for (const auto& phi : opts.phi_list) {
        RatioSeries series;
        series.s = s;
        series.phi = phi.label();
        series.level = level;
        for (int e = 0; e < opts.ensemble; ++e) {
          const double denom = solution_norm(members[e], P, s, phi);
          if (denom == 0.0) {
            ++series.excluded;  // zero member: ratio undefined
            continue;
          }
          const double numer = tuple_norm(tuples[e], P, s, phi).total;
          series.ratios.push_back(numer / denom);
        }
        if (series.ratios.empty()) throw std::runtime_error("iso experiment: empty series");
        auto [mn, mx] = std::minmax_element(series.ratios.begin(), series.ratios.end());
        series.min_ratio = *mn;
        series.max_ratio = *mx;
        series.spread = *mx / *mn;
        rep.series.push_back(std::move(series));
      }
    }
  }

  for (const auto& s : rep.series) rep.max_spread = std::max(rep.max_spread, s.spread);
  for (const auto& a : rep.series)
    for (const auto& b : rep.series)
      if (a.s == b.s && a.phi == b.phi && b.level == a.level + 1) {
        const double change = std::max(b.spread / a.spread, a.spread / b.spread);
        rep.max_spread_change = std::max(rep.max_spread_change, change);
      }
  return rep;
}

// ------------------------------------------------------------- local norms

double window_eval(const WindowSpec& w, double x) {
  if (!(w.lo < w.hi) || !(w.margin > 0.0) || 2.0 * w.margin >= w.hi - w.lo)
    throw std::invalid_argument("window_eval: malformed window");
  if (x <= w.lo || x >= w.hi) return 0.0;
  if (x < w.lo + w.margin) return smooth_step((x - w.lo) / w.margin);
  if (x > w.hi - w.margin) return smooth_step((w.hi - x) / w.margin);
  return 1.0;
}

namespace {

void check_cutoff(const CutoffSpec& spec, double tau) {
  if (spec.x2.lo <= 0.0 || spec.x2.hi >= 1.0)
    throw std::invalid_argument(
        "cutoff support touches the lateral boundary Gamma; the local spaces require "
        "supp chi to avoid it");
  if (spec.t.lo <= 0.0 || spec.t.hi >= tau)
    throw std::invalid_argument(
        "cutoff support must stay inside (0, tau) on the discrete norm path");
}

// |chi u|_{H^{sigma, sigma/(2b)}} on the periodized sample box.
double cutoff_norm(const StripSolution& sol, const ParabolicProblem& P, const CutoffSpec& spec,
                   double sigma) {
  check_cutoff(spec, sol.tau);
  const int M1 = 2 * sol.x1_cutoff + 1;
  const int M2 = sol.x2_points;      // odd by construction
  const int Mt = sol.t_steps + 1;    // odd by construction
  if (M2 % 2 == 0 || Mt % 2 == 0)
    throw std::invalid_argument("cutoff_norm: x2_points and t_steps+1 must be odd");
  const double h2 = 1.0 / (M2 - 1);
  const double dt = sol.tau / sol.t_steps;

  // Physical samples: inverse DFT along x1 per (x2, t) slice.
  std::vector<cplx> slab(static_cast<std::size_t>(M2) * Mt * M1);
  for (int i2 = 0; i2 < M2; ++i2)
    for (int it = 0; it < Mt; ++it) {
      const std::size_t row = (static_cast<std::size_t>(i2) * Mt + it) * M1;
      for (int k = 0; k < M1; ++k) {
        const int n1 = k - sol.x1_cutoff;            // mode number
        const int fidx = (n1 + M1) % M1;             // fftw wraparound slot
        slab[row + fidx] = sol.u[sol.index(k, i2, it)];
      }
    }
  dft_rows_inplace(M2 * Mt, M1, slab, +1);

  // Multiply by the cutoff and reorder to (x1, x2, t) row-major samples.
  std::vector<double> wx1(M1, 1.0), wx2(M2), wt(Mt);
  for (int j = 0; j < M1; ++j) {
    const double x1 = sol.length_x1 * j / M1;
    wx1[j] = spec.x1 ? window_eval(*spec.x1, x1) : 1.0;
  }
  for (int i2 = 0; i2 < M2; ++i2) wx2[i2] = window_eval(spec.x2, i2 * h2);
  for (int it = 0; it < Mt; ++it) wt[it] = window_eval(spec.t, it * dt);

  std::vector<cplx> samples(static_cast<std::size_t>(M1) * M2 * Mt);
  for (int i2 = 0; i2 < M2; ++i2)
    for (int it = 0; it < Mt; ++it) {
      const std::size_t row = (static_cast<std::size_t>(i2) * Mt + it) * M1;
      const double w23 = wx2[i2] * wt[it];
      for (int j = 0; j < M1; ++j)
        samples[(static_cast<std::size_t>(j) * M2 + i2) * Mt + it] =
            slab[row + j] * (wx1[j] * w23);
    }

  // chi u vanishes near the box edges, so the periodization over the sample
  // box (periods M2 h2 and Mt dt, slightly beyond the physical extents) is
  // smooth and the torus norm is meaningful.
  const FrequencyGrid norm_grid({sol.length_x1, M2 * h2, Mt * dt},
                                {sol.x1_cutoff, (M2 - 1) / 2, (Mt - 1) / 2});
  const SpectralField chi_u = from_collocation(norm_grid, samples);
  return hoermander_norm(chi_u, WeightParams(sigma, 1.0 / (2.0 * P.b)));
}

SampledStripData build_rhs(const ModelProblemConfig& config, const SingularitySpec& sing) {
  const ParabolicProblem& P = config.problem;
  SampledStripData data;
  data.x1_cutoff = config.x1_cutoff;
  data.x2_points = config.x2_points;
  data.t_steps = config.t_steps;
  data.tau = P.tau;
  data.length_x1 = P.geometry.length_x1;
  const int M1 = data.modes();
  const int M2 = data.x2_points;
  const int T = data.t_steps + 1;
  data.f.assign(static_cast<std::size_t>(M1) * M2 * T, cplx{0.0, 0.0});
  data.g_lower.assign(static_cast<std::size_t>(M1) * T, cplx{0.0, 0.0});
  data.g_upper.assign(static_cast<std::size_t>(M1) * T, cplx{0.0, 0.0});
  data.h0.assign(static_cast<std::size_t>(M1) * M2, cplx{0.0, 0.0});

  const double h2 = 1.0 / (M2 - 1);
  const double dt = data.tau / data.t_steps;
  const double L1 = data.length_x1;
  const double cap = sing.cap_cells * h2;

  // Physical samples of f, then x1-DFT into the per-mode layout.
  std::vector<cplx> phys(static_cast<std::size_t>(M2) * T * M1, cplx{0.0, 0.0});
  for (int i2 = 0; i2 < M2; ++i2) {
    const double x2 = i2 * h2;
    for (int it = 0; it < T; ++it) {
      const double t = it * dt;
      const double eta = std::sin(std::numbers::pi * t / data.tau);
      const double tprof = eta * eta;  // vanishes to first order at t = 0, tau
      const std::size_t row = (static_cast<std::size_t>(i2) * T + it) * M1;
      for (int j = 0; j < M1; ++j) {
        const double x1 = L1 * j / M1;
        double value;
        if (sing.enabled) {
          // torus distance in x1
          double d1 = std::abs(x1 - sing.x1_center);
          d1 = std::min(d1, L1 - d1);
          const double r = std::hypot(d1, x2 - sing.x2_center);
          value = sing.amplitude * std::pow(std::max(r, cap), -sing.exponent);
        } else {
          value = sing.amplitude *
                  (1.0 + std::sin(2.0 * std::numbers::pi * x1 / L1) *
                             std::sin(std::numbers::pi * x2));
        }
        phys[row + j] = value * tprof;
      }
    }
  }
  dft_rows_inplace(M2 * T, M1, phys, -1);
  for (int i2 = 0; i2 < M2; ++i2)
    for (int it = 0; it < T; ++it) {
      const std::size_t row = (static_cast<std::size_t>(i2) * T + it) * M1;
      for (int k = 0; k < M1; ++k) {
        const int n1 = k - data.x1_cutoff;
        const int fidx = (n1 + M1) % M1;
        data.f[data.f_index(k, i2, it)] = phys[row + fidx] / static_cast<double>(M1);
      }
    }
  return data;
}

}  // namespace

LocalRegularityReport local_regularity_experiment(const ModelProblemConfig& base,
                                                  const SingularitySpec& sing,
                                                  const CutoffSpec& local_window,
                                                  const CutoffSpec& global_window, double sigma,
                                                  int levels) {
  if (levels < 2) throw std::invalid_argument("local_regularity_experiment: need >= 2 levels");
  if (base.x2_points % 2 == 0 || base.t_steps % 2 != 0)
    throw std::invalid_argument(
        "local_regularity_experiment: needs odd x2_points and even t_steps so the norm "
        "grids stay symmetric under refinement");
  check_cutoff(local_window, base.problem.tau);
  check_cutoff(global_window, base.problem.tau);
  if (sing.enabled) {
    const bool x1_clear = !local_window.x1 ||
                          sing.x1_center <= local_window.x1->lo ||
                          sing.x1_center >= local_window.x1->hi;
    const bool x2_clear =
        sing.x2_center <= local_window.x2.lo || sing.x2_center >= local_window.x2.hi;
    if (!(x1_clear || x2_clear))
      throw std::invalid_argument(
          "local_regularity_experiment: the singular point must lie outside the local window");
  }

  LocalRegularityReport rep;
  rep.sigma = sigma;
  ModelProblemConfig config = base;
  for (int lvl = 0; lvl < levels; ++lvl) {
    if (lvl > 0) {
      config.x1_cutoff *= 2;
      config.x2_points = 2 * config.x2_points - 1;  // keeps the count odd
      config.t_steps *= 2;
    }
    const SampledStripData data = build_rhs(config, sing);
    const StripSolution sol = solve_model(config, data);
    LocalRegLevel level;
    level.x1_cutoff = config.x1_cutoff;
    level.x2_points = config.x2_points;
    level.t_steps = config.t_steps;
    level.local_norm = cutoff_norm(sol, config.problem, local_window, sigma);
    level.global_norm = cutoff_norm(sol, config.problem, global_window, sigma);
    rep.levels.push_back(level);
  }

  const auto& lv = rep.levels;
  rep.local_last_change =
      std::abs(lv.back().local_norm - lv[lv.size() - 2].local_norm) / lv[lv.size() - 2].local_norm;
  rep.min_global_growth = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < lv.size(); ++i)
    rep.min_global_growth = std::min(rep.min_global_growth,
                                     lv[i].global_norm / std::max(lv[i - 1].global_norm, 1e-300));
  rep.local_stable = rep.local_last_change <= 0.10;
  rep.global_growing = rep.min_global_growth >= 2.0;
  return rep;
}

}  // namespace parahorm
