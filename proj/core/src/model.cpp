// This file is part of parahorm.
// Licensed under the Apache License, Version 2.0. See the LICENSE file.

#include "parahorm/model.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace parahorm {

FrequencyGrid strip_g_grid(const ParabolicProblem& P, int x1_cutoff, int x2_cutoff) {
  return FrequencyGrid({P.geometry.length_x1, 2.0}, {x1_cutoff, x2_cutoff});
}

FrequencyGrid strip_omega_grid(const ParabolicProblem& P, int x1_cutoff, int x2_cutoff,
                               int t_cutoff) {
  return FrequencyGrid({P.geometry.length_x1, 2.0, P.tau}, {x1_cutoff, x2_cutoff, t_cutoff});
}

ModeTimeField sine_product_field(const FrequencyGrid& g_grid, int k1, int k2, cplx rate,
                                 cplx amplitude, int jet_depth) {
  if (g_grid.dim() != 2) throw std::invalid_argument("sine_product_field: expects a 2-D grid");
  ModeTimeField u(g_grid, jet_depth);
  // sin A sin B = -(1/4)[e^{i(A+B)} - e^{i(A-B)} - e^{i(B-A)} + e^{-i(A+B)}]
  const std::array<std::array<int, 2>, 4> modes{{{k1, k2}, {k1, -k2}, {-k1, k2}, {-k1, -k2}}};
  const std::array<double, 4> signs{-0.25, 0.25, 0.25, -0.25};
  for (int q = 0; q < 4; ++q) {
    if (!g_grid.contains(modes[q]))
      throw std::invalid_argument("sine_product_field: mode outside grid");
    auto& prof = u.profile(g_grid.encode(modes[q]));
    ModeTimeField::ExpPoly term;
    term.rate = rate;
    term.poly = {signs[q] * amplitude};
    prof.terms.push_back(std::move(term));
  }
  return u;
}

namespace {

// D^alpha on one mode of the G surrogate: prod_a (-xi_a)^{alpha_a}.
double mode_symbol(const FrequencyGrid& grid, std::span<const int> modes,
                   std::span<const int> alpha) {
  double m = 1.0;
  for (int a = 0; a < grid.dim(); ++a) {
    const double mxi = -grid.frequency(a, modes[a]);
    for (int p = 0; p < alpha[a]; ++p) m *= mxi;
  }
  return m;
}

// coeff(x1-independent, analytic in t) * profile term, exactly.
void multiply_coeff_into(const CoeffSpec& coeff, ModeTimeField::ExpPoly& term) {
  if (coeff.is_constant()) {
    const cplx c = coeff.constant_value();
    for (auto& p : term.poly) p *= c;
    return;
  }
  if (coeff.kind_name() == "poly_t") {
    const auto& cp = coeff.data();
    std::vector<cplx> out(term.poly.size() + cp.size() - 1, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < term.poly.size(); ++i)
      for (std::size_t j = 0; j < cp.size(); ++j) out[i + j] += term.poly[i] * cp[j];
    term.poly = std::move(out);
    return;
  }
  if (coeff.kind_name() == "exp_t") {
    const cplx amp = coeff.data()[0], rate = coeff.data()[1];
    for (auto& p : term.poly) p *= amp;
    term.rate += rate;
    return;
  }
  throw std::invalid_argument("apply_lambda: x-dependent coefficients need headroom handling; "
                              "only const/poly_t/exp_t are supported on the analytic path");
}

ModeTimeField apply_operator_terms(const ModeTimeField& u, const ParabolicProblem& P,
                                   std::span<const SymbolTerm> terms,
                                   const std::function<const CoeffSpec&(std::size_t)>& coeff_of) {
  const FrequencyGrid& grid = u.grid();
  ModeTimeField out(grid, u.jet_depth());
  std::vector<int> modes(grid.dim());
  for (std::size_t ti = 0; ti < terms.size(); ++ti) {
    const auto& term = terms[ti];
    ModeTimeField v = u;
    for (int db = 0; db < term.beta; ++db) v = v.time_derivative();
    for (std::size_t i = 0; i < grid.mode_count(); ++i) {
      auto& prof = v.profile(i);
      if (prof.terms.empty()) continue;
      grid.decode(i, modes);
      const double sym = mode_symbol(grid, modes, term.alpha);
      for (auto& ep : prof.terms) {
        for (auto& c : ep.poly) c *= sym;
        multiply_coeff_into(coeff_of(ti), ep);
      }
    }
    out += v;
  }
  return out;
}

/// Collapse the x2 axis of a G-surrogate mode field onto one boundary
/// component: Gamma-mode n1 collects the terms of all (n1, n2) with the
/// boundary phase.
ModeTimeField restrict_modes_to_boundary(const ModeTimeField& u, BoundarySide side) {
  const FrequencyGrid& grid = u.grid();
  if (grid.dim() != 2)
    throw std::invalid_argument("restrict_modes_to_boundary: expects a 2-D G field");
  const FrequencyGrid gamma = grid.without_axis(1);
  const double x2 = side == BoundarySide::lower ? 0.0 : 1.0;
  ModeTimeField out(gamma, u.jet_depth());
  std::vector<int> modes(2);
  for (std::size_t i = 0; i < grid.mode_count(); ++i) {
    const auto& prof = u.profile(i);
    if (prof.terms.empty()) continue;
    if (prof.bump_scale > 0.0)
      throw std::invalid_argument("restrict_modes_to_boundary: bump-carrying field");
    grid.decode(i, modes);
    const cplx phase = std::polar(1.0, grid.frequency(1, modes[1]) * x2);
    const std::array<int, 1> gm{modes[0]};
    auto& oprof = out.profile(gamma.encode(gm));
    for (const auto& ep : prof.terms) {
      auto scaled = ep;
      for (auto& c : scaled.poly) c *= phase;
      oprof.terms.push_back(std::move(scaled));
    }
  }
  return out;
}

}  // namespace

DataTuple apply_lambda(const ModeTimeField& u, const ParabolicProblem& P) {
  P.validate();
  if (u.has_bump()) throw std::invalid_argument("apply_lambda: bump-carrying fields unsupported");
  const int kappa = P.kappa();

  ModeTimeField f = apply_operator_terms(
      u, P, P.interior, [&](std::size_t ti) -> const CoeffSpec& { return P.interior[ti].coeff; });

  DataTuple out{FieldHandle(std::move(f)), {}, {}};
  for (int j = 0; j < P.m; ++j) {
    const auto& bop = P.boundary[j];
    std::array<std::optional<BoundaryComponent>, 2> comps;
    for (int side = 0; side < 2; ++side) {
      const bool upper = side == 1;
      ModeTimeField bju = apply_operator_terms(
          u, P, bop.terms,
          [&](std::size_t ti) -> const CoeffSpec& { return bop.coeff_on_side(ti, upper); });
      comps[side].emplace(FieldHandle(
          restrict_modes_to_boundary(bju, upper ? BoundarySide::upper : BoundarySide::lower)));
    }
    out.g.push_back({std::move(*comps[0]), std::move(*comps[1])});
  }
  const FieldHandle uh{u};
  for (int k = 0; k < kappa; ++k) out.h.push_back(uh.time_jet(k));
  return out;
}

DataTuple apply_lambda(const SpectralField& u_omega, const ParabolicProblem& P) {
  P.validate();
  const FrequencyGrid& grid = u_omega.grid();
  if (grid.dim() != 3) throw std::invalid_argument("apply_lambda: expects a 3-D Omega field");
  for (const auto& term : P.interior)
    if (!term.coeff.is_constant())
      throw std::invalid_argument("apply_lambda(torus): constant coefficients only");
  for (const auto& bop : P.boundary)
    for (std::size_t ti = 0; ti < bop.terms.size(); ++ti) {
      if (!bop.terms[ti].coeff.is_constant())
        throw std::invalid_argument("apply_lambda(torus): constant coefficients only");
      if (ti < bop.upper_coeffs.size() && bop.upper_coeffs[ti].has_value() &&
          !bop.upper_coeffs[ti]->is_constant())
        throw std::invalid_argument("apply_lambda(torus): constant coefficients only");
    }

  const int kappa = P.kappa();
  std::vector<int> modes(3);

  auto apply_terms = [&](const std::vector<SymbolTerm>& terms,
                         const std::function<cplx(std::size_t)>& cval) {
    SpectralField out(grid);
    for (std::size_t i = 0; i < grid.mode_count(); ++i) {
      if (u_omega[i] == cplx{0.0, 0.0}) continue;
      grid.decode(i, modes);
      const cplx iw{0.0, grid.frequency(2, modes[2])};
      cplx total{0.0, 0.0};
      for (std::size_t ti = 0; ti < terms.size(); ++ti) {
        const auto& term = terms[ti];
        double sym = 1.0;
        for (int a = 0; a < 2; ++a) {
          const double mxi = -grid.frequency(a, modes[a]);
          for (int p = 0; p < term.alpha[a]; ++p) sym *= mxi;
        }
        cplx tpow{1.0, 0.0};
        for (int p = 0; p < term.beta; ++p) tpow *= iw;
        total += cval(ti) * sym * tpow;
      }
      out[i] = total * u_omega[i];
    }
    return out;
  };

  // Interior part.
  SpectralField f = apply_terms(
      P.interior, [&](std::size_t ti) { return P.interior[ti].coeff.constant_value(); });

  // Boundary parts: apply B_j, then collapse x2 onto each component, keeping
  // the (x1, t) axes -> an S-surrogate field.
  const FrequencyGrid s_grid = grid.without_axis(1);
  DataTuple out{FieldHandle(std::move(f)), {}, {}};
  for (int j = 0; j < P.m; ++j) {
    const auto& bop = P.boundary[j];
    std::array<std::optional<BoundaryComponent>, 2> comps;
    for (int side = 0; side < 2; ++side) {
      const bool upper = side == 1;
      SpectralField bju = apply_terms(bop.terms, [&](std::size_t ti) {
        return bop.coeff_on_side(ti, upper).constant_value();
      });
      SpectralField g(s_grid);
      const double x2 = upper ? 1.0 : 0.0;
      for (std::size_t i = 0; i < grid.mode_count(); ++i) {
        if (bju[i] == cplx{0.0, 0.0}) continue;
        grid.decode(i, modes);
        const cplx phase = std::polar(1.0, grid.frequency(1, modes[1]) * x2);
        const std::array<int, 2> sm{modes[0], modes[2]};
        g.at(sm) += phase * bju[i];
      }
      comps[side].emplace(FieldHandle(std::move(g)));
    }
    out.g.push_back({std::move(*comps[0]), std::move(*comps[1])});
  }

  const FieldHandle uh{u_omega};
  for (int k = 0; k < kappa; ++k) out.h.push_back(uh.time_jet(k));
  return out;
}

// ------------------------------------------------------------------- norms

namespace {

const SpectralField& torus_of(const FieldHandle& h, const char* what) {
  if (!h.is_torus())
    throw std::invalid_argument(std::string(what) + ": torus representation required");
  return h.torus();
}

}  // namespace

TupleNorm tuple_norm(const DataTuple& data, const ParabolicProblem& P, double s,
                     const PhiLogPower& phi) {
  const double gamma = 1.0 / (2.0 * P.b);
  TupleNorm out;
  out.f = hoermander_norm(torus_of(data.f, "tuple_norm"), WeightParams(s - 2 * P.m, gamma, phi));
  std::vector<double> parts{out.f};
  for (std::size_t j = 0; j < data.g.size(); ++j) {
    std::array<double, 2> gn{};
    for (int side = 0; side < 2; ++side) {
      const auto& comp = data.g[j][side];
      if (!comp.corrections.empty())
        throw std::invalid_argument("tuple_norm: projector corrections have no torus norm");
      gn[side] = hoermander_norm(torus_of(comp.base, "tuple_norm"),
                                 WeightParams(s - P.boundary[j].mj - 0.5, gamma, phi));
      parts.push_back(gn[side]);
    }
    out.g.push_back(gn);
  }
  for (std::size_t k = 0; k < data.h.size(); ++k) {
    const double order = s - 2.0 * P.b * static_cast<double>(k) - P.b;
    out.h.push_back(hoermander_norm(data.h[k], WeightParams(order, 1.0, phi)));
    parts.push_back(out.h.back());
  }
  out.total = l2_combine(parts);
  return out;
}

TupleNorm ladder_tuple_norm(const DataTuple& data, const ParabolicProblem& P, double s,
                            const PhiLogPower& phi, double eps) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("ladder_tuple_norm: eps must lie in (0, 1/2)");
  const double gamma = 1.0 / (2.0 * P.b);
  const auto half = InterpParam::sqrt();
  TupleNorm out;
  auto mid = [&](const SpectralField& fld, double order, double g) {
    return interp_norm(fld, WeightParams(order - eps, g, phi), WeightParams(order + eps, g, phi),
                       half);
  };
  out.f = mid(torus_of(data.f, "ladder_tuple_norm"), s - 2 * P.m, gamma);
  std::vector<double> parts{out.f};
  for (std::size_t j = 0; j < data.g.size(); ++j) {
    std::array<double, 2> gn{};
    for (int side = 0; side < 2; ++side) {
      const auto& comp = data.g[j][side];
      if (!comp.corrections.empty())
        throw std::invalid_argument("ladder_tuple_norm: projector corrections have no torus norm");
      gn[side] = mid(torus_of(comp.base, "ladder_tuple_norm"), s - P.boundary[j].mj - 0.5, gamma);
      parts.push_back(gn[side]);
    }
    out.g.push_back(gn);
  }
  for (std::size_t k = 0; k < data.h.size(); ++k) {
    out.h.push_back(mid(data.h[k], s - 2.0 * P.b * static_cast<double>(k) - P.b, 1.0));
    parts.push_back(out.h.back());
  }
  out.total = l2_combine(parts);
  return out;
}

double solution_norm(const SpectralField& u_omega, const ParabolicProblem& P, double s,
                     const PhiLogPower& phi) {
  return hoermander_norm(u_omega, WeightParams(s, 1.0 / (2.0 * P.b), phi));
}

// ---------------------------------------------------------------- sampling

SampledStripData sample_tuple(const DataTuple& data, const ModelProblemConfig& config) {
  const ParabolicProblem& P = config.problem;
  SampledStripData out;
  out.x1_cutoff = config.x1_cutoff;
  out.x2_points = config.x2_points;
  out.t_steps = config.t_steps;
  out.tau = P.tau;
  out.length_x1 = P.geometry.length_x1;

  if (data.g.size() != 1)
    throw std::invalid_argument("sample_tuple: solver handles a single boundary operator (m=1)");
  if (data.h.size() != 1) throw std::invalid_argument("sample_tuple: kappa must be 1");

  const int M = out.modes();
  const int M2 = out.x2_points;
  const int T = out.t_steps + 1;
  out.f.assign(static_cast<std::size_t>(M) * M2 * T, cplx{0.0, 0.0});
  out.g_lower.assign(static_cast<std::size_t>(M) * T, cplx{0.0, 0.0});
  out.g_upper.assign(static_cast<std::size_t>(M) * T, cplx{0.0, 0.0});
  out.h0.assign(static_cast<std::size_t>(M) * M2, cplx{0.0, 0.0});

  const double h2 = 1.0 / (M2 - 1);
  const double dt = P.tau / out.t_steps;

  // f: analytic per (n1, n2) mode; accumulate e^{i xi2 x2} profiles.
  if (data.f.is_torus()) throw std::invalid_argument("sample_tuple: analytic f required");
  const ModeTimeField& f = data.f.analytic();
  const FrequencyGrid& g_grid = f.grid();
  if (g_grid.dim() != 2) throw std::invalid_argument("sample_tuple: f must live on the G grid");
  if (g_grid.cutoff(0) > out.x1_cutoff)
    throw std::invalid_argument("sample_tuple: x1 cutoff too small for the data");
  std::vector<int> modes(2);
  for (std::size_t i = 0; i < g_grid.mode_count(); ++i) {
    if (f.profile(i).terms.empty()) continue;
    g_grid.decode(i, modes);
    const int kmode = modes[0] + out.x1_cutoff;
    const double xi2 = g_grid.frequency(1, modes[1]);
    for (int i2 = 0; i2 < M2; ++i2) {
      const cplx phase = std::polar(1.0, xi2 * (i2 * h2));
      for (int it = 0; it < T; ++it)
        out.f[out.f_index(kmode, i2, it)] += phase * f.eval_mode(i, it * dt);
    }
  }

  // g: analytic on the Gamma grid x time.
  for (int side = 0; side < 2; ++side) {
    const auto& comp = data.g[0][side];
    if (!comp.corrections.empty())
      throw std::invalid_argument("sample_tuple: corrected tuples are not sampleable");
    if (comp.base.is_torus()) throw std::invalid_argument("sample_tuple: analytic g required");
    const ModeTimeField& g = comp.base.analytic();
    if (g.grid().dim() != 1) throw std::invalid_argument("sample_tuple: g must live on Gamma");
    if (g.grid().cutoff(0) > out.x1_cutoff)
      throw std::invalid_argument("sample_tuple: x1 cutoff too small for the data");
    auto& dst = side == 0 ? out.g_lower : out.g_upper;
    std::vector<int> gm(1);
    for (std::size_t i = 0; i < g.grid().mode_count(); ++i) {
      if (g.profile(i).terms.empty()) continue;
      g.grid().decode(i, gm);
      const int kmode = gm[0] + out.x1_cutoff;
      for (int it = 0; it < T; ++it)
        dst[static_cast<std::size_t>(kmode) * T + it] += g.eval_mode(i, it * dt);
    }
  }

  // h0: spectral on the G grid; evaluate the x2 sum at grid points.
  const SpectralField& h0 = data.h[0];
  if (!(h0.grid() == g_grid)) throw std::invalid_argument("sample_tuple: h grid mismatch");
  for (std::size_t i = 0; i < g_grid.mode_count(); ++i) {
    if (h0[i] == cplx{0.0, 0.0}) continue;
    g_grid.decode(i, modes);
    const int kmode = modes[0] + out.x1_cutoff;
    const double xi2 = g_grid.frequency(1, modes[1]);
    for (int i2 = 0; i2 < M2; ++i2)
      out.h0[static_cast<std::size_t>(kmode) * M2 + i2] += h0[i] * std::polar(1.0, xi2 * (i2 * h2));
  }
  return out;
}

double relative_l2_error(const StripSolution& sol, const ModeTimeField& u_exact) {
  const FrequencyGrid& g_grid = u_exact.grid();
  if (g_grid.dim() != 2) throw std::invalid_argument("relative_l2_error: 2-D exact field expected");
  const int M2 = sol.x2_points;
  const int T = sol.t_steps + 1;
  const double h2 = 1.0 / (M2 - 1);
  const double dt = sol.tau / sol.t_steps;
  std::vector<int> modes(2);

  double err2 = 0.0, ref2 = 0.0;
  // Exact per-mode samples, then compare mode-wise (Parseval in x1).
  std::vector<cplx> ex(static_cast<std::size_t>(2 * sol.x1_cutoff + 1) * M2 * T, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < g_grid.mode_count(); ++i) {
    if (u_exact.profile(i).terms.empty()) continue;
    g_grid.decode(i, modes);
    if (std::abs(modes[0]) > sol.x1_cutoff)
      throw std::invalid_argument("relative_l2_error: exact field exceeds solver cutoff");
    const int kmode = modes[0] + sol.x1_cutoff;
    const double xi2 = g_grid.frequency(1, modes[1]);
    for (int i2 = 0; i2 < M2; ++i2) {
      const cplx phase = std::polar(1.0, xi2 * (i2 * h2));
      for (int it = 0; it < T; ++it)
        ex[sol.index(kmode, i2, it)] += phase * u_exact.eval_mode(i, it * dt);
    }
  }
  for (std::size_t idx = 0; idx < ex.size(); ++idx) {
    err2 += std::norm(sol.u[idx] - ex[idx]);
    ref2 += std::norm(ex[idx]);
  }
  if (ref2 == 0.0) throw std::invalid_argument("relative_l2_error: zero reference");
  return std::sqrt(err2 / ref2);
}

}  // namespace parahorm
