// This file is part of parahorm.
// Licensed under the Apache License, Version 2.0. See the LICENSE file.

#include "parahorm/compat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parahorm/fft.hpp"
#include "parahorm/summation.hpp"

namespace parahorm {

namespace {

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double factorial(int q) {
  double f = 1.0;
  for (int i = 2; i <= q; ++i) f *= i;
  return f;
}

ComplexJet jet_from_derivatives(std::span<const cplx> deriv) {
  std::vector<cplx> c(deriv.size());
  for (std::size_t q = 0; q < deriv.size(); ++q) c[q] = deriv[q] / factorial(static_cast<int>(q));
  return ComplexJet(std::move(c));
}

double coeff_l2_diff(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("coeff_l2_diff: grid mismatch");
  std::vector<double> terms(a.grid().mode_count());
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = std::norm(a[i] - b[i]);
  return std::sqrt(pairwise_sum(terms));
}

}  // namespace

int sigma0(int m, std::span<const int> m_list) {
  if (m < 1) throw std::invalid_argument("sigma0: m must be >= 1");
  int s = 2 * m;
  for (int mj : m_list) {
    if (mj < 0) throw std::invalid_argument("sigma0: m_j must be >= 0");
    s = std::max(s, mj + 1);
  }
  return s;
}

int sigma0(const ParabolicProblem& P) {
  std::vector<int> mj;
  for (const auto& b : P.boundary) mj.push_back(b.mj);
  return sigma0(P.m, mj);
}

int condition_count(double s, int b, int mj) {
  const double bound = (s - mj - 0.5 - b) / (2.0 * b);
  if (bound <= 0.0) return 0;
  return static_cast<int>(std::ceil(bound - 1e-12));
}

bool on_half_integer_ladder(double s, int sigma0_value, double tol) {
  const double u = s - sigma0_value + 0.5;  // integer exactly on the ladder
  if (u < 0.5) return false;
  return std::abs(u - std::round(u)) < tol;
}

CoefficientJet build_coefficient_jets(const ParabolicProblem& P, const FrequencyGrid& g_grid,
                                      int depth) {
  P.validate();
  if (g_grid.dim() != 2) throw std::invalid_argument("build_coefficient_jets: G grid must be 2-D");
  if (depth < 0) throw std::invalid_argument("build_coefficient_jets: negative depth");

  CoefficientJet out{g_grid, g_grid.without_axis(1), depth, {}, {}};

  const int m1 = g_grid.modes_on_axis(0);
  const int m2 = g_grid.modes_on_axis(1);
  auto g_point = [&](std::size_t idx) {
    const std::size_t i1 = idx / m2, i2 = idx % m2;
    return std::array<double, 2>{g_grid.period(0) * static_cast<double>(i1) / m1,
                                 g_grid.period(1) * static_cast<double>(i2) / m2};
  };

  for (const auto& term : P.interior) {
    CoefficientJet::InteriorTerm t;
    t.alpha = term.alpha;
    t.beta = term.beta;
    t.jet.assign(depth + 1, std::vector<cplx>(g_grid.mode_count()));
    for (std::size_t pt = 0; pt < g_grid.mode_count(); ++pt) {
      const auto x = g_point(pt);
      const ComplexJet j = term.coeff.time_jet(x, depth);
      for (int q = 0; q <= depth; ++q) t.jet[q][pt] = j.derivative(q);
    }
    out.interior.push_back(std::move(t));
  }

  out.boundary.resize(P.boundary.size());
  const std::size_t gpts = out.gamma_grid.mode_count();
  for (std::size_t j = 0; j < P.boundary.size(); ++j) {
    const auto& bop = P.boundary[j];
    for (std::size_t ti = 0; ti < bop.terms.size(); ++ti) {
      CoefficientJet::BoundaryTerm t;
      t.alpha = bop.terms[ti].alpha;
      t.beta = bop.terms[ti].beta;
      for (int side = 0; side < 2; ++side) {
        t.jet[side].assign(depth + 1, std::vector<cplx>(gpts));
        for (std::size_t pt = 0; pt < gpts; ++pt) {
          const double x1 = out.gamma_grid.period(0) * static_cast<double>(pt) / gpts;
          const std::array<double, 2> x{x1, side == 0 ? 0.0 : 1.0};
          const ComplexJet cj = bop.coeff_on_side(ti, side == 1).time_jet(x, depth);
          for (int q = 0; q <= depth; ++q) t.jet[side][q][pt] = cj.derivative(q);
        }
      }
      out.boundary[j].push_back(std::move(t));
    }
  }
  return out;
}

SolvedJets normalize_leading(const ParabolicProblem& P, const CoefficientJet& raw, double tol) {
  const int kappa = P.kappa();
  const CoefficientJet::InteriorTerm* lead = nullptr;
  for (const auto& t : raw.interior) {
    bool zero_alpha = true;
    for (int a : t.alpha) zero_alpha = zero_alpha && a == 0;
    if (zero_alpha && t.beta == kappa) lead = &t;
  }
  if (lead == nullptr)
    throw std::invalid_argument("normalize_leading: leading coefficient term missing");

  const std::size_t npts = raw.g_grid.mode_count();
  SolvedJets out{raw.g_grid, raw.gamma_grid, raw.depth, {}, {}, raw.boundary};
  out.f_scale.assign(raw.depth + 1, std::vector<cplx>(npts));

  std::vector<ComplexJet> inv;
  inv.reserve(npts);
  for (std::size_t pt = 0; pt < npts; ++pt) {
    std::vector<cplx> d(raw.depth + 1);
    for (int q = 0; q <= raw.depth; ++q) d[q] = lead->jet[q][pt];
    if (std::abs(d[0]) < tol)
      throw std::runtime_error("normalize_leading: leading coefficient below tolerance on the grid");
    ComplexJet ij = jet_from_derivatives(d).reciprocal();
    for (int q = 0; q <= raw.depth; ++q) out.f_scale[q][pt] = ij.derivative(q);
    inv.push_back(std::move(ij));
  }

  for (const auto& t : raw.interior) {
    if (&t == lead) continue;
    CoefficientJet::InteriorTerm a0;
    a0.alpha = t.alpha;
    a0.beta = t.beta;
    a0.jet.assign(raw.depth + 1, std::vector<cplx>(npts));
    for (std::size_t pt = 0; pt < npts; ++pt) {
      std::vector<cplx> d(raw.depth + 1);
      for (int q = 0; q <= raw.depth; ++q) d[q] = t.jet[q][pt];
      const ComplexJet prod = -(jet_from_derivatives(d) * inv[pt]);
      for (int q = 0; q <= raw.depth; ++q) a0.jet[q][pt] = prod.derivative(q);
    }
    out.a0.push_back(std::move(a0));
  }
  return out;
}

// ------------------------------------------------------------ field handles

FieldHandle::FieldHandle(SpectralField torus_field) : rep_(std::move(torus_field)) {
  if (torus().grid().dim() < 2)
    throw std::invalid_argument("FieldHandle: torus representation needs a time axis");
}

FieldHandle::FieldHandle(ModeTimeField analytic_field) : rep_(std::move(analytic_field)) {}

FrequencyGrid FieldHandle::spatial_grid() const {
  if (is_torus()) return torus().grid().without_axis(torus().grid().dim() - 1);
  return analytic().grid();
}

SpectralField FieldHandle::time_jet(int q) const {
  if (q < 0) throw std::invalid_argument("FieldHandle::time_jet: negative order");
  if (!is_torus()) {
    const auto& mt = analytic();
    SpectralField out(mt.grid());
    for (std::size_t i = 0; i < mt.grid().mode_count(); ++i) out[i] = mt.mode_derivative_at0(i, q);
    return out;
  }
  const SpectralField& u = torus();
  const FrequencyGrid& grid = u.grid();
  const int taxis = grid.dim() - 1;
  SpectralField out(spatial_grid());
  std::vector<int> modes(grid.dim());
  std::vector<int> smodes(grid.dim() - 1);
  for (std::size_t i = 0; i < grid.mode_count(); ++i) {
    if (u[i] == cplx{0.0, 0.0}) continue;
    grid.decode(i, modes);
    for (int a = 0; a < taxis; ++a) smodes[a] = modes[a];
    const cplx iw{0.0, grid.frequency(taxis, modes[taxis])};
    cplx f{1.0, 0.0};
    for (int p = 0; p < q; ++p) f *= iw;
    out.at(smodes) += f * u[i];
  }
  return out;
}

SpectralField BoundaryComponent::time_trace(int k) const {
  SpectralField out = base.time_jet(k);
  for (const auto& corr : corrections) {
    if (!(corr.grid() == out.grid()))
      throw std::invalid_argument("BoundaryComponent: correction grid mismatch");
    for (std::size_t i = 0; i < out.grid().mode_count(); ++i)
      out[i] += corr.mode_derivative_at0(i, k);
  }
  return out;
}

double BoundaryComponent::correction_magnitude() const {
  double m = 0.0;
  for (const auto& corr : corrections)
    for (std::size_t i = 0; i < corr.grid().mode_count(); ++i)
      for (const auto& term : corr.profile(i).terms)
        for (const cplx& c : term.poly) m = std::max(m, std::abs(c));
  return m;
}

CompatibilitySystem CompatibilitySystem::of(const ParabolicProblem& P) {
  CompatibilitySystem sys;
  sys.kappa = P.kappa();
  sys.b = P.b;
  for (const auto& b : P.boundary) sys.mj.push_back(b.mj);
  sys.sigma0_value = sigma0(P.m, sys.mj);
  return sys;
}

int CompatibilitySystem::q_rj(int r, int j) const {
  const int num = sigma0_value + r - mj.at(j) - 1 - b;
  const int den = 2 * b;
  return num >= 0 ? num / den : -((-num + den - 1) / den);
}

int CompatibilitySystem::interval_index(double s) const {
  if (!(s > sigma0_value))
    throw std::invalid_argument("interval_index: requires s > sigma0");
  if (on_ladder(s))
    throw std::invalid_argument("interval_index: s lies on the half-integer ladder");
  return static_cast<int>(std::floor(s - sigma0_value + 0.5)) + 1;
}

// ------------------------------------------------------------- spectral ops

SpectralField apply_symbol_derivative(const SpectralField& f, std::span<const int> alpha) {
  const FrequencyGrid& grid = f.grid();
  if (alpha.size() != static_cast<std::size_t>(grid.dim()))
    throw std::invalid_argument("apply_symbol_derivative: alpha size mismatch");
  SpectralField out(grid);
  std::vector<int> modes(grid.dim());
  for (std::size_t i = 0; i < grid.mode_count(); ++i) {
    if (f[i] == cplx{0.0, 0.0}) continue;
    grid.decode(i, modes);
    double mult = 1.0;
    for (int a = 0; a < grid.dim(); ++a) {
      const double mxi = -grid.frequency(a, modes[a]);
      for (int p = 0; p < alpha[a]; ++p) mult *= mxi;
    }
    out[i] = mult * f[i];
  }
  return out;
}

SpectralField restrict_to_boundary(const SpectralField& f, BoundarySide side) {
  const FrequencyGrid& grid = f.grid();
  if (grid.dim() != 2) throw std::invalid_argument("restrict_to_boundary: expects a 2-D G field");
  const double x2 = side == BoundarySide::lower ? 0.0 : 1.0;
  SpectralField out(grid.without_axis(1));
  std::vector<int> modes(2);
  for (std::size_t i = 0; i < grid.mode_count(); ++i) {
    if (f[i] == cplx{0.0, 0.0}) continue;
    grid.decode(i, modes);
    const cplx phase = std::polar(1.0, grid.frequency(1, modes[1]) * x2);
    const std::array<int, 1> sm{modes[0]};
    out.at(sm) += phase * f[i];
  }
  return out;
}

// --------------------------------------------------------------- recurrence

std::vector<SpectralField> v_sequence(std::span<const SpectralField> f_jets,
                                      std::span<const SpectralField> h, const SolvedJets& jets,
                                      int L) {
  const int kappa = static_cast<int>(h.size());
  if (kappa < 1) throw std::invalid_argument("v_sequence: empty Cauchy data");
  for (const auto& hk : h)
    if (!(hk.grid() == jets.g_grid)) throw std::invalid_argument("v_sequence: h grid mismatch");
  if (L >= kappa) {
    if (L - kappa > jets.depth)
      throw std::invalid_argument("v_sequence: coefficient jet depth exceeded");
    if (static_cast<int>(f_jets.size()) <= L - kappa)
      throw std::invalid_argument("v_sequence: f jet depth exceeded");
  }

  const std::size_t npts = jets.g_grid.mode_count();
  std::vector<std::vector<cplx>> f_colloc;
  for (int q = 0; q + kappa <= L; ++q) f_colloc.push_back(to_collocation(f_jets[q]));

  std::vector<SpectralField> v;
  v.reserve(L + 1);
  for (int l = 0; l <= L; ++l) {
    if (l < kappa) {
      v.push_back(h[l]);
      continue;
    }
    const int d = l - kappa;
    std::vector<cplx> acc(npts, cplx{0.0, 0.0});
    for (const auto& term : jets.a0) {
      for (int q = 0; q <= d; ++q) {
        const double w = binom(d, q);
        const auto dv = to_collocation(apply_symbol_derivative(v[term.beta + q], term.alpha));
        const auto& cj = term.jet[d - q];
        for (std::size_t pt = 0; pt < npts; ++pt) acc[pt] += w * cj[pt] * dv[pt];
      }
    }
    // d_t^d of the scaled right-hand side f / a_lead, by Leibniz.
    for (int q = 0; q <= d; ++q) {
      const double w = binom(d, q);
      const auto& sc = jets.f_scale[d - q];
      const auto& fq = f_colloc[q];
      for (std::size_t pt = 0; pt < npts; ++pt) acc[pt] += w * sc[pt] * fq[pt];
    }
    v.push_back(from_collocation(jets.g_grid, acc));
  }
  return v;
}

SpectralField b_jk_apply(const SolvedJets& jets, int j, int k, std::span<const SpectralField> v,
                         BoundarySide side) {
  if (j < 0 || j >= static_cast<int>(jets.boundary.size()))
    throw std::invalid_argument("b_jk_apply: boundary index out of range");
  if (k < 0 || k > jets.depth) throw std::invalid_argument("b_jk_apply: jet depth exceeded");
  const int si = side == BoundarySide::lower ? 0 : 1;
  const std::size_t gpts = jets.gamma_grid.mode_count();
  std::vector<cplx> acc(gpts, cplx{0.0, 0.0});
  for (const auto& term : jets.boundary[j]) {
    for (int q = 0; q <= k; ++q) {
      if (term.beta + q >= static_cast<int>(v.size()))
        throw std::invalid_argument("b_jk_apply: missing v index");
      const double w = binom(k, q);
      const auto dv = to_collocation(
          restrict_to_boundary(apply_symbol_derivative(v[term.beta + q], term.alpha), side));
      const auto& cj = term.jet[si][k - q];
      for (std::size_t pt = 0; pt < gpts; ++pt) acc[pt] += w * cj[pt] * dv[pt];
    }
  }
  return from_collocation(jets.gamma_grid, acc);
}

// ---------------------------------------------------------------- residuals

namespace {

std::vector<SpectralField> v_for_conditions(const DataTuple& data, const SolvedJets& jets, int L) {
  const int kappa = data.kappa();
  std::vector<SpectralField> f_jets;
  for (int q = 0; q + kappa <= L; ++q) f_jets.push_back(data.f.time_jet(q));
  if (f_jets.empty()) f_jets.push_back(data.f.time_jet(0));
  return v_sequence(f_jets, data.h, jets, L);
}

}  // namespace

std::vector<ResidualRow> compat_residuals(const DataTuple& data, const ParabolicProblem& P,
                                          const SolvedJets& jets, double s, double tol) {
  const auto sys = CompatibilitySystem::of(P);
  if (!(s > sys.sigma0_value))
    throw std::invalid_argument("compat_residuals: requires s > sigma0");
  if (sys.on_ladder(s))
    throw std::invalid_argument(
        "compat_residuals: s on the half-integer ladder; the data space is defined by "
        "interpolation there and residuals are undefined");

  int L = -1;
  for (std::size_t j = 0; j < sys.mj.size(); ++j) {
    const int cnt = sys.count(s, static_cast<int>(j));
    if (cnt > 0) L = std::max(L, sys.mj[j] / (2 * P.b) + cnt - 1);
  }
  std::vector<ResidualRow> rows;
  if (L < 0) return rows;

  const auto v = v_for_conditions(data, jets, L);
  for (std::size_t j = 0; j < sys.mj.size(); ++j) {
    const int cnt = sys.count(s, static_cast<int>(j));
    for (int k = 0; k < cnt; ++k)
      for (int side = 0; side < 2; ++side) {
        const auto bside = side == 0 ? BoundarySide::lower : BoundarySide::upper;
        const SpectralField lhs = data.g[j][side].time_trace(k);
        const SpectralField rhs = b_jk_apply(jets, static_cast<int>(j), k, v, bside);
        ResidualRow row;
        row.j = static_cast<int>(j);
        row.k = k;
        row.side = bside;
        row.residual = coeff_l2_diff(lhs, rhs);
        row.tol = tol;
        row.pass = row.residual <= tol;
        rows.push_back(row);
      }
  }
  return rows;
}

bool all_pass(std::span<const ResidualRow> rows) {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

DataTuple project_Q(const DataTuple& data, const ParabolicProblem& P, const SolvedJets& jets,
                    double s) {
  const auto sys = CompatibilitySystem::of(P);
  const int r = sys.interval_index(s);

  DataTuple out = data;
  int L = -1;
  for (std::size_t j = 0; j < sys.mj.size(); ++j) {
    const int q = sys.q_rj(r, static_cast<int>(j));
    if (q >= 0) L = std::max(L, sys.mj[j] / (2 * P.b) + q);
  }
  if (L < 0) return out;  // q_{r,j} < 0 for all j: identity

  const auto v = v_for_conditions(data, jets, L);
  for (std::size_t j = 0; j < sys.mj.size(); ++j) {
    const int q = sys.q_rj(r, static_cast<int>(j));
    if (q < 0) continue;
    for (int side = 0; side < 2; ++side) {
      const auto bside = side == 0 ? BoundarySide::lower : BoundarySide::upper;
      TraceVector w(jets.gamma_grid, q + 1);
      for (int k = 0; k <= q; ++k) {
        const SpectralField bjk = b_jk_apply(jets, static_cast<int>(j), k, v, bside);
        const SpectralField gk = out.g[j][side].time_trace(k);
        for (std::size_t i = 0; i < jets.gamma_grid.mode_count(); ++i)
          w.v[k][i] = bjk[i] - gk[i];
      }
      out.g[j][side].corrections.push_back(extend_T1(w, P.b));
    }
  }
  return out;
}

double tuple_distance(const DataTuple& a, const DataTuple& b) {
  if (a.g.size() != b.g.size() || a.h.size() != b.h.size())
    throw std::invalid_argument("tuple_distance: shape mismatch");
  double d = 0.0;
  for (int q = 0; q < 3; ++q) {
    const SpectralField fa = a.f.time_jet(q), fb = b.f.time_jet(q);
    d = std::max(d, coeff_l2_diff(fa, fb));
  }
  for (std::size_t k = 0; k < a.h.size(); ++k) d = std::max(d, coeff_l2_diff(a.h[k], b.h[k]));
  for (std::size_t j = 0; j < a.g.size(); ++j)
    for (int side = 0; side < 2; ++side) {
      int depth = 1;
      for (const auto& c : a.g[j][side].corrections) depth = std::max(depth, c.jet_depth());
      for (const auto& c : b.g[j][side].corrections) depth = std::max(depth, c.jet_depth());
      for (int k = 0; k < depth; ++k)
        d = std::max(d, coeff_l2_diff(a.g[j][side].time_trace(k), b.g[j][side].time_trace(k)));
    }
  return d;
}

}  // namespace parahorm
