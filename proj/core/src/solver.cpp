// This file is part of parahorm.
// Licensed under the Apache License, Version 2.0. See the LICENSE file.

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "parahorm/model.hpp"
#include "parahorm/parallel.hpp"

namespace parahorm {

namespace {

struct Tridiag {
  // rows: lower[i] u_{i-1} + diag[i] u_i + upper[i] u_{i+1}
  std::vector<cplx> lower, diag, upper;
  // optional extra entries breaking the band at the two boundary rows:
  cplx first_extra{0.0, 0.0};  // coefficient of u_2 in row 0
  cplx last_extra{0.0, 0.0};   // coefficient of u_{M-3} in row M-1

  explicit Tridiag(int n) : lower(n), diag(n), upper(n) {}
};

// Thomas solve after condensing the almost-tridiagonal boundary rows.
void solve_banded(Tridiag A, std::vector<cplx>& rhs) {
  const int n = static_cast<int>(A.diag.size());
  if (n < 3) throw std::invalid_argument("solve_banded: need at least 3 points");
  if (A.first_extra != cplx{0.0, 0.0}) {
    const cplx r = A.upper[1];
    if (r == cplx{0.0, 0.0}) throw std::runtime_error("solve_banded: cannot condense row 0");
    const cplx s = A.first_extra / r;
    A.diag[0] -= s * A.lower[1];
    A.upper[0] -= s * A.diag[1];
    rhs[0] -= s * rhs[1];
  }
  if (A.last_extra != cplx{0.0, 0.0}) {
    const cplx r = A.lower[n - 2];
    if (r == cplx{0.0, 0.0}) throw std::runtime_error("solve_banded: cannot condense the last row");
    const cplx s = A.last_extra / r;
    A.lower[n - 1] -= s * A.diag[n - 2];
    A.diag[n - 1] -= s * A.upper[n - 2];
    rhs[n - 1] -= s * rhs[n - 2];
  }
  // Thomas sweep.
  for (int i = 1; i < n; ++i) {
    if (A.diag[i - 1] == cplx{0.0, 0.0}) throw std::runtime_error("solve_banded: zero pivot");
    const cplx w = A.lower[i] / A.diag[i - 1];
    A.diag[i] -= w * A.upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  rhs[n - 1] /= A.diag[n - 1];
  for (int i = n - 2; i >= 0; --i) rhs[i] = (rhs[i] - A.upper[i] * rhs[i + 1]) / A.diag[i];
}

// Boundary-operator row at one end: c_id * u + c_d2 * (one-sided d/dx2 u)
// + terms from D_1 acting as the mode scalar.
struct BoundaryRow {
  cplx at0, at1, at2;  // nearest three points, ordered from the wall inward
};

BoundaryRow boundary_row(const ParabolicProblem& P, BoundarySide side, double xi1, double t,
                         double h2) {
  const auto& bop = P.boundary[0];
  BoundaryRow row{{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
  const bool upper = side == BoundarySide::upper;
  const std::array<double, 2> x{0.0, upper ? 1.0 : 0.0};
  for (std::size_t ti = 0; ti < bop.terms.size(); ++ti) {
    const auto& term = bop.terms[ti];
    if (term.beta != 0)
      throw std::invalid_argument("solve_model: time-derivative boundary terms unsupported");
    cplx c = bop.coeff_on_side(ti, upper).eval(x, t);
    for (int p = 0; p < term.alpha[0]; ++p) c *= -xi1;
    const int a2 = term.alpha[1];
    if (a2 == 0) {
      row.at0 += c;
    } else if (a2 == 1) {
      // D_2 = i d/dx2; one-sided second-order stencil from the wall,
      // with the sign of the inward direction.
      const double inward = upper ? -1.0 : 1.0;
      const cplx d{0.0, inward / (2.0 * h2)};
      row.at0 += c * d * (-3.0);
      row.at1 += c * d * 4.0;
      row.at2 += c * d * (-1.0);
    } else {
      throw std::invalid_argument("solve_model: boundary operators of x2-order > 1 unsupported");
    }
  }
  return row;
}

}  // namespace

StripSolution solve_model(const ModelProblemConfig& config, const SampledStripData& data) {
  const ParabolicProblem& P = config.problem;
  P.validate();
  if (P.b != 1 || P.m != 1)
    throw std::invalid_argument("solve_model: scoped to second-order problems (b = m = 1)");
  for (const auto& term : P.interior)
    if (term.coeff.space_dependent())
      throw std::invalid_argument("solve_model: x1-dependent coefficients decouple no modes");
  if (data.x2_points < 5 || data.t_steps < 2)
    throw std::invalid_argument("solve_model: resolution too small");

  if (config.check_covering) {
    const auto sweep = covering_sweep(P, SweepSpec{16, 1, 1});
    if (!sweep.pass)
      throw std::runtime_error("solve_model: covering condition fails; refusing to solve");
  }

  const int M = data.modes();
  const int M2 = data.x2_points;
  const int T = data.t_steps + 1;
  const double h2 = 1.0 / (M2 - 1);
  const double dt = data.tau / data.t_steps;

  StripSolution sol;
  sol.x1_cutoff = data.x1_cutoff;
  sol.x2_points = M2;
  sol.t_steps = data.t_steps;
  sol.tau = data.tau;
  sol.length_x1 = data.length_x1;
  sol.u.assign(static_cast<std::size_t>(M) * M2 * T, cplx{0.0, 0.0});

  // Discrete compatibility probe at t = 0: boundary rows applied to h0
  // against g(.,0); a mismatch only warns (corner layer expected).
  double mismatch = 0.0;

  // Interior terms with beta = 0; the leading d_t coefficient.
  const SymbolTerm* lead = P.leading_term();

  std::vector<double> mismatches(M, 0.0);
  parallel_for(static_cast<std::size_t>(M), [&](std::size_t kmode) {
    const int n1 = static_cast<int>(kmode) - data.x1_cutoff;
    const double xi1 = 2.0 * std::numbers::pi * n1 / data.length_x1;
    const std::array<double, 2> xmid{0.0, 0.5};

    // L(t) u = -(1/a_t) sum_{beta=0} a_alpha (-xi1)^{alpha_1} (i d2)^{alpha_2} u
    auto build_L = [&](double t, Tridiag& L) {
      const cplx at = lead->coeff.eval(xmid, t);
      if (std::abs(at) < 1e-14) throw std::runtime_error("solve_model: leading coefficient ~ 0");
      for (int i = 0; i < M2; ++i) {
        L.lower[i] = L.diag[i] = L.upper[i] = cplx{0.0, 0.0};
      }
      for (const auto& term : P.interior) {
        if (term.beta != 0) continue;
        cplx c = -term.coeff.eval(xmid, t) / at;
        for (int p = 0; p < term.alpha[0]; ++p) c *= -xi1;
        const int a2 = term.alpha[1];
        if (a2 == 0) {
          for (int i = 0; i < M2; ++i) L.diag[i] += c;
        } else if (a2 == 1) {
          // D_2 = i d2, centered
          const cplx d{0.0, 1.0 / (2.0 * h2)};
          for (int i = 1; i + 1 < M2; ++i) {
            L.lower[i] += -c * d;
            L.upper[i] += c * d;
          }
        } else if (a2 == 2) {
          // D_2^2 = -d2^2, centered
          const double w = -1.0 / (h2 * h2);
          for (int i = 1; i + 1 < M2; ++i) {
            L.lower[i] += c * w;
            L.upper[i] += c * w;
            L.diag[i] += -2.0 * c * w;
          }
        } else {
          throw std::invalid_argument("solve_model: interior x2-order > 2 unsupported");
        }
      }
    };

    Tridiag Lold(M2), Lnew(M2);
    build_L(0.0, Lold);

    std::vector<cplx> un(M2), rhs(M2);
    for (int i = 0; i < M2; ++i) un[i] = data.h0[kmode * static_cast<std::size_t>(M2) + i];
    for (int i = 0; i < M2; ++i) sol.u[sol.index(static_cast<int>(kmode), i, 0)] = un[i];

    // t = 0 compatibility probe for the warning.
    {
      const BoundaryRow low = boundary_row(P, BoundarySide::lower, xi1, 0.0, h2);
      const BoundaryRow up = boundary_row(P, BoundarySide::upper, xi1, 0.0, h2);
      const cplx bl = low.at0 * un[0] + low.at1 * un[1] + low.at2 * un[2];
      const cplx bu = up.at0 * un[M2 - 1] + up.at1 * un[M2 - 2] + up.at2 * un[M2 - 3];
      mismatches[kmode] =
          std::max(std::abs(bl - data.g_lower[kmode * static_cast<std::size_t>(T)]),
                   std::abs(bu - data.g_upper[kmode * static_cast<std::size_t>(T)]));
    }

    auto fscale = [&](double t) { return 1.0 / lead->coeff.eval(xmid, t); };

    for (int n = 0; n < data.t_steps; ++n) {
      const double t0 = n * dt, t1 = (n + 1) * dt;
      build_L(t1, Lnew);

      // rhs = (I + dt/2 L(t0)) u^n + dt/2 (F(t0) + F(t1)), F = f / a_t
      const cplx s0 = fscale(t0), s1 = fscale(t1);
      for (int i = 0; i < M2; ++i) {
        cplx lu = Lold.diag[i] * un[i];
        if (i > 0) lu += Lold.lower[i] * un[i - 1];
        if (i + 1 < M2) lu += Lold.upper[i] * un[i + 1];
        const cplx f0 = data.f[data.f_index(static_cast<int>(kmode), i, n)] * s0;
        const cplx f1 = data.f[data.f_index(static_cast<int>(kmode), i, n + 1)] * s1;
        rhs[i] = un[i] + 0.5 * dt * lu + 0.5 * dt * (f0 + f1);
      }

      // System matrix I - dt/2 L(t1), with boundary rows at t1.
      Tridiag A(M2);
      for (int i = 0; i < M2; ++i) {
        A.lower[i] = -0.5 * dt * Lnew.lower[i];
        A.diag[i] = 1.0 - 0.5 * dt * Lnew.diag[i];
        A.upper[i] = -0.5 * dt * Lnew.upper[i];
      }
      const BoundaryRow low = boundary_row(P, BoundarySide::lower, xi1, t1, h2);
      A.lower[0] = {0.0, 0.0};
      A.diag[0] = low.at0;
      A.upper[0] = low.at1;
      A.first_extra = low.at2;
      rhs[0] = data.g_lower[kmode * static_cast<std::size_t>(T) + n + 1];
      const BoundaryRow up = boundary_row(P, BoundarySide::upper, xi1, t1, h2);
      A.upper[M2 - 1] = {0.0, 0.0};
      A.diag[M2 - 1] = up.at0;
      A.lower[M2 - 1] = up.at1;
      A.last_extra = up.at2;
      rhs[M2 - 1] = data.g_upper[kmode * static_cast<std::size_t>(T) + n + 1];

      solve_banded(std::move(A), rhs);
      un = rhs;
      for (int i = 0; i < M2; ++i) sol.u[sol.index(static_cast<int>(kmode), i, n + 1)] = un[i];
      std::swap(Lold, Lnew);  // L(t1) becomes the old-time operator
    }
  });

  for (double m : mismatches) mismatch = std::max(mismatch, m);
  sol.boundary_mismatch = mismatch;
  sol.incompat_warning = mismatch > 1e-6;
  return sol;
}

}  // namespace parahorm
