// This file is part of parahorm.
// Licensed under the Apache License, Version 2.0. See the LICENSE file.

#include "parahorm/symbols.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace parahorm {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHalfPlaneTol = 1e-8;
}  // namespace

// ---------------------------------------------------------------- CoeffSpec

CoeffSpec CoeffSpec::constant(cplx value) {
  CoeffSpec c;
  c.kind_ = Kind::Constant;
  c.data_ = {value};
  return c;
}

CoeffSpec CoeffSpec::poly_t(std::vector<cplx> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("CoeffSpec::poly_t: empty coefficient list");
  CoeffSpec c;
  c.kind_ = Kind::PolyT;
  c.data_ = std::move(coeffs);
  return c;
}

CoeffSpec CoeffSpec::exp_t(cplx amplitude, cplx rate) {
  CoeffSpec c;
  c.kind_ = Kind::ExpT;
  c.data_ = {amplitude, rate};
  return c;
}

CoeffSpec CoeffSpec::cos_x1(cplx offset, cplx amplitude, double length) {
  if (!(length > 0.0)) throw std::invalid_argument("CoeffSpec::cos_x1: length must be positive");
  CoeffSpec c;
  c.kind_ = Kind::CosX1;
  c.data_ = {offset, amplitude};
  c.length_ = length;
  return c;
}

cplx CoeffSpec::eval(std::span<const double> x, double t) const {
  switch (kind_) {
    case Kind::Constant:
      return data_[0];
    case Kind::PolyT: {
      cplx acc{0.0, 0.0};
      for (std::size_t q = data_.size(); q-- > 0;) acc = acc * t + data_[q];
      return acc;
    }
    case Kind::ExpT:
      return data_[0] * std::exp(data_[1] * t);
    case Kind::CosX1:
      if (x.empty()) throw std::invalid_argument("CoeffSpec::eval: cos_x1 needs a point");
      return data_[0] + data_[1] * std::cos(kTwoPi * x[0] / length_);
  }
  return {0.0, 0.0};
}

ComplexJet CoeffSpec::time_jet(std::span<const double> x, int depth) const {
  switch (kind_) {
    case Kind::Constant:
    case Kind::CosX1:
      return ComplexJet::constant(eval(x, 0.0), depth);
    case Kind::PolyT: {
      auto j = ComplexJet::constant({0.0, 0.0}, depth);
      for (int q = 0; q <= depth && q < static_cast<int>(data_.size()); ++q) j.coeff(q) = data_[q];
      return j;
    }
    case Kind::ExpT: {
      auto j = ComplexJet::constant({0.0, 0.0}, depth);
      cplx c = data_[0];
      for (int q = 0; q <= depth; ++q) {
        j.coeff(q) = c;
        c *= data_[1] / static_cast<double>(q + 1);
      }
      return j;
    }
  }
  return ComplexJet::constant({0.0, 0.0}, depth);
}

cplx CoeffSpec::constant_value() const {
  if (kind_ != Kind::Constant) throw std::logic_error("CoeffSpec: not a constant");
  return data_[0];
}

std::string CoeffSpec::kind_name() const {
  switch (kind_) {
    case Kind::Constant: return "const";
    case Kind::PolyT: return "poly_t";
    case Kind::ExpT: return "exp_t";
    case Kind::CosX1: return "cos_x1";
  }
  return "?";
}

int SymbolTerm::order(int parabolic_weight) const {
  int a = 0;
  for (int v : alpha) a += v;
  return a + 2 * parabolic_weight * beta;
}

const CoeffSpec& BoundaryOperator::coeff_on_side(std::size_t term, bool upper) const {
  if (upper && term < upper_coeffs.size() && upper_coeffs[term].has_value())
    return *upper_coeffs[term];
  return terms[term].coeff;
}

// --------------------------------------------------------- ParabolicProblem

void ParabolicProblem::validate() const {
  if (n < 2) throw std::invalid_argument("ParabolicProblem: n >= 2 required");
  if (b < 1 || m < b) throw std::invalid_argument("ParabolicProblem: need m >= b >= 1");
  if (m % b != 0) throw std::invalid_argument("ParabolicProblem: kappa = m/b must be an integer");
  if (static_cast<int>(boundary.size()) != m)
    throw std::invalid_argument("ParabolicProblem: exactly m boundary operators required");
  if (!(tau > 0.0)) throw std::invalid_argument("ParabolicProblem: tau must be positive");
  for (const auto& term : interior) {
    if (static_cast<int>(term.alpha.size()) != n)
      throw std::invalid_argument("ParabolicProblem: interior multi-index length != n");
    if (term.beta < 0 || term.order(b) > 2 * m)
      throw std::invalid_argument("ParabolicProblem: interior term order exceeds 2m");
  }
  for (const auto& bop : boundary) {
    if (bop.mj < 0) throw std::invalid_argument("ParabolicProblem: m_j must be >= 0");
    for (const auto& term : bop.terms) {
      if (static_cast<int>(term.alpha.size()) != n)
        throw std::invalid_argument("ParabolicProblem: boundary multi-index length != n");
      if (term.beta < 0 || term.order(b) > bop.mj)
        throw std::invalid_argument("ParabolicProblem: boundary term order exceeds m_j");
    }
  }
  if (leading_term() == nullptr)
    throw std::invalid_argument("ParabolicProblem: missing leading coefficient a^{(0,...,0),kappa}");
}

const SymbolTerm* ParabolicProblem::leading_term() const {
  const int k = kappa();
  for (const auto& term : interior) {
    if (term.beta != k) continue;
    bool zero = true;
    for (int a : term.alpha) zero = zero && a == 0;
    if (zero) return &term;
  }
  return nullptr;
}

std::vector<double> ParabolicProblem::inner_normal(BoundarySide side) const {
  std::vector<double> nu(n, 0.0);
  nu[1] = side == BoundarySide::lower ? 1.0 : -1.0;
  return nu;
}

// --------------------------------------------------------------- symbols

cplx eval_A0(const ParabolicProblem& P, std::span<const double> x, double t,
             std::span<const double> xi, cplx p) {
  if (xi.size() != static_cast<std::size_t>(P.n)) throw std::invalid_argument("eval_A0: bad xi size");
  cplx acc{0.0, 0.0};
  for (const auto& term : P.interior) {
    if (term.order(P.b) != 2 * P.m) continue;
    double xi_pow = 1.0;
    for (int a = 0; a < P.n; ++a)
      for (int q = 0; q < term.alpha[a]; ++q) xi_pow *= xi[a];
    cplx p_pow{1.0, 0.0};
    for (int q = 0; q < term.beta; ++q) p_pow *= p;
    acc += term.coeff.eval(x, t) * xi_pow * p_pow;
  }
  return acc;
}

namespace {

// Polynomial helpers in zeta, coefficients ascending.
using Poly = std::vector<cplx>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// (xi_a + zeta nu_a)^k as a polynomial in zeta.
Poly linear_power(double xi_a, double nu_a, int k) {
  Poly r{cplx{1.0, 0.0}};
  const Poly lin{cplx{xi_a, 0.0}, cplx{nu_a, 0.0}};
  for (int q = 0; q < k; ++q) r = poly_mul(r, lin);
  return r;
}

// Principal part of a term list as a polynomial in zeta along xi + zeta nu.
Poly slice_poly(const ParabolicProblem& P, const std::vector<SymbolTerm>& terms,
                const std::function<const CoeffSpec&(std::size_t)>& coeff_of, int principal_order,
                std::span<const double> x, double t, std::span<const double> xi,
                std::span<const double> nu, cplx p, int degree_cap) {
  Poly acc(degree_cap + 1, cplx{0.0, 0.0});
  for (std::size_t ti = 0; ti < terms.size(); ++ti) {
    const auto& term = terms[ti];
    if (term.order(P.b) != principal_order) continue;
    Poly prod{cplx{1.0, 0.0}};
    for (int a = 0; a < P.n; ++a)
      if (term.alpha[a] > 0) prod = poly_mul(prod, linear_power(xi[a], nu[a], term.alpha[a]));
    cplx scale = coeff_of(ti).eval(x, t);
    for (int q = 0; q < term.beta; ++q) scale *= p;
    for (std::size_t d = 0; d < prod.size() && d < acc.size(); ++d) acc[d] += scale * prod[d];
  }
  return acc;
}

std::vector<cplx> poly_roots(const Poly& coeffs) {
  // Companion-matrix eigenvalues with Osborne-style balancing.
  int deg = static_cast<int>(coeffs.size()) - 1;
  while (deg > 0 && std::abs(coeffs[deg]) == 0.0) --deg;
  if (deg < 1) throw std::runtime_error("poly_roots: degenerate polynomial");
  double maxc = 0.0;
  for (int i = 0; i <= deg; ++i) maxc = std::max(maxc, std::abs(coeffs[i]));
  if (std::abs(coeffs[deg]) < 1e-13 * maxc)
    throw std::runtime_error("poly_roots: leading coefficient vanishes");

  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) C(i, deg - 1) = -coeffs[i] / coeffs[deg];

  for (int sweep = 0; sweep < 6; ++sweep) {
    bool changed = false;
    for (int i = 0; i < deg; ++i) {
      double rnorm = 0.0, cnorm = 0.0;
      for (int j = 0; j < deg; ++j) {
        if (j == i) continue;
        rnorm += std::abs(C(i, j));
        cnorm += std::abs(C(j, i));
      }
      if (rnorm == 0.0 || cnorm == 0.0) continue;
      double f = 1.0;
      while (cnorm < rnorm / 2.0) {
        cnorm *= 2.0;
        rnorm /= 2.0;
        f *= 2.0;
      }
      while (cnorm > rnorm * 2.0) {
        cnorm /= 2.0;
        rnorm *= 2.0;
        f /= 2.0;
      }
      if (f != 1.0) {
        changed = true;
        C.col(i) *= f;
        C.row(i) /= f;
      }
    }
    if (!changed) break;
  }

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(C, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("poly_roots: eigensolver failed");
  std::vector<cplx> roots(deg);
  for (int i = 0; i < deg; ++i) roots[i] = solver.eigenvalues()(i);
  return roots;
}

struct SphereParam {
  double sigma;  // |p|^{1/b} in [0,1]
  double theta;  // arg p in [-pi/2, pi/2]
};

cplx p_of(const SphereParam& sp, int b) {
  return std::polar(std::pow(sp.sigma, b), sp.theta);
}

}  // namespace

std::vector<cplx> boundary_symbol_poly(const ParabolicProblem& P, int j, BoundarySide side,
                                       double x1, double t, double xi_tangent, cplx p) {
  const auto& bop = P.boundary.at(j);
  const auto nu = P.inner_normal(side);
  std::vector<double> x{x1, side == BoundarySide::lower ? 0.0 : 1.0};
  x.resize(P.n, 0.0);
  std::vector<double> xi(P.n, 0.0);
  xi[0] = xi_tangent;
  const bool upper = side == BoundarySide::upper;
  return slice_poly(
      P, bop.terms, [&](std::size_t ti) -> const CoeffSpec& { return bop.coeff_on_side(ti, upper); },
      bop.mj, x, t, xi, nu, p, bop.mj);
}

PetrovskiiReport petrovskii_check(const ParabolicProblem& P, int resolution, double tol) {
  P.validate();
  if (resolution < 8) throw std::invalid_argument("petrovskii_check: resolution must be >= 8");

  bool constant = true;
  for (const auto& term : P.interior) constant = constant && term.coeff.is_constant();
  const int xs = constant ? 1 : 5;
  const int ts = constant ? 1 : 5;

  auto abs_A0 = [&](std::span<const double> x, double t, double sigma, double theta, double dir) {
    sigma = std::clamp(sigma, 0.0, 1.0);
    theta = std::clamp(theta, -std::numbers::pi / 2.0, std::numbers::pi / 2.0);
    std::vector<double> xi(P.n, 0.0);
    const double len = std::sqrt(std::max(0.0, 1.0 - sigma));
    xi[0] = len * std::cos(dir);
    if (P.n >= 2) xi[1] = len * std::sin(dir);
    return std::abs(eval_A0(P, x, t, xi, p_of({sigma, theta}, P.b)));
  };

  PetrovskiiReport rep;
  rep.tol = tol;
  rep.min_abs = std::numeric_limits<double>::infinity();
  double best_sigma = 0, best_theta = 0, best_dir = 0;
  std::vector<double> best_x(P.n, 0.5);
  double best_t = 0;

  for (int ix = 0; ix < xs; ++ix)
    for (int it = 0; it < ts; ++it) {
      std::vector<double> x(P.n, 0.5);
      x[0] = P.geometry.length_x1 * ix / xs;
      const double t = ts > 1 ? P.tau * it / (ts - 1) : 0.0;
      for (int is = 0; is < resolution; ++is) {
        const double sigma = static_cast<double>(is) / (resolution - 1);
        for (int ith = 0; ith < resolution; ++ith) {
          const double theta = -std::numbers::pi / 2.0 + std::numbers::pi * ith / (resolution - 1);
          for (int id = 0; id < resolution; ++id) {
            const double dir = kTwoPi * id / resolution;
            const double v = abs_A0(x, t, sigma, theta, dir);
            if (v < rep.min_abs) {
              rep.min_abs = v;
              best_sigma = sigma;
              best_theta = theta;
              best_dir = dir;
              best_x = x;
              best_t = t;
            }
          }
        }
      }
    }
  rep.grid_min_abs = rep.min_abs;

  // Compass polish in the sphere parameters at the best (x, t).
  double h = 1.0 / resolution;
  double cur = rep.min_abs;
  for (int iter = 0; iter < 90 && h > 1e-17; ++iter) {
    bool improved = false;
    const double trial[6][3] = {{h, 0, 0}, {-h, 0, 0}, {0, h, 0}, {0, -h, 0}, {0, 0, h}, {0, 0, -h}};
    for (const auto& d : trial) {
      const double v = abs_A0(best_x, best_t, best_sigma + d[0], best_theta + d[1], best_dir + d[2]);
      if (v < cur) {
        cur = v;
        best_sigma = std::clamp(best_sigma + d[0], 0.0, 1.0);
        best_theta = std::clamp(best_theta + d[1], -std::numbers::pi / 2.0, std::numbers::pi / 2.0);
        best_dir += d[2];
        improved = true;
        break;
      }
    }
    if (!improved) h *= 0.5;
  }
  rep.min_abs = cur;

  rep.x = best_x;
  rep.t = best_t;
  const double len = std::sqrt(std::max(0.0, 1.0 - best_sigma));
  rep.witness.xi.assign(P.n, 0.0);
  rep.witness.xi[0] = len * std::cos(best_dir);
  if (P.n >= 2) rep.witness.xi[1] = len * std::sin(best_dir);
  rep.witness.p = p_of({best_sigma, best_theta}, P.b);
  rep.pass = rep.min_abs > tol;
  return rep;
}

RootSplit root_split(const ParabolicProblem& P, BoundarySide side, double x1, double t,
                     double xi_tangent, cplx p) {
  if (std::abs(xi_tangent) + std::abs(p) == 0.0)
    throw std::invalid_argument("root_split: |xi| + |p| must be nonzero");
  if (p.real() < -1e-14) throw std::invalid_argument("root_split: Re p must be >= 0");

  const auto nu = P.inner_normal(side);
  std::vector<double> x{x1, side == BoundarySide::lower ? 0.0 : 1.0};
  x.resize(P.n, 0.0);
  std::vector<double> xi(P.n, 0.0);
  xi[0] = xi_tangent;

  const Poly poly = slice_poly(
      P, P.interior, [&](std::size_t ti) -> const CoeffSpec& { return P.interior[ti].coeff; },
      2 * P.m, x, t, xi, nu, p, 2 * P.m);
  const auto roots = poly_roots(poly);
  if (static_cast<int>(roots.size()) != 2 * P.m)
    throw std::runtime_error("root_split: slice polynomial degenerated below degree 2m");

  RootSplit split;
  for (cplx z : roots) {
    if (std::abs(z.imag()) <= kHalfPlaneTol * (1.0 + std::abs(z)))
      throw std::runtime_error("root_split: root on the real axis (point inadmissible or Condition 1 fails)");
    (z.imag() > 0.0 ? split.zeta_plus : split.zeta_minus).push_back(z);
  }
  if (static_cast<int>(split.zeta_plus.size()) != P.m)
    throw std::runtime_error("root_split: root count per half-plane is not m");
  return split;
}

CoveringReport covering_check(const ParabolicProblem& P, BoundarySide side, double x1, double t,
                              double xi_tangent, cplx p, double tol) {
  CoveringReport rep;
  rep.side = side;
  rep.x1 = x1;
  rep.t = t;
  rep.xi_tangent = xi_tangent;
  rep.p = p;

  const RootSplit split = root_split(P, side, x1, t, xi_tangent, p);

  // chi+(zeta) = prod (zeta - zeta_j^+), monic of degree m.
  Poly chi{cplx{1.0, 0.0}};
  for (cplx z : split.zeta_plus) chi = poly_mul(chi, Poly{-z, cplx{1.0, 0.0}});

  const int m = P.m;
  rep.remainder.assign(m, std::vector<cplx>(m, cplx{0.0, 0.0}));
  Eigen::MatrixXcd M(m, m);
  double rownorm_prod = 1.0;
  for (int j = 0; j < m; ++j) {
    Poly r = boundary_symbol_poly(P, j, side, x1, t, xi_tangent, p);
    // long division by the monic chi
    for (int d = static_cast<int>(r.size()) - 1; d >= m; --d) {
      const cplx q = r[d];
      if (q == cplx{0.0, 0.0}) continue;
      for (int i = 0; i <= m; ++i) r[d - m + i] -= q * chi[i];
      r[d] = {0.0, 0.0};
    }
    double rn = 0.0;
    for (int i = 0; i < m; ++i) {
      const cplx c = i < static_cast<int>(r.size()) ? r[i] : cplx{0.0, 0.0};
      rep.remainder[j][i] = c;
      M(j, i) = c;
      rn += std::norm(c);
    }
    rownorm_prod *= std::sqrt(rn);
  }
  rep.abs_det = std::abs(M.partialPivLu().determinant());
  rep.rel_det = rownorm_prod > 0.0 ? rep.abs_det / rownorm_prod : 0.0;
  rep.pass = rep.rel_det > tol;
  return rep;
}

CoveringSweepResult covering_sweep(const ParabolicProblem& P, const SweepSpec& spec, double tol) {
  P.validate();
  if (spec.sphere_resolution < 8)
    throw std::invalid_argument("covering_sweep: sphere resolution must be >= 8");

  bool constant = true;
  for (const auto& bop : P.boundary)
    for (const auto& term : bop.terms) constant = constant && term.coeff.is_constant();
  for (const auto& term : P.interior) constant = constant && term.coeff.is_constant();
  const int xs = constant ? 1 : std::max(1, spec.x_samples);
  const int ts = constant ? 1 : std::max(1, spec.t_samples);

  CoveringSweepResult out;
  out.min_abs_det = std::numeric_limits<double>::infinity();
  out.min_rel_det = std::numeric_limits<double>::infinity();

  const int R = spec.sphere_resolution;
  for (BoundarySide side : {BoundarySide::lower, BoundarySide::upper})
    for (int ix = 0; ix < xs; ++ix)
      for (int it = 0; it < ts; ++it) {
        const double x1 = P.geometry.length_x1 * ix / xs;
        const double t = ts > 1 ? P.tau * it / (ts - 1) : 0.0;
        for (int is = 0; is < R; ++is) {
          const double sigma = static_cast<double>(is) / (R - 1);
          const double len = std::sqrt(std::max(0.0, 1.0 - sigma));
          for (int ith = 0; ith < R; ++ith) {
            const double theta = -std::numbers::pi / 2.0 + std::numbers::pi * ith / (R - 1);
            const cplx p = p_of({sigma, theta}, P.b);
            for (double dir : {1.0, -1.0}) {
              const double xi_t = dir * len;
              if (std::abs(xi_t) + std::abs(p) == 0.0) continue;
              CoveringReport rep = covering_check(P, side, x1, t, xi_t, p, tol);
              ++out.points;
              out.min_abs_det = std::min(out.min_abs_det, rep.abs_det);
              if (rep.rel_det < out.min_rel_det) {
                out.min_rel_det = rep.rel_det;
                out.worst = rep;
              }
            }
          }
        }
      }
  out.pass = out.worst.pass;
  return out;
}

// ------------------------------------------------------------- factories

ParabolicProblem make_heat_problem(const std::string& boundary, double tau, double length_x1) {
  ParabolicProblem P;
  P.n = 2;
  P.b = 1;
  P.m = 1;
  P.tau = tau;
  P.geometry.length_x1 = length_x1;
  P.interior = {
      {{0, 0}, 1, CoeffSpec::constant({1.0, 0.0})},  // d_t
      {{2, 0}, 0, CoeffSpec::constant({1.0, 0.0})},  // D_1^2
      {{0, 2}, 0, CoeffSpec::constant({1.0, 0.0})},  // D_2^2
  };

  BoundaryOperator B;
  if (boundary == "dirichlet") {
    B.mj = 0;
    B.terms = {{{0, 0}, 0, CoeffSpec::constant({1.0, 0.0})}};
  } else if (boundary == "neumann_d") {
    B.mj = 1;
    B.terms = {{{0, 1}, 0, CoeffSpec::constant({1.0, 0.0})}};
  } else if (boundary == "neumann") {
    // d/d nu: -i D_2 at the lower component, +i D_2 at the upper one.
    B.mj = 1;
    B.terms = {{{0, 1}, 0, CoeffSpec::constant({0.0, -1.0})}};
    B.upper_coeffs = {CoeffSpec::constant({0.0, 1.0})};
  } else if (boundary == "oblique") {
    B.mj = 1;
    B.terms = {{{0, 1}, 0, CoeffSpec::constant({1.0, 0.0})},
               {{1, 0}, 0, CoeffSpec::constant({0.0, -1.0})}};
  } else {
    throw std::invalid_argument("make_heat_problem: unknown boundary kind " + boundary);
  }
  P.boundary = {B};
  P.validate();
  return P;
}

ParabolicProblem make_backward_heat_problem() {
  ParabolicProblem P = make_heat_problem("dirichlet");
  P.interior[1].coeff = CoeffSpec::constant({-1.0, 0.0});
  P.interior[2].coeff = CoeffSpec::constant({-1.0, 0.0});
  return P;
}

ParabolicProblem make_biharmonic_problem() {
  ParabolicProblem P;
  P.n = 2;
  P.b = 2;
  P.m = 2;
  P.tau = 1.0;
  P.interior = {
      {{0, 0}, 1, CoeffSpec::constant({1.0, 0.0})},
      {{4, 0}, 0, CoeffSpec::constant({1.0, 0.0})},
      {{2, 2}, 0, CoeffSpec::constant({2.0, 0.0})},
      {{0, 4}, 0, CoeffSpec::constant({1.0, 0.0})},
  };
  BoundaryOperator B0;
  B0.mj = 0;
  B0.terms = {{{0, 0}, 0, CoeffSpec::constant({1.0, 0.0})}};
  BoundaryOperator B1;
  B1.mj = 1;
  B1.terms = {{{0, 1}, 0, CoeffSpec::constant({1.0, 0.0})}};
  P.boundary = {B0, B1};
  P.validate();
  return P;
}

}  // namespace parahorm
