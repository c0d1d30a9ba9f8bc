// This file is part of parahorm.
// Licensed under the Apache License, Version 2.0. See the LICENSE file.

#include "parahorm/trace.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <random>
#include <stdexcept>

namespace parahorm {

namespace {

RealJet smooth_exp_reciprocal(const RealJet& x) {
  // f(x) = exp(-1/x) for x > 0, identically 0 otherwise.
  if (x.value() <= 0.0) return RealJet::constant(0.0, x.depth());
  return (-x.reciprocal()).exp();
}

}  // namespace

double smooth_step(double y) {
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 1.0;
  const double f = std::exp(-1.0 / y);
  const double g = std::exp(-1.0 / (1.0 - y));
  return f / (f + g);
}

double BumpFunction::operator()(double tau) const { return jet(tau, 0).value(); }

RealJet BumpFunction::jet(double tau, int depth) const {
  const double a = std::abs(tau);
  if (a <= plateau_radius) return RealJet::constant(1.0, depth);
  if (a >= support_radius) return RealJet::constant(0.0, depth);
  // S(2 - |tau|) on the shoulder; mirror through the sign flip for tau < 0.
  RealJet t = RealJet::variable(a, depth);
  RealJet x = RealJet::constant(support_radius, depth) - t;
  RealJet f = smooth_exp_reciprocal(x);
  RealJet g = smooth_exp_reciprocal(RealJet::constant(1.0, depth) - x);
  RealJet s = f / (f + g);
  if (tau < 0.0)
    for (int q = 1; q <= depth; q += 2) s.coeff(q) = -s.coeff(q);
  return s;
}

TraceVector::TraceVector(FrequencyGrid g, int r) : grid(std::move(g)) {
  if (r < 1) throw std::invalid_argument("TraceVector: r must be >= 1");
  v.assign(r, std::vector<cplx>(grid.mode_count(), cplx{0.0, 0.0}));
}

TraceVector random_trace_vector(const FrequencyGrid& grid, int r, std::uint64_t seed) {
  TraceVector tv(grid, r);
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() { return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53; };
  for (int k = 0; k < r; ++k)
    for (std::size_t i = 0; i < grid.mode_count(); ++i) {
      double xps = 0.0, xl = 0.0;
      grid.split_frequencies(i, xps, xl);
      const double amp = std::pow(1.0 + xps + xl * xl, -1.0);
      const double u1 = uniform(), u2 = uniform();
      const double g = std::sqrt(-2.0 * std::log(u1));
      tv.v[k][i] = amp * cplx{g * std::cos(6.283185307179586 * u2),
                              g * std::sin(6.283185307179586 * u2)};
    }
  return tv;
}

double trace_vector_distance(const TraceVector& a, const TraceVector& b) {
  if (!(a.grid == b.grid) || a.r() != b.r())
    throw std::invalid_argument("trace_vector_distance: shape mismatch");
  double m = 0.0;
  for (int k = 0; k < a.r(); ++k)
    for (std::size_t i = 0; i < a.modes(); ++i) m = std::max(m, std::abs(a.v[k][i] - b.v[k][i]));
  return m;
}

ModeTimeField::ModeTimeField(FrequencyGrid grid, int jet_depth)
    : grid_(std::move(grid)), jet_depth_(jet_depth), modes_(grid_.mode_count()) {
  if (jet_depth < 1) throw std::invalid_argument("ModeTimeField: jet depth must be >= 1");
}

bool ModeTimeField::has_bump() const {
  for (const auto& m : modes_)
    if (m.bump_scale > 0.0) return true;
  return false;
}

cplx ModeTimeField::eval_mode(std::size_t mode, double t) const {
  const Profile& p = modes_[mode];
  cplx acc{0.0, 0.0};
  for (const auto& term : p.terms) {
    cplx poly{0.0, 0.0};
    for (std::size_t q = term.poly.size(); q-- > 0;) poly = poly * t + term.poly[q];
    acc += std::exp(term.rate * t) * poly;
  }
  if (p.bump_scale > 0.0) acc *= BumpFunction{}(p.bump_scale * t);
  return acc;
}

cplx ModeTimeField::mode_derivative_at0(std::size_t mode, int k) const {
  // beta == 1 near 0, so the bump never contributes to jets at t = 0.
  const Profile& p = modes_[mode];
  cplx acc{0.0, 0.0};
  for (const auto& term : p.terms) {
    // d^k/dt^k [e^{rate t} P(t)](0) = sum_j C(k,j) rate^{k-j} j! poly[j]
    cplx rate_pow{1.0, 0.0};
    std::vector<cplx> rp(k + 1);
    for (int j = k; j >= 0; --j) {
      rp[j] = rate_pow;  // rate^{k-j}
      rate_pow *= term.rate;
    }
    double binom = 1.0, fact = 1.0;
    for (int j = 0; j <= k; ++j) {
      if (j > 0) {
        binom = binom * (k - j + 1) / j;
        fact *= j;
      }
      if (j < static_cast<int>(term.poly.size())) acc += binom * fact * rp[j] * term.poly[j];
    }
  }
  return acc;
}

cplx ModeTimeField::evaluate(std::span<const double> x, double t) const {
  if (x.size() != static_cast<std::size_t>(grid_.dim()))
    throw std::invalid_argument("ModeTimeField::evaluate: bad point dimension");
  cplx acc{0.0, 0.0};
  std::vector<int> modes(grid_.dim());
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (modes_[i].terms.empty()) continue;
    grid_.decode(i, modes);
    double phase = 0.0;
    for (int a = 0; a < grid_.dim(); ++a) phase += grid_.frequency(a, modes[a]) * x[a];
    acc += eval_mode(i, t) * std::polar(1.0, phase);
  }
  return acc;
}

ModeTimeField ModeTimeField::time_derivative() const {
  if (has_bump())
    throw std::invalid_argument("ModeTimeField::time_derivative: bump-carrying modes are traces-only");
  ModeTimeField out(grid_, jet_depth_);
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    for (const auto& term : modes_[i].terms) {
      ExpPoly d;
      d.rate = term.rate;
      d.poly.assign(term.poly.size(), cplx{0.0, 0.0});
      for (std::size_t q = 0; q < term.poly.size(); ++q) {
        d.poly[q] += term.rate * term.poly[q];
        if (q + 1 < term.poly.size()) d.poly[q] += static_cast<double>(q + 1) * term.poly[q + 1];
      }
      out.modes_[i].terms.push_back(std::move(d));
    }
  }
  return out;
}

ModeTimeField& ModeTimeField::operator+=(const ModeTimeField& o) {
  if (!(grid_ == o.grid_)) throw std::invalid_argument("ModeTimeField: grid mismatch");
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (o.modes_[i].terms.empty()) continue;
    if (o.modes_[i].bump_scale != modes_[i].bump_scale && !modes_[i].terms.empty())
      throw std::invalid_argument("ModeTimeField: incompatible bump scales in +=");
    modes_[i].bump_scale = o.modes_[i].bump_scale;
    for (const auto& t : o.modes_[i].terms) modes_[i].terms.push_back(t);
  }
  return *this;
}

ModeTimeField& ModeTimeField::scale(cplx s) {
  for (auto& m : modes_)
    for (auto& term : m.terms)
      for (auto& c : term.poly) c *= s;
  return *this;
}

TraceVector trace_R(const ModeTimeField& u, int r) {
  if (r < 1) throw std::invalid_argument("trace_R: r must be >= 1");
  if (r > u.jet_depth())
    throw std::invalid_argument("trace_R: r exceeds the representation's jet depth");
  TraceVector out(u.grid(), r);
  for (int k = 0; k < r; ++k)
    for (std::size_t i = 0; i < u.grid().mode_count(); ++i)
      out.v[k][i] = u.mode_derivative_at0(i, k);
  return out;
}

ModeTimeField extend_T1(const TraceVector& v, int b) {
  if (b < 1) throw std::invalid_argument("extend_T1: b must be >= 1");
  ModeTimeField out(v.grid, v.r());
  const int r = v.r();
  for (std::size_t i = 0; i < v.modes(); ++i) {
    double xps = 0.0, xl = 0.0;
    v.grid.split_frequencies(i, xps, xl);
    const double bracket_sq = 1.0 + xps + xl * xl;  // <xi>^2 over all axes
    ModeTimeField::ExpPoly term;
    term.poly.assign(r, cplx{0.0, 0.0});
    double fact = 1.0;
    bool nonzero = false;
    for (int k = 0; k < r; ++k) {
      if (k > 0) fact *= k;
      term.poly[k] = v.v[k][i] / fact;
      nonzero = nonzero || term.poly[k] != cplx{0.0, 0.0};
    }
    if (!nonzero) continue;
    auto& prof = out.profile(i);
    prof.bump_scale = std::pow(bracket_sq, b);  // <xi>^{2b}
    prof.terms.push_back(std::move(term));
  }
  return out;
}

namespace {

// d^m/dtau^m (beta(tau) tau^k) at tau, via exact jets.
double bump_poly_derivative(const BumpFunction& beta, double tau, int k, int m) {
  RealJet bj = beta.jet(tau, m);
  RealJet tj = RealJet::variable(tau, m).pow(k);
  return (bj * tj).derivative(m);
}

double integrate_shoulders_and_plateau(const std::function<double(double)>& f, double tol,
                                       const char* what) {
  using boost::math::quadrature::gauss_kronrod;
  double total = 0.0;
  const double pieces[4][2] = {{-2.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}, {1.0, 2.0}};
  for (const auto& p : pieces) {
    double err = 0.0;
    const double v = gauss_kronrod<double, 31>::integrate(f, p[0], p[1], 12, tol, &err);
    if (!(std::isfinite(v)) || err > tol * (1.0 + std::abs(v)) * 100.0)
      throw std::runtime_error(std::string("quadrature did not converge in ") + what);
    total += v;
  }
  return total;
}

}  // namespace

BumpConstants bump_constants(int k, int m) {
  if (k < 0 || m < 0) throw std::invalid_argument("bump_constants: k, m must be >= 0");
  BumpFunction beta;
  BumpConstants c;
  c.c1 = integrate_shoulders_and_plateau(
      [&](double tau) {
        const double d = bump_poly_derivative(beta, tau, k, m);
        return d * d;
      },
      1e-12, "bump_constants c1");
  c.c2 = integrate_shoulders_and_plateau(
      [&](double tau) {
        const double b = beta(tau);
        return b * b * std::pow(std::abs(tau), 2.0 * k);
      },
      1e-12, "bump_constants c2");
  return c;
}

std::vector<std::vector<double>> bump_gram(int r, int m) {
  BumpFunction beta;
  std::vector<std::vector<double>> g(r, std::vector<double>(r, 0.0));
  for (int k = 0; k < r; ++k)
    for (int l = k; l < r; ++l) {
      const double v = integrate_shoulders_and_plateau(
          [&](double tau) {
            return bump_poly_derivative(beta, tau, k, m) * bump_poly_derivative(beta, tau, l, m);
          },
          1e-12, "bump_gram");
      g[k][l] = g[l][k] = v;
    }
  return g;
}

ExtensionBoundReport extension_bound_check(const TraceVector& v, int b, int m) {
  if (b < 1 || m < 1) throw std::invalid_argument("extension_bound_check: b, m must be >= 1");
  const int r = v.r();
  const int d = v.grid.dim();
  const auto g0 = bump_gram(r, 0);
  const auto gm = bump_gram(r, m);

  ExtensionBoundReport rep;
  double s_r = 0.0, fact = 1.0;
  for (int k = 0; k < r; ++k) {
    if (k > 0) fact *= k;
    s_r += 1.0 / fact;
  }
  fact = 1.0;
  rep.weights.resize(r);
  for (int k = 0; k < r; ++k) {
    if (k > 0) fact *= k;
    BumpConstants c;
    c.c1 = gm[k][k];
    c.c2 = g0[k][k];
    rep.weights[k] = s_r / fact * ((d + 1) * c.c2 + c.c1);
  }

  std::vector<int> modes(d);
  std::vector<cplx> q(r);
  for (std::size_t i = 0; i < v.modes(); ++i) {
    double xps = 0.0, xl = 0.0;
    v.grid.split_frequencies(i, xps, xl);
    const double bracket_sq = 1.0 + xps + xl * xl;
    const double a = std::pow(bracket_sq, b);  // <xi>^{2b}

    double kfact = 1.0;
    for (int k = 0; k < r; ++k) {
      if (k > 0) kfact *= k;
      q[k] = v.v[k][i] / (kfact * std::pow(a, k));
    }
    double i0 = 0.0, im = 0.0;
    for (int k = 0; k < r; ++k)
      for (int l = 0; l < r; ++l) {
        const double re = (std::conj(q[k]) * q[l]).real();
        i0 += re * g0[k][l];
        im += re * gm[k][l];
      }

    double xi_pow_sum = 0.0;
    v.grid.decode(i, modes);
    for (int ax = 0; ax < d; ++ax)
      xi_pow_sum += std::pow(std::abs(v.grid.frequency(ax, modes[ax])), 4.0 * b * m);

    rep.lhs += ((1.0 + xi_pow_sum) * i0 + std::pow(a, 2.0 * m) * im) / a;

    for (int k = 0; k < r; ++k) {
      const double sigma_k = 2.0 * b * m - 2.0 * b * k - b;
      rep.rhs += rep.weights[k] * std::pow(bracket_sq, sigma_k) * std::norm(v.v[k][i]);
    }
  }
  rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
  rep.pass = rep.lhs <= rep.rhs * (1.0 + 1e-9);
  return rep;
}

}  // namespace parahorm
