// This file is part of parahorm.
// Licensed under the Apache License, Version 2.0. See the LICENSE file.

#include "parahorm/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace parahorm {

namespace {
constexpr double kEm1 = std::numbers::e - 1.0;
}

double PhiLogPower::operator()(double r) const {
  if (!(r >= 1.0)) throw std::domain_error("PhiLogPower: argument must be >= 1");
  double level = r;
  double value = 1.0;
  for (double th : theta_) {
    level = std::log(kEm1 + level);
    if (th != 0.0) value *= std::pow(level, th);
  }
  return value;
}

PhiLogPower PhiLogPower::combined(const PhiLogPower& other) const {
  std::vector<double> t(std::max(theta_.size(), other.theta_.size()), 0.0);
  for (std::size_t i = 0; i < theta_.size(); ++i) t[i] += theta_[i];
  for (std::size_t i = 0; i < other.theta_.size(); ++i) t[i] += other.theta_[i];
  while (!t.empty() && t.back() == 0.0) t.pop_back();
  return PhiLogPower(std::move(t));
}

std::string PhiLogPower::label() const {
  if (theta_.empty()) return "1";
  std::ostringstream os;
  os << "log^(";
  for (std::size_t i = 0; i < theta_.size(); ++i) os << (i ? "," : "") << theta_[i];
  os << ")";
  return os.str();
}

WeightParams::WeightParams(double s_, double gamma_, PhiLogPower phi_)
    : s(s_), gamma(gamma_), phi(std::move(phi_)) {
  if (!(gamma > 0.0) || !std::isfinite(gamma) || !std::isfinite(s))
    throw std::invalid_argument("WeightParams: need finite s and gamma > 0");
}

double WeightParams::rho(double xi_prime_sq, double xi_last) const {
  return 1.0 + xi_prime_sq + std::pow(std::abs(xi_last), 2.0 * gamma);
}

double WeightParams::mu_from_rho(double rho) const {
  double v = std::pow(rho, 0.5 * s);
  if (!phi.is_one()) v *= phi(std::sqrt(rho));
  return v;
}

std::string WeightParams::label() const {
  std::ostringstream os;
  os << "mu(s=" << s << ",gamma=" << gamma << ",phi=" << phi.label() << ")";
  return os.str();
}

double mu_eval(const WeightParams& w, std::span<const double> xi_prime, double xi_k) {
  double sq = 0.0;
  for (double x : xi_prime) sq += x * x;
  return w(sq, xi_k);
}

PsiParam::PsiParam(double s0, double s, double s1, PhiLogPower phi)
    : s0_(s0), s_(s), s1_(s1), theta_((s - s0) / (s1 - s0)), phi_(std::move(phi)) {
  if (!(s0 < s && s < s1)) throw std::invalid_argument("PsiParam: requires s0 < s < s1");
}

double PsiParam::operator()(double r) const {
  if (!(r > 0.0)) throw std::domain_error("PsiParam: argument must be positive");
  if (r < 1.0) return phi_(1.0);
  return std::pow(r, theta_) * phi_(std::pow(r, 1.0 / (s1_ - s0_)));
}

PsiParam psi_from(double s0, double s, double s1, PhiLogPower phi) {
  return PsiParam(s0, s, s1, std::move(phi));
}

InterpParam::InterpParam(std::function<double(double)> f, std::string label)
    : f_(std::move(f)), label_(std::move(label)) {}

InterpParam InterpParam::power(double theta) {
  std::ostringstream os;
  os << "r^" << theta;
  return InterpParam([theta](double r) { return std::pow(r, theta); }, os.str());
}

InterpParam InterpParam::from(const PsiParam& psi) {
  std::ostringstream os;
  os << "psi(" << psi.s0() << "," << psi.s() << "," << psi.s1() << ";" << psi.phi().label() << ")";
  return InterpParam([psi](double r) { return psi(r); }, os.str());
}

ClassBReport check_class_b(const InterpParam& psi, double radius, int samples) {
  ClassBReport rep;
  rep.radius = radius;
  rep.min_value = std::numeric_limits<double>::infinity();
  rep.max_reciprocal = 0.0;
  bool ok = true;
  // log-spaced sample of (0, radius]; compact boundedness below 1 is probed
  // on (0,1] as well.
  for (int i = 0; i < samples; ++i) {
    const double u = (i + 0.5) / samples;
    const double r = std::exp(std::log(1e-6) + u * (std::log(radius) - std::log(1e-6)));
    const double v = psi(r);
    if (!(v > 0.0) || !std::isfinite(v)) {
      ok = false;
      continue;
    }
    rep.min_value = std::min(rep.min_value, v);
    if (r >= 1.0) rep.max_reciprocal = std::max(rep.max_reciprocal, 1.0 / v);
  }
  rep.pass = ok && rep.min_value > 0.0 && std::isfinite(rep.max_reciprocal);
  return rep;
}

SandwichBounds sandwich_bounds(const PhiLogPower& phi, double s0, double s, double s1,
                               std::span<const double> r_grid) {
  if (!(s0 < s && s < s1)) throw std::invalid_argument("sandwich_bounds: requires s0 < s < s1");
  if (r_grid.empty()) throw std::invalid_argument("sandwich_bounds: empty grid");
  SandwichBounds b;
  b.c0 = std::numeric_limits<double>::infinity();
  b.c1 = 0.0;
  for (double r : r_grid) {
    const double v = phi(r);
    b.c0 = std::min(b.c0, v * std::pow(r, s - s0));
    b.c1 = std::max(b.c1, v * std::pow(r, s - s1));
  }
  return b;
}

RegularVariationReport check_regularly_varying(const InterpParam& psi, double theta,
                                               std::span<const double> lambdas,
                                               std::span<const double> r_sequence,
                                               double tol, double decrease_factor) {
  for (double l : lambdas)
    if (!(l > 0.0)) throw std::invalid_argument("check_regularly_varying: lambdas must be positive");
  RegularVariationReport rep;
  rep.tol = tol;
  for (double r : r_sequence) {
    double dev = 0.0;
    for (double l : lambdas) dev = std::max(dev, std::abs(psi(l * r) / psi(r) - std::pow(l, theta)));
    rep.r.push_back(r);
    rep.deviation.push_back(dev);
  }
  if (rep.deviation.empty()) {
    rep.pass = false;
    return rep;
  }
  const double first = rep.deviation.front();
  const double last = rep.deviation.back();
  rep.pass = last <= tol && last <= decrease_factor * first + 1e-15;
  return rep;
}

InterpParam reiteration_weight(const InterpParam& alpha, const InterpParam& beta,
                               const InterpParam& psi) {
  // Sampled precondition: alpha/beta bounded near infinity.
  double worst = 0.0;
  for (int i = 0; i < 64; ++i) {
    const double t = std::pow(10.0, 2.0 + i * (10.0 / 63.0));
    worst = std::max(worst, alpha(t) / beta(t));
  }
  if (!(worst < 1e8) || !std::isfinite(worst))
    throw std::invalid_argument("reiteration_weight: alpha/beta not bounded near infinity (sampled)");
  auto a = alpha, b = beta, p = psi;
  return InterpParam([a, b, p](double t) { return a(t) * p(b(t) / a(t)); },
                     a.label() + "*" + p.label() + "(" + b.label() + "/" + a.label() + ")");
}

namespace {

double mu_at(const WeightParams& w, std::span<const double> xi) {
  double sq = 0.0;
  for (std::size_t i = 0; i + 1 < xi.size(); ++i) sq += xi[i] * xi[i];
  return w(sq, xi.back());
}

double dist(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(d);
}

}  // namespace

WeightGrowthFit verify_weight_growth(
    const WeightParams& w,
    std::span<const std::pair<std::vector<double>, std::vector<double>>> pairs) {
  if (pairs.empty()) throw std::invalid_argument("verify_weight_growth: empty sample");
  struct P {
    double x, y;
  };
  std::vector<P> pts;
  pts.reserve(pairs.size());
  for (const auto& [xi, eta] : pairs) {
    const double x = std::log1p(dist(xi, eta));
    const double y = std::log(mu_at(w, xi)) - std::log(mu_at(w, eta));
    pts.push_back({x, y});
  }

  auto fit = [](std::span<const P> q) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& p : q) {
      sx += p.x;
      sy += p.y;
      sxx += p.x * p.x;
      sxy += p.x * p.y;
    }
    const double n = static_cast<double>(q.size());
    const double denom = n * sxx - sx * sx;
    double slope = denom > 0 ? (n * sxy - sx * sy) / denom : 0.0;
    slope = std::max(slope, 0.0);
    double logc = -std::numeric_limits<double>::infinity();
    for (const auto& p : q) logc = std::max(logc, p.y - slope * p.x);
    return std::pair<double, double>(slope, logc);
  };

  WeightGrowthFit out;
  const auto [l_all, logc_all] = fit(pts);
  out.l = l_all;
  out.c = std::max(1.0, std::exp(logc_all));

  // Holdout check: train on the half with the smaller separations, see
  // whether the bound extrapolates to the rest within one decade.
  std::vector<P> sorted = pts;
  std::sort(sorted.begin(), sorted.end(), [](const P& a, const P& b) { return a.x < b.x; });
  const std::size_t half = sorted.size() / 2;
  if (half >= 2) {
    const auto [l_tr, logc_tr] = fit(std::span<const P>(sorted.data(), half));
    double excess = 0.0;
    for (std::size_t i = half; i < sorted.size(); ++i)
      excess = std::max(excess, sorted[i].y - (logc_tr + l_tr * sorted[i].x));
    out.max_holdout_excess = excess;
    out.pass = excess <= std::log(10.0);
  } else {
    out.pass = true;
  }
  return out;
}

std::vector<std::pair<std::vector<double>, std::vector<double>>>
make_weyl_pairs(int dim, double radius, int count) {
  if (dim < 1 || count < 1) throw std::invalid_argument("make_weyl_pairs: bad arguments");
  // Additive Weyl sequence with per-axis irrational strides.
  std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs;
  pairs.reserve(count);
  std::vector<double> state(2 * static_cast<std::size_t>(dim), 0.5);
  auto stride = [](int axis) { return std::fmod(std::sqrt(2.0 + axis), 1.0); };
  for (int i = 0; i < count; ++i) {
    std::vector<double> a(dim), b(dim);
    for (int d = 0; d < dim; ++d) {
      state[d] = std::fmod(state[d] + stride(d), 1.0);
      state[dim + d] = std::fmod(state[dim + d] + stride(dim + d), 1.0);
      a[d] = (2.0 * state[d] - 1.0) * radius;
      b[d] = (2.0 * state[dim + d] - 1.0) * radius;
    }
    pairs.emplace_back(std::move(a), std::move(b));
  }
  return pairs;
}

}  // namespace parahorm
