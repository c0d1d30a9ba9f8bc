// This file is part of parahorm.
// Licensed under the Apache License, Version 2.0. See the LICENSE file.

#include "parahorm/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parahorm/parallel.hpp"
#include "parahorm/summation.hpp"

namespace parahorm {

double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 32) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

std::vector<double> weight_table(const FrequencyGrid& grid, const WeightParams& w) {
  std::vector<double> t(grid.mode_count());
  parallel_for(t.size(), [&](std::size_t i) {
    double xps = 0.0, xl = 0.0;
    grid.split_frequencies(i, xps, xl);
    t[i] = w(xps, xl);
  });
  return t;
}

double weighted_l2(const SpectralField& f, std::span<const double> multiplier) {
  if (multiplier.size() != f.grid().mode_count())
    throw std::invalid_argument("weighted_l2: table size mismatch");
  std::vector<double> terms(multiplier.size());
  const auto coef = f.coefficients();
  parallel_for(terms.size(), [&](std::size_t i) {
    terms[i] = multiplier[i] * multiplier[i] * std::norm(coef[i]);
  });
  return std::sqrt(pairwise_sum(terms));
}

double hoermander_norm(const SpectralField& f, const WeightParams& w) {
  if (!f.all_finite()) throw std::invalid_argument("hoermander_norm: non-finite coefficient");
  return weighted_l2(f, weight_table(f.grid(), w));
}

NormReport hoermander_norm_report(const SpectralField& f, const WeightParams& w) {
  return NormReport{w.label(), hoermander_norm(f, w), f.grid().summary()};
}

double interp_norm(const SpectralField& f, const WeightParams& m0, const WeightParams& m1,
                   const std::function<double(double)>& psi) {
  if (!f.all_finite()) throw std::invalid_argument("interp_norm: non-finite coefficient");
  const FrequencyGrid& grid = f.grid();
  std::vector<double> mult(grid.mode_count());
  parallel_for(mult.size(), [&](std::size_t i) {
    double xps = 0.0, xl = 0.0;
    grid.split_frequencies(i, xps, xl);
    const double a = m0(xps, xl);
    const double b = m1(xps, xl);
    mult[i] = a * psi(b / a);
  });
  for (double m : mult)
    if (!(m > 0.0) || !std::isfinite(m))
      throw std::runtime_error("interp_norm: interpolation multiplier is not positive and finite");
  return weighted_l2(f, mult);
}

double interp_norm(const SpectralField& f, const WeightParams& m0, const WeightParams& m1,
                   const PsiParam& psi) {
  return interp_norm(f, m0, m1, std::function<double(double)>([&psi](double r) { return psi(r); }));
}

double interp_norm(const SpectralField& f, const WeightParams& m0, const WeightParams& m1,
                   const InterpParam& psi) {
  return interp_norm(f, m0, m1, std::function<double(double)>([&psi](double r) { return psi(r); }));
}

double l2_combine(std::span<const double> norms) {
  std::vector<double> sq(norms.size());
  for (std::size_t i = 0; i < norms.size(); ++i) sq[i] = norms[i] * norms[i];
  return std::sqrt(pairwise_sum(sq));
}

double direct_sum_norm(std::span<const std::pair<const SpectralField*, WeightParams>> components) {
  if (components.empty()) throw std::invalid_argument("direct_sum_norm: empty component list");
  std::vector<double> norms;
  norms.reserve(components.size());
  for (const auto& [f, w] : components) norms.push_back(hoermander_norm(*f, w));
  return l2_combine(norms);
}

std::vector<double> realized_radii(const FrequencyGrid& grid, double gamma) {
  std::vector<double> r(grid.mode_count());
  for (std::size_t i = 0; i < r.size(); ++i) {
    double xps = 0.0, xl = 0.0;
    grid.split_frequencies(i, xps, xl);
    r[i] = std::sqrt(1.0 + xps + std::pow(std::abs(xl), 2.0 * gamma));
  }
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

EmbeddingReport embedding_check(const SpectralField& f, double s0, double s, double s1,
                                const PhiLogPower& phi, double gamma) {
  if (!(s0 < s && s < s1)) throw std::invalid_argument("embedding_check: requires s0 < s < s1");
  EmbeddingReport rep;
  const auto radii = realized_radii(f.grid(), gamma);
  const auto sb = sandwich_bounds(phi, s0, s, s1, radii);
  rep.c0 = sb.c0;
  rep.c1 = sb.c1;
  rep.norm_s0 = hoermander_norm(f, WeightParams(s0, gamma));
  rep.norm_s1 = hoermander_norm(f, WeightParams(s1, gamma));
  rep.norm_s_phi = hoermander_norm(f, WeightParams(s, gamma, phi));

  // Relative slack absorbs only roundoff; the chain itself is pointwise.
  const double eps = 1e-12;
  const bool lower = rep.c0 * rep.norm_s0 <= rep.norm_s_phi * (1.0 + eps);
  const bool upper = rep.norm_s_phi <= rep.c1 * rep.norm_s1 * (1.0 + eps);
  rep.pass = lower && upper;
  rep.lower_slack = rep.norm_s0 > 0.0 ? rep.norm_s_phi / (rep.c0 * rep.norm_s0) : 1.0;
  rep.upper_slack = rep.norm_s_phi > 0.0 ? rep.c1 * rep.norm_s1 / rep.norm_s_phi : 1.0;
  return rep;
}

}  // namespace parahorm
