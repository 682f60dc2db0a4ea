#include "symkernel/barycentric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "symkernel/errors.hpp"
#include "symkernel/fit.hpp"
#include "symkernel/plancherel.hpp"

namespace symkernel {

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

BarycentricPartition::BarycentricPartition(const RootSystem& rs, double C1)
    : rs_(rs), profile_{C1} {
  if (!(C1 > 0.0)) throw ConfigError("barycentric: C1 must be positive");
  const auto& W = rs_.weyl_group();
  for (int w = 0; w < static_cast<int>(W.size()); ++w) {
    std::vector<Vec> im;
    for (int k = 0; k < rs_.rank(); ++k) im.push_back(W[w].apply(rs_.simple_root(k)));
    images_.push_back(im);
    for (int j = 0; j < rs_.rank(); ++j) {
      charts_.push_back({w, j});
      weight_.push_back(W[w].apply(rs_.fundamental_weights()[j]));
    }
  }
}

double BarycentricPartition::raw_chart(int id, const Vec& lambda) const {
  const double n = norm(lambda);
  if (n == 0.0) throw DomainError("raw_chart: lambda = 0");
  const Chart& c = charts_[id];
  const auto& im = images_[c.w];
  const double aj = dot(im[c.j], lambda) / n;
  double v = 1.0;
  for (int k = 0; k < rs_.rank(); ++k) {
    if (k == c.j) continue;
    const double ak = dot(im[k], lambda) / n;
    v *= profile_(ak) * profile_(aj - ak);
  }
  return v;
}

double BarycentricPartition::denominator(const Vec& lambda) const {
  double s = 0.0;
  for (int id = 0; id < chart_count(); ++id) s += raw_chart(id, lambda);
  return s;
}

double BarycentricPartition::normalized_chart(int id, const Vec& lambda) const {
  const double d = denominator(lambda);
  if (d <= 1e-14)
    throw ConfigError("normalized_chart: vanishing denominator; increase C1 (C1 = " +
                      std::to_string(profile_.C1) + ")");
  return raw_chart(id, lambda) / d;
}

std::vector<double> BarycentricPartition::normalized_all(const Vec& lambda) const {
  std::vector<double> v(chart_count());
  double d = 0.0;
  for (int id = 0; id < chart_count(); ++id) d += v[id] = raw_chart(id, lambda);
  if (d <= 1e-14)
    throw ConfigError("normalized_all: vanishing denominator; increase C1 (C1 = " +
                      std::to_string(profile_.C1) + ")");
  for (double& x : v) x /= d;
  return v;
}

std::vector<Vec> sphere_grid(const RootSystem& rs, int n) {
  std::vector<Vec> out;
  if (rs.rank() == 1) return {Vec{1.0}, Vec{-1.0}};
  if (rs.rank() != 2) throw UnsupportedSpace("sphere_grid: rank above two");
  for (int i = 0; i < n; ++i) {
    const double th = 2.0 * std::numbers::pi * (i + 0.5) / n;
    out.push_back(Vec{std::cos(th), std::sin(th)});
  }
  return out;
}

SupportReport support_verify(const BarycentricPartition& p, int chart, int samples,
                             double threshold) {
  if (samples < 100) throw ConfigError("support_verify: need at least 100 samples");
  const RootSystem& rs = p.root_system();
  SupportReport rep;
  rep.chart = chart;
  rep.threshold = threshold;
  const Vec& wl = p.chart_weight(chart);
  const auto& roots = rs.positive_roots();
  for (int a = 0; a < static_cast<int>(roots.size()); ++a) {
    if (std::abs(dot(roots[a].alpha, wl)) < 1e-12)
      rep.orthogonal.push_back(a);
    else
      rep.pairings.push_back({a, std::numeric_limits<double>::infinity()});
  }
  rep.weight_ratio = std::numeric_limits<double>::infinity();
  for (const Vec& u : sphere_grid(rs, samples)) {
    if (p.normalized_chart(chart, u) <= 0.0) continue;
    ++rep.support_samples;
    for (auto& rp : rep.pairings)
      rp.min_ratio = std::min(rp.min_ratio, std::abs(dot(roots[rp.root].alpha, u)));
    rep.weight_ratio = std::min(rep.weight_ratio, std::abs(dot(wl, u)));
  }
  rep.kappa_min = rep.weight_ratio;
  for (const auto& rp : rep.pairings) rep.kappa_min = std::min(rep.kappa_min, rp.min_ratio);
  rep.passed = rep.support_samples > 0 && rep.kappa_min >= threshold;
  return rep;
}

namespace {

// Directions inside the chart where the chart dominates and no root is near zero.
std::vector<Vec> symbol_directions(const BarycentricPartition& p, int chart) {
  const RootSystem& rs = p.root_system();
  std::vector<Vec> cand;
  for (const Vec& u : sphere_grid(rs, 720)) {
    if (p.normalized_chart(chart, u) < 0.5) continue;
    bool ok = true;
    for (const auto& r : rs.positive_roots())
      if (std::abs(dot(r.alpha, u)) / norm(r.alpha) < 0.2) ok = false;
    if (ok) cand.push_back(u);
  }
  if (cand.size() <= 3) return cand;
  return {cand.front(), cand[cand.size() / 2], cand.back()};
}

}  // namespace

SymbolReport directional_symbol_check(const BarycentricPartition& p, int chart, int order) {
  if (order != 1 && order != 2) throw ConfigError("directional_symbol_check: order must be 1 or 2");
  const RootSystem& rs = p.root_system();
  SymbolReport rep;
  rep.chart = chart;
  rep.order = order;
  rep.prediction = rs.dimension() - rs.rank() - order;
  rep.exponent = -std::numeric_limits<double>::infinity();
  const Vec dir = p.chart_weight(chart) * (1.0 / norm(p.chart_weight(chart)));
  const auto dirs = symbol_directions(p, chart);
  if (dirs.empty()) throw ConfigError("directional_symbol_check: chart support has no interior direction");
  constexpr int kPoints = 25;
  for (const Vec& u : dirs) {
    std::vector<double> xs, ys;
    for (int i = 0; i < kPoints; ++i) {
      const double r = std::pow(10.0, 3.0 * i / (kPoints - 1));
      const double h = 1e-4 * std::max(1.0, r);
      const Vec lam = u * r;
      const double f0 = density(rs, lam);
      const double fp = density(rs, lam + dir * h);
      const double fm = density(rs, lam - dir * h);
      const double d = order == 1 ? (fp - fm) / (2.0 * h) : (fp - 2.0 * f0 + fm) / (h * h);
      const double noise = 1e3 * std::numeric_limits<double>::epsilon() * std::abs(f0) /
                           std::pow(h, order);
      if (std::abs(d) <= noise) continue;
      xs.push_back(std::log(r));
      ys.push_back(std::log(std::abs(d)));
    }
    rep.resolved_points = std::max(rep.resolved_points, static_cast<int>(xs.size()));
    // Fewer than 8 resolvable points: the derivative sits below finite-difference
    // resolution at large |lambda|, i.e. it decays faster than any fitted power.
    if (xs.size() < 8) continue;
    rep.exponent = std::max(rep.exponent, fit_line(xs, ys).slope);
  }
  rep.passed = rep.exponent <= rep.prediction + 0.1;
  return rep;
}

C1Choice choose_C1(const RootSystem& rs, int samples) {
  const auto grid = sphere_grid(rs, samples);
  auto evaluate = [&](double C1, double& min_den, double& kappa) {
    BarycentricPartition p(rs, C1);
    min_den = std::numeric_limits<double>::infinity();
    for (const Vec& u : grid) min_den = std::min(min_den, p.denominator(u));
    kappa = std::numeric_limits<double>::infinity();
    if (min_den <= 1e-14) return false;
    bool ok = min_den >= 0.5;
    for (int c = 0; c < p.chart_count(); ++c) {
      const auto rep = support_verify(p, c, std::max(100, samples));
      kappa = std::min(kappa, rep.kappa_min);
      ok = ok && rep.passed;
    }
    return ok;
  };
  C1Choice out;
  double den = 0, kap = 0;
  if (evaluate(0.1, den, kap)) return {0.1, den, kap, 0};
  double lo = 0.0, hi = 0.1;
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    ++out.bisection_steps;
    if (mid > 0.0 && evaluate(mid, den, kap)) {
      lo = mid;
      out.min_denominator = den;
      out.kappa_min = kap;
    } else {
      hi = mid;
    }
  }
  if (lo == 0.0) throw ConfigError("choose_C1: no admissible C1 in (0, 0.1]");
  out.C1 = lo;
  return out;
}

}  // namespace symkernel
