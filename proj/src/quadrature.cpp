#include "symkernel/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "symkernel/errors.hpp"

namespace symkernel {

void Rule::append(const Rule& o) {
  x.insert(x.end(), o.x.begin(), o.x.end());
  w.insert(w.end(), o.w.begin(), o.w.end());
}

namespace {

Rule compute_gl(int n) {
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.x[i] = -z;
    r.x[n - 1 - i] = z;
    r.w[i] = w;
    r.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.x[n / 2] = 0.0;
  return r;
}

}  // namespace

Rule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw ConfigError("gauss_legendre: need at least one node");
  static std::mutex mu;
  static std::map<int, Rule> cache;
  Rule base;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gl(n)).first;
    base = it->second;
  }
  const double h = 0.5 * (b - a), c = 0.5 * (a + b);
  for (int i = 0; i < n; ++i) {
    base.x[i] = c + h * base.x[i];
    base.w[i] *= h;
  }
  return base;
}

Rule composite_gl(int panels, int n, double a, double b) {
  if (panels < 1) throw ConfigError("composite_gl: need at least one panel");
  Rule r;
  r.x.reserve(static_cast<std::size_t>(panels) * n);
  r.w.reserve(static_cast<std::size_t>(panels) * n);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) r.append(gauss_legendre(n, a + p * h, p + 1 == panels ? b : a + (p + 1) * h));
  return r;
}

Rule graded_gl(double a, double b, double h0, double max_width, int n) {
  if (!(b > a) || !(h0 > 0.0) || !(max_width > 0.0)) throw ConfigError("graded_gl: bad interval");
  Rule r;
  double lo = a, h = h0;
  while (lo < b) {
    const double hi = std::min(b, lo + h);
    const int sub = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_width)));
    r.append(composite_gl(sub, n, lo, hi));
    lo = hi;
    h *= 2.0;
  }
  return r;
}

Rule periodic_trapezoid(int n, double a, double period) {
  Rule r;
  r.x.resize(n);
  r.w.assign(n, period / n);
  for (int i = 0; i < n; ++i) r.x[i] = a + period * i / n;
  return r;
}

}  // namespace symkernel
