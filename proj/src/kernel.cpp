#include "symkernel/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "symkernel/errors.hpp"
#include "symkernel/fit.hpp"
#include "symkernel/quadrature.hpp"
#include "symkernel/simd/cis.hpp"
#include "symkernel/spherical.hpp"

namespace symkernel {

using cd = std::complex<double>;

namespace {

enum class Route { h3, h2, k_quadrature, inner };

// Upper bound for the upper incomplete gamma function Gamma(s, x), x > max(0, s - 1).
double upper_gamma_bound(double s, double x) {
  const double lead = std::exp((s - 1.0) * std::log(x) - x);
  if (s <= 1.0) return lead;
  if (x <= s - 1.0) return std::tgamma(s);
  return lead * x / (x - (s - 1.0));
}

struct Setup {
  const RootSystem* rs = nullptr;
  Route route = Route::inner;
  double t = 0.0;
  Vec x;                  // chamber point (kernel routes)
  Vec A;                  // inner route
  double freq = 0.0;      // spatial frequency bound |x| or |A|
  double eps0 = 0.0;
  double lambda_max = 0.0;
  KernelOptions opt;
  SphericalSampler sampler;  // h2 or k_quadrature routes
};

// Angular rule on the positive chamber of a rank-two system, graded toward both walls.
Rule chamber_angles(const RootSystem& rs, double lambda_max, double freq, int n) {
  const auto& L = rs.fundamental_weights();
  double a = std::atan2(L[0][1], L[0][0]);
  double b = std::atan2(L[1][1], L[1][0]);
  if (b < a) std::swap(a, b);
  if (b - a > std::numbers::pi) {
    std::swap(a, b);
    b += 2.0 * std::numbers::pi;
  }
  const double mid = 0.5 * (a + b);
  double amin = std::numeric_limits<double>::infinity();
  for (const auto& r : rs.positive_roots()) amin = std::min(amin, norm(r.alpha));
  const double h0 = std::min(mid - a, 0.25 * amin / std::max(1.0, lambda_max));
  const double wmax = std::min(0.5 * (mid - a), std::numbers::pi / (lambda_max * freq + 1.0));
  Rule lo = graded_gl(a, mid, h0, wmax, n);
  Rule hi = graded_gl(-b, -mid, h0, wmax, n);  // mirrored so grading starts at b
  for (auto& x : hi.x) x = -x;
  lo.append(hi);
  return lo;
}

// Real integrand weights g_j and |lambda_j|^2 for a radial rule with `panels` panels.
void build_nodes(const Setup& s, int panels, std::vector<double>& g, std::vector<double>& p) {
  const RootSystem& rs = *s.rs;
  const Rule radial = composite_gl(panels, s.opt.gl_nodes, 0.0, s.lambda_max);
  g.clear();
  p.clear();
  if (rs.rank() == 1) {
    const Vec& alpha = rs.positive_roots()[0].alpha;
    const double aa = dot(alpha, alpha);
    const double sx = s.x.size() ? dot(alpha, s.x) : 0.0;
    g.reserve(radial.size());
    p.reserve(radial.size());
    for (std::size_t i = 0; i < radial.size(); ++i) {
      const double lam = radial.x[i];
      const double v = lam * alpha[0] / aa;
      const double dens = density(rs, Vec{lam});
      double psi = 1.0;
      switch (s.route) {
        case Route::h3: psi = h3_phi(v, sx); break;
        case Route::h2: psi = s.sampler.evaluate(Vec{v}).real(); break;
        case Route::inner: psi = std::cos(lam * s.A[0]); break;
        case Route::k_quadrature: psi = s.sampler.evaluate(Vec{lam}).real(); break;
      }
      g.push_back(2.0 * radial.w[i] * dens * psi);  // lambda and -lambda
      p.push_back(lam * lam);
    }
    return;
  }
  const Rule ang = chamber_angles(rs, s.lambda_max, s.freq, s.opt.angular_nodes);
  const auto& W = rs.weyl_group();
  std::vector<Vec> Aw;  // w^{-1} A = w^T A
  if (s.route == Route::inner)
    for (const auto& w : W) {
      Vec v(rs.rank());
      for (int i = 0; i < rs.rank(); ++i)
        for (int j = 0; j < rs.rank(); ++j) v[i] += w.m[j * w.n + i] * s.A[j];
      Aw.push_back(v);
    }
  const double order = static_cast<double>(W.size());
  g.reserve(radial.size() * ang.size());
  p.reserve(radial.size() * ang.size());
  for (std::size_t i = 0; i < radial.size(); ++i) {
    const double rho = radial.x[i];
    for (std::size_t k = 0; k < ang.size(); ++k) {
      const Vec lam{rho * std::cos(ang.x[k]), rho * std::sin(ang.x[k])};
      const double dens = density(rs, lam);
      double psi = order;
      if (s.route == Route::inner) {
        psi = 0.0;
        for (const Vec& a : Aw) psi += std::cos(dot(lam, a));
      } else if (s.route == Route::k_quadrature) {
        psi = order * s.sampler.evaluate(lam).real();
      }
      g.push_back(radial.w[i] * ang.w[k] * rho * dens * psi);
      p.push_back(rho * rho);
    }
  }
}

cd damped_sum(const std::vector<double>& g, const std::vector<double>& p, double t, double eps,
              std::vector<double>& tmp) {
  tmp.resize(g.size());
  simd::damp(g, p, eps, tmp);
  const auto c = simd::cis_sum(tmp, p, -t);
  return {c.re, c.im};
}

struct Ladder {
  cd r3, r2;
};

Ladder richardson(const std::vector<double>& g, const std::vector<double>& p, double t,
                  double eps0) {
  std::vector<double> tmp;
  const cd f1 = damped_sum(g, p, t, eps0, tmp);
  const cd f2 = damped_sum(g, p, t, eps0 / 2, tmp);
  const cd f4 = damped_sum(g, p, t, eps0 / 4, tmp);
  return {(8.0 * f4 - 6.0 * f2 + f1) / 3.0, 2.0 * f4 - f2};
}

// Bound on int_{|lambda| > lambda_max} density e^{-eps_min |lambda|^2}, times the
// Richardson coefficient mass 5.
double tail_bound(const RootSystem& rs, double lambda_max, double eps_min) {
  double dmax = 0.0;
  if (rs.rank() == 1) {
    dmax = density(rs, Vec{lambda_max});
  } else {
    for (int i = 0; i < 360; ++i) {
      const double th = 2.0 * std::numbers::pi * (i + 0.5) / 360.0;
      dmax = std::max(dmax, density(rs, Vec{lambda_max * std::cos(th), lambda_max * std::sin(th)}));
    }
  }
  const int l = rs.rank();
  const double q = rs.dimension() - 1;  // radial power of density * rho^{l-1}
  const double sphere = l == 1 ? 2.0 : 2.0 * std::numbers::pi;
  const double sfac = 0.5 * std::pow(eps_min, -(q + 1.0) / 2.0) *
                      upper_gamma_bound((q + 1.0) / 2.0, eps_min * lambda_max * lambda_max);
  // density(rho u) <= 4 dmax (rho / lambda_max)^{d-l} for rho >= lambda_max
  return 5.0 * 4.0 * dmax * std::pow(lambda_max, -(rs.dimension() - l)) * sphere * sfac;
}

KernelSample evaluate(Setup s, bool auto_lambda) {
  const double eps_min = s.eps0 / 4.0;
  double L = 36.0;
  KernelSample out;
  for (int attempt = 0; attempt < 5; ++attempt) {
    if (auto_lambda) s.lambda_max = std::sqrt(L / eps_min);
    if (s.route == Route::h2) {
      const Vec& alpha = s.rs->positive_roots()[0].alpha;
      s.sampler = h2_sampler(dot(alpha, s.x), s.lambda_max * std::abs(alpha[0]) / dot(alpha, alpha));
    }
    const double osc = s.lambda_max * (2.0 * std::abs(s.t) * s.lambda_max + s.freq) /
                       (2.0 * std::numbers::pi);
    int panels = static_cast<int>(std::ceil(osc)) + 8;
    panels += panels % 2;
    std::vector<double> g, p;
    build_nodes(s, panels, g, p);
    const Ladder full = richardson(g, p, s.t, s.eps0);
    build_nodes(s, panels / 2, g, p);
    const Ladder half = richardson(g, p, s.t, s.eps0);
    out.value = full.r3;
    out.epsilon = s.eps0;
    out.lambda_max = s.lambda_max;
    out.parts.richardson = std::abs(full.r3 - full.r2);
    out.parts.doubling = std::abs(full.r3 - half.r3);
    out.parts.tail = tail_bound(*s.rs, s.lambda_max, eps_min);
    out.error = out.parts.richardson + out.parts.doubling + out.parts.tail;
    if (!auto_lambda || out.parts.tail <= s.opt.tail_rel * std::abs(out.value)) break;
    L += 12.0;
  }
  return out;
}

double auto_eps0(double t, double freq, double eta) {
  const double at = std::abs(t);
  if (freq <= 0.0) return eta * at;
  return eta * std::min(at, 4.0 * t * t / (freq * freq));
}

void check_common(double t, double eps, double lambda_max) {
  if (t == 0.0 || !std::isfinite(t)) throw DomainError("kernel: t must be finite and nonzero");
  if (eps < 0.0) throw DomainError("kernel: eps must be nonnegative");
  if (lambda_max < 0.0) throw DomainError("kernel: lambda_max must be positive");
}

}  // namespace

bool kernel_supported(const RootSystem& rs, const KernelOptions& opt) {
  const auto& l = rs.label();
  if (l == "H2" || l == "H3" || l == "SL2R" || l == "SL2C") return true;
  return l == "SL3R" && opt.slow;
}

KernelSample schrodinger_kernel(const RootSystem& rs, double t, const ChamberPoint& x, double eps,
                                double lambda_max, const KernelOptions& opt) {
  check_common(t, eps, lambda_max);
  if (x.x.size() != rs.rank() || !in_closed_chamber(rs, x.x, 1e-12))
    throw DomainError("schrodinger_kernel: x must lie in the closed chamber");
  Setup s;
  s.rs = &rs;
  s.t = t;
  s.x = x.x;
  s.opt = opt;
  s.freq = norm(x.x);
  const auto& l = rs.label();
  if (l == "H3" || l == "SL2C") {
    s.route = Route::h3;
  } else if (l == "H2" || l == "SL2R") {
    s.route = Route::h2;
  } else if (l == "SL3R") {
    if (!opt.slow)
      throw UnsupportedSpace("SL3R full kernel is slow; enable it explicitly (--slow)");
    s.route = Route::k_quadrature;
    s.sampler = k_sampler(rs, GroupPoint::exp_chamber(rs, x.x), opt.k_nodes);
  } else {
    throw UnsupportedSpace(l + ": no spherical-function route for the kernel");
  }
  s.eps0 = eps > 0.0 ? eps : auto_eps0(t, s.freq, opt.eta);
  s.lambda_max = lambda_max;
  KernelSample out = evaluate(s, lambda_max == 0.0);
  out.t = t;
  out.x = x;
  return out;
}

KernelSample inner_integral_I(const RootSystem& rs, double t, const Vec& A, double eps,
                              double lambda_max, const KernelOptions& opt) {
  check_common(t, eps, lambda_max);
  if (A.size() != rs.rank()) throw DomainError("inner_integral_I: A has wrong length");
  Setup s;
  s.rs = &rs;
  s.t = t;
  s.A = A;
  s.opt = opt;
  s.route = Route::inner;
  s.freq = norm(A);
  s.eps0 = eps > 0.0 ? eps : auto_eps0(t, s.freq, opt.eta);
  s.lambda_max = lambda_max;
  KernelSample out = evaluate(s, lambda_max == 0.0);
  out.t = t;
  out.x = ChamberPoint{Vec(rs.rank())};
  return out;
}

std::complex<double> h3_kernel_exact(double t, double r) {
  const cd i(0.0, 1.0);
  const cd root = std::sqrt(std::numbers::pi / (i * t));
  const double ratio = r < 1e-8 ? 1.0 : r / std::sinh(r);
  return -i * ratio / (2.0 * t) * root * std::exp(i * r * r / (4.0 * t));
}

// ---- subordination ----

namespace {

// int_X^inf e^{i a u^2} du for X > 0 by the asymptotic series with optimal truncation.
cd fresnel_tail(double a, double X, double& last_term) {
  const cd ia(0.0, a);
  const cd e = std::exp(ia * X * X);
  cd sum = 0.0;
  cd term = 1.0 / X;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 200; ++k) {
    const double mag = std::abs(term);
    if (mag > prev) break;
    sum += term;
    prev = mag;
    last_term = mag;
    if (mag < 1e-18 * std::abs(sum)) break;
    term *= (2.0 * k + 1.0) / (2.0 * ia * X * X);
  }
  return -e / (2.0 * ia) * sum;
}

}  // namespace

double default_s_max(double t, double mu) {
  return 2.0 * std::abs(t) * mu + 20.0 * std::sqrt(std::abs(t));
}

SubordinationResult subordination_check(double t, double mu, double s_max) {
  if (t == 0.0) throw DomainError("subordination_check: t must be nonzero");
  if (mu < 0.0) throw DomainError("subordination_check: mu must be nonnegative");
  if (s_max <= 0.0) s_max = default_s_max(t, mu);
  const cd i(0.0, 1.0);
  const double a = 1.0 / (4.0 * t);
  // interior integral by composite Gauss-Legendre, one panel per half oscillation
  const double fmax = s_max / (2.0 * std::abs(t)) + mu;
  const int panels = static_cast<int>(std::ceil(s_max * fmax / std::numbers::pi)) + 4;
  const Rule rule = composite_gl(panels, 16, 0.0, s_max);
  cd body = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double s = rule.x[k];
    body += rule.w[k] * std::exp(i * a * s * s) * std::cos(s * mu);
  }
  // tail: cos(s mu) e^{i a s^2} = (1/2) e^{-i t mu^2} [e^{i a (s + b)^2} + e^{i a (s - b)^2}]
  SubordinationResult res;
  const double b = 2.0 * t * mu;
  double l1 = 0.0, l2 = 0.0;
  const double x1 = s_max + b, x2 = s_max - b;
  cd tail = 0.0;
  if (x1 <= 0.0 || x2 <= 0.0) {
    res.tail_remainder = std::numeric_limits<double>::infinity();
  } else {
    tail = 0.5 * std::exp(-i * t * mu * mu) * (fresnel_tail(a, x1, l1) + fresnel_tail(a, x2, l2));
    res.tail_remainder = std::max(l1, l2) / (2.0 * std::abs(a));
  }
  const cd c2 = std::exp(-i * (std::numbers::pi / 4.0) * (t > 0 ? 1.0 : -1.0)) /
                std::sqrt(std::numbers::pi);
  res.value = c2 / std::sqrt(std::abs(t)) * (body + tail);
  res.target = std::exp(-i * t * mu * mu);
  res.error = std::abs(res.value - res.target);
  res.s_max = s_max;
  return res;
}

// ---- decay experiments ----

std::vector<double> geometric_grid(double lo, double hi, int per_decade) {
  if (!(lo > 0.0) || !(hi > lo) || per_decade < 1) throw ConfigError("time grid: need 0 < t_min < t_max");
  const int n = static_cast<int>(std::ceil(per_decade * std::log10(hi / lo) - 1e-9)) + 1;
  std::vector<double> ts(n);
  for (int i = 0; i < n; ++i) ts[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return ts;
}

DecayConfig default_decay_config(const RootSystem& rs, Regime regime, bool slow) {
  DecayConfig c;
  c.opt.slow = slow;
  const Vec dir = rs.rank() == 1 ? Vec{1.0} : rs.rho() * (1.0 / norm(rs.rho()));
  const bool kernel = kernel_supported(rs, c.opt);
  c.use_inner = !kernel;
  if (regime == Regime::small) {
    c.t_min = 0.01;
    c.t_max = 0.5;
    c.x = ChamberPoint{dir * 0.05};
  } else {
    // Windows start where the leading |t|^{-D/2} term dominates; see README.
    const auto& l = rs.label();
    c.t_min = (l == "H3" || l == "SL2C") ? 1.0 : 10.0;
    c.t_max = (l == "H3" || l == "SL2C") ? 100.0 : 1000.0;
    c.x = ChamberPoint{dir * 1.0};
  }
  if (c.use_inner) c.x = ChamberPoint{Vec(rs.rank())};
  return c;
}

DecayFit decay_slope(const RootSystem& rs, Regime regime, const DecayConfig& cfg) {
  DecayFit fit;
  fit.regime = regime;
  fit.config = cfg;
  fit.times = geometric_grid(cfg.t_min, cfg.t_max, cfg.per_decade);
  if (cfg.per_decade < 12) throw ConfigError("decay_slope: need at least 12 points per decade");
  if (regime == Regime::small) {
    if (!(cfg.t_max < 1.0)) throw ConfigError("decay_slope: small-time grid must lie in (0,1)");
    if (norm(cfg.x.x) > std::sqrt(cfg.t_min) + 1e-15)
      throw ConfigError("decay_slope: small regime needs |x| <= sqrt(t_min)");
    fit.target = -0.5 * rs.dimension();
  } else {
    if (cfg.t_min < 1.0) throw ConfigError("decay_slope: large-time grid must lie in [1, inf)");
    if (norm(cfg.x.x) > 2.0) throw ConfigError("decay_slope: large regime needs |x| <= 2");
    fit.target = -0.5 * rs.rank_one_dimension();
  }
  fit.method = cfg.use_inner ? "inner(A=0)" : "kernel";
  fit.points.resize(fit.times.size());
  auto work = [&](std::size_t i) {
    const double t = fit.times[i];
    fit.points[i].sample = cfg.use_inner ? inner_integral_I(rs, t, Vec(rs.rank()), cfg.eps0, cfg.lambda_max, cfg.opt)
                                         : schrodinger_kernel(rs, t, cfg.x, cfg.eps0, cfg.lambda_max, cfg.opt);
    fit.points[i].sample.x = cfg.x;
  };
  const int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < fit.times.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < fit.times.size(); i += jobs) work(i);
      });
    for (auto& th : pool) th.join();
  }
  std::vector<double> lx, ly;
  for (auto& pt : fit.points) {
    const double mag = std::abs(pt.sample.value);
    pt.excluded = !(pt.sample.error <= 0.1 * mag) || mag == 0.0;
    if (pt.excluded) continue;
    lx.push_back(std::log(pt.sample.t));
    ly.push_back(std::log(mag));
  }
  if (lx.size() < 8) throw ConfigError("decay_slope: fewer than 8 valid grid points");
  const LinearFit lf = fit_line(lx, ly);
  fit.slope = lf.slope;
  fit.slope_stderr = lf.slope_stderr;
  return fit;
}

}  // namespace symkernel
