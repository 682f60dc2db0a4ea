#include "symkernel/plancherel.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "symkernel/errors.hpp"
#include "symkernel/special.hpp"

namespace symkernel {

std::vector<CFactor> c_factors(const RootSystem& rs) {
  std::vector<CFactor> out;
  for (const auto& r : rs.positive_roots()) {
    CFactor f;
    f.alpha = r.alpha;
    f.m_alpha = r.m_alpha;
    f.m_2alpha = r.m_2alpha;
    f.rho_ratio = dot(r.alpha, rs.rho()) / dot(r.alpha, r.alpha);
    out.push_back(f);
  }
  return out;
}

double log_c_factor_modulus_sq_inv(const CFactor& f, double v) {
  using cd = std::complex<double>;
  v = std::abs(v);
  const double m = f.m_alpha, m2 = f.m_2alpha;
  auto lg = [](cd z) { return log_abs_gamma(z); };
  // Constant of the quadratic vanishing at the origin: Gamma(m/2)^2 (Gamma(m/4+m2/2)/Gamma(m/4))^2.
  if (v < 1e-6) {
    if (v == 0.0) return -INFINITY;
    const double k0 = 2.0 * std::lgamma(m / 2) + 2.0 * std::lgamma(m / 4 + m2 / 2) -
                      2.0 * std::lgamma(m / 4);
    return k0 + 2.0 * std::log(v);
  }
  // |Gamma(iv)|^{-2} = v sinh(pi v) / pi
  double s = 2.0 * lg(cd(m / 2, v)) + log_v_sinh_pi_v(v) - std::log(std::numbers::pi);
  if (f.m_2alpha) s += 2.0 * lg(cd(m / 4 + m2 / 2, v / 2)) - 2.0 * lg(cd(m / 4, v / 2));
  return s + 2.0 * std::log(f.C_alpha);
}

double c_factor_modulus_sq_inv(const CFactor& f, double v) {
  return std::exp(log_c_factor_modulus_sq_inv(f, v));
}

DensityValue plancherel_density(const RootSystem& rs, const SpectralPoint& lambda) {
  if (lambda.lambda.size() != rs.rank())
    throw DomainError("plancherel_density: spectral point has wrong length");
  DensityValue d{0.0};
  for (const auto& r : rs.positive_roots()) {
    CFactor f{r.alpha, r.m_alpha, r.m_2alpha, 0.0, 1.0};
    d.log_magnitude +=
        log_c_factor_modulus_sq_inv(f, dot(r.alpha, lambda.lambda) / dot(r.alpha, r.alpha));
  }
  return d;
}

Vec random_chamber_direction(const RootSystem& rs, std::uint64_t seed, double min_pairing) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g;
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Vec v(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) v[i] = g(gen);
    const double n = norm(v);
    if (n == 0.0) continue;
    Vec u = chamber_project(rs, v * (1.0 / n)).x;
    bool ok = true;
    for (const auto& r : rs.positive_roots())
      if (dot(r.alpha, u) / norm(r.alpha) < min_pairing) ok = false;
    if (ok) return u;
  }
  throw ConfigError("random_chamber_direction: no interior direction found");
}

SlopeReport asymptotic_slope(const RootSystem& rs, Regime regime, std::uint64_t seed,
                             int n_points) {
  if (n_points < 8) throw ConfigError("asymptotic_slope: fewer than 8 sample points");
  SlopeReport rep;
  rep.direction = random_chamber_direction(rs, seed);
  rep.lo = regime == Regime::small ? 1e-3 : 1e2;
  rep.hi = regime == Regime::small ? 1e-1 : 1e4;
  std::vector<double> x, y;
  for (int i = 0; i < n_points; ++i) {
    const double s = std::log(rep.lo) + (std::log(rep.hi) - std::log(rep.lo)) * i / (n_points - 1);
    x.push_back(s);
    y.push_back(plancherel_density(rs, SpectralPoint{rep.direction * std::exp(s)}).log_magnitude);
  }
  rep.fit = fit_line(x, y);
  return rep;
}

}  // namespace symkernel
