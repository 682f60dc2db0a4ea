#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "symkernel/fit.hpp"
#include "symkernel/rootsys.hpp"

namespace symkernel {

struct CFactor {
  Vec alpha;
  int m_alpha = 1;
  int m_2alpha = 0;
  double rho_ratio = 0.0;  // <alpha,rho>/<alpha,alpha>
  double C_alpha = 1.0;
};

std::vector<CFactor> c_factors(const RootSystem& rs);

// |c_alpha(v)|^{-2} with C_alpha = 1. Even in v, ~ v^2 at the origin.
double c_factor_modulus_sq_inv(const CFactor& f, double v);
double log_c_factor_modulus_sq_inv(const CFactor& f, double v);

struct DensityValue {
  double log_magnitude = -INFINITY;
  double value() const { return std::exp(log_magnitude); }
};

// Product over reduced positive roots, evaluated at v = <alpha,lambda>/<alpha,alpha>.
DensityValue plancherel_density(const RootSystem& rs, const SpectralPoint& lambda);
inline double density(const RootSystem& rs, const Vec& lambda) {
  return plancherel_density(rs, SpectralPoint{lambda}).value();
}

enum class Regime { small, large };

struct SlopeReport {
  LinearFit fit;
  Vec direction;
  double lo = 0.0;
  double hi = 0.0;
};

// Random unit direction with every simple-root pairing at least min_angle.
Vec random_chamber_direction(const RootSystem& rs, std::uint64_t seed, double min_pairing = 0.1);

// Fit of log density vs log|lambda| on [1e-3,1e-1] (small) or [1e2,1e4] (large).
SlopeReport asymptotic_slope(const RootSystem& rs, Regime regime, std::uint64_t seed = 1,
                             int n_points = 41);

}  // namespace symkernel
