#include <cmath>

#include "symkernel/simd/cis.hpp"

namespace symkernel::simd::scalar {

CisSum cis_sum(const double* w, const double* p0, const double* p1, std::size_t n, double s0,
               double s1) {
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double th = p1 ? s0 * p0[k] + s1 * p1[k] : s0 * p0[k];
    re += w[k] * std::cos(th);
    im += w[k] * std::sin(th);
  }
  return {re, im};
}

void damp(const double* w, const double* p, std::size_t n, double eps, double* out) {
  for (std::size_t k = 0; k < n; ++k) out[k] = w[k] * std::exp(-eps * p[k]);
}

}  // namespace symkernel::simd::scalar
