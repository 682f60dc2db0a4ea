#include "symkernel/special.hpp"

#include <cmath>
#include <numbers>

#include "symkernel/errors.hpp"

namespace symkernel {

double log_abs_gamma(std::complex<double> z) {
  if (!(z.real() > 0.0)) throw DomainError("log_abs_gamma: Re z must be positive");
  double prod = 1.0;  // prod |z + k|^2 over the recurrence shifts
  while (std::norm(z) < 225.0) {
    prod *= std::norm(z);
    z += 1.0;
  }
  const double shift = -0.5 * std::log(prod);
  // B_{2k} / (2k (2k-1)), k = 1..8
  static constexpr double kB[] = {1.0 / 12.0,          -1.0 / 360.0,          1.0 / 1260.0,
                                  -1.0 / 1680.0,       1.0 / 1188.0,          -691.0 / 360360.0,
                                  1.0 / 156.0,         -3617.0 / 122400.0};
  const std::complex<double> inv = 1.0 / z;
  const std::complex<double> inv2 = inv * inv;
  std::complex<double> term = inv;
  std::complex<double> series = 0.0;
  for (double b : kB) {
    series += b * term;
    term *= inv2;
  }
  const std::complex<double> s =
      (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series;
  return s.real() + shift;
}

double log_v_sinh_pi_v(double v) {
  if (!(v > 0.0)) throw DomainError("log_v_sinh_pi_v: v must be positive");
  const double x = std::numbers::pi * v;
  if (x < 20.0) return std::log(v * std::sinh(x));
  return std::log(v) + x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0);
}

}  // namespace symkernel
