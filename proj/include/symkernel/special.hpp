#pragma once

#include <complex>

namespace symkernel {

// log|Gamma(z)| for Re z > 0. Recurrence up to |z| >= 15, then Stirling with
// Bernoulli corrections; relative accuracy ~1e-15 on |Im z| <= 1e4.
double log_abs_gamma(std::complex<double> z);

// log(v sinh(pi v)) for v > 0, overflow-free.
double log_v_sinh_pi_v(double v);

}  // namespace symkernel
