#pragma once

#include <complex>
#include <string>
#include <vector>

#include "symkernel/plancherel.hpp"
#include "symkernel/rootsys.hpp"

namespace symkernel {

struct KernelOptions {
  double eta = 0.05;         // eps0 = eta * min(|t|, 4 t^2 / |x|^2)
  double tail_rel = 1e-8;    // target for tail bound / |value|
  int gl_nodes = 16;         // nodes per radial panel
  int angular_nodes = 8;     // nodes per angular panel (rank two)
  int k_nodes = 12;          // K-quadrature nodes per Euler angle (rank-two full kernel)
  bool slow = false;         // permit the SL3R full kernel
};

struct ErrorBreakdown {
  double richardson = 0.0;  // |R3 - R2|
  double doubling = 0.0;    // |R3(P) - R3(P/2)|
  double tail = 0.0;        // truncation bound beyond lambda_max
};

struct KernelSample {
  double t = 0.0;
  ChamberPoint x;
  std::complex<double> value;
  double error = 0.0;
  double epsilon = 0.0;      // eps0 of the Richardson ladder
  double lambda_max = 0.0;
  ErrorBreakdown parts;
};

// s_t(x) = int_a |c(lambda)|^{-2} phi_lambda(x) e^{-it|lambda|^2} d lambda (C0 = 1),
// damped by e^{-eps|lambda|^2} and extrapolated over eps in {eps0, eps0/2, eps0/4}.
// eps = 0 selects eps0 automatically; lambda_max = 0 selects it from the tail bound.
KernelSample schrodinger_kernel(const RootSystem& rs, double t, const ChamberPoint& x,
                                double eps = 0.0, double lambda_max = 0.0,
                                const KernelOptions& opt = {});

// I(t,A) = int_a |c(lambda)|^{-2} e^{-it|lambda|^2} e^{i<lambda,A>} d lambda.
KernelSample inner_integral_I(const RootSystem& rs, double t, const Vec& A, double eps = 0.0,
                              double lambda_max = 0.0, const KernelOptions& opt = {});

// Whether schrodinger_kernel has a spherical-function route for this space.
bool kernel_supported(const RootSystem& rs, const KernelOptions& opt = {});

// Analytic H3 kernel for C0 = 1: -i r/(2t sinh r) * sqrt(pi/(i t)) * e^{i r^2/(4t)}.
std::complex<double> h3_kernel_exact(double t, double r);

// ---- subordination ----

struct SubordinationResult {
  std::complex<double> value;   // C2 |t|^{-1/2} int_0^inf e^{is^2/4t} cos(s mu) ds
  std::complex<double> target;  // e^{-it mu^2}
  double error = 0.0;           // |value - target|
  double tail_remainder = 0.0;  // size of the last retained asymptotic tail term
  double s_max = 0.0;
};

double default_s_max(double t, double mu);
SubordinationResult subordination_check(double t, double mu, double s_max = 0.0);

// ---- decay experiments ----

struct DecayConfig {
  double t_min = 1.0;
  double t_max = 100.0;
  int per_decade = 12;
  ChamberPoint x;
  bool use_inner = false;  // fit |I(t,0)| instead of |s_t(x)|
  double eps0 = 0.0;        // 0: automatic per point
  double lambda_max = 0.0;  // 0: automatic per point
  KernelOptions opt;
  int jobs = 1;
};

struct DecayPoint {
  KernelSample sample;
  bool excluded = false;
};

struct DecayFit {
  Regime regime = Regime::large;
  double slope = 0.0;
  double slope_stderr = 0.0;
  double target = 0.0;  // -d/2 or -D/2
  std::vector<double> times;
  std::vector<DecayPoint> points;
  std::string method;  // "kernel" or "inner(A=0)"
  DecayConfig config;
};

DecayConfig default_decay_config(const RootSystem& rs, Regime regime, bool slow = false);
std::vector<double> geometric_grid(double lo, double hi, int per_decade);
DecayFit decay_slope(const RootSystem& rs, Regime regime, const DecayConfig& cfg);

}  // namespace symkernel
