#pragma once

#include <span>
#include <string_view>

namespace symkernel::simd {

struct CisSum {
  double re = 0.0;
  double im = 0.0;
};

// sum_k w[k] * (cos th_k, sin th_k), th_k = s0 * p0[k] + s1 * p1[k].
// p1 may be empty, in which case the second phase term is absent.
using CisFn = CisSum (*)(const double* w, const double* p0, const double* p1, std::size_t n,
                         double s0, double s1);
// out[k] = w[k] * exp(-eps * p[k]); eps * p[k] >= 0 expected.
using DampFn = void (*)(const double* w, const double* p, std::size_t n, double eps, double* out);

enum class Backend { scalar, avx2 };

namespace scalar {
CisSum cis_sum(const double* w, const double* p0, const double* p1, std::size_t n, double s0,
               double s1);
void damp(const double* w, const double* p, std::size_t n, double eps, double* out);
}  // namespace scalar

namespace avx2 {
bool compiled();
CisSum cis_sum(const double* w, const double* p0, const double* p1, std::size_t n, double s0,
               double s1);
void damp(const double* w, const double* p, std::size_t n, double eps, double* out);
}  // namespace avx2

// Runtime selection. Defaults to the widest variant the CPU supports; the
// environment variable SYMKERNEL_SIMD=scalar forces the reference path.
Backend active_backend();
bool backend_available(Backend b);
void set_backend(Backend b);  // throws if unavailable
std::string_view backend_name(Backend b);

CisSum cis_sum(std::span<const double> w, std::span<const double> p0, double s0,
               std::span<const double> p1 = {}, double s1 = 0.0);
void damp(std::span<const double> w, std::span<const double> p, double eps, std::span<double> out);

}  // namespace symkernel::simd
