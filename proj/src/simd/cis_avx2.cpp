// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include "symkernel/simd/cis.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace symkernel::simd::avx2 {

namespace {

// Three-part pi/2 for Cody-Waite reduction with fused multiply-add.
constexpr double kPio2A = 1.5707963267948966;
constexpr double kPio2B = 6.123233995736766e-17;
constexpr double kPio2C = -1.4973849048591698e-33;
constexpr double kTwoOverPi = 0.6366197723675814;

// Minimax kernels on [-pi/4, pi/4].
constexpr double kS1 = -1.66666666666666324348e-01;
constexpr double kS2 = 8.33333333332248946124e-03;
constexpr double kS3 = -1.98412698298579493134e-04;
constexpr double kS4 = 2.75573137070700676789e-06;
constexpr double kS5 = -2.50507602534068634195e-08;
constexpr double kS6 = 1.58969099521155010221e-10;
constexpr double kC1 = 4.16666666666666019037e-02;
constexpr double kC2 = -1.38888888888741095749e-03;
constexpr double kC3 = 2.48015872894767294178e-05;
constexpr double kC4 = -2.75573143513906633035e-07;
constexpr double kC5 = 2.08757232129817482790e-09;
constexpr double kC6 = -1.13596475577881948265e-11;

inline __m256d set(double v) { return _mm256_set1_pd(v); }

inline void sincos4(__m256d x, __m256d& s, __m256d& c) {
  const __m256d y = _mm256_round_pd(_mm256_mul_pd(x, set(kTwoOverPi)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(y, set(kPio2A), x);
  r = _mm256_fnmadd_pd(y, set(kPio2B), r);
  r = _mm256_fnmadd_pd(y, set(kPio2C), r);

  const __m256d z = _mm256_mul_pd(r, r);
  __m256d ps = _mm256_fmadd_pd(z, set(kS6), set(kS5));
  ps = _mm256_fmadd_pd(z, ps, set(kS4));
  ps = _mm256_fmadd_pd(z, ps, set(kS3));
  ps = _mm256_fmadd_pd(z, ps, set(kS2));
  ps = _mm256_fmadd_pd(z, ps, set(kS1));
  const __m256d sr = _mm256_fmadd_pd(_mm256_mul_pd(r, z), ps, r);

  __m256d pc = _mm256_fmadd_pd(z, set(kC6), set(kC5));
  pc = _mm256_fmadd_pd(z, pc, set(kC4));
  pc = _mm256_fmadd_pd(z, pc, set(kC3));
  pc = _mm256_fmadd_pd(z, pc, set(kC2));
  pc = _mm256_fmadd_pd(z, pc, set(kC1));
  const __m256d cr =
      _mm256_fmadd_pd(_mm256_mul_pd(z, z), pc, _mm256_fnmadd_pd(set(0.5), z, set(1.0)));

  // quadrant q = y mod 4 in {0,1,2,3}
  const __m256d q = _mm256_sub_pd(
      y, _mm256_mul_pd(set(4.0), _mm256_floor_pd(_mm256_mul_pd(y, set(0.25)))));
  const __m256d odd = _mm256_cmp_pd(
      _mm256_sub_pd(q, _mm256_mul_pd(set(2.0), _mm256_floor_pd(_mm256_mul_pd(q, set(0.5))))),
      set(0.5), _CMP_GT_OQ);
  const __m256d sin_neg = _mm256_cmp_pd(q, set(1.5), _CMP_GT_OQ);
  const __m256d cos_neg = _mm256_and_pd(_mm256_cmp_pd(q, set(0.5), _CMP_GT_OQ),
                                        _mm256_cmp_pd(q, set(2.5), _CMP_LT_OQ));
  const __m256d sign = set(-0.0);
  s = _mm256_blendv_pd(sr, cr, odd);
  c = _mm256_blendv_pd(cr, sr, odd);
  s = _mm256_xor_pd(s, _mm256_and_pd(sin_neg, sign));
  c = _mm256_xor_pd(c, _mm256_and_pd(cos_neg, sign));
}

inline __m256d exp4(__m256d x) {
  constexpr double kLn2A = 0.6931471805599453;
  constexpr double kLn2B = 2.3190468138462996e-17;
  constexpr double kLog2e = 1.4426950408889634;
  const __m256d n =
      _mm256_round_pd(_mm256_mul_pd(x, set(kLog2e)), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, set(kLn2A), x);
  r = _mm256_fnmadd_pd(n, set(kLn2B), r);
  // Taylor to degree 13 on |r| <= ln2/2.
  static constexpr double kInvFact[] = {1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0,
                                        1.0 / 3628800.0,    1.0 / 362880.0,    1.0 / 40320.0,
                                        1.0 / 5040.0,       1.0 / 720.0,       1.0 / 120.0,
                                        1.0 / 24.0,         1.0 / 6.0,         0.5,
                                        1.0,                1.0};
  __m256d p = set(kInvFact[0]);
  for (int i = 1; i < 14; ++i) p = _mm256_fmadd_pd(p, r, set(kInvFact[i]));
  const __m256d nc = _mm256_max_pd(n, set(-1022.0));
  const __m256i ni = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(nc));
  const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(ni, _mm256_set1_epi64x(1023)), 52);
  const __m256d out = _mm256_mul_pd(p, _mm256_castsi256_pd(bits));
  const __m256d under = _mm256_cmp_pd(x, set(-708.0), _CMP_LT_OQ);
  return _mm256_andnot_pd(under, out);
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

}  // namespace

bool compiled() { return true; }

CisSum cis_sum(const double* w, const double* p0, const double* p1, std::size_t n, double s0,
               double s1) {
  __m256d acc_re = _mm256_setzero_pd(), acc_im = _mm256_setzero_pd();
  const __m256d vs0 = set(s0), vs1 = set(s1);
  std::size_t k = 0;
  auto step = [&](__m256d vw, __m256d a, __m256d b, bool two) {
    __m256d th = _mm256_mul_pd(vs0, a);
    if (two) th = _mm256_fmadd_pd(vs1, b, th);
    __m256d s, c;
    sincos4(th, s, c);
    acc_re = _mm256_fmadd_pd(vw, c, acc_re);
    acc_im = _mm256_fmadd_pd(vw, s, acc_im);
  };
  const bool two = p1 != nullptr;
  for (; k + 4 <= n; k += 4)
    step(_mm256_loadu_pd(w + k), _mm256_loadu_pd(p0 + k),
         two ? _mm256_loadu_pd(p1 + k) : _mm256_setzero_pd(), two);
  if (k < n) {
    alignas(32) double tw[4] = {0, 0, 0, 0}, ta[4] = {0, 0, 0, 0}, tb[4] = {0, 0, 0, 0};
    for (std::size_t i = 0; k + i < n; ++i) {
      tw[i] = w[k + i];
      ta[i] = p0[k + i];
      if (two) tb[i] = p1[k + i];
    }
    step(_mm256_load_pd(tw), _mm256_load_pd(ta), _mm256_load_pd(tb), two);
  }
  return {hsum(acc_re), hsum(acc_im)};
}

void damp(const double* w, const double* p, std::size_t n, double eps, double* out) {
  const __m256d ve = set(-eps);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d e = exp4(_mm256_mul_pd(ve, _mm256_loadu_pd(p + k)));
    _mm256_storeu_pd(out + k, _mm256_mul_pd(_mm256_loadu_pd(w + k), e));
  }
  if (k < n) {
    alignas(32) double tw[4] = {0, 0, 0, 0}, tp[4] = {0, 0, 0, 0}, to[4];
    for (std::size_t i = 0; k + i < n; ++i) {
      tw[i] = w[k + i];
      tp[i] = p[k + i];
    }
    _mm256_store_pd(to, _mm256_mul_pd(_mm256_load_pd(tw), exp4(_mm256_mul_pd(ve, _mm256_load_pd(tp)))));
    for (std::size_t i = 0; k + i < n; ++i) out[k + i] = to[i];
  }
}

}  // namespace symkernel::simd::avx2

#else

#include "symkernel/errors.hpp"

namespace symkernel::simd::avx2 {
bool compiled() { return false; }
CisSum cis_sum(const double*, const double*, const double*, std::size_t, double, double) {
  throw UnsupportedSpace("AVX2 variant not compiled");
}
void damp(const double*, const double*, std::size_t, double, double*) {
  throw UnsupportedSpace("AVX2 variant not compiled");
}
}  // namespace symkernel::simd::avx2

#endif
