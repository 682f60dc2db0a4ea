#include <atomic>
#include <cstdlib>
#include <cstring>

#include "symkernel/errors.hpp"
#include "symkernel/simd/cis.hpp"

namespace symkernel::simd {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() {
  const char* env = std::getenv("SYMKERNEL_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return Backend::scalar;
  return backend_available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{initial_backend()};
  return b;
}

}  // namespace

bool backend_available(Backend b) {
  if (b == Backend::scalar) return true;
  static const bool ok = avx2::compiled() && cpu_has_avx2();
  return ok;
}

Backend active_backend() { return current().load(); }

void set_backend(Backend b) {
  if (!backend_available(b)) throw UnsupportedSpace("SIMD backend not available on this CPU");
  current().store(b);
}

std::string_view backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

CisSum cis_sum(std::span<const double> w, std::span<const double> p0, double s0,
               std::span<const double> p1, double s1) {
  if (p0.size() != w.size() || (!p1.empty() && p1.size() != w.size()))
    throw ConfigError("cis_sum: array lengths differ");
  const double* q1 = p1.empty() ? nullptr : p1.data();
  if (active_backend() == Backend::avx2) return avx2::cis_sum(w.data(), p0.data(), q1, w.size(), s0, s1);
  return scalar::cis_sum(w.data(), p0.data(), q1, w.size(), s0, s1);
}

void damp(std::span<const double> w, std::span<const double> p, double eps, std::span<double> out) {
  if (p.size() != w.size() || out.size() != w.size()) throw ConfigError("damp: array lengths differ");
  if (active_backend() == Backend::avx2) return avx2::damp(w.data(), p.data(), w.size(), eps, out.data());
  scalar::damp(w.data(), p.data(), w.size(), eps, out.data());
}

}  // namespace symkernel::simd
