#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "symkernel/errors.hpp"
#include "symkernel/kernel.hpp"
#include "symkernel/simd/cis.hpp"

using namespace symkernel;
using cd = std::complex<double>;

TEST_CASE("H3 kernel against the analytic propagator") {
  const RootSystem rs = root_system("H3");
  for (double t : {0.1, 0.37, 1.0, 3.3, 10.0})
    for (double r : {0.5, 1.7, 5.0}) {
      CAPTURE(t);
      CAPTURE(r);
      const KernelSample s = schrodinger_kernel(rs, t, {Vec{r}});
      const cd exact = h3_kernel_exact(t, r);
      const double rel = std::abs(s.value - exact) / std::abs(exact);
      CHECK(rel < 1e-3);
      CHECK(std::abs(s.value - exact) <= s.error);
      CHECK(s.epsilon > 0.0);
      CHECK(s.lambda_max > 0.0);
    }
  // modulus is (r / sinh r) sqrt(pi) / (2 t^{3/2})
  CHECK(std::abs(h3_kernel_exact(2.0, 1.0)) ==
        doctest::Approx(std::sqrt(std::numbers::pi) / (2 * std::pow(2.0, 1.5)) / std::sinh(1.0)).epsilon(1e-15));
}

TEST_CASE("negative times are complex conjugates") {
  const RootSystem rs = root_system("H3");
  const KernelSample a = schrodinger_kernel(rs, 0.8, {Vec{1.0}});
  const KernelSample b = schrodinger_kernel(rs, -0.8, {Vec{1.0}});
  CHECK(std::abs(a.value - std::conj(b.value)) < 1e-12 * std::abs(a.value));
}

TEST_CASE("SL2C reproduces H3; SL2R reproduces H2 after rescaling") {
  const RootSystem h3 = root_system("H3"), c = root_system("SL2C");
  const KernelSample a = schrodinger_kernel(h3, 1.2, {Vec{0.9}});
  const KernelSample b = schrodinger_kernel(c, 1.2, {Vec{0.9}});
  CHECK(std::abs(a.value - b.value) < 1e-13 * std::abs(a.value));
  // SL2R has <alpha,alpha> = 2, so s^{SL2R}_t(r / sqrt2) = sqrt2 s^{H2}_{2t}(r)
  const RootSystem h2 = root_system("H2"), r2 = root_system("SL2R");
  const double s2 = std::sqrt(2.0);
  for (double t : {0.05, 0.7, 4.0}) {
    const KernelSample x = schrodinger_kernel(r2, t, {Vec{1.3 / s2}});
    const KernelSample y = schrodinger_kernel(h2, 2 * t, {Vec{1.3}});
    CHECK(std::abs(x.value - s2 * y.value) < 1e-9 * std::abs(x.value));
  }
}

TEST_CASE("inner integral on H3 in closed form") {
  // int_R lambda^2 e^{-it lambda^2 + i lambda A} d lambda = F(A) (A^2/(4t^2) - i/(2t)),
  // F(A) = sqrt(pi/(it)) e^{i A^2/(4t)}
  const RootSystem rs = root_system("H3");
  const cd i(0, 1);
  for (double t : {0.5, 2.0, 20.0})
    for (double A : {0.0, 0.4, 1.0}) {
      const cd F = std::sqrt(std::numbers::pi / (i * t)) * std::exp(i * A * A / (4 * t));
      const cd exact = F * (A * A / (4 * t * t) - i / (2 * t));
      const KernelSample s = inner_integral_I(rs, t, Vec{A});
      CHECK(std::abs(s.value - exact) < 1e-3 * std::abs(exact));
      CHECK(std::abs(s.value - exact) <= s.error);
    }
}

TEST_CASE("explicit damping and cutoff are honoured") {
  const RootSystem rs = root_system("H3");
  const KernelSample s = schrodinger_kernel(rs, 1.0, {Vec{1.0}}, 0.01, 60.0);
  CHECK(s.epsilon == 0.01);
  CHECK(s.lambda_max == 60.0);
  CHECK(std::abs(s.value - h3_kernel_exact(1.0, 1.0)) < 1e-3 * std::abs(s.value));
}

TEST_CASE("domain and support errors") {
  const RootSystem h3 = root_system("H3");
  CHECK_THROWS_AS(schrodinger_kernel(h3, 0.0, {Vec{1.0}}), DomainError);
  CHECK_THROWS_AS(schrodinger_kernel(h3, 1.0, {Vec{-1.0}}), DomainError);
  CHECK_THROWS_AS(schrodinger_kernel(h3, 1.0, {Vec{1.0}}, -1.0), DomainError);
  CHECK_THROWS_AS(inner_integral_I(h3, 1.0, Vec{1.0, 2.0}), DomainError);
  CHECK_THROWS_AS(schrodinger_kernel(root_system("SL3R"), 1.0, {Vec{0.1, 0.2}}), UnsupportedSpace);
  CHECK_THROWS_AS(schrodinger_kernel(root_system("H5"), 1.0, {Vec{1.0}}), UnsupportedSpace);
  CHECK_FALSE(kernel_supported(root_system("SL3R")));
  KernelOptions slow;
  slow.slow = true;
  CHECK(kernel_supported(root_system("SL3R"), slow));
}

TEST_CASE("SL3R inner integral decays like t^{-4}") {
  const RootSystem rs = root_system("SL3R");
  const KernelSample a = inner_integral_I(rs, 100.0, Vec{0.0, 0.0});
  const KernelSample b = inner_integral_I(rs, 1000.0, Vec{0.0, 0.0});
  CHECK(a.error < 0.1 * std::abs(a.value));
  CHECK(b.error < 0.1 * std::abs(b.value));
  const double slope = std::log(std::abs(b.value) / std::abs(a.value)) / std::log(10.0);
  CHECK(slope == doctest::Approx(-4.0).epsilon(0.05));
}

TEST_CASE("SIMD backends give the same kernel") {
  if (!simd::backend_available(simd::Backend::avx2)) return;
  const RootSystem rs = root_system("H2");
  const auto saved = simd::active_backend();
  simd::set_backend(simd::Backend::scalar);
  const KernelSample a = schrodinger_kernel(rs, 0.6, {Vec{1.1}});
  simd::set_backend(simd::Backend::avx2);
  const KernelSample b = schrodinger_kernel(rs, 0.6, {Vec{1.1}});
  simd::set_backend(saved);
  CHECK(std::abs(a.value - b.value) < 1e-12 * std::abs(a.value));
}

TEST_CASE("subordination identity") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> lt(std::log(0.1), std::log(10.0)), mu(0.0, 5.0);
  for (int k = 0; k < 20; ++k) {
    const double t = (k % 2 ? -1.0 : 1.0) * std::exp(lt(gen));
    const double m = mu(gen);
    const SubordinationResult r = subordination_check(t, m);
    CAPTURE(t);
    CAPTURE(m);
    CHECK(r.error < 1e-6);
    CHECK(r.s_max == default_s_max(t, m));
    CHECK(std::abs(r.target - std::exp(cd(0, -t * m * m))) == 0.0);
  }
  CHECK(subordination_check(1.0, 0.0).error < 1e-6);
  CHECK_THROWS_AS(subordination_check(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(subordination_check(1.0, -1.0), DomainError);
}

TEST_CASE("time grids and decay configuration") {
  const auto g = geometric_grid(1.0, 100.0, 12);
  REQUIRE(g.size() == 25);
  CHECK(g.front() == 1.0);
  CHECK(g.back() == doctest::Approx(100.0).epsilon(1e-15));
  CHECK_THROWS_AS(geometric_grid(0.0, 1.0, 12), ConfigError);

  const RootSystem h3 = root_system("H3");
  DecayConfig c = default_decay_config(h3, Regime::large);
  CHECK_FALSE(c.use_inner);
  c.per_decade = 6;
  CHECK_THROWS_AS(decay_slope(h3, Regime::large, c), ConfigError);
  const DecayConfig sl3 = default_decay_config(root_system("SL3R"), Regime::large);
  CHECK(sl3.use_inner);
  CHECK(sl3.t_max <= 1000.0);
}

TEST_CASE("H3 decay slopes") {
  const RootSystem rs = root_system("H3");
  for (Regime r : {Regime::small, Regime::large}) {
    DecayConfig c = default_decay_config(rs, r);
    c.jobs = 2;
    const DecayFit f = decay_slope(rs, r, c);
    CHECK(f.target == -1.5);
    CHECK(std::abs(f.slope - f.target) <= 0.1);
    int kept = 0;
    for (const auto& p : f.points) kept += !p.excluded;
    CHECK(kept >= 8);
  }
}
