#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "symkernel/errors.hpp"
#include "symkernel/plancherel.hpp"

using namespace symkernel;

namespace {

// Fits the single constant C in density = C * model by the mean ratio and returns the
// worst relative deviation.
template <class Model>
double one_constant_fit(const RootSystem& rs, Model model, double& C) {
  std::vector<double> vs, ratios;
  const double a = rs.positive_roots()[0].alpha[0];
  for (int i = 0; i < 400; ++i) {
    const double v = 0.01 * std::pow(2000.0, i / 399.0);  // [0.01, 20]
    vs.push_back(v);
    ratios.push_back(density(rs, Vec{v * a}) / model(v));  // <alpha,lambda>/<alpha,alpha> = v
  }
  C = 0;
  for (double r : ratios) C += r / ratios.size();
  double worst = 0;
  for (double r : ratios) worst = std::max(worst, std::abs(r / C - 1.0));
  return worst;
}

}  // namespace

TEST_CASE("rank-one densities match the closed-form modulus identities") {
  double C = 0;
  SUBCASE("H2: v tanh(pi v)") {
    const auto m = [](double v) { return v * std::tanh(std::numbers::pi * v); };
    CHECK(one_constant_fit(root_system("H2"), m, C) < 1e-10);
    CHECK(C == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(one_constant_fit(root_system("SL2R"), m, C) < 1e-10);
  }
  SUBCASE("H3 and SL2C: v^2") {
    const auto m = [](double v) { return v * v; };
    CHECK(one_constant_fit(root_system("H3"), m, C) < 1e-10);
    CHECK(C == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(one_constant_fit(root_system("SL2C"), m, C) < 1e-10);
  }
  SUBCASE("H5: v^2 (1 + v^2)") {
    const auto m = [](double v) { return v * v * (1 + v * v); };
    CHECK(one_constant_fit(root_system("H5"), m, C) < 1e-10);
  }
  SUBCASE("H4: v (1/4 + v^2) coth(pi v)") {
    // |Gamma(iv + 3/2)|^2 / |Gamma(iv)|^2 = v (v^2 + 1/4) sinh(pi v) / cosh(pi v)
    const auto m = [](double v) { return v * (0.25 + v * v) * std::tanh(std::numbers::pi * v); };
    CHECK(one_constant_fit(root_system("H4"), m, C) < 1e-10);
  }
}

TEST_CASE("factor is even and quadratic at the origin") {
  const auto f = c_factors(root_system("H4"))[0];
  for (double v : {1e-9, 1e-7, 0.3, 4.0})
    CHECK(c_factor_modulus_sq_inv(f, v) == doctest::Approx(c_factor_modulus_sq_inv(f, -v)).epsilon(1e-15));
  // Taylor guard against the direct formula just above the switch
  const double below = c_factor_modulus_sq_inv(f, 0.999999e-6) / (0.999999e-6 * 0.999999e-6);
  const double above = c_factor_modulus_sq_inv(f, 1.000001e-6) / (1.000001e-6 * 1.000001e-6);
  CHECK(below == doctest::Approx(above).epsilon(1e-8));
  // H4: m = 3, K0 = Gamma(3/2)^2 = pi / 4
  CHECK(below == doctest::Approx(std::numbers::pi / 4).epsilon(1e-8));
  CHECK(c_factor_modulus_sq_inv(f, 0.0) == 0.0);
}

TEST_CASE("Weyl invariance, positivity and product structure on SL3R") {
  const RootSystem rs = root_system("SL3R");
  const auto fs = c_factors(rs);
  std::mt19937_64 gen(5);
  std::normal_distribution<double> n(0.0, 3.0);
  for (int i = 0; i < 300; ++i) {
    const Vec l{n(gen), n(gen)};
    const DensityValue d0 = plancherel_density(rs, {l});
    CHECK(d0.value() > 0);
    for (const auto& w : rs.weyl_group()) {
      const DensityValue dw = plancherel_density(rs, {w.apply(l)});
      CHECK(std::abs(dw.value() / d0.value() - 1.0) < 1e-10);
    }
    double sum = 0;
    for (const auto& f : fs) sum += log_c_factor_modulus_sq_inv(f, dot(f.alpha, l) / dot(f.alpha, f.alpha));
    CHECK(sum == d0.log_magnitude);
  }
}

TEST_CASE("asymptotic slopes: D - l near zero, d - l at infinity") {
  for (const auto& label : catalogue_labels()) {
    CAPTURE(label);
    const RootSystem rs = root_system(label);
    const SlopeReport s = asymptotic_slope(rs, Regime::small, 1);
    const SlopeReport l = asymptotic_slope(rs, Regime::large, 1);
    CHECK(std::abs(s.fit.slope - (rs.rank_one_dimension() - rs.rank())) <= 0.05);
    CHECK(std::abs(l.fit.slope - (rs.dimension() - rs.rank())) <= 0.05);
  }
  // worked example
  const RootSystem sl3 = root_system("SL3R");
  CHECK(asymptotic_slope(sl3, Regime::small, 2).fit.slope == doctest::Approx(6.0).epsilon(0.01));
  CHECK(asymptotic_slope(sl3, Regime::large, 2).fit.slope == doctest::Approx(3.0).epsilon(0.01));
  CHECK_THROWS_AS(asymptotic_slope(sl3, Regime::large, 1, 5), ConfigError);
}

TEST_CASE("random chamber directions are interior unit vectors") {
  const RootSystem rs = root_system("SL3R");
  for (std::uint64_t seed = 1; seed < 40; ++seed) {
    const Vec u = random_chamber_direction(rs, seed);
    CHECK(norm(u) == doctest::Approx(1.0).epsilon(1e-15));
    for (const auto& r : rs.positive_roots()) CHECK(dot(r.alpha, u) / norm(r.alpha) >= 0.1);
  }
  CHECK(random_chamber_direction(rs, 9) == random_chamber_direction(rs, 9));
}
