#include "doctest.h"

#include <cmath>
#include <random>

#include "symkernel/dispersive.hpp"
#include "symkernel/errors.hpp"

using namespace symkernel;

namespace {

RadialFunction ball(double R, double height = 1.0) {
  return {[R, height](const ChamberPoint& x) { return norm(x.x) <= R ? height : 0.0; }, R};
}

}  // namespace

TEST_CASE("Kunze-Stein functional on H3") {
  const RootSystem rs = root_system("H3");
  // (int_0^1 sinh^2 r (1 + r) e^{-r} dr)^{1/2}, computed by independent adaptive quadrature
  CHECK(kunze_stein_bound(rs, ball(1.0), 4.0) == doctest::Approx(0.5769054611751644).epsilon(1e-10));
  CHECK(kunze_stein_bound(rs, ball(1.0), INFINITY) == 1.0);
  CHECK(kunze_stein_bound(rs, ball(1.0, 0.0), 4.0) == 0.0);
  CHECK_THROWS_AS(kunze_stein_bound(rs, ball(1.0), 1.5), DomainError);
  // infinite support: kappa = e^{-3r}, q = 2 gives int sinh^2 r (1 + r) e^{-4r} dr = 23/288
  const RadialFunction decaying{[](const ChamberPoint& x) { return std::exp(-3.0 * norm(x.x)); }};
  CHECK(kunze_stein_bound(rs, decaying, 2.0) == doctest::Approx(23.0 / 288.0).epsilon(1e-10));
  const RadialFunction flat{[](const ChamberPoint&) { return 1.0; }};
  CHECK(std::isinf(kunze_stein_bound(rs, flat, 4.0)));
}

TEST_CASE("Kunze-Stein functional: homogeneity and monotonicity") {
  for (const char* l : {"H3", "SL3R"}) {
    const RootSystem rs = root_system(l);
    for (double q : {2.0, 3.0, 8.0, double(INFINITY)}) {
      const double base = kunze_stein_bound(rs, ball(1.5), q);
      CHECK(base > 0.0);
      CHECK(kunze_stein_bound(rs, ball(1.5, 3.0), q) == doctest::Approx(3.0 * base).epsilon(1e-13));
      // pointwise larger kappa: a bigger ball, or a bump added on top
      CHECK(kunze_stein_bound(rs, ball(2.0), q) >= base);
      const RadialFunction bump{[](const ChamberPoint& x) {
                                  const double r = norm(x.x);
                                  return r <= 1.5 ? 1.0 + std::exp(-r) : 0.0;
                                },
                                1.5};
      CHECK(kunze_stein_bound(rs, bump, q) >= base);
    }
  }
}

TEST_CASE("dispersive exponents") {
  const auto a = dispersive_exponents(5, 8, 4.0, 4.0);
  CHECK(a.small_time == 1.25);
  CHECK(a.large_time == 4.0);
  const auto b = dispersive_exponents(5, 3, INFINITY, INFINITY);
  CHECK(b.small_time == 2.5);
  const auto c = dispersive_exponents(3, 3, 6.0, 3.0);
  CHECK(c.small_time == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.large_time == 1.5);
  CHECK_THROWS_AS(dispersive_exponents(3, 3, 2.0, 4.0), DomainError);
  CHECK_THROWS_AS(dispersive_exponents(3, 3, 4.0, 1.0), DomainError);

  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(0.0, 0.5);
  std::uniform_int_distribution<int> dd(2, 12);
  for (int i = 0; i < 1000; ++i) {
    const int d = dd(gen), D = dd(gen);
    const double iq = u(gen), iqt = u(gen);  // 1/q in [0, 1/2)
    const double q = iq == 0.0 ? INFINITY : 1.0 / iq, qt = iqt == 0.0 ? INFINITY : 1.0 / iqt;
    const auto e = dispersive_exponents(d, D, q, qt);
    const double want = (0.5 - std::min(1.0 / q, 1.0 / qt)) * d;
    CHECK(e.small_time == doctest::Approx(want).epsilon(1e-14));
    CHECK(e.large_time == 0.5 * D);
    CHECK(dispersive_exponents(d, D, qt, q).small_time == e.small_time);
    CHECK(dispersive_exponents(d, D, q * 1.5, qt).small_time >= e.small_time);
  }
}

TEST_CASE("admissibility examples") {
  CHECK(is_admissible(AdmissiblePair::from_exponents(INFINITY, 2.0, 3)));
  for (int d : {3, 4, 5, 7}) CHECK(is_admissible(AdmissiblePair::from_exponents(2.0, 2.0 * d / (d - 2.0), d)));
  CHECK_FALSE(is_admissible(AdmissiblePair::from_exponents(2.0, INFINITY, 3)));
  CHECK_FALSE(is_admissible(AdmissiblePair::from_exponents(INFINITY, 4.0, 3)));
  CHECK_THROWS_AS(is_admissible(AdmissiblePair{0.25, 0.25, 2}), DomainError);
  CHECK_THROWS_AS(AdmissiblePair::from_exponents(1.0, 4.0, 3), DomainError);
}

TEST_CASE("admissibility agrees with an integer evaluation on a 200 x 200 grid") {
  for (int d : {3, 4, 5}) {
    int mismatches = 0;
    for (int i = 0; i <= 200; ++i)
      for (int j = 0; j <= 200; ++j) {
        // (1/p, 1/q) = (i/400, j/400); 2/p + d/q >= d/2  <=>  2i + d j >= 200 d
        const bool want = (i > 0 && j > 0 && j < 200 && 2 * i + d * j >= 200 * d) || (i == 0 && j == 200);
        mismatches += is_admissible(AdmissiblePair{i / 400.0, j / 400.0, d}) != want;
      }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("admissible region minus the endpoint is convex") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(0.0, 0.5);
  int tested = 0;
  while (tested < 10000) {
    const AdmissiblePair a{u(gen), u(gen), 4}, b{u(gen), u(gen), 4};
    if (!is_admissible(a) || !is_admissible(b)) continue;
    ++tested;
    CHECK(is_admissible({0.5 * (a.inv_p + b.inv_p), 0.5 * (a.inv_q + b.inv_q), 4}));
  }
}

TEST_CASE("the six well-posedness bullets at, below and above threshold") {
  const RegimeFlags none{}, gauge{true, false}, defoc{false, true};
  for (int d : {3, 4, 5}) {
    CAPTURE(d);
    const double l2 = 1.0 + 4.0 / d, h1 = 1.0 + 4.0 / (d - 2);
    const double below = 0.9, above = 1.1;  // multiplicative offsets around the threshold
    auto v = [&](double g, DataClass c, RegimeFlags f, DataSize s) { return classify_regime(d, g, c, f, s); };
    // L2 small data: global and scattering for gamma <= 1 + 4/d
    CHECK(v(l2, DataClass::L2, none, DataSize::small).line() == "globally well-posed; scatters");
    CHECK(v(1 + (l2 - 1) * below, DataClass::L2, none, DataSize::small).verdict == Verdict::global);
    CHECK(v(1 + (l2 - 1) * above, DataClass::L2, none, DataSize::small).verdict == Verdict::outside);
    // L2 arbitrary data: local for gamma < 1 + 4/d
    CHECK(v(l2, DataClass::L2, none, DataSize::arbitrary).verdict == Verdict::outside);
    CHECK(v(1 + (l2 - 1) * below, DataClass::L2, none, DataSize::arbitrary).verdict == Verdict::local);
    CHECK(v(1 + (l2 - 1) * above, DataClass::L2, none, DataSize::arbitrary).verdict == Verdict::outside);
    // L2 arbitrary data, gauge invariant: global
    CHECK(v(1 + (l2 - 1) * below, DataClass::L2, gauge, DataSize::arbitrary).verdict == Verdict::global);
    CHECK(v(l2, DataClass::L2, gauge, DataSize::arbitrary).verdict == Verdict::outside);
    CHECK(v(1 + (l2 - 1) * below, DataClass::L2, gauge, DataSize::arbitrary).scattering ==
          Scattering::not_asserted);
    // H1 small data: global and scattering for gamma <= 1 + 4/(d-2)
    CHECK(v(h1, DataClass::H1, none, DataSize::small).line() == "globally well-posed; scatters");
    CHECK(v(1 + (h1 - 1) * below, DataClass::H1, none, DataSize::small).verdict == Verdict::global);
    CHECK(v(1 + (h1 - 1) * above, DataClass::H1, none, DataSize::small).verdict == Verdict::outside);
    // H1 arbitrary data: local; defocusing: global
    CHECK(v(h1, DataClass::H1, none, DataSize::arbitrary).verdict == Verdict::outside);
    CHECK(v(1 + (h1 - 1) * below, DataClass::H1, none, DataSize::arbitrary).verdict == Verdict::local);
    CHECK(v(1 + (h1 - 1) * below, DataClass::H1, defoc, DataSize::arbitrary).verdict == Verdict::global);
    CHECK(v(1 + (h1 - 1) * above, DataClass::H1, defoc, DataSize::arbitrary).verdict == Verdict::outside);
    // flags belong to one class only
    CHECK(v(1 + (l2 - 1) * below, DataClass::L2, defoc, DataSize::arbitrary).verdict == Verdict::local);
    CHECK(v(1 + (h1 - 1) * below, DataClass::H1, gauge, DataSize::arbitrary).verdict == Verdict::local);
  }
  CHECK_THROWS_AS(classify_regime(5, 1.0, DataClass::L2, {}, DataSize::small), DomainError);
  CHECK_THROWS_AS(classify_regime(2, 1.5, DataClass::H1, {}, DataSize::small), DomainError);
}

TEST_CASE("worked classifier examples") {
  CHECK(classify_regime(5, 1 + 4.0 / 5, DataClass::L2, {}, DataSize::small).line() ==
        "globally well-posed; scatters");
  CHECK(classify_regime(5, 1 + 4.0 / 5, DataClass::L2, {}, DataSize::arbitrary).verdict == Verdict::outside);
  CHECK(classify_regime(4, 3.0, DataClass::H1, {}, DataSize::small).line() == "globally well-posed; scatters");
}

TEST_CASE("classifier is monotone in gamma") {
  auto rank = [](Verdict v) { return v == Verdict::global ? 2 : v == Verdict::local ? 1 : 0; };
  for (auto cls : {DataClass::L2, DataClass::H1})
    for (auto size : {DataSize::small, DataSize::arbitrary})
      for (RegimeFlags f : {RegimeFlags{}, RegimeFlags{true, true}}) {
        int prev = 3;
        for (int k = 1; k <= 400; ++k) {
          const int r = rank(classify_regime(4, 1.0 + k * 0.01, cls, f, size).verdict);
          CHECK(r <= prev);
          prev = r;
        }
      }
}

TEST_CASE("request format") {
  CHECK(classify_request("d=5 gamma=1.8 class=L2 size=small").line() == "globally well-posed; scatters");
  CHECK(classify_request("d=4 gamma=2.5 class=H1 size=arbitrary defocusing=1").verdict == Verdict::global);
  CHECK(classify_request("d=4 gamma=1.5 class=L2 size=arbitrary flags=gauge").verdict == Verdict::global);
  CHECK(classify_request("d=4 gamma=2.5 class=H1 size=arbitrary flags=gauge,defocusing").verdict ==
        Verdict::global);
  CHECK_THROWS_AS(classify_request("d=5 gamma=1.8 class=L2"), ConfigError);
  CHECK_THROWS_AS(classify_request("d=5 gamma=1.8 class=L3 size=small"), ConfigError);
  CHECK_THROWS_AS(classify_request("d=5 gamma=1.8 class=L2 size=small colour=red"), ConfigError);
  CHECK_THROWS_AS(classify_request("d=5 gamma=x class=L2 size=small"), ConfigError);
  CHECK_THROWS_AS(classify_request("d=5 gamma=0.5 class=L2 size=small"), DomainError);
}
