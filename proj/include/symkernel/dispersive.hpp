#pragma once

#include <functional>
#include <string>
#include <utility>

#include "symkernel/rootsys.hpp"

namespace symkernel {

// ---- Kunze-Stein functional ----

struct RadialFunction {
  std::function<double(const ChamberPoint&)> kappa;
  double support_radius = INFINITY;  // kappa vanishes for |x| > support_radius
};

// (int_{a+} delta(x) env(x) |kappa(x)|^{q/2} dx)^{2/q}, env the phi_0 envelope.
// q = inf returns sup |kappa|. +inf when the integral does not converge.
double kunze_stein_bound(const RootSystem& rs, const RadialFunction& kappa, double q);

// ---- dispersive exponents ----

struct ExponentPair {
  double small_time = 0.0;
  double large_time = 0.0;
};

// (max(1/2 - 1/q, 1/2 - 1/qt) d, D/2) for 2 < q, qt <= inf.
ExponentPair dispersive_exponents(int d, int D, double q, double q_tilde);

// ---- admissibility ----

struct AdmissiblePair {
  double inv_p = 0.0;  // 1/p, 0 for p = inf
  double inv_q = 0.0;  // 1/q
  int d = 3;

  static AdmissiblePair from_exponents(double p, double q, int d);
};

// (1/p,1/q) in (0,1/2] x (0,1/2) with 2/p + d/q >= d/2, or (1/p,1/q) = (0,1/2).
// d < 3 throws DomainError (unsupported dimension).
bool is_admissible(const AdmissiblePair& pair);

// ---- well-posedness classifier ----

enum class DataClass { L2, H1 };
enum class DataSize { small, arbitrary };
enum class Verdict { global, local, outside };
enum class Scattering { scatters, not_asserted };

struct RegimeFlags {
  bool gauge_invariant = false;
  bool defocusing = false;
};

struct RegimeReport {
  int d = 3;
  double gamma = 0.0;
  DataClass data_class = DataClass::L2;
  RegimeFlags flags;
  DataSize size = DataSize::small;
  Verdict verdict = Verdict::outside;
  Scattering scattering = Scattering::not_asserted;
  double threshold = 0.0;

  std::string line() const;  // "globally well-posed; scatters"
};

RegimeReport classify_regime(int d, double gamma, DataClass cls, RegimeFlags flags, DataSize size);

// Parses "d=5 gamma=1.8 class=L2 size=small [gauge=1] [defocusing=0] [flags=gauge,defocusing]".
RegimeReport classify_request(const std::string& request);

std::string to_string(Verdict v);
std::string to_string(Scattering s);

}  // namespace symkernel
