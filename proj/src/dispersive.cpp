#include "symkernel/dispersive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "symkernel/errors.hpp"
#include "symkernel/quadrature.hpp"

namespace symkernel {

namespace {

struct ChamberRule {
  std::vector<Vec> x;
  std::vector<double> w;
};

// Product rule on the part of the positive chamber with r0 <= |x| <= r1.
ChamberRule chamber_shell(const RootSystem& rs, double r0, double r1) {
  ChamberRule out;
  const Rule rad = composite_gl(32, 16, r0, r1);
  if (rs.rank() == 1) {
    // the positive chamber is the half-line along +alpha
    const double sgn = rs.positive_roots()[0].alpha[0] > 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < rad.size(); ++i) {
      out.x.push_back(Vec{sgn * rad.x[i]});
      out.w.push_back(rad.w[i]);
    }
    return out;
  }
  if (rs.rank() != 2) throw UnsupportedSpace(rs.label() + ": chamber rule for rank above two");
  const auto& L = rs.fundamental_weights();
  double a = std::atan2(L[0][1], L[0][0]);
  double b = std::atan2(L[1][1], L[1][0]);
  if (b < a) std::swap(a, b);
  if (b - a > std::numbers::pi) {
    std::swap(a, b);
    b += 2.0 * std::numbers::pi;
  }
  const Rule ang = composite_gl(8, 16, a, b);
  for (std::size_t i = 0; i < rad.size(); ++i)
    for (std::size_t k = 0; k < ang.size(); ++k) {
      out.x.push_back(Vec{rad.x[i] * std::cos(ang.x[k]), rad.x[i] * std::sin(ang.x[k])});
      out.w.push_back(rad.w[i] * rad.x[i] * ang.w[k]);
    }
  return out;
}

// log(delta * envelope) on the closed chamber, -inf on walls.
double log_weight(const RootSystem& rs, const Vec& x) {
  double lenv = -dot(rs.rho(), x);
  for (const auto& r : rs.positive_roots()) lenv += std::log1p(std::max(0.0, dot(r.alpha, x)));
  return log_cartan_density(rs, ChamberPoint{x}) + lenv;
}

double shell_integral(const RootSystem& rs, const RadialFunction& k, double q, double r0, double r1) {
  const ChamberRule cr = chamber_shell(rs, r0, r1);
  double s = 0.0;
  for (std::size_t i = 0; i < cr.x.size(); ++i) {
    if (!in_closed_chamber(rs, cr.x[i], 1e-12)) continue;
    const double kv = std::abs(k.kappa(ChamberPoint{cr.x[i]}));
    if (kv == 0.0) continue;
    const double lw = log_weight(rs, cr.x[i]);
    if (lw == -INFINITY) continue;
    s += cr.w[i] * std::exp(lw + 0.5 * q * std::log(kv));
  }
  return s;
}

}  // namespace

double kunze_stein_bound(const RootSystem& rs, const RadialFunction& k, double q) {
  if (!(q >= 2.0)) throw DomainError("kunze_stein_bound: q must be at least 2");
  if (!k.kappa) throw ConfigError("kunze_stein_bound: missing function");
  const bool bounded = std::isfinite(k.support_radius);
  if (bounded && k.support_radius < 0.0) throw ConfigError("kunze_stein_bound: negative support radius");
  if (std::isinf(q)) {
    double sup = 0.0;
    const double R = bounded ? k.support_radius : 64.0;
    const ChamberRule cr = chamber_shell(rs, 0.0, R);
    for (const Vec& x : cr.x) sup = std::max(sup, std::abs(k.kappa(ChamberPoint{x})));
    sup = std::max(sup, std::abs(k.kappa(ChamberPoint{Vec(rs.rank())})));
    return sup;
  }
  double total = 0.0;
  if (bounded) {
    // split at 1 so the near-origin behaviour of delta is resolved separately
    const double R = k.support_radius;
    if (R > 0.0) {
      const double cut = std::min(1.0, R);
      total = shell_integral(rs, k, q, 0.0, cut);
      for (double lo = cut; lo < R; lo *= 2.0) total += shell_integral(rs, k, q, lo, std::min(R, 2.0 * lo));
    }
  } else {
    total = shell_integral(rs, k, q, 0.0, 1.0);
    bool converged = false;
    for (double lo = 1.0; lo < 1024.0; lo *= 2.0) {
      const double shell = shell_integral(rs, k, q, lo, 2.0 * lo);
      if (!std::isfinite(shell)) return INFINITY;
      total += shell;
      if (shell <= 1e-14 * total) {
        converged = true;
        break;
      }
    }
    if (!converged) return INFINITY;
  }
  if (!std::isfinite(total)) return INFINITY;
  return std::pow(total, 2.0 / q);
}

ExponentPair dispersive_exponents(int d, int D, double q, double q_tilde) {
  if (!(q > 2.0) || !(q_tilde > 2.0)) throw DomainError("dispersive_exponents: need 2 < q, q~ <= inf");
  if (d < 1 || D < 1) throw DomainError("dispersive_exponents: dimensions must be positive");
  auto inv = [](double x) { return std::isinf(x) ? 0.0 : 1.0 / x; };
  return {std::max(0.5 - inv(q), 0.5 - inv(q_tilde)) * d, 0.5 * D};
}

AdmissiblePair AdmissiblePair::from_exponents(double p, double q, int d) {
  if (!(p >= 2.0) || !(q >= 2.0)) throw DomainError("AdmissiblePair: exponents must lie in [2, inf]");
  return {std::isinf(p) ? 0.0 : 1.0 / p, std::isinf(q) ? 0.0 : 1.0 / q, d};
}

bool is_admissible(const AdmissiblePair& pr) {
  if (pr.d < 3) throw DomainError("is_admissible: unsupported dimension d = " + std::to_string(pr.d));
  if (pr.inv_p == 0.0 && pr.inv_q == 0.5) return true;
  if (!(pr.inv_p > 0.0 && pr.inv_p <= 0.5)) return false;
  if (!(pr.inv_q > 0.0 && pr.inv_q < 0.5)) return false;
  // boundary points of a rational grid must survive rounding of 1/p and 1/q
  return 2.0 * pr.inv_p + pr.d * pr.inv_q >= 0.5 * pr.d - 1e-12;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::global: return "globally well-posed";
    case Verdict::local: return "locally well-posed";
    default: return "outside stated range";
  }
}

std::string to_string(Scattering s) {
  return s == Scattering::scatters ? "scatters" : "scattering not asserted";
}

std::string RegimeReport::line() const { return to_string(verdict) + "; " + to_string(scattering); }

RegimeReport classify_regime(int d, double gamma, DataClass cls, RegimeFlags flags, DataSize size) {
  if (!(gamma > 1.0)) throw DomainError("classify_regime: gamma must exceed 1");
  if (d < 1) throw DomainError("classify_regime: dimension must be positive");
  if (cls == DataClass::H1 && d < 3) throw DomainError("classify_regime: H1 thresholds need d >= 3");
  RegimeReport r;
  r.d = d;
  r.gamma = gamma;
  r.data_class = cls;
  r.flags = flags;
  r.size = size;
  r.threshold = cls == DataClass::L2 ? 1.0 + 4.0 / d : 1.0 + 4.0 / (d - 2);
  // gamma within rounding of the threshold counts as the threshold itself
  const bool at = std::abs(gamma - r.threshold) <= 1e-12 * r.threshold;
  const bool le = at || gamma < r.threshold;
  const bool lt = !at && gamma < r.threshold;
  if (size == DataSize::small) {
    if (le) {
      r.verdict = Verdict::global;
      r.scattering = Scattering::scatters;
    }
    return r;
  }
  if (lt) {
    const bool upgrade = cls == DataClass::L2 ? flags.gauge_invariant : flags.defocusing;
    r.verdict = upgrade ? Verdict::global : Verdict::local;
  }
  return r;
}

RegimeReport classify_request(const std::string& request) {
  std::istringstream in(request);
  std::map<std::string, std::string> kv;
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("classify: malformed token '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  auto need = [&](const std::string& k) {
    auto it = kv.find(k);
    if (it == kv.end()) throw ConfigError("classify: missing key '" + k + "'");
    return it->second;
  };
  auto flag = [&](const std::string& k) {
    auto it = kv.find(k);
    if (it == kv.end()) return false;
    const auto& v = it->second;
    if (v == "1" || v == "true" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "no") return false;
    throw ConfigError("classify: bad boolean for '" + k + "'");
  };
  for (const auto& [k, v] : kv)
    if (k != "d" && k != "gamma" && k != "class" && k != "size" && k != "gauge" && k != "defocusing" &&
        k != "flags")
      throw ConfigError("classify: unknown key '" + k + "'");
  RegimeFlags flags{flag("gauge"), flag("defocusing")};
  // flags=gauge,defocusing is shorthand for the two booleans
  if (auto it = kv.find("flags"); it != kv.end()) {
    std::istringstream fl(it->second);
    std::string f;
    while (std::getline(fl, f, ',')) {
      if (f == "gauge")
        flags.gauge_invariant = true;
      else if (f == "defocusing")
        flags.defocusing = true;
      else if (f != "none" && !f.empty())
        throw ConfigError("classify: unknown flag '" + f + "'");
    }
  }
  int d = 0;
  double gamma = 0.0;
  try {
    d = std::stoi(need("d"));
    gamma = std::stod(need("gamma"));
  } catch (const std::logic_error&) {
    throw ConfigError("classify: d and gamma must be numbers");
  }
  const std::string cls = need("class"), size = need("size");
  if (cls != "L2" && cls != "H1") throw ConfigError("classify: class must be L2 or H1");
  if (size != "small" && size != "arbitrary") throw ConfigError("classify: size must be small or arbitrary");
  return classify_regime(d, gamma, cls == "L2" ? DataClass::L2 : DataClass::H1,
                         flags,
                         size == "small" ? DataSize::small : DataSize::arbitrary);
}

}  // namespace symkernel
