#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "symkernel/barycentric.hpp"
#include "symkernel/cli.hpp"
#include "symkernel/dispersive.hpp"
#include "symkernel/errors.hpp"
#include "symkernel/kernel.hpp"
#include "symkernel/plancherel.hpp"
#include "symkernel/rootsys.hpp"
#include "symkernel/simd/cis.hpp"
#include "symkernel/spherical.hpp"

namespace symkernel::cli {

namespace {

namespace fs = std::filesystem;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

class Csv {
 public:
  Csv(const fs::path& path, const std::vector<std::string>& header) : out_(path), path_(path) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    row(header);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
  }
  const fs::path& path() const { return path_; }

 private:
  std::ofstream out_;
  fs::path path_;
};

// Collects report lines and pass/fail assertions; written once at the end.
class Report {
 public:
  void line(const std::string& s) { lines_.push_back(s); }
  void kv(const std::string& k, const std::string& v) { line(k + ": " + v); }
  bool check(const std::string& what, bool ok) {
    line(std::string(ok ? "PASS " : "FAIL ") + what);
    all_ &= ok;
    return ok;
  }
  bool ok() const { return all_; }
  void write(const fs::path& dir, std::ostream& out) const {
    std::ofstream f(dir / "report.txt");
    for (const auto& l : lines_) {
      f << l << "\n";
      out << l << "\n";
    }
  }

 private:
  std::vector<std::string> lines_;
  bool all_ = true;
};

std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (int i = 0; i < v.size(); ++i) s += (i ? ", " : "") + short_num(v[i]);
  return s + ")";
}

RootSystem lookup(const std::string& label) {
  try {
    return root_system(label);
  } catch (const CatalogueError& e) {
    throw UsageError(e.what());
  }
}

// ---- rootinfo ----

void rootinfo(const RunConfig& cfg, const fs::path& dir, Report& rep) {
  const RootSystem rs = lookup(cfg.space);
  rep.kv("space", rs.label());
  rep.kv("rank", std::to_string(rs.rank()));
  rep.kv("d", std::to_string(rs.dimension()));
  rep.kv("D", std::to_string(rs.rank_one_dimension()));
  rep.kv("rho", vec_str(rs.rho()));
  rep.kv("weyl_order", std::to_string(rs.weyl_group().size()));
  Csv csv(dir / "roots.csv", {"index", "simple", "alpha_0", "alpha_1", "m_alpha", "m_2alpha"});
  const auto& pos = rs.positive_roots();
  for (std::size_t i = 0; i < pos.size(); ++i) {
    const bool simple = std::count(rs.simple_indices().begin(), rs.simple_indices().end(),
                                   static_cast<int>(i)) > 0;
    const Vec& a = pos[i].alpha;
    csv.row({std::to_string(i), simple ? "1" : "0", num(a[0]), a.size() > 1 ? num(a[1]) : "0",
             std::to_string(pos[i].m_alpha), std::to_string(pos[i].m_2alpha)});
  }
  rep.check("d matches catalogue value " + std::to_string(rs.declared_dimension()),
            rs.dimension() == rs.declared_dimension());
  rep.check("D matches catalogue value " + std::to_string(rs.declared_rank_one_dimension()),
            rs.rank_one_dimension() == rs.declared_rank_one_dimension());
}

// ---- density ----

void density_exp(const RunConfig& cfg, const fs::path& dir, Report& rep) {
  const RootSystem rs = lookup(cfg.space);
  const int l = rs.rank();
  const SlopeReport small = asymptotic_slope(rs, Regime::small, cfg.seed);
  const SlopeReport large = asymptotic_slope(rs, Regime::large, cfg.seed);
  rep.kv("space", rs.label());
  rep.kv("direction", vec_str(small.direction));
  Csv csv(dir / "density.csv", {"lambda_norm", "log_density"});
  const auto ts = geometric_grid(1e-3, 1e4, 12);
  for (double s : ts) csv.row({num(s), num(plancherel_density(rs, {small.direction * s}).log_magnitude)});
  const double ts_small = rs.rank_one_dimension() - l, ts_large = rs.dimension() - l;
  rep.kv("small slope", short_num(small.fit.slope) + " (target D-l = " + short_num(ts_small) + ")");
  rep.kv("large slope", short_num(large.fit.slope) + " (target d-l = " + short_num(ts_large) + ")");
  rep.check("small-|lambda| slope within 0.05", std::abs(small.fit.slope - ts_small) <= 0.05);
  rep.check("large-|lambda| slope within 0.05", std::abs(large.fit.slope - ts_large) <= 0.05);
}

// ---- partition ----

std::vector<Vec> random_directions(const RootSystem& rs, int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<Vec> out;
  out.reserve(n);
  if (rs.rank() == 1) {
    std::bernoulli_distribution coin;
    for (int i = 0; i < n; ++i) out.push_back(Vec{coin(gen) ? 1.0 : -1.0});
    return out;
  }
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  while (static_cast<int>(out.size()) < n) {
    const double th = angle(gen);
    const Vec u{std::cos(th), std::sin(th)};
    bool near_wall = false;
    for (const auto& r : rs.positive_roots())
      near_wall |= std::abs(dot(r.alpha, u)) / norm(r.alpha) < 1e-6;
    if (!near_wall) out.push_back(u);
  }
  return out;
}

void partition_exp(const RunConfig& cfg, const fs::path& dir, Report& rep) {
  const RootSystem rs = lookup(cfg.space);
  if (rs.rank() > 2) throw UsageError("partition: rank above two is not supported");
  const C1Choice choice = rs.rank() == 1 ? C1Choice{0.1, 2.0, 1.0, 0} : choose_C1(rs);
  const BarycentricPartition p(rs, choice.C1);
  rep.kv("space", rs.label());
  rep.kv("C1", num(choice.C1));
  rep.kv("C1 bisection steps", std::to_string(choice.bisection_steps));
  rep.kv("charts", std::to_string(p.chart_count()));

  double max_dev = 0.0, min_den = INFINITY;
  bool homogeneous = true;
  for (const Vec& u : random_directions(rs, cfg.samples, cfg.seed)) {
    const auto v = p.normalized_all(u);
    double s = 0.0;
    for (double x : v) s += x;
    max_dev = std::max(max_dev, std::abs(s - 1.0));
    min_den = std::min(min_den, p.denominator(u));
    const auto v2 = p.normalized_all(u * 4.0);
    homogeneous &= v == v2;
  }
  rep.kv("samples", std::to_string(cfg.samples));
  rep.kv("max |sum chi - 1|", num(max_dev));
  rep.kv("min denominator", num(min_den));
  rep.check("partition of unity within 1e-12", max_dev < 1e-12);
  rep.check("homogeneity under lambda -> 4 lambda", homogeneous);

  double kappa = INFINITY;
  for (int c = 0; c < p.chart_count(); ++c) {
    const SupportReport s = support_verify(p, c, std::max(100, std::min(cfg.samples, 4000)));
    kappa = std::min(kappa, s.kappa_min);
    std::string orth;
    for (int o : s.orthogonal) orth += " " + std::to_string(o);
    rep.kv("chart " + std::to_string(c), "w=" + std::to_string(s.chart / rs.rank()) +
                                            " kappa_min=" + short_num(s.kappa_min) +
                                            " orthogonal roots:" + (orth.empty() ? " none" : orth));
  }
  rep.check("support lemma kappa_min >= 0.05 on every chart", kappa >= 0.05);

  Csv csv(dir / "partition.csv", {"theta", "chart", "value"});
  for (const Vec& u : sphere_grid(rs, 360)) {
    const double th = rs.rank() == 1 ? (u[0] > 0 ? 0.0 : std::numbers::pi) : std::atan2(u[1], u[0]);
    const auto v = p.normalized_all(u);
    for (int c = 0; c < p.chart_count(); ++c) csv.row({num(th), std::to_string(c), num(v[c])});
  }
}

// ---- spherical ----

// Radial Laplacian for rank one: f'' + sum m a coth(a r) f' + m2 2a coth(2 a r) f'.
double radial_drift(const RootSystem& rs, double r) {
  double s = 0.0;
  for (const auto& root : rs.positive_roots()) {
    const double a = std::abs(root.alpha[0]);
    s += root.m_alpha * a / std::tanh(a * r);
    if (root.m_2alpha) s += root.m_2alpha * 2.0 * a / std::tanh(2.0 * a * r);
  }
  return s;
}

const char* twin_of(const std::string& label) {
  if (label == "H3") return "SL2C";
  if (label == "H2") return "SL2R";
  return nullptr;
}

void spherical_exp(const RunConfig& cfg, const fs::path& dir, Report& rep) {
  const RootSystem rs = lookup(cfg.space);
  if (rs.rank() != 1) throw UsageError("spherical: the oracle comparison needs a rank-one space");
  // Spaces without a matrix form are sampled through an isometric matrix twin.
  const char* twin = twin_of(rs.label());
  const RootSystem qs = rs.has_matrix_form() ? rs : twin ? lookup(twin) : rs;
  if (!qs.has_matrix_form()) throw UsageError("spherical: no K-quadrature for " + rs.label());
  const double scale = qs.positive_roots()[0].alpha[0] / rs.positive_roots()[0].alpha[0];
  const int nodes = std::max(16, cfg.nodes);
  rep.kv("space", rs.label());
  rep.kv("quadrature realization", qs.label());
  rep.kv("nodes per angle", std::to_string(nodes));

  Csv csv(dir / "spherical.csv",
          {"lambda", "r", "re_quadrature", "im_quadrature", "re_closed", "err_estimate", "phi0"});
  const double rho2 = dot(rs.rho(), rs.rho());
  int within = 0, total = 0;
  double worst_env = 0.0, worst_res = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double lam = 0.5 + 9.5 * i / 19.0;
    for (int k = 0; k < 20; ++k) {
      const double r = 0.1 + 4.9 * k / 19.0;
      const SphericalValue q =
          phi_quadrature(qs, {Vec{lam * scale}}, GroupPoint::exp_chamber(qs, Vec{r / scale}), nodes);
      const SphericalValue c = phi_closed_form(rs, {Vec{lam}}, r);
      const double p0 = phi0(rs, r);
      const double diff = std::abs(q.value - c.value);
      ++total;
      within += diff <= q.error + c.error + 1e-13;
      worst_env = std::max(worst_env, std::abs(c.value) / p0);
      const double h = 1e-4;
      auto f = [&](double rr) { return phi_closed_form(rs, {Vec{lam}}, rr).value.real(); };
      const double d1 = (f(r + h) - f(r - h)) / (2 * h);
      const double d2 = (f(r + h) - 2 * f(r) + f(r - h)) / (h * h);
      const double res = std::abs(d2 + radial_drift(rs, r) * d1 + (lam * lam + rho2) * f(r)) /
                         ((lam * lam + rho2) * p0);
      worst_res = std::max(worst_res, res);
      csv.row({num(lam), num(r), num(q.value.real()), num(q.value.imag()), num(c.value.real()),
               num(q.error), num(p0)});
    }
  }
  rep.kv("grid", "20 x 20, lambda in [0.5, 10], r in [0.1, 5]");
  rep.kv("within error estimate", std::to_string(within) + "/" + std::to_string(total));
  rep.kv("max |phi_lambda| / phi_0", num(worst_env));
  rep.kv("max eigenfunction residual", num(worst_res));
  rep.check("quadrature agrees with closed form within its error estimate", within == total);
  rep.check("|phi_lambda| <= 1.01 phi_0", worst_env <= 1.01);
  rep.check("eigenfunction residual < 1e-6", worst_res < 1e-6);
}

// ---- decay ----

void decay_exp(const RunConfig& cfg, const fs::path& dir, Report& rep) {
  const RootSystem rs = lookup(cfg.space);
  const Regime regime = cfg.regime == "small" ? Regime::small : Regime::large;
  DecayConfig dc = default_decay_config(rs, regime, cfg.slow);
  if (cfg.t_min > 0) dc.t_min = cfg.t_min;
  if (cfg.t_max > 0) dc.t_max = cfg.t_max;
  dc.per_decade = cfg.per_decade;
  dc.opt.gl_nodes = cfg.nodes;
  dc.opt.eta = cfg.eta;
  dc.eps0 = cfg.eps0;
  dc.lambda_max = cfg.lambda_max;
  dc.jobs = cfg.jobs;
  const DecayFit fit = decay_slope(rs, regime, dc);
  const double tol = rs.label() == "SL3R" && regime == Regime::large ? 0.2 : 0.1;

  Csv csv(dir / "decay.csv", {"space", "t", "x_norm", "re_value", "im_value", "abs_value",
                              "err_estimate", "epsilon", "lambda_max"});
  std::string excluded;
  double lmin = INFINITY, lmax = 0, emin = INFINITY, emax = 0;
  for (const auto& pt : fit.points) {
    const auto& s = pt.sample;
    csv.row({rs.label(), num(s.t), num(norm(s.x.x)), num(s.value.real()), num(s.value.imag()),
             num(std::abs(s.value)), num(s.error), num(s.epsilon), num(s.lambda_max)});
    if (pt.excluded) excluded += " " + short_num(s.t);
    lmin = std::min(lmin, s.lambda_max);
    lmax = std::max(lmax, s.lambda_max);
    emin = std::min(emin, s.epsilon);
    emax = std::max(emax, s.epsilon);
  }
  rep.kv("space", rs.label());
  rep.kv("regime", cfg.regime);
  rep.kv("method", fit.method);
  rep.kv("x", vec_str(dc.x.x));
  rep.kv("grid", "t in [" + short_num(dc.t_min) + ", " + short_num(dc.t_max) + "], " +
                     std::to_string(fit.times.size()) + " points, " + std::to_string(dc.per_decade) +
                     " per decade");
  rep.kv("eps schedule", "eps0 in [" + short_num(emin) + ", " + short_num(emax) +
                             "], Richardson over eps0, eps0/2, eps0/4" +
                             (cfg.eps0 > 0 ? "" : "; eps0 = eta min(|t|, 4t^2/|x|^2), eta = " +
                                                      short_num(dc.opt.eta)));
  rep.kv("lambda_max", "[" + short_num(lmin) + ", " + short_num(lmax) + "]" +
                           (cfg.lambda_max > 0 ? ""
                                               : "; sqrt(L/(eps0/4)), L = 36 + 12k until the tail "
                                                 "bound is below " + short_num(dc.opt.tail_rel) +
                                                     " |value|"));
  rep.kv("excluded points (err > 0.1 |value|)", excluded.empty() ? "none" : excluded);
  rep.kv("slope", num(fit.slope));
  rep.kv("slope stderr", num(fit.slope_stderr));
  rep.kv("target", num(fit.target) + " +- " + short_num(tol));
  rep.kv("simd backend", std::string(simd::backend_name(simd::active_backend())));
  rep.check("decay slope within tolerance", std::abs(fit.slope - fit.target) <= tol);
}

// ---- subordination ----

void subordination_exp(const RunConfig& cfg, const fs::path& dir, Report& rep) {
  std::mt19937_64 gen(cfg.seed);
  std::uniform_real_distribution<double> logt(std::log(0.1), std::log(10.0));
  std::uniform_real_distribution<double> mu_d(0.0, 5.0);
  std::bernoulli_distribution sign;
  Csv csv(dir / "subordination.csv",
          {"t", "mu", "s_max", "re_value", "im_value", "re_target", "im_target", "error"});
  double worst = 0.0;
  for (int i = 0; i < cfg.count; ++i) {
    const double t = (sign(gen) ? -1.0 : 1.0) * std::exp(logt(gen));
    const double mu = mu_d(gen);
    const SubordinationResult r = subordination_check(t, mu);
    worst = std::max(worst, r.error);
    csv.row({num(t), num(mu), num(r.s_max), num(r.value.real()), num(r.value.imag()),
             num(r.target.real()), num(r.target.imag()), num(r.error)});
  }
  rep.kv("pairs", std::to_string(cfg.count) + " with |t| in [0.1, 10] (log-uniform, random sign), mu in [0, 5]");
  rep.kv("max error", num(worst));
  rep.check("subordination identity within 1e-6", worst < 1e-6);
}

// ---- kunzestein ----

void kunzestein_exp(const RunConfig& cfg, const fs::path& dir, Report& rep) {
  const RootSystem rs = lookup(cfg.space);
  if (!(cfg.radius > 0)) throw UsageError("kunzestein: radius must be positive");
  const double R = cfg.radius;
  const RadialFunction ball{[R](const ChamberPoint& x) { return norm(x.x) <= R ? 1.0 : 0.0; }, R};
  rep.kv("space", rs.label());
  rep.kv("kappa", "indicator of the ball of radius " + short_num(R));
  Csv csv(dir / "kunzestein.csv", {"q", "bound"});
  const double qs[] = {2.0, 3.0, 4.0, 6.0, 8.0, 16.0, INFINITY};
  for (double q : qs) csv.row({std::isinf(q) ? "inf" : num(q), num(kunze_stein_bound(rs, ball, q))});
  double value = 0.0;
  try {
    value = kunze_stein_bound(rs, ball, cfg.q);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  rep.kv("q", std::isinf(cfg.q) ? "inf" : short_num(cfg.q));
  rep.kv("bound", num(value));
  rep.check("bound is finite and positive", std::isfinite(value) && value > 0);
  rep.check("q = inf returns sup |kappa| = 1", kunze_stein_bound(rs, ball, INFINITY) == 1.0);
}

// ---- admissible ----

void admissible_exp(const RunConfig& cfg, const fs::path& dir, Report& rep) {
  const int d = cfg.d > 0 ? cfg.d : lookup(cfg.space).dimension();
  if (d < 3) throw UsageError("admissible: the admissible triangle is drawn for d >= 3 only");
  rep.kv("d", std::to_string(d));
  Csv csv(dir / "admissible.csv", {"inv_p", "inv_q", "admissible"});
  int disagreements = 0;
  for (int i = 0; i <= 200; ++i)
    for (int j = 0; j <= 200; ++j) {
      AdmissiblePair pr{i / 400.0, j / 400.0, d};
      const bool a = is_admissible(pr);
      // independent integer form: 2i + d j >= 200 d on the open/closed box, plus (0, 1/2)
      const bool b = (i > 0 && j > 0 && j < 200 && 2 * i + d * j >= 200 * d) || (i == 0 && j == 200);
      disagreements += a != b;
      csv.row({num(pr.inv_p), num(pr.inv_q), a ? "1" : "0"});
    }
  rep.kv("grid disagreements with integer rule", std::to_string(disagreements));
  rep.check("admissibility grid consistent", disagreements == 0);
  if (cfg.p_exp != 0.0 && cfg.q_exp != 0.0) {
    const auto pr = AdmissiblePair::from_exponents(cfg.p_exp, cfg.q_exp, d);
    rep.kv("pair (p, q) = (" + short_num(cfg.p_exp) + ", " + short_num(cfg.q_exp) + ")",
           is_admissible(pr) ? "admissible" : "not admissible");
  }
  const RootSystem rs = lookup(cfg.space);
  if (rs.dimension() == d && cfg.q > 2.0) {
    const auto e = dispersive_exponents(d, rs.rank_one_dimension(), cfg.q, cfg.q);
    rep.kv("dispersive exponents at q = q~ = " + short_num(cfg.q),
           "small " + short_num(e.small_time) + ", large " + short_num(e.large_time));
  }
}

// ---- classify ----

void classify_exp(const RunConfig& cfg, const fs::path&, Report& rep) {
  std::string request;
  for (const auto& a : cfg.args) request += (request.empty() ? "" : " ") + a;
  RegimeReport r;
  try {
    r = classify_request(request);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  rep.kv("request", request);
  rep.kv("threshold", num(r.threshold));
  rep.line(r.line());
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out) {
  if (cfg.experiment == "plot") {
    if (cfg.args.empty()) throw UsageError("plot: missing CSV path");
    for (const auto& p : emit_plots(cfg.args[0])) out << "wrote " << p << "\n";
    return 0;
  }
  using Fn = void (*)(const RunConfig&, const fs::path&, Report&);
  static const std::map<std::string, Fn> table = {
      {"rootinfo", rootinfo},       {"density", density_exp},
      {"partition", partition_exp}, {"spherical", spherical_exp},
      {"decay", decay_exp},         {"subordination", subordination_exp},
      {"kunzestein", kunzestein_exp}, {"admissible", admissible_exp},
      {"classify", classify_exp}};
  const auto it = table.find(cfg.experiment);
  if (it == table.end()) throw UsageError("unknown experiment " + cfg.experiment);
  const fs::path dir = fs::path(cfg.out) / cfg.experiment;
  fs::create_directories(dir);
  Report rep;
  rep.kv("experiment", cfg.experiment);
  rep.kv("seed", std::to_string(cfg.seed));
  it->second(cfg, dir, rep);
  rep.line(rep.ok() ? "status: PASS" : "status: FAIL");
  rep.write(dir, out);
  return rep.ok() ? 0 : 1;
}

}  // namespace symkernel::cli
