#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "symkernel/cli.hpp"

namespace symkernel::cli {

namespace {

const char* const kSubcommands[] = {"rootinfo",     "density",    "partition",  "spherical", "decay",
                                    "subordination", "kunzestein", "admissible", "classify",  "plot"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  std::istringstream in(v);
  T out{};
  in >> out;
  if (in.fail() || !in.eof()) throw UsageError("config: bad value for " + key + ": " + v);
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw UsageError("config: bad boolean for " + key + ": " + v);
}

// Flat key=value file; '#' starts a comment.
void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot open " + path);
  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"experiment", [&](auto&, auto& v) { cfg.experiment = v; }},
      {"space", [&](auto&, auto& v) { cfg.space = v; }},
      {"out", [&](auto&, auto& v) { cfg.out = v; }},
      {"seed", [&](auto& k, auto& v) { cfg.seed = parse_number<std::uint64_t>(k, v); }},
      {"jobs", [&](auto& k, auto& v) { cfg.jobs = parse_number<int>(k, v); }},
      {"slow", [&](auto& k, auto& v) { cfg.slow = parse_bool(k, v); }},
      {"regime", [&](auto&, auto& v) { cfg.regime = v; }},
      {"t_min", [&](auto& k, auto& v) { cfg.t_min = parse_number<double>(k, v); }},
      {"t_max", [&](auto& k, auto& v) { cfg.t_max = parse_number<double>(k, v); }},
      {"per_decade", [&](auto& k, auto& v) { cfg.per_decade = parse_number<int>(k, v); }},
      {"nodes", [&](auto& k, auto& v) { cfg.nodes = parse_number<int>(k, v); }},
      {"eps0", [&](auto& k, auto& v) { cfg.eps0 = parse_number<double>(k, v); }},
      {"lambda_max", [&](auto& k, auto& v) { cfg.lambda_max = parse_number<double>(k, v); }},
      {"eta", [&](auto& k, auto& v) { cfg.eta = parse_number<double>(k, v); }},
      {"samples", [&](auto& k, auto& v) { cfg.samples = parse_number<int>(k, v); }},
      {"count", [&](auto& k, auto& v) { cfg.count = parse_number<int>(k, v); }},
      {"q", [&](auto& k, auto& v) { cfg.q = parse_number<double>(k, v); }},
      {"radius", [&](auto& k, auto& v) { cfg.radius = parse_number<double>(k, v); }},
      {"p_exp", [&](auto& k, auto& v) { cfg.p_exp = parse_number<double>(k, v); }},
      {"q_exp", [&](auto& k, auto& v) { cfg.q_exp = parse_number<double>(k, v); }},
      {"d", [&](auto& k, auto& v) { cfg.d = parse_number<int>(k, v); }},
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config: line " + std::to_string(lineno) + " is not key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw UsageError("config: unknown key " + key);
    it->second(key, value);
  }
}

double parse_extended(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Inf") return INFINITY;
  return parse_number<double>("exponent", s);
}

}  // namespace

bool parse_args(int argc, const char* const* argv, RunConfig& cfg, std::ostream& out) {
  // The config file is applied first so that flags given on the command line win.
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) {
      load_config_file(argv[i + 1], cfg);
    } else if (a.rfind("--config=", 0) == 0) {
      load_config_file(a.substr(9), cfg);
    }
  }

  CLI::App app{"Spherical analysis and Schrodinger kernel experiments on symmetric spaces",
               "symkernel"};
  app.require_subcommand(0, 1);
  std::string config_path, p_str, q_str, q_exp_str;
  app.add_option("--config", config_path, "key=value file; flags override it");
  app.add_option("--space", cfg.space, "catalogue label (H2..H6, SL2R, SL2C, SL3R)");
  app.add_option("--out", cfg.out, "output directory (SYMKERNEL_OUT overrides)");
  app.add_option("--seed", cfg.seed, "seed for random sampling");
  app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--slow", cfg.slow, "allow the SL3R full kernel");

  std::map<std::string, CLI::App*> subs;
  for (const char* name : kSubcommands) subs[name] = app.add_subcommand(name)->fallthrough();
  subs["rootinfo"]->description("root data, dimensions and Weyl group");
  subs["density"]->description("Plancherel density profile and asymptotic slopes");
  subs["partition"]->description("barycentric partition of unity and support lemma");
  subs["partition"]->add_option("--samples", cfg.samples, "random directions")->check(CLI::PositiveNumber);
  subs["spherical"]->description("spherical functions: quadrature against closed forms");
  subs["spherical"]->add_option("--nodes", cfg.nodes, "K-quadrature nodes per angle");
  auto* decay = subs["decay"];
  decay->description("Schrodinger kernel decay slope");
  decay->add_option("--regime", cfg.regime, "small or large")->check(CLI::IsMember({"small", "large"}));
  decay->add_option("--t-min", cfg.t_min, "first time (0: default window)");
  decay->add_option("--t-max", cfg.t_max, "last time (0: default window)");
  decay->add_option("--per-decade", cfg.per_decade, "grid points per decade");
  decay->add_option("--nodes", cfg.nodes, "Gauss nodes per radial panel");
  decay->add_option("--eps0", cfg.eps0, "fixed damping (0: automatic)");
  decay->add_option("--lambda-max", cfg.lambda_max, "fixed cutoff (0: automatic)");
  decay->add_option("--eta", cfg.eta, "eps0 = eta * min(|t|, 4t^2/|x|^2)");
  subs["subordination"]->description("subordination identity at random (t, mu)");
  subs["subordination"]->add_option("--count", cfg.count, "number of random pairs")->check(CLI::PositiveNumber);
  subs["kunzestein"]->description("Kunze-Stein functional of a ball indicator");
  subs["kunzestein"]->add_option("--q", q_str, "exponent q >= 2 or inf");
  subs["kunzestein"]->add_option("--radius", cfg.radius, "support radius of the indicator");
  subs["admissible"]->description("Strichartz admissibility region");
  subs["admissible"]->add_option("--d", cfg.d, "dimension (0: from --space)");
  subs["admissible"]->add_option("--p", p_str, "time exponent p (inf allowed)");
  subs["admissible"]->add_option("--q", q_exp_str, "space exponent q (inf allowed)");
  subs["classify"]->description("NLS well-posedness verdict from key=value tokens");
  subs["classify"]->add_option("request", cfg.args, "tokens such as d=5 gamma=1.8 class=L2 size=small");
  subs["plot"]->description("render SVG figures from a CSV written by another subcommand");
  subs["plot"]->add_option("csv", cfg.args, "input CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return false;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return false;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (const auto& [name, sub] : subs)
    if (sub->parsed()) cfg.experiment = name;
  if (cfg.experiment.empty()) throw UsageError("no subcommand given (try --help)");
  if (!q_str.empty()) cfg.q = parse_extended(q_str);
  if (!p_str.empty()) cfg.p_exp = parse_extended(p_str);
  if (!q_exp_str.empty()) cfg.q_exp = parse_extended(q_exp_str);
  if (const char* env = std::getenv("SYMKERNEL_OUT"); env && *env) cfg.out = env;
  if (cfg.jobs < 1 || cfg.per_decade < 1 || cfg.nodes < 1 || cfg.samples < 1 || cfg.count < 1)
    throw UsageError("grids and budgets must be positive");
  return true;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    if (!parse_args(argc, argv, cfg, out)) return 0;
    return run(cfg, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace symkernel::cli
