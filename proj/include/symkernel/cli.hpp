#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace symkernel::cli {

// Bad command line, unknown subcommand or label, or CSV not matching a schema.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string experiment;
  std::string space = "H3";
  std::string out = "symkernel-out";
  std::uint64_t seed = 1;
  int jobs = 1;
  bool slow = false;

  // time grid (0 selects the per-space default)
  std::string regime = "large";
  double t_min = 0.0;
  double t_max = 0.0;
  int per_decade = 12;
  // quadrature budget
  int nodes = 32;
  double eps0 = 0.0;
  double lambda_max = 0.0;
  double eta = 0.05;

  int samples = 10000;  // partition
  int count = 20;       // subordination
  double q = 4.0;       // kunzestein
  double radius = 1.0;  // kunzestein indicator support
  double p_exp = 0.0;   // admissible
  double q_exp = 0.0;
  int d = 0;
  std::vector<std::string> args;  // classify tokens, plot CSV path
};

// Parses argv (with optional --config file of key=value lines; flags override it).
// Throws UsageError; returns false if only help was printed.
bool parse_args(int argc, const char* const* argv, RunConfig& cfg, std::ostream& out);

// Runs the experiment. Exit status: 0 all assertions pass, 1 assertion failure,
// 2 usage error.
int run(const RunConfig& cfg, std::ostream& out);

// Main entry used by the binary.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Writes SVG figures derived from a CSV produced by `run`; returns written paths.
std::vector<std::string> emit_plots(const std::string& csv_path);

// Minimal CSV table used by plot and tests.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int column(const std::string& name) const;  // throws UsageError naming the column
};
CsvTable read_csv(const std::string& path);

}  // namespace symkernel::cli
