// experiments.hpp
// Deterministic experiment harness: scenario configs (JSON file or built-in
// defaults), scenario runners emitting CSV plus a plain-text summary, and
// the exit-code contract of the command-line tool.

#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "isowell/compression.hpp"
#include "isowell/discrimination.hpp"

namespace isowell {

// Config file problems: parse errors, unknown keys, out-of-range values.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exit codes of the CLI and of run_scenario.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;      // invalid config
inline constexpr int kExitInfeasible = 3;  // infeasible physics
inline constexpr int kExitSolver = 4;      // solver or invariant failure

enum class Scenario { Example1, Spread, EpsilonScan, CostGrid, GeneralPair };

std::string scenario_name(Scenario scenario);
Scenario scenario_from_name(const std::string& name);  // throws ConfigError

// The width that collapses (|1> + |2>)/sqrt(2) onto the new ground level:
// sqrt(2/5) of the original width.
inline const double kCollapseWidth = 0.63245553203367588;  // sqrt(2/5)

struct GridSpec {
  double start = 0;
  double stop = 0;
  double step = 0;
};

struct ExperimentConfig {
  Scenario scenario = Scenario::Example1;
  std::string output_path;  // default: "<scenario>.csv"

  double new_width = kCollapseWidth;
  double tol = kDefaultConstraintTol;
  double xi = 0.5;
  int high_level = 100;                             // N
  std::vector<int> levels = {50, 100, 200, 400, 800};  // epsilon-scan N grid
  int max_output_levels = 12;                       // spread weight rows
  double alpha = 0.6;
  GridSpec xi_grid{0.01, 0.99, 0.01};
  GridSpec eps_grid{0.0, 0.5, 0.01};
  double overlap_before = 0.5;  // cost-grid pre-compression overlap
};

ExperimentConfig default_config(Scenario scenario);

// Loads and strictly validates a JSON config. Unknown keys are errors at
// every nesting level; the "scenario" key selects the allowed key set.
ExperimentConfig load_config(const std::string& path);

// Range checks shared by load_config and run_scenario.
void validate_config(const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// Scenario runners. Each computes its rows, re-validates energy conservation
// and normalization before writing, writes CSV to config.output_path, and
// prints a summary to `summary` when non-null. Errors are thrown
// (ConfigError / InfeasibleError / SolverError).

struct Example1Result {
  double initial_energy;
  double min_width;
  double final_energy;
  CompressedState state;
};
Example1Result run_example1(const ExperimentConfig& config,
                            std::ostream* summary);

struct SpreadResult {
  double target_moment;
  double epsilon;
  double entropy;
  CompressedState state;
};
SpreadResult run_spread(const ExperimentConfig& config, std::ostream* summary);

struct ScanRow {
  int level;  // N
  double epsilon;
  double cost_after;
  double cost_delta;
  double beta;
  int cutoff_used;
};
struct EpsilonScanResult {
  double overlap_before;
  std::vector<ScanRow> rows;
  std::optional<double> slope;  // log-log slope; omitted for single points
};
EpsilonScanResult run_epsilon_scan(const ExperimentConfig& config,
                                   std::ostream* summary);

struct CostGridRow {
  double xi;
  double epsilon;
  double cost_before;
  double cost_after;
  double cost_delta;
};
struct CostGridResult {
  std::vector<CostGridRow> rows;
  double min_delta_eps_le_half;
  double min_delta_overall;
};
CostGridResult run_cost_grid(const ExperimentConfig& config,
                             std::ostream* summary);

struct GeneralPairResult {
  CostReport report;
};
GeneralPairResult run_general_pair(const ExperimentConfig& config,
                                   std::ostream* summary);

// Dispatches on config.scenario and maps exceptions to exit codes; error
// text goes to `err`.
int run_scenario(const ExperimentConfig& config, std::ostream* summary,
                 std::ostream& err);

// Least-squares slope of log(y) against log(x). Requires at least two
// points and positive values.
double fit_loglog_slope(const std::vector<double>& xs,
                        const std::vector<double>& ys);

}  // namespace isowell
