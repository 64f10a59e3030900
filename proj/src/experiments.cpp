#include "isowell/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <string_view>

#include "json.hpp"

#include "isowell/csv.hpp"

namespace isowell {

namespace {

using nlohmann::json;

constexpr std::string_view kScenarioNames[] = {
    "example1", "spread", "epsilon-scan", "cost-grid", "general-pair"};

std::string default_output_path(Scenario scenario) {
  std::string name = scenario_name(scenario);
  std::replace(name.begin(), name.end(), '-', '_');
  return name + ".csv";
}

CsvWriter open_csv(const std::string& path) {
  try {
    return CsvWriter(path);
  } catch (const std::runtime_error& e) {
    throw ConfigError(e.what());
  }
}

std::string bool_field(bool v) { return v ? "true" : "false"; }

// Grid points start, start+step, ... while not beyond stop (1e-9 slack
// absorbs accumulated round-off without adding phantom points).
std::vector<double> expand_grid(const GridSpec& grid) {
  std::vector<double> points;
  for (int i = 0;; ++i) {
    const double v = grid.start + static_cast<double>(i) * grid.step;
    if (v > grid.stop + 1e-9) break;
    points.push_back(v);
  }
  return points;
}

double compressed_energy(const CompressedState& cstate) {
  const double w = cstate.well.width;
  return mean_nsq(cstate.weights) / (w * w);
}

// Rows derived from a compression are only emitted once the constraints
// they encode have been re-checked against the input state.
void revalidate(const StateVector& before, const CompressedState& after) {
  double norm = 0.0;
  for (double p : after.weights.values()) norm += p;
  if (std::abs(norm - 1.0) > kNormTol) {
    throw SolverError("normalization lost in compression: sum = " +
                      format_g17(norm));
  }
  const double e0 = state_energy(before);
  const double e1 = compressed_energy(after);
  if (std::abs(e1 - e0) > 1e-9 * e0) {
    throw SolverError("energy conservation violated: " + format_g17(e0) +
                      " -> " + format_g17(e1));
  }
}

// --- config file parsing ----------------------------------------------------

double as_number(const json& value, const std::string& key) {
  if (!value.is_number()) {
    throw ConfigError("key '" + key + "' must be a number");
  }
  return value.get<double>();
}

int as_integer(const json& value, const std::string& key) {
  if (!value.is_number_integer()) {
    throw ConfigError("key '" + key + "' must be an integer");
  }
  return value.get<int>();
}

std::string as_string(const json& value, const std::string& key) {
  if (!value.is_string()) {
    throw ConfigError("key '" + key + "' must be a string");
  }
  return value.get<std::string>();
}

GridSpec as_grid(const json& value, const std::string& key) {
  if (!value.is_object()) {
    throw ConfigError("key '" + key +
                      "' must be an object with start/stop/step");
  }
  for (const auto& [k, v] : value.items()) {
    if (k != "start" && k != "stop" && k != "step") {
      throw ConfigError("unknown key '" + key + "." + k + "'");
    }
  }
  GridSpec grid;
  if (!value.contains("start") || !value.contains("stop") ||
      !value.contains("step")) {
    throw ConfigError("key '" + key + "' needs start, stop and step");
  }
  grid.start = as_number(value["start"], key + ".start");
  grid.stop = as_number(value["stop"], key + ".stop");
  grid.step = as_number(value["step"], key + ".step");
  return grid;
}

std::vector<int> as_level_list(const json& value, const std::string& key) {
  if (!value.is_array() || value.empty()) {
    throw ConfigError("key '" + key + "' must be a non-empty array");
  }
  std::vector<int> levels;
  for (const auto& item : value) {
    levels.push_back(as_integer(item, key + "[]"));
  }
  return levels;
}

std::vector<std::string> allowed_keys(Scenario scenario) {
  std::vector<std::string> keys = {"scenario", "out", "tol"};
  switch (scenario) {
    case Scenario::Example1:
      keys.insert(keys.end(), {"new_width"});
      break;
    case Scenario::Spread:
      keys.insert(keys.end(), {"new_width", "high_level", "max_output_levels"});
      break;
    case Scenario::EpsilonScan:
      keys.insert(keys.end(), {"new_width", "xi", "levels"});
      break;
    case Scenario::CostGrid:
      keys.insert(keys.end(), {"xi_grid", "eps_grid", "overlap_before"});
      break;
    case Scenario::GeneralPair:
      keys.insert(keys.end(), {"new_width", "xi", "alpha", "high_level"});
      break;
  }
  return keys;
}

void check_grid(const GridSpec& grid, const std::string& name, double lo,
                bool lo_open, double hi, bool hi_open) {
  const bool lo_ok = lo_open ? grid.start > lo : grid.start >= lo;
  const bool hi_ok = hi_open ? grid.stop < hi : grid.stop <= hi;
  if (!std::isfinite(grid.start) || !std::isfinite(grid.stop) || !lo_ok ||
      !hi_ok || grid.start > grid.stop) {
    throw ConfigError(name + " bounds out of range");
  }
  if (!(grid.step > 0.0) || !std::isfinite(grid.step)) {
    throw ConfigError(name + " step must be positive");
  }
}

}  // namespace

std::string scenario_name(Scenario scenario) {
  return std::string(kScenarioNames[static_cast<int>(scenario)]);
}

Scenario scenario_from_name(const std::string& name) {
  for (size_t i = 0; i < std::size(kScenarioNames); ++i) {
    if (name == kScenarioNames[i]) return static_cast<Scenario>(i);
  }
  throw ConfigError("unknown scenario '" + name + "'");
}

ExperimentConfig default_config(Scenario scenario) {
  ExperimentConfig config;
  config.scenario = scenario;
  config.output_path = default_output_path(scenario);
  return config;
}

void validate_config(const ExperimentConfig& config) {
  if (config.output_path.empty()) {
    throw ConfigError("output path must not be empty");
  }
  if (!(config.tol > 0.0) || config.tol > 1e-3) {
    throw ConfigError("tol must lie in (0, 1e-3]");
  }
  if (!std::isfinite(config.new_width) || config.new_width <= 0.0) {
    throw ConfigError("new_width must be positive");
  }
  if (!(config.xi > 0.0) || !(config.xi < 1.0)) {
    throw ConfigError("xi must lie strictly inside (0, 1)");
  }
  if (config.high_level < 3) {
    throw ConfigError("high_level must be >= 3");
  }
  if (config.levels.empty()) {
    throw ConfigError("levels must be non-empty");
  }
  for (int n : config.levels) {
    if (n < 3) throw ConfigError("every scan level must be >= 3");
  }
  if (config.max_output_levels < 1) {
    throw ConfigError("max_output_levels must be >= 1");
  }
  if (!std::isfinite(config.alpha) || config.alpha < 0.0 ||
      config.alpha > 1.0) {
    throw ConfigError("alpha must lie in [0, 1]");
  }
  check_grid(config.xi_grid, "xi_grid", 0.0, true, 1.0, true);
  check_grid(config.eps_grid, "eps_grid", 0.0, false, 1.0, false);
  if (config.overlap_before < 0.0 || config.overlap_before > 1.0) {
    throw ConfigError("overlap_before must lie in [0, 1]");
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (!j.contains("scenario")) {
    throw ConfigError("config needs a 'scenario' key");
  }

  ExperimentConfig config =
      default_config(scenario_from_name(as_string(j["scenario"], "scenario")));

  const auto allowed = allowed_keys(config.scenario);
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "' for scenario '" +
                        scenario_name(config.scenario) + "'");
    }
    if (key == "scenario") continue;
    if (key == "out") config.output_path = as_string(value, key);
    if (key == "tol") config.tol = as_number(value, key);
    if (key == "new_width") config.new_width = as_number(value, key);
    if (key == "xi") config.xi = as_number(value, key);
    if (key == "high_level") config.high_level = as_integer(value, key);
    if (key == "max_output_levels")
      config.max_output_levels = as_integer(value, key);
    if (key == "levels") config.levels = as_level_list(value, key);
    if (key == "alpha") config.alpha = as_number(value, key);
    if (key == "xi_grid") config.xi_grid = as_grid(value, key);
    if (key == "eps_grid") config.eps_grid = as_grid(value, key);
    if (key == "overlap_before") config.overlap_before = as_number(value, key);
  }
  validate_config(config);
  return config;
}

// --- scenario runners -------------------------------------------------------

Example1Result run_example1(const ExperimentConfig& config,
                            std::ostream* summary) {
  const StateVector state = equal_superposition(WellGeometry(1.0), 1, 2);
  const double initial_energy = state_energy(state);
  const double min_width = min_feasible_width(state);

  CompressedState after = compress(state, config.new_width, config.tol);
  revalidate(state, after);

  // At the minimum feasible width the outcome must collapse onto the new
  // ground level; anything else is a failed run.
  if (std::abs(config.new_width - min_width) <= kWidthSlack &&
      !after.degenerate) {
    throw SolverError(
        "expected the degenerate outcome at the minimum feasible width");
  }

  CsvWriter csv = open_csv(config.output_path);
  csv.row({"example1.v1", "level", "weight"});
  const auto w = after.weights.values();
  for (size_t i = 0; i < w.size(); ++i) {
    csv.row({"example1.v1", std::to_string(i + 1), format_g17(w[i])});
  }

  const double final_energy = compressed_energy(after);
  if (summary) {
    auto& out = *summary;
    out << "scenario: example1\n";
    out << "initial state: (|1> + |2>)/sqrt(2) in a well of width 1\n";
    out << "initial energy: " << format_g17(initial_energy) << "\n";
    out << "min feasible width: " << format_g17(min_width) << "\n";
    out << "new width: " << format_g17(config.new_width) << "\n";
    out << "degenerate outcome: " << bool_field(after.degenerate) << "\n";
    out << "final energy: " << format_g17(final_energy) << "\n";
    out << "final weights:";
    for (size_t i = 0; i < std::min<size_t>(w.size(), 8); ++i) {
      out << ' ' << format_g17(w[i]);
    }
    if (w.size() > 8) out << " ...";
    out << "\n";
    out << "wrote: " << config.output_path << "\n";
  }
  return Example1Result{initial_energy, min_width, final_energy,
                        std::move(after)};
}

SpreadResult run_spread(const ExperimentConfig& config, std::ostream* summary) {
  const StateVector state =
      equal_superposition(WellGeometry(1.0), 1, config.high_level);
  const double target_moment =
      state_energy(state) * config.new_width * config.new_width;

  CompressedState after = compress(state, config.new_width, config.tol);
  revalidate(state, after);

  const double epsilon = probe_weight(after, 1);
  const double entropy = shannon_entropy(after.weights);

  CsvWriter csv = open_csv(config.output_path);
  csv.row({"spread.v1", "level", "weight"});
  const auto w = after.weights.values();
  const size_t rows =
      std::min<size_t>(w.size(), static_cast<size_t>(config.max_output_levels));
  for (size_t i = 0; i < rows; ++i) {
    csv.row({"spread.v1", std::to_string(i + 1), format_g17(w[i])});
  }

  if (summary) {
    auto& out = *summary;
    out << "scenario: spread\n";
    out << "initial state: (|1> + |" << config.high_level
        << ">)/sqrt(2) in a well of width 1\n";
    out << "new width: " << format_g17(config.new_width) << "\n";
    out << "target moment: " << format_g17(target_moment) << "\n";
    out << "beta: " << format_g17(after.beta) << "\n";
    out << "epsilon (weight on |1'>): " << format_g17(epsilon) << "\n";
    out << "entropy: " << format_g17(entropy) << "\n";
    out << "retained levels: " << after.weights.cutoff() << "\n";
    out << "wrote: " << config.output_path << "\n";
  }
  return SpreadResult{target_moment, epsilon, entropy, std::move(after)};
}

EpsilonScanResult run_epsilon_scan(const ExperimentConfig& config,
                                   std::ostream* summary) {
  const WellGeometry well(1.0);
  const Prior xi(config.xi);
  const StateVector phi = equal_superposition(well, 1, 2);

  EpsilonScanResult result;
  result.overlap_before = 0.0;
  for (size_t i = 0; i < config.levels.size(); ++i) {
    const int n = config.levels[i];
    const StateVector psi = equal_superposition(well, 1, n);
    const double overlap = same_well_overlap(phi, psi).squared;
    if (i == 0) result.overlap_before = overlap;

    CompressedState after = [&] {
      try {
        CompressedState cs = compress(psi, config.new_width, config.tol);
        revalidate(psi, cs);
        return cs;
      } catch (const InfeasibleError& e) {
        throw InfeasibleError("scan point N=" + std::to_string(n) + ": " +
                              e.what());
      } catch (const SolverError& e) {
        throw SolverError("scan point N=" + std::to_string(n) + ": " +
                          e.what());
      }
    }();

    const double epsilon = probe_weight(after, 1);
    const double cost_after = helstrom_cost(xi, epsilon);
    const double delta = helstrom_cost(xi, overlap) - cost_after;
    result.rows.push_back(ScanRow{n, epsilon, cost_after, delta, after.beta,
                                  after.weights.cutoff()});
  }

  // epsilon is strictly decreasing in N; a violation means the solver lost
  // the scan invariant.
  for (size_t i = 0; i < result.rows.size(); ++i) {
    for (size_t j = i + 1; j < result.rows.size(); ++j) {
      const ScanRow& a = result.rows[i];
      const ScanRow& b = result.rows[j];
      if (a.level == b.level) continue;
      const ScanRow& low = a.level < b.level ? a : b;
      const ScanRow& high = a.level < b.level ? b : a;
      if (!(low.epsilon > high.epsilon)) {
        throw SolverError("scan invariant violated: epsilon must decrease "
                          "with N");
      }
    }
  }

  if (result.rows.size() >= 2) {
    std::vector<double> ns;
    std::vector<double> eps;
    for (const ScanRow& row : result.rows) {
      ns.push_back(static_cast<double>(row.level));
      eps.push_back(row.epsilon);
    }
    result.slope = fit_loglog_slope(ns, eps);
  }

  CsvWriter csv = open_csv(config.output_path);
  csv.row({"epsilon_scan.v1", "N", "epsilon", "cost_after", "cost_delta", "beta",
           "cutoff_used"});
  for (const ScanRow& row : result.rows) {
    csv.row({"epsilon_scan.v1", std::to_string(row.level),
             format_g17(row.epsilon), format_g17(row.cost_after),
             format_g17(row.cost_delta), format_g17(row.beta),
             std::to_string(row.cutoff_used)});
  }

  if (summary) {
    auto& out = *summary;
    out << "scenario: epsilon-scan\n";
    out << "xi: " << format_g17(config.xi) << "\n";
    out << "new width: " << format_g17(config.new_width) << "\n";
    out << "overlap before compression: " << format_g17(result.overlap_before)
        << "\n";
    for (const ScanRow& row : result.rows) {
      out << "N=" << row.level << " epsilon=" << format_g17(row.epsilon)
          << " cost_after=" << format_g17(row.cost_after)
          << " cost_delta=" << format_g17(row.cost_delta) << "\n";
    }
    if (result.slope) {
      out << "log-log slope of epsilon vs N: " << format_g17(*result.slope)
          << "\n";
    } else {
      out << "log-log slope omitted (single scan point)\n";
    }
    out << "wrote: " << config.output_path << "\n";
  }
  return result;
}

CostGridResult run_cost_grid(const ExperimentConfig& config,
                             std::ostream* summary) {
  const std::vector<double> xis = expand_grid(config.xi_grid);
  const std::vector<double> epss = expand_grid(config.eps_grid);

  CostGridResult result;
  result.min_delta_eps_le_half = std::numeric_limits<double>::infinity();
  result.min_delta_overall = std::numeric_limits<double>::infinity();
  for (double xi_value : xis) {
    const Prior xi(xi_value);
    const double cost_before = helstrom_cost(xi, config.overlap_before);
    for (double eps : epss) {
      const double cost_after = helstrom_cost(xi, eps);
      const double delta = cost_before - cost_after;
      result.rows.push_back(
          CostGridRow{xi_value, eps, cost_before, cost_after, delta});
      result.min_delta_overall = std::min(result.min_delta_overall, delta);
      if (eps <= 0.5 + 1e-12) {
        result.min_delta_eps_le_half =
            std::min(result.min_delta_eps_le_half, delta);
      }
    }
  }

  // The cost difference at pre-compression overlap 1/2 is non-negative for
  // every prior once epsilon <= 1/2; only round-off may dip below zero.
  if (config.overlap_before == 0.5 &&
      result.min_delta_eps_le_half < -1e-12) {
    throw SolverError("cost-difference positivity violated: min delta = " +
                      format_g17(result.min_delta_eps_le_half));
  }

  CsvWriter csv = open_csv(config.output_path);
  csv.row({"cost_grid.v1", "xi", "epsilon", "cost_before", "cost_after",
           "cost_delta"});
  for (const CostGridRow& row : result.rows) {
    csv.row({"cost_grid.v1", format_g17(row.xi), format_g17(row.epsilon),
             format_g17(row.cost_before), format_g17(row.cost_after),
             format_g17(row.cost_delta)});
  }

  if (summary) {
    auto& out = *summary;
    out << "scenario: cost-grid\n";
    out << "grid: " << xis.size() << " priors x " << epss.size()
        << " overlaps\n";
    out << "overlap before compression: " << format_g17(config.overlap_before)
        << "\n";
    out << "min cost delta (epsilon <= 1/2): "
        << format_g17(result.min_delta_eps_le_half) << "\n";
    out << "min cost delta (overall): "
        << format_g17(result.min_delta_overall) << "\n";
    out << "wrote: " << config.output_path << "\n";
  }
  return result;
}

GeneralPairResult run_general_pair(const ExperimentConfig& config,
                                   std::ostream* summary) {
  const auto [phi, psi] = make_general_pair(config.alpha, config.high_level);
  const Prior xi(config.xi);
  const CostReport report =
      discriminate_report(xi, phi, psi, config.new_width, config.tol);

  revalidate(phi, compress(phi, config.new_width, config.tol));
  revalidate(psi, compress(psi, config.new_width, config.tol));

  CsvWriter csv = open_csv(config.output_path);
  csv.row({"general_pair.v1", "xi", "alpha", "high_level", "new_width",
           "overlap_before", "overlap_after", "convention_dependent",
           "cost_before", "cost_after", "cost_delta", "probe_cost", "epsilon",
           "beta_phi", "beta_psi"});
  csv.row({"general_pair.v1", format_g17(report.xi), format_g17(config.alpha),
           std::to_string(config.high_level), format_g17(config.new_width),
           format_g17(report.overlap_before), format_g17(report.overlap_after),
           bool_field(report.overlap_after_convention_dependent),
           format_g17(report.cost_before), format_g17(report.cost_after),
           format_g17(report.cost_delta), format_g17(report.probe_cost),
           format_g17(report.epsilon), format_g17(report.beta_phi),
           format_g17(report.beta_psi)});

  if (summary) {
    auto& out = *summary;
    out << "scenario: general-pair\n";
    out << "alpha: " << format_g17(config.alpha)
        << "  high level: " << config.high_level
        << "  xi: " << format_g17(report.xi) << "\n";
    out << "overlap before: " << format_g17(report.overlap_before)
        << "  after: " << format_g17(report.overlap_after)
        << (report.overlap_after_convention_dependent
                ? " (convention-dependent)"
                : "")
        << "\n";
    out << "cost before: " << format_g17(report.cost_before)
        << "  after: " << format_g17(report.cost_after)
        << "  delta: " << format_g17(report.cost_delta) << "\n";
    out << "probe cost: " << format_g17(report.probe_cost)
        << "  epsilon: " << format_g17(report.epsilon) << "\n";
    out << "wrote: " << config.output_path << "\n";
  }
  return GeneralPairResult{report};
}

int run_scenario(const ExperimentConfig& config, std::ostream* summary,
                 std::ostream& err) {
  try {
    validate_config(config);
    switch (config.scenario) {
      case Scenario::Example1:
        run_example1(config, summary);
        break;
      case Scenario::Spread:
        run_spread(config, summary);
        break;
      case Scenario::EpsilonScan:
        run_epsilon_scan(config, summary);
        break;
      case Scenario::CostGrid:
        run_cost_grid(config, summary);
        break;
      case Scenario::GeneralPair:
        run_general_pair(config, summary);
        break;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

double fit_loglog_slope(const std::vector<double>& xs,
                        const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("slope fit needs at least two (x, y) pairs");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw std::invalid_argument("slope fit needs positive values");
    }
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(xs.size());
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) {
    throw std::invalid_argument("slope fit needs distinct x values");
  }
  return (n * sxy - sx * sy) / denom;
}

}  // namespace isowell
