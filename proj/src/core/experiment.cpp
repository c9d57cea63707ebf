// SPDX-License-Identifier: Apache-2.0
#include "edgecache/experiment.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "edgecache/error.hpp"
#include "edgecache/montecarlo.hpp"
#include "edgecache/outage.hpp"
#include "edgecache/output.hpp"
#include "edgecache/placement.hpp"
#include "edgecache/system.hpp"

namespace edgecache {
namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::config, what); }

constexpr std::uint64_t kDefaultSimulationTrials = 1'000'000;

}  // namespace

Mode parse_mode(std::string_view name) {
  if (name == "outage") return Mode::outage;
  if (name == "sweep") return Mode::sweep;
  if (name == "optimize") return Mode::optimize;
  if (name == "simulate") return Mode::simulate;
  if (name == "validate") return Mode::validate;
  if (name == "table1") return Mode::table1;
  if (name == "fig2") return Mode::fig2;
  config_error("unknown mode '" + std::string(name) + "'");
}

std::string_view mode_name(Mode mode) {
  switch (mode) {
    case Mode::outage: return "outage";
    case Mode::sweep: return "sweep";
    case Mode::optimize: return "optimize";
    case Mode::simulate: return "simulate";
    case Mode::validate: return "validate";
    case Mode::table1: return "table1";
    case Mode::fig2: return "fig2";
  }
  return "unknown";
}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  config_error("unknown output format '" + std::string(name) + "' (expected csv or json)");
}

double db_to_linear(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

namespace {

double parse_real(std::string_view text) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    config_error("malformed SNR value '" + s + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::vector<double> parse_snr_list(std::string_view text) {
  if (text.empty()) config_error("empty SNR list");
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) config_error("SNR range must be start:step:stop");
    const double start = parse_real(parts[0]);
    const double step = parse_real(parts[1]);
    const double stop = parse_real(parts[2]);
    if (!(step > 0.0) || stop < start) config_error("SNR range needs step > 0 and stop >= start");
    std::vector<double> grid;
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) grid.push_back(start + step * static_cast<double>(i));
    return grid;
  }
  std::vector<double> grid;
  for (std::string_view item : split(text, ',')) grid.push_back(parse_real(item));
  return grid;
}

std::vector<double> ExperimentSpec::effective_snr_db() const {
  if (!snr_db.empty()) return snr_db;
  if (mode == Mode::optimize) return {0.0};
  return parse_snr_list("0:3:30");
}

std::uint64_t ExperimentSpec::effective_trials() const {
  if (mc_trials) return *mc_trials;
  return (mode == Mode::simulate || mode == Mode::validate) ? kDefaultSimulationTrials : 0;
}

std::vector<ValidateCell> ExperimentSpec::effective_validate_cells() const {
  if (!validate_cells.empty()) return validate_cells;
  std::vector<ValidateCell> cells;
  for (unsigned k = 2; k <= 6; ++k) {
    for (unsigned t : {1u, k}) {
      for (double db : {0.0, 5.0}) cells.push_back({k, t, db});
    }
  }
  return cells;
}

void ExperimentSpec::validate() const {
  for (double db : snr_db) {
    if (!std::isfinite(db)) config_error("SNR grid contains a non-finite value");
  }
  switch (mode) {
    case Mode::outage:
      if (config.k_ens == 0 || t_d == 0 || t_d > config.k_ens) {
        config_error("outage mode needs 1 <= t_d <= k_ens");
      }
      if (!(config.rate > 0.0)) config_error("rate_bps_hz must be positive");
      break;
    case Mode::validate:
      for (const ValidateCell& c : effective_validate_cells()) {
        if (c.k_ens == 0 || c.t_d == 0 || c.t_d > c.k_ens || !std::isfinite(c.snr_db)) {
          config_error("validate cell needs 1 <= t_d <= k_ens and a finite snr_db");
        }
      }
      if (effective_trials() == 0) config_error("validate mode needs trials >= 1");
      break;
    case Mode::table1:
    case Mode::fig2:
      if (cache_sizes.empty()) config_error("cache_sizes must be nonempty");
      for (unsigned m : cache_sizes) {
        SystemConfig c = config;
        c.cache_size = m;
        c.validate();
      }
      break;
    case Mode::optimize:
      config.validate();
      if (effective_snr_db().size() != 1) {
        config_error("optimize takes a single SNR point; use sweep for a grid");
      }
      break;
    case Mode::simulate:
      config.validate();
      if (effective_trials() == 0) config_error("simulate mode needs trials >= 1");
      break;
    case Mode::sweep:
      config.validate();
      break;
  }
  if (policy) {
    try {
      validate_policy(*policy, config);
    } catch (const Error& e) {
      config_error(e.what());
    }
  }
}

namespace {

using json = nlohmann::json;

unsigned json_count(const json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    config_error("config key '" + key + "' must be a nonnegative integer");
  }
  return static_cast<unsigned>(v.get<long long>());
}

double json_real(const json& v, const std::string& key) {
  if (!v.is_number()) config_error("config key '" + key + "' must be a number");
  return v.get<double>();
}

std::vector<double> json_real_list(const json& v, const std::string& key) {
  if (v.is_number()) return {v.get<double>()};
  if (v.is_string()) return parse_snr_list(v.get<std::string>());
  if (!v.is_array()) config_error("config key '" + key + "' must be a number, list, or string");
  std::vector<double> out;
  for (const json& item : v) out.push_back(json_real(item, key));
  return out;
}

}  // namespace

void apply_config_json(ExperimentSpec& spec, std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    config_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) config_error("config must be a flat JSON object");

  std::optional<json> mu;
  for (const auto& [key, value] : root.items()) {
    if (key == "k_ens") {
      spec.config.k_ens = json_count(value, key);
    } else if (key == "n_files") {
      spec.config.n_files = json_count(value, key);
    } else if (key == "cache_size") {
      spec.config.cache_size = json_count(value, key);
    } else if (key == "rho") {
      spec.config.rho = json_real(value, key);
    } else if (key == "rate_bps_hz") {
      spec.config.rate = json_real(value, key);
    } else if (key == "snr_db") {
      spec.snr_db = json_real_list(value, key);
    } else if (key == "t_d") {
      spec.t_d = json_count(value, key);
    } else if (key == "policy") {
      if (!value.is_array()) config_error("config key 'policy' must be an integer array");
      PlacementPolicy p;
      for (const json& item : value) p.t.push_back(json_count(item, "policy"));
      spec.policy = p;
    } else if (key == "mu") {
      if (!value.is_array()) config_error("config key 'mu' must be an array");
      mu = value;
    } else if (key == "cache_sizes") {
      if (!value.is_array()) config_error("config key 'cache_sizes' must be an integer array");
      spec.cache_sizes.clear();
      for (const json& item : value) spec.cache_sizes.push_back(json_count(item, key));
    } else if (key == "trials") {
      spec.mc_trials = json_count(value, key);
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) config_error("config key 'seed' must be a nonnegative integer");
      spec.seed = value.get<std::uint64_t>();
    } else if (key == "out") {
      if (!value.is_string()) config_error("config key 'out' must be a string");
      spec.output_path = value.get<std::string>();
    } else if (key == "format") {
      if (!value.is_string()) config_error("config key 'format' must be a string");
      spec.format = parse_format(value.get<std::string>());
    } else if (key == "mode") {
      if (!value.is_string()) config_error("config key 'mode' must be a string");
      spec.mode = parse_mode(value.get<std::string>());
    } else if (key == "full_enumeration") {
      if (!value.is_boolean()) config_error("config key 'full_enumeration' must be a boolean");
      spec.full_enumeration = value.get<bool>();
    } else if (key == "workers") {
      spec.workers = json_count(value, key);
    } else if (key == "validate_cells") {
      if (!value.is_array()) config_error("config key 'validate_cells' must be an array");
      spec.validate_cells.clear();
      for (const json& cell : value) {
        if (!cell.is_object() || !cell.contains("k_ens") || !cell.contains("t_d") ||
            !cell.contains("snr_db")) {
          config_error("validate cell must be {\"k_ens\", \"t_d\", \"snr_db\"}");
        }
        spec.validate_cells.push_back({json_count(cell["k_ens"], "k_ens"),
                                       json_count(cell["t_d"], "t_d"),
                                       json_real(cell["snr_db"], "snr_db")});
      }
    } else {
      config_error("unknown config key '" + key + "'");
    }
  }

  // Replication given as cache fractions must land on integer t_i = K mu_i.
  if (mu) {
    if (root.contains("policy")) config_error("config may set 'policy' or 'mu', not both");
    PlacementPolicy p;
    for (const json& item : *mu) {
      const double t = json_real(item, "mu") * spec.config.k_ens;
      const double rounded = std::round(t);
      if (std::abs(t - rounded) > 1e-9 || rounded < 1.0) {
        config_error("mu entry " + item.dump() + " gives non-integer or zero K*mu");
      }
      p.t.push_back(static_cast<unsigned>(rounded));
    }
    spec.policy = p;
  }
}

void apply_config_file(ExperimentSpec& spec, const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  apply_config_json(spec, text.str());
}

namespace {

const std::vector<std::string> kSweepColumns{"snr_db",         "scheme",         "M",
                                             "n0",             "t_vector",       "outage_closed_form",
                                             "outage_mc_mean", "outage_mc_stderr"};

struct Runner {
  const ExperimentSpec& spec;
  McOptions mc{spec.workers};

  [[nodiscard]] std::vector<double> powers(const std::vector<double>& grid) const {
    std::vector<double> out;
    for (double db : grid) out.push_back(db_to_linear(db));
    return out;
  }

  void add_sweep_row(ResultTable& table, double db, const std::string& scheme,
                     const SystemConfig& config, const PlacementPolicy& policy, double closed) const {
    Cell mean;
    Cell stderr_cell;
    if (const std::uint64_t trials = spec.effective_trials(); trials > 0) {
      const McEstimate est = mc_system_outage(config, policy, db_to_linear(db), trials, spec.seed, mc);
      mean = est.mean;
      stderr_cell = est.std_error;
    }
    table.add_row({db, scheme, static_cast<long long>(config.cache_size),
                   static_cast<long long>(policy.n0()), policy.t, closed, mean, stderr_cell});
  }

  void add_sweep_rows(ResultTable& table, const SystemConfig& config,
                      const std::vector<double>& grid) const {
    const std::vector<double> p = powers(grid);
    OptimizerOptions options;
    options.full_enumeration = spec.full_enumeration;
    const SweepResult sweep = optimize_sweep(config, p, options);
    const Popularity pop = Popularity::zipf(config.n_files, config.rho);
    for (std::size_t s = 0; s < grid.size(); ++s) {
      add_sweep_row(table, grid[s], "proposed", config, sweep.proposed[s].best,
                    sweep.proposed_report.system[s]);
      add_sweep_row(table, grid[s], "baseline", config, sweep.baseline[s].best,
                    sweep.baseline_report.system[s]);
      if (spec.policy) {
        add_sweep_row(table, grid[s], "fixed", config, *spec.policy,
                      system_outage(config, *spec.policy, pop, p[s]));
      }
    }
  }

  ResultTable outage() const {
    ResultTable table({"snr_db", "k_ens", "t_d", "outage_closed_form", "outage_mc_mean",
                       "outage_mc_stderr"});
    const std::uint64_t trials = spec.effective_trials();
    for (double db : spec.effective_snr_db()) {
      const OutageQuery q{spec.config.k_ens, spec.t_d, db_to_linear(db), spec.config.rate};
      Cell mean;
      Cell stderr_cell;
      if (trials > 0) {
        const McEstimate est = mc_outage(q, trials, spec.seed, mc);
        mean = est.mean;
        stderr_cell = est.std_error;
      }
      table.add_row({db, static_cast<long long>(q.k_ens), static_cast<long long>(q.t_d),
                     outage_closed_form(q), mean, stderr_cell});
    }
    return table;
  }

  ResultTable sweep() const {
    ResultTable table(kSweepColumns);
    add_sweep_rows(table, spec.config, spec.effective_snr_db());
    return table;
  }

  ResultTable fig2() const {
    ResultTable table(kSweepColumns);
    for (unsigned m : spec.cache_sizes) {
      SystemConfig config = spec.config;
      config.cache_size = m;
      add_sweep_rows(table, config, spec.effective_snr_db());
    }
    return table;
  }

  ResultTable simulate() const {
    ResultTable table(kSweepColumns);
    const Popularity pop = Popularity::zipf(spec.config.n_files, spec.config.rho);
    OptimizerOptions options;
    options.full_enumeration = spec.full_enumeration;
    for (double db : spec.effective_snr_db()) {
      const double power = db_to_linear(db);
      const PlacementPolicy policy =
          spec.policy ? *spec.policy : optimize_placement(spec.config, power, options).best;
      add_sweep_row(table, db, spec.policy ? "fixed" : "proposed", spec.config, policy,
                    system_outage(spec.config, policy, pop, power));
    }
    return table;
  }

  ResultTable optimize() const {
    ResultTable table({"snr_db", "M", "n0", "t_vector", "objective", "explored"});
    OptimizerOptions options;
    options.full_enumeration = spec.full_enumeration;
    const double db = spec.effective_snr_db().front();
    const OptimizationResult r = optimize_placement(spec.config, db_to_linear(db), options);
    table.add_row({db, static_cast<long long>(spec.config.cache_size),
                   static_cast<long long>(r.best.n0()), r.best.t, r.objective,
                   static_cast<long long>(r.explored)});
    return table;
  }

  static std::string db_label(double db) {
    std::ostringstream s;
    s << db << "dB";
    return s.str();
  }

  ResultTable table1() const {
    std::vector<std::string> columns{"M", "snr_db", "snr_range", "n0"};
    for (std::size_t i = 1; i <= spec.config.n_files; ++i) columns.push_back("t_" + std::to_string(i));
    columns.emplace_back("objective");
    ResultTable table(columns);

    const std::vector<double> grid = spec.effective_snr_db();
    OptimizerOptions options;
    options.full_enumeration = spec.full_enumeration;
    for (unsigned m : spec.cache_sizes) {
      SystemConfig config = spec.config;
      config.cache_size = m;
      std::vector<OptimizationResult> results;
      for (double db : grid) results.push_back(optimize_placement(config, db_to_linear(db), options));

      // Consecutive grid points sharing a policy form one labelled range.
      std::size_t run_start = 0;
      for (std::size_t s = 0; s < grid.size(); ++s) {
        if (s + 1 < grid.size() && results[s + 1].best == results[s].best) continue;
        std::string label = db_label(grid[run_start]);
        if (s != run_start) label += "-" + db_label(grid[s]);
        for (std::size_t r = run_start; r <= s; ++r) {
          std::vector<Cell> row{static_cast<long long>(m), grid[r], label,
                                static_cast<long long>(results[r].best.n0())};
          for (std::size_t i = 0; i < config.n_files; ++i) {
            row.emplace_back(static_cast<long long>(i < results[r].best.n0() ? results[r].best.t[i] : 0));
          }
          row.emplace_back(results[r].objective);
          table.add_row(std::move(row));
        }
        run_start = s + 1;
      }
    }
    return table;
  }

  ResultTable validate(bool& breach) const {
    ResultTable table({"k_ens", "t_d", "snr_db", "outage_closed_form", "outage_mc_mean",
                       "outage_mc_stderr", "z_score", "pass"});
    const std::uint64_t trials = spec.effective_trials();
    breach = false;
    for (const ValidateCell& cell : spec.effective_validate_cells()) {
      const OutageQuery q{cell.k_ens, cell.t_d, db_to_linear(cell.snr_db), spec.config.rate};
      const double closed = outage_closed_form(q);
      const McEstimate est = mc_outage(q, trials, spec.seed, mc);
      const double z = est.z_score(closed);
      const bool ok = std::abs(z) <= kValidateZLimit;
      breach = breach || !ok;
      table.add_row({static_cast<long long>(cell.k_ens), static_cast<long long>(cell.t_d),
                     cell.snr_db, closed, est.mean, est.std_error, z,
                     std::string(ok ? "yes" : "no")});
    }
    return table;
  }
};

}  // namespace

ExperimentOutcome render_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const Runner runner{spec};
  ExperimentOutcome outcome;
  bool breach = false;
  ResultTable table = [&] {
    switch (spec.mode) {
      case Mode::outage: return runner.outage();
      case Mode::sweep: return runner.sweep();
      case Mode::optimize: return runner.optimize();
      case Mode::simulate: return runner.simulate();
      case Mode::validate: return runner.validate(breach);
      case Mode::table1: return runner.table1();
      case Mode::fig2: return runner.fig2();
    }
    config_error("unknown mode");
  }();
  outcome.output = spec.format == OutputFormat::csv ? table.to_csv() : table.to_json();
  outcome.summary = std::string(mode_name(spec.mode)) + ": " + std::to_string(table.rows().size()) +
                    " rows";
  if (breach) {
    outcome.exit_code = kExitValidationFailure;
    outcome.summary += "; z-score limit exceeded";
  }
  return outcome;
}

int run_experiment(const ExperimentSpec& spec, std::ostream& out, std::ostream& log) {
  ExperimentOutcome outcome;
  try {
    outcome = render_experiment(spec);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  if (spec.output_path.empty() || spec.output_path == "-") {
    out << outcome.output;
  } else {
    std::ofstream file(spec.output_path, std::ios::binary);
    if (!file || !(file << outcome.output)) {
      log << "error: cannot write '" << spec.output_path << "'\n";
      return kExitConfigError;
    }
  }
  log << outcome.summary << '\n';
  return outcome.exit_code;
}

}  // namespace edgecache
