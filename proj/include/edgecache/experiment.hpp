// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edgecache/policy.hpp"

namespace edgecache {

enum class Mode { outage, sweep, optimize, simulate, validate, table1, fig2 };
enum class OutputFormat { csv, json };

[[nodiscard]] Mode parse_mode(std::string_view name);
[[nodiscard]] std::string_view mode_name(Mode mode);
[[nodiscard]] OutputFormat parse_format(std::string_view name);

/// The single dB -> linear conversion point: P = 10^(dB / 10).
[[nodiscard]] double db_to_linear(double snr_db);

/// "0,3,6" or "start:step:stop" (inclusive stop).
[[nodiscard]] std::vector<double> parse_snr_list(std::string_view text);

struct ValidateCell {
  unsigned k_ens = 1;
  unsigned t_d = 1;
  double snr_db = 0.0;
};

struct ExperimentSpec {
  SystemConfig config;
  Mode mode = Mode::outage;
  std::vector<double> snr_db;                  // empty: mode default
  unsigned t_d = 1;                            // outage mode
  std::optional<PlacementPolicy> policy;       // simulate / sweep override
  std::vector<unsigned> cache_sizes{1, 3, 5, 7, 9};  // table1 / fig2
  std::vector<ValidateCell> validate_cells;    // empty: default 20 cells
  std::optional<std::uint64_t> mc_trials;      // empty: mode default
  std::uint64_t seed = 20170101;
  std::string output_path;                     // empty or "-": stdout
  OutputFormat format = OutputFormat::csv;
  bool full_enumeration = false;
  unsigned workers = 0;

  [[nodiscard]] std::vector<double> effective_snr_db() const;
  [[nodiscard]] std::uint64_t effective_trials() const;
  [[nodiscard]] std::vector<ValidateCell> effective_validate_cells() const;
  void validate() const;
};

/// Merges a flat JSON config file into `spec`. Unknown keys, fractional
/// replication degrees and malformed values raise ErrorCode::config.
void apply_config_file(ExperimentSpec& spec, const std::string& path);
void apply_config_json(ExperimentSpec& spec, std::string_view json_text);

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitValidationFailure = 2;

/// z-score magnitude above which `validate` reports a failure.
inline constexpr double kValidateZLimit = 4.0;

struct ExperimentOutcome {
  int exit_code = kExitSuccess;
  std::string output;  // rendered file contents
  std::string summary; // one-line human-readable note
};

/// Runs the experiment and returns the rendered output without touching the
/// filesystem.
[[nodiscard]] ExperimentOutcome render_experiment(const ExperimentSpec& spec);

/// Runs the experiment and writes the output to `spec.output_path` (or `out`
/// when the path is empty or "-").
[[nodiscard]] int run_experiment(const ExperimentSpec& spec, std::ostream& out, std::ostream& log);

}  // namespace edgecache
