// SPDX-License-Identifier: Apache-2.0
// Command-line front end. Talks to the library only through the C API.
#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "edgecache/edgecache.h"

namespace {

constexpr int kExitConfigError = 1;
constexpr int kExitValidationFailure = 2;

struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> snr_db;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
  bool full_enumeration = false;
  std::optional<unsigned> k_ens;
  std::optional<std::size_t> n_files;
  std::optional<unsigned> cache_size;
  std::optional<double> rho;
  std::optional<double> rate;
  std::optional<unsigned> t_d;
  std::optional<std::string> policy;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "Flat JSON experiment config")->check(CLI::ExistingFile);
  cmd->add_option("--snr-db", f.snr_db, "SNR grid in dB: '0,3,6' or 'start:step:stop'");
  cmd->add_option("--trials", f.trials, "Monte Carlo trials");
  cmd->add_option("--seed", f.seed, "Monte Carlo seed");
  cmd->add_option("--out", f.out, "Output path (stdout when omitted)");
  cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--full-enumeration", f.full_enumeration,
                "Search all orderings of t instead of nonincreasing vectors only");
  cmd->add_option("--k-ens", f.k_ens, "Number of edge nodes K");
  cmd->add_option("--n-files", f.n_files, "Library size N");
  cmd->add_option("--cache-size", f.cache_size, "Cache size M in files");
  cmd->add_option("--rho", f.rho, "Zipf skewness");
  cmd->add_option("--rate", f.rate, "Target rate R in bits/s/Hz");
  cmd->add_option("--t-d", f.t_d, "Replication degree (outage mode)");
  cmd->add_option("--policy", f.policy, "Fixed placement, e.g. '2;2;1'");
}

std::vector<unsigned> parse_policy(const std::string& text) {
  std::vector<unsigned> t;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) {
    std::size_t used = 0;
    const unsigned long v = std::stoul(item, &used);
    if (used != item.size()) throw std::invalid_argument(item);
    t.push_back(static_cast<unsigned>(v));
  }
  return t;
}

class Experiment {
 public:
  Experiment() {
    if (ec_experiment_create(&handle_) != EC_OK) throw std::runtime_error(ec_last_error());
  }
  Experiment(const Experiment&) = delete;
  Experiment& operator=(const Experiment&) = delete;
  ~Experiment() { ec_experiment_destroy(handle_); }

  [[nodiscard]] ec_experiment* get() const { return handle_; }

 private:
  ec_experiment* handle_ = nullptr;
};

// Applies config file then flag overrides; returns the first failing status.
ec_status configure(ec_experiment* exp, const std::string& mode, const Flags& f) {
  ec_status s = ec_experiment_set_mode(exp, mode.c_str());
  if (s == EC_OK && f.config) s = ec_experiment_load_config(exp, f.config->c_str());
  // The subcommand wins over a "mode" key in the file.
  if (s == EC_OK) s = ec_experiment_set_mode(exp, mode.c_str());
  if (s != EC_OK) return s;

  ec_system_config sys{};
  if ((s = ec_experiment_get_system(exp, &sys)) != EC_OK) return s;
  if (f.k_ens) sys.k_ens = *f.k_ens;
  if (f.n_files) sys.n_files = *f.n_files;
  if (f.cache_size) sys.cache_size = *f.cache_size;
  if (f.rho) sys.rho = *f.rho;
  if (f.rate) sys.rate = *f.rate;
  if ((s = ec_experiment_set_system(exp, &sys)) != EC_OK) return s;

  if (f.snr_db && (s = ec_experiment_set_snr_db(exp, f.snr_db->c_str())) != EC_OK) return s;
  if (f.trials && (s = ec_experiment_set_trials(exp, *f.trials)) != EC_OK) return s;
  if (f.seed && (s = ec_experiment_set_seed(exp, *f.seed)) != EC_OK) return s;
  if (f.out && (s = ec_experiment_set_output(exp, f.out->c_str())) != EC_OK) return s;
  if (f.format && (s = ec_experiment_set_format(exp, f.format->c_str())) != EC_OK) return s;
  if (f.t_d && (s = ec_experiment_set_t_d(exp, *f.t_d)) != EC_OK) return s;
  if (f.full_enumeration && (s = ec_experiment_set_full_enumeration(exp, 1)) != EC_OK) return s;
  if (f.policy) {
    std::vector<unsigned> t;
    try {
      t = parse_policy(*f.policy);
    } catch (const std::exception&) {
      std::cerr << "error: malformed --policy '" << *f.policy << "'\n";
      return EC_ERR_CONFIG;
    }
    if ((s = ec_experiment_set_policy(exp, t.data(), t.size())) != EC_OK) return s;
  }
  return EC_OK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge-caching outage analysis, placement optimization and Monte Carlo validation"};
  app.require_subcommand(1);
  Flags flags;

  const std::vector<std::pair<std::string, std::string>> modes{
      {"outage", "Per-file outage probability over an SNR grid"},
      {"sweep", "Optimal placement and system outage over an SNR grid"},
      {"optimize", "Optimal placement at a single SNR point"},
      {"simulate", "Monte Carlo system outage for a fixed or optimized placement"},
      {"validate", "Closed form against Monte Carlo with z-scores"},
      {"table1", "Optimal placements for M in {1,3,5,7,9} over 0-30 dB"},
      {"fig2", "System outage of the proposed and baseline schemes per M"},
  };
  for (const auto& [name, help] : modes) add_flags(app.add_subcommand(name, help), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  const std::string mode = app.get_subcommands().front()->get_name();
  try {
    Experiment exp;
    ec_status status = configure(exp.get(), mode, flags);
    if (status == EC_OK) status = ec_experiment_run(exp.get());
    switch (status) {
      case EC_OK: return 0;
      case EC_ERR_VALIDATION:
        std::cerr << "validation failed: " << ec_last_error() << '\n';
        return kExitValidationFailure;
      default:
        std::cerr << "error (" << ec_status_string(status) << "): " << ec_last_error() << '\n';
        return kExitConfigError;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}
