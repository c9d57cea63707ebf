// SPDX-License-Identifier: Apache-2.0
#include "edgecache/edgecache.h"

#include <fstream>
#include <iostream>
#include <new>
#include <string>

#include "edgecache/error.hpp"
#include "edgecache/experiment.hpp"
#include "edgecache/montecarlo.hpp"
#include "edgecache/outage.hpp"
#include "edgecache/placement.hpp"
#include "edgecache/popularity.hpp"
#include "edgecache/system.hpp"

struct ec_optimization {
  edgecache::OptimizationResult result;
};

struct ec_experiment {
  edgecache::ExperimentSpec spec;
  std::string rendered;
};

namespace {

thread_local std::string g_last_error;

ec_status to_status(edgecache::ErrorCode code) {
  using edgecache::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return EC_ERR_INVALID_ARGUMENT;
    case ErrorCode::precision_loss: return EC_ERR_PRECISION_LOSS;
    case ErrorCode::not_converged: return EC_ERR_NOT_CONVERGED;
    case ErrorCode::config: return EC_ERR_CONFIG;
    case ErrorCode::io: return EC_ERR_IO;
  }
  return EC_ERR_INTERNAL;
}

ec_status fail(ec_status status, const char* what) {
  g_last_error = what;
  return status;
}

// Runs `body` and converts any exception into a status code.
template <class Body>
ec_status guarded(Body&& body) noexcept {
  try {
    g_last_error.clear();
    return body();
  } catch (const edgecache::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(EC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(EC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(EC_ERR_INTERNAL, "unknown exception");
  }
}

#define EC_REQUIRE(cond, msg) \
  do {                        \
    if (!(cond)) return fail(EC_ERR_INVALID_ARGUMENT, msg); \
  } while (0)

edgecache::SystemConfig from_c(const ec_system_config& c) {
  return {c.k_ens, c.n_files, c.cache_size, c.rho, c.rate};
}

edgecache::PlacementPolicy policy_from(const unsigned* t, size_t n0) {
  edgecache::PlacementPolicy p;
  if (n0 > 0) p.t.assign(t, t + n0);
  return p;
}

void to_c(const edgecache::McEstimate& e, ec_mc_estimate* out) {
  *out = {e.mean, e.std_error, e.trials, e.events, e.seed};
}

}  // namespace

extern "C" {

const char* ec_status_string(ec_status status) {
  switch (status) {
    case EC_OK: return "ok";
    case EC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case EC_ERR_PRECISION_LOSS: return "precision loss";
    case EC_ERR_NOT_CONVERGED: return "not converged";
    case EC_ERR_CONFIG: return "configuration error";
    case EC_ERR_IO: return "i/o error";
    case EC_ERR_VALIDATION: return "validation failure";
    case EC_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case EC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ec_last_error(void) { return g_last_error.c_str(); }

const char* ec_version(void) { return "0.1.0"; }

ec_system_config ec_system_config_default(void) {
  const edgecache::SystemConfig c;
  return {c.k_ens, c.n_files, c.cache_size, c.rho, c.rate};
}

ec_status ec_zipf_popularity(size_t n_files, double rho, double* out, size_t out_len) {
  return guarded([&] {
    EC_REQUIRE(out != nullptr, "out is null");
    const auto pop = edgecache::zipf_popularity(n_files, rho);
    if (out_len < n_files) return fail(EC_ERR_BUFFER_TOO_SMALL, "output buffer shorter than n_files");
    std::copy(pop.probs().begin(), pop.probs().end(), out);
    return EC_OK;
  });
}

ec_status ec_miss_mass(size_t n_files, double rho, size_t n0, double* out) {
  return guarded([&] {
    EC_REQUIRE(out != nullptr, "out is null");
    *out = edgecache::miss_mass(edgecache::zipf_popularity(n_files, rho), n0);
    return EC_OK;
  });
}

ec_status ec_partition_coefficients(unsigned k_ens, unsigned t_d, double* out, size_t out_len) {
  return guarded([&] {
    EC_REQUIRE(out != nullptr, "out is null");
    const auto pc = edgecache::partition_coefficients(k_ens, t_d);
    if (out_len < pc.coeffs.size()) return fail(EC_ERR_BUFFER_TOO_SMALL, "output buffer shorter than t_d");
    std::copy(pc.coeffs.begin(), pc.coeffs.end(), out);
    return EC_OK;
  });
}

ec_status ec_hypoexp_cdf(const double* coeffs, size_t n, double threshold, double* out) {
  return guarded([&] {
    EC_REQUIRE(out != nullptr && (coeffs != nullptr || n == 0), "null pointer argument");
    *out = edgecache::hypoexp_cdf({coeffs, n}, threshold);
    return EC_OK;
  });
}

ec_status ec_gamma_sum_cdf(unsigned k_ens, double threshold, double* out) {
  return guarded([&] {
    EC_REQUIRE(out != nullptr, "out is null");
    *out = edgecache::gamma_sum_cdf(k_ens, threshold);
    return EC_OK;
  });
}

ec_status ec_outage_closed_form(unsigned k_ens, unsigned t_d, double power, double rate, double* out) {
  return guarded([&] {
    EC_REQUIRE(out != nullptr, "out is null");
    *out = edgecache::outage_closed_form({k_ens, t_d, power, rate});
    return EC_OK;
  });
}

ec_status ec_series_coefficient(unsigned k_ens, unsigned t_d, unsigned m, double* out) {
  return guarded([&] {
    EC_REQUIRE(out != nullptr, "out is null");
    *out = edgecache::series_coefficient(k_ens, t_d, m);
    return EC_OK;
  });
}

ec_status ec_outage_series(unsigned k_ens, unsigned t_d, double power, double rate,
                           unsigned truncation, double* out, double* error_bound) {
  return guarded([&] {
    EC_REQUIRE(out != nullptr, "out is null");
    edgecache::SeriesOptions options;
    options.truncation = truncation;
    const auto r = edgecache::outage_series({k_ens, t_d, power, rate}, options);
    *out = r.value;
    if (error_bound != nullptr) *error_bound = r.error_bound;
    return EC_OK;
  });
}

ec_status ec_diversity_fit(const double* snr_db, const double* outage, size_t n, double* out) {
  return guarded([&] {
    EC_REQUIRE(out != nullptr && snr_db != nullptr && outage != nullptr, "null pointer argument");
    *out = edgecache::diversity_fit({snr_db, n}, {outage, n});
    return EC_OK;
  });
}

double ec_db_to_linear(double snr_db) { return edgecache::db_to_linear(snr_db); }

ec_status ec_system_outage(const ec_system_config* config, const unsigned* t, size_t n0,
                           double power, double* out) {
  return guarded([&] {
    EC_REQUIRE(config != nullptr && out != nullptr && (t != nullptr || n0 == 0),
               "null pointer argument");
    const auto cfg = from_c(*config);
    *out = edgecache::system_outage(cfg, policy_from(t, n0),
                                    edgecache::zipf_popularity(cfg.n_files, cfg.rho), power);
    return EC_OK;
  });
}

ec_status ec_mc_outage(unsigned k_ens, unsigned t_d, double power, double rate, uint64_t trials,
                       uint64_t seed, ec_mc_estimate* out) {
  return guarded([&] {
    EC_REQUIRE(out != nullptr, "out is null");
    to_c(edgecache::mc_outage({k_ens, t_d, power, rate}, trials, seed), out);
    return EC_OK;
  });
}

ec_status ec_mc_outage_subsets(unsigned k_ens, unsigned t_d, double power, double rate,
                               uint64_t trials, uint64_t seed, ec_mc_estimate* out) {
  return guarded([&] {
    EC_REQUIRE(out != nullptr, "out is null");
    to_c(edgecache::mc_outage_subsets({k_ens, t_d, power, rate}, trials, seed), out);
    return EC_OK;
  });
}

ec_status ec_mc_system_outage(const ec_system_config* config, const unsigned* t, size_t n0,
                              double power, uint64_t trials, uint64_t seed, ec_mc_estimate* out) {
  return guarded([&] {
    EC_REQUIRE(config != nullptr && out != nullptr && (t != nullptr || n0 == 0),
               "null pointer argument");
    to_c(edgecache::mc_system_outage(from_c(*config), policy_from(t, n0), power, trials, seed), out);
    return EC_OK;
  });
}

ec_status ec_optimize_placement(const ec_system_config* config, double power, int full_enumeration,
                                ec_optimization** out) {
  return guarded([&] {
    EC_REQUIRE(config != nullptr && out != nullptr, "null pointer argument");
    edgecache::OptimizerOptions options;
    options.full_enumeration = full_enumeration != 0;
    *out = new ec_optimization{edgecache::optimize_placement(from_c(*config), power, options)};
    return EC_OK;
  });
}

void ec_optimization_destroy(ec_optimization* result) { delete result; }

size_t ec_optimization_n0(const ec_optimization* result) {
  return result != nullptr ? result->result.best.n0() : 0;
}

ec_status ec_optimization_t(const ec_optimization* result, unsigned* out, size_t out_len) {
  return guarded([&] {
    EC_REQUIRE(result != nullptr, "result is null");
    const auto& t = result->result.best.t;
    if (out_len < t.size()) return fail(EC_ERR_BUFFER_TOO_SMALL, "output buffer shorter than n0");
    EC_REQUIRE(out != nullptr || t.empty(), "out is null");
    std::copy(t.begin(), t.end(), out);
    return EC_OK;
  });
}

double ec_optimization_objective(const ec_optimization* result) {
  return result != nullptr ? result->result.objective : 1.0;
}

size_t ec_optimization_explored(const ec_optimization* result) {
  return result != nullptr ? result->result.explored : 0;
}

ec_status ec_experiment_create(ec_experiment** out) {
  return guarded([&] {
    EC_REQUIRE(out != nullptr, "out is null");
    *out = new ec_experiment{};
    return EC_OK;
  });
}

void ec_experiment_destroy(ec_experiment* exp) { delete exp; }

ec_status ec_experiment_set_mode(ec_experiment* exp, const char* mode) {
  return guarded([&] {
    EC_REQUIRE(exp != nullptr && mode != nullptr, "null pointer argument");
    exp->spec.mode = edgecache::parse_mode(mode);
    return EC_OK;
  });
}

ec_status ec_experiment_load_config(ec_experiment* exp, const char* path) {
  return guarded([&] {
    EC_REQUIRE(exp != nullptr && path != nullptr, "null pointer argument");
    edgecache::apply_config_file(exp->spec, path);
    return EC_OK;
  });
}

ec_status ec_experiment_set_system(ec_experiment* exp, const ec_system_config* config) {
  return guarded([&] {
    EC_REQUIRE(exp != nullptr && config != nullptr, "null pointer argument");
    exp->spec.config = from_c(*config);
    return EC_OK;
  });
}

ec_status ec_experiment_get_system(const ec_experiment* exp, ec_system_config* out) {
  return guarded([&] {
    EC_REQUIRE(exp != nullptr && out != nullptr, "null pointer argument");
    const auto& c = exp->spec.config;
    *out = {c.k_ens, c.n_files, c.cache_size, c.rho, c.rate};
    return EC_OK;
  });
}

ec_status ec_experiment_set_snr_db(ec_experiment* exp, const char* list) {
  return guarded([&] {
    EC_REQUIRE(exp != nullptr && list != nullptr, "null pointer argument");
    exp->spec.snr_db = edgecache::parse_snr_list(list);
    return EC_OK;
  });
}

ec_status ec_experiment_set_t_d(ec_experiment* exp, unsigned t_d) {
  return guarded([&] {
    EC_REQUIRE(exp != nullptr, "exp is null");
    exp->spec.t_d = t_d;
    return EC_OK;
  });
}

ec_status ec_experiment_set_policy(ec_experiment* exp, const unsigned* t, size_t n0) {
  return guarded([&] {
    EC_REQUIRE(exp != nullptr && (t != nullptr || n0 == 0), "null pointer argument");
    exp->spec.policy = policy_from(t, n0);
    return EC_OK;
  });
}

ec_status ec_experiment_set_trials(ec_experiment* exp, uint64_t trials) {
  return guarded([&] {
    EC_REQUIRE(exp != nullptr, "exp is null");
    exp->spec.mc_trials = trials;
    return EC_OK;
  });
}

ec_status ec_experiment_set_seed(ec_experiment* exp, uint64_t seed) {
  return guarded([&] {
    EC_REQUIRE(exp != nullptr, "exp is null");
    exp->spec.seed = seed;
    return EC_OK;
  });
}

ec_status ec_experiment_set_output(ec_experiment* exp, const char* path) {
  return guarded([&] {
    EC_REQUIRE(exp != nullptr && path != nullptr, "null pointer argument");
    exp->spec.output_path = path;
    return EC_OK;
  });
}

ec_status ec_experiment_set_format(ec_experiment* exp, const char* format) {
  return guarded([&] {
    EC_REQUIRE(exp != nullptr && format != nullptr, "null pointer argument");
    exp->spec.format = edgecache::parse_format(format);
    return EC_OK;
  });
}

ec_status ec_experiment_set_full_enumeration(ec_experiment* exp, int enabled) {
  return guarded([&] {
    EC_REQUIRE(exp != nullptr, "exp is null");
    exp->spec.full_enumeration = enabled != 0;
    return EC_OK;
  });
}

ec_status ec_experiment_render(ec_experiment* exp, const char** text, size_t* len) {
  return guarded([&] {
    EC_REQUIRE(exp != nullptr && text != nullptr, "null pointer argument");
    const auto outcome = edgecache::render_experiment(exp->spec);
    exp->rendered = outcome.output;
    *text = exp->rendered.c_str();
    if (len != nullptr) *len = exp->rendered.size();
    if (outcome.exit_code == edgecache::kExitValidationFailure) {
      return fail(EC_ERR_VALIDATION, outcome.summary.c_str());
    }
    return EC_OK;
  });
}

ec_status ec_experiment_run(ec_experiment* exp) {
  return guarded([&] {
    EC_REQUIRE(exp != nullptr, "exp is null");
    const auto outcome = edgecache::render_experiment(exp->spec);
    const auto& path = exp->spec.output_path;
    if (path.empty() || path == "-") {
      std::cout << outcome.output << std::flush;
    } else {
      std::ofstream file(path, std::ios::binary);
      if (!file || !(file << outcome.output)) {
        return fail(EC_ERR_IO, ("cannot write '" + path + "'").c_str());
      }
    }
    if (outcome.exit_code == edgecache::kExitValidationFailure) {
      return fail(EC_ERR_VALIDATION, outcome.summary.c_str());
    }
    return EC_OK;
  });
}

}  // extern "C"
