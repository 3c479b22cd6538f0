#pragma once

#include "ayfun/config.hpp"
#include "ayfun/functionals.hpp"

#include <json.hpp>

#include <string>

namespace ayfun::harness {

// Exit codes: 0 all pass, 1 residual failure, 2 configuration error
// (ConfigError propagates to the caller for code 2).
inline constexpr int exit_pass = 0;
inline constexpr int exit_residual_failure = 1;
inline constexpr int exit_config_error = 2;

int run_coeffs(const JobConfig& cfg, nlohmann::json& report);
int run_eval(const JobConfig& cfg, nlohmann::json& report);
int run_verify(const JobConfig& cfg, nlohmann::json& report);
int run_sweep(const JobConfig& cfg, std::string& csv);

int run_job(const JobConfig& cfg, std::string& rendered_output);

// Builds scenario + potentials the way the verify/sweep jobs do.
scenarios::MetricScenario build_metric(const JobConfig& cfg, std::uint64_t seed);
scenarios::Potential build_potential(const JobConfig& cfg,
                                     const scenarios::MetricScenario& scenario,
                                     std::uint64_t seed);

// Debug dump of a form: degree, component keys, per-component mode tables.
nlohmann::json form_to_json(const spectral::Form& form);

} // namespace ayfun::harness
