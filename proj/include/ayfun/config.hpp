#pragma once

#include "ayfun/scenario.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ayfun::harness {

using scenarios::MetricKind;
using scenarios::PathKind;

enum class JobKind { coeffs, eval, verify, sweep };

JobKind job_kind_from_string(const std::string& s);

struct JobConfig {
    JobKind job = JobKind::verify;
    int n = 3;
    int max_n = 0; // coeffs: end of the n range (0 = just n)
    std::vector<int> resolutions;

    MetricKind metric_kind = MetricKind::nonkaehler_perturbed;
    double epsilon = 0.05;
    std::uint64_t metric_seed = 1;

    std::optional<std::uint64_t> potential_seed;
    double potential_amplitude = 0.05;
    std::optional<std::map<spectral::ModeIndex, spectral::cplx>> potential_modes;

    PathKind path_kind = PathKind::bridge;
    std::uint64_t path_seed = 2;
    double shift_constant = 1.0;

    int quad_order = 0; // 0 -> n + 3

    std::vector<std::uint64_t> seeds; // verify repetitions; empty -> {metric_seed}

    std::vector<int> sweep_resolutions;
    std::vector<int> sweep_quad_orders;
    std::vector<std::uint64_t> sweep_seeds;

    std::map<std::string, double> tolerances;
    bool i_know = false;         // allows loosening tolerances beyond 10x default
    bool corrupt_test_hook = false; // coeffs negative control
    int threads = 0;             // 0 -> hardware concurrency
    std::string output;

    spectral::GridSpec grid() const;
    int effective_quad_order() const { return quad_order > 0 ? quad_order : n + 3; }
};

// Parse + validate a JSON config file.  Unknown keys are errors; the
// alias-free contract is enforced up front, reporting the minimal usable
// resolution on rejection.  `i_know_flag` is OR-ed with the config's own
// "i_know" key before the tolerance guard runs.
JobConfig load_config(const std::string& path, bool i_know_flag = false);
JobConfig parse_config_text(const std::string& text, bool i_know_flag = false);

// Default tolerance for a residual-row tag; 0 means "exact zero required".
double default_tolerance(const std::string& tag);

// Tolerance for `tag` under `cfg`, enforcing the 10x-loosening guard.
double tolerance_for(const JobConfig& cfg, const std::string& tag);

} // namespace ayfun::harness
