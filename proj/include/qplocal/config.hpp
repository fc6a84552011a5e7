#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qplocal/assemble.hpp"
#include "qplocal/msa.hpp"

namespace qplocal {

/// Invalid configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& message) : std::runtime_error(message) {}
};

/// One run, one file.  The resolved member echoes every defaulted value back
/// so manifests pin the exact inputs.
struct ExperimentConfig {
    ModelParameters model;
    std::vector<double> energies;  ///< single E or a resolved E grid

    int scale = 20;                ///< window radius N for greens/badset
    std::vector<int> scales;       ///< ladder for the msa subcommand
    MsaExponents exponents;
    PhaseSampler sampler = PhaseSampler::grid(64);
    bool sampler_given = false;
    std::uint64_t seed = 0;
    int workers = 0;
    long long lyapunov_steps = 100000;
    double weight_floor = 1e-8;
    long long work_budget = 1000000;

    std::string output_dir = "out";
    bool write_csv = true;
    bool write_json = true;

    nlohmann::ordered_json resolved;
};

/// Parses and validates a config document.  Throws ConfigError with a
/// field-level message on the first violation.
ExperimentConfig parse_config(const nlohmann::json& doc);

ExperimentConfig load_config_file(const std::string& path);

/// Parses a function spec: a builtin name or {"modes": {"k": [re, im]}} with
/// optional "normalization": "require" | "accept" | "rescale" (default
/// rescale for explicit tables, matching the constructor contract).
AnalyticTorusFunction parse_function_spec(const nlohmann::json& spec, const std::string& field);

}  // namespace qplocal
