#pragma once

#include "cusum/economics.hpp"
#include "cusum/moea.hpp"
#include "cusum/problem.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace cusum {

enum class OutputFormat { csv, json };

std::string_view to_string(OutputFormat format);
OutputFormat output_format_from_string(std::string_view name);

struct OutputSpec {
    OutputFormat format = OutputFormat::csv;
    std::string path = "front.csv";
    friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

/// One run's complete input. Keys missing from a config file take the
/// values of the bundled yogurt-bottling example; unknown keys are errors.
struct RunConfig {
    ProcessModel process;
    CostTimeParams costs;
    DesignSpace space;
    ArlConstraints constraints;
    moea::MoeaConfig moea;
    CostModelVariant variant;
    OutputSpec output;

    void validate() const;
    DesignProblem problem() const { return {process, costs, space, constraints, variant}; }
    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Yogurt-bottling scenario: C0=10, C1=100, lambda=0.01, d=0.5, y=0.1,
// W=50, Y=25, t=0.05, T0=T1=T2=2, gamma1=gamma2=1, ARL bounds 200/14,
// n in [2,20], h in [0.01,2], H in [0.0001,5], delta=1. Literal cost
// model, constraints enforced.
RunConfig example_sec5();

// Same scenario with constraints off and the in-control cost term dropped,
// the setting whose front matches the reference tables.
RunConfig reproduction_sec5();

RunConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const RunConfig& config);

// Throws std::runtime_error on I/O errors and std::invalid_argument on
// schema or range errors.
RunConfig load_config(const std::filesystem::path& path);

/// One-factor-at-a-time sweep entry.
struct SensitivitySpec {
    std::string factor;
    double low = 0.0;
    double high = 0.0;

    void validate() const;
};

// Names accepted by SensitivitySpec::factor.
std::span<const std::string_view> sensitivity_factors();

// Parses "factor=low:high".
SensitivitySpec parse_sensitivity_spec(std::string_view text);

// The low/high levels of the standard one-factor sensitivity study.
std::vector<SensitivitySpec> default_sensitivity_specs();

// Sets the named factor. Throws std::invalid_argument for unknown names.
void set_factor(RunConfig& config, std::string_view factor, double value);
double get_factor(const RunConfig& config, std::string_view factor);

} // namespace cusum
