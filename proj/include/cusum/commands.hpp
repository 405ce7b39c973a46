#pragma once

// The four CLI commands as library calls. The binary in tools/ only parses
// arguments and routes output; everything testable lives here.

#include "cusum/config.hpp"
#include "cusum/oracles.hpp"
#include "cusum/pareto_front.hpp"
#include "cusum/report.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace cusum::cli {

/// Single-point audit of the run lengths and every cost term.
struct PointReport {
    ChartDesign design;
    RunLengthProfile run_lengths;
    CostBreakdown literal;
    CostBreakdown no_in_control_cost;
    Evaluation evaluation; // under the config's variant and policy
    CostModelVariant variant;
    ConstraintPolicy policy = ConstraintPolicy::enforce;
};

// Throws std::out_of_range if (n, h, H) lies outside the config's space.
PointReport evaluate_point(const RunConfig& config, int n, double h, double decision_interval);
std::string format_point_report(const PointReport& report);
nlohmann::json point_report_json(const PointReport& report);

struct OptimizeResult {
    ParetoFront front;
    RunMetadata meta;
};

OptimizeResult optimize(const RunConfig& config, const moea::GenerationObserver& observer = {});

using OutputFile = std::pair<std::filesystem::path, std::string>;

// csv: <out>, <stem>_percentiles.csv and <stem>_plot.dat next to it.
// json: a single document at <out>.
std::vector<OutputFile> render_optimize_outputs(const OptimizeResult& result,
                                                const OutputSpec& output);
std::string format_optimize_summary(const OptimizeResult& result);

void write_files(std::span<const OutputFile> files);

struct SensitivityRow {
    std::string factor;
    double low = 0.0;
    double high = 0.0;
    std::string level;    // "low" or "high"
    double value = 0.0;   // factor value of this run
    std::string endpoint; // "min_C_E" or "max_C_E"
    std::optional<ParetoRow> row;
    std::string error;    // set when the run failed
};

// For every spec, optimizes with the factor at its low and at its high
// level (all else at the config's values) and reports the two front
// endpoints of each run. Failures are recorded per row; the sweep goes on.
std::vector<SensitivityRow> sensitivity(const RunConfig& config,
                                        std::span<const SensitivitySpec> specs);
std::string sensitivity_csv(std::span<const SensitivityRow> rows, const RunMetadata& meta);
nlohmann::json sensitivity_json(std::span<const SensitivityRow> rows, const RunMetadata& meta);

struct SimulateRequest {
    double reference_value = 0.5;
    double decision_interval = 4.19;
    double shift = 1.0;
    std::uint64_t replications = 200000;
    std::uint64_t seed = 1;
};

struct SimulateReport {
    SimulateRequest request;
    oracles::RunLengthEstimate estimate;
    double siegmund = 0.0;       // two-sided closed form at the same shift
    double relative_error = 0.0; // (mc - siegmund) / siegmund
};

SimulateReport simulate(const SimulateRequest& request);
std::string format_simulate_report(const SimulateReport& report);
nlohmann::json simulate_report_json(const SimulateReport& report);

} // namespace cusum::cli
