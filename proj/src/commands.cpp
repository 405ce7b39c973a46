#include "cusum/commands.hpp"

#include <fstream>
#include <map>
#include <stdexcept>

#include <fmt/core.h>

namespace cusum::cli {

PointReport evaluate_point(const RunConfig& config, int n, double h, double decision_interval) {
    config.validate();
    const auto problem = config.problem();
    const auto design = ChartDesign::for_shift(n, h, decision_interval, config.process.delta);
    if (n < config.space.n_range.lower || n > config.space.n_range.upper) {
        throw std::out_of_range(fmt::format("n={} is outside [{}, {}]", n,
                                            config.space.n_range.lower,
                                            config.space.n_range.upper));
    }
    PointReport r;
    r.design = design;
    r.evaluation = problem.evaluate(design); // rejects h and H out of range
    r.run_lengths = r.evaluation.run_lengths;
    r.literal = cost_breakdown(design, config.process, config.costs, r.run_lengths,
                               CostModelVariant{true});
    r.no_in_control_cost = cost_breakdown(design, config.process, config.costs, r.run_lengths,
                                          CostModelVariant{false});
    r.variant = config.variant;
    r.policy = config.constraints.policy;
    return r;
}

std::string format_point_report(const PointReport& r) {
    std::string out;
    auto line = [&](std::string_view label, double value) {
        out += fmt::format("{:<28}{:>16.6f}\n", label, value);
    };
    out += fmt::format("design: n={} h={} H={} K={}\n", r.design.n, r.design.h,
                       r.design.decision_interval, r.design.reference_value);
    line("ARL0", r.run_lengths.arl0);
    line("ARL_delta", r.run_lengths.arl_delta);
    line("tau (h)", r.literal.tau);
    line("S (samples)", r.literal.samples_in_control);
    line("in-control cost C0/lambda", r.literal.in_control_cost);
    line("out-of-control cost", r.literal.out_of_control_cost);
    line("false-alarm cost S*W/ARL0", r.literal.false_alarm_cost);
    line("repair cost Y", r.literal.repair_cost);
    line("sampling cost", r.literal.sampling_cost);
    line("cycle length (h)", r.literal.cycle_length);
    line("C_E literal", r.literal.total);
    line("C_E no-in-control-cost", r.no_in_control_cost.total);
    out += fmt::format("active variant: {}\n", r.variant.name());
    out += fmt::format("constraint policy: {}\n", to_string(r.policy));
    out += fmt::format("violation: {:.6f}\n", r.evaluation.violation);
    out += fmt::format("feasible: {}\n", r.evaluation.feasible ? "yes" : "no");
    return out;
}

nlohmann::json point_report_json(const PointReport& r) {
    auto terms = [](const CostBreakdown& b) {
        return nlohmann::json{
            {"tau", b.tau},
            {"S", b.samples_in_control},
            {"in_control_cost", b.in_control_cost},
            {"out_of_control_cost", b.out_of_control_cost},
            {"false_alarm_cost", b.false_alarm_cost},
            {"repair_cost", b.repair_cost},
            {"sampling_cost", b.sampling_cost},
            {"cycle_length", b.cycle_length},
            {"C_E", b.total},
        };
    };
    return {
        {"design",
         {{"n", r.design.n},
          {"h", r.design.h},
          {"H", r.design.decision_interval},
          {"K", r.design.reference_value}}},
        {"ARL0", r.run_lengths.arl0},
        {"ARL_delta", r.run_lengths.arl_delta},
        {"literal", terms(r.literal)},
        {"no-in-control-cost", terms(r.no_in_control_cost)},
        {"variant", std::string(r.variant.name())},
        {"constraint_policy", std::string(to_string(r.policy))},
        {"violation", r.evaluation.violation},
        {"feasible", r.evaluation.feasible},
    };
}

OptimizeResult optimize(const RunConfig& config, const moea::GenerationObserver& observer) {
    config.validate();
    OptimizeResult result;
    result.front = evolve_front(config.problem(), config.moea, observer);
    result.meta = metadata_for(config);
    return result;
}

std::vector<OutputFile> render_optimize_outputs(const OptimizeResult& result,
                                                const OutputSpec& output) {
    const std::filesystem::path path(output.path);
    if (output.format == OutputFormat::json) {
        return {{path, front_json(result.front, result.meta).dump(2) + "\n"}};
    }
    const auto stem = path.stem().string();
    return {
        {path, front_csv(result.front, result.meta)},
        {path.parent_path() / (stem + "_percentiles.csv"), percentile_csv(result.front, result.meta)},
        {path.parent_path() / (stem + "_plot.dat"), plot_data(result.front, result.meta)},
    };
}

std::string format_optimize_summary(const OptimizeResult& result) {
    const auto& front = result.front;
    std::string out = fmt::format("non-dominated solutions: {}{}\n", front.size(),
                                  front.all_feasible() ? "" : " (none feasible; least violating)");
    if (front.empty()) {
        return out;
    }
    out += fmt::format("variant: {}, constraint policy: {}, seed: {}\n",
                       result.meta.variant.name(), to_string(result.meta.policy),
                       result.meta.seed);
    out += fmt::format("percentiles ({}):\n", kPercentileOrdering);
    out += fmt::format("{:>4} {:>9} {:>9} {:>3} {:>6} {:>6}\n", "pct", "C_E", "ARL_delta", "n",
                       "h", "H");
    for (const auto& p : percentile_picks(front.size())) {
        const auto& r = front.rows[p.index];
        out += fmt::format("{:>4} {:>9.2f} {:>9.2f} {:>3} {:>6.2f} {:>6.2f}\n", p.percentile,
                           r.cost(), r.arl_delta(), r.design.n, r.design.h,
                           r.design.decision_interval);
    }
    return out;
}

void write_files(std::span<const OutputFile> files) {
    for (const auto& [path, content] : files) {
        if (path.has_parent_path()) {
            std::filesystem::create_directories(path.parent_path());
        }
        std::ofstream out(path, std::ios::binary);
        out << content;
        if (!out) {
            throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
        }
    }
}

std::vector<SensitivityRow> sensitivity(const RunConfig& config,
                                        std::span<const SensitivitySpec> specs) {
    // Runs keyed by their full config so shared low levels are optimized once.
    std::map<std::string, OptimizeResult> cache;
    std::map<std::string, std::string> failures;

    auto run = [&](const RunConfig& c) -> std::pair<const OptimizeResult*, std::string> {
        const auto key = config_to_json(c).dump();
        if (auto it = cache.find(key); it != cache.end()) {
            return {&it->second, {}};
        }
        if (auto it = failures.find(key); it != failures.end()) {
            return {nullptr, it->second};
        }
        try {
            auto [it, _] = cache.emplace(key, optimize(c));
            return {&it->second, {}};
        } catch (const std::exception& e) {
            failures.emplace(key, e.what());
            return {nullptr, e.what()};
        }
    };

    std::vector<SensitivityRow> rows;
    for (const auto& spec : specs) {
        for (const auto& [level, value] :
             {std::pair{std::string("low"), spec.low}, std::pair{std::string("high"), spec.high}}) {
            SensitivityRow base{spec.factor, spec.low, spec.high, level, value, "", {}, ""};
            std::pair<const OptimizeResult*, std::string> outcome{nullptr, {}};
            try {
                spec.validate();
                RunConfig c = config;
                set_factor(c, spec.factor, value);
                outcome = run(c);
            } catch (const std::exception& e) {
                outcome = {nullptr, e.what()};
            }
            const OptimizeResult* result = outcome.first;
            if (result == nullptr || result->front.empty()) {
                base.endpoint = "none";
                base.error = result == nullptr ? outcome.second : "empty front";
                rows.push_back(base);
                continue;
            }
            SensitivityRow lo = base;
            lo.endpoint = "min_C_E";
            lo.row = result->front.rows.front();
            SensitivityRow hi = base;
            hi.endpoint = "max_C_E";
            hi.row = result->front.rows.back();
            rows.push_back(std::move(lo));
            rows.push_back(std::move(hi));
        }
    }
    return rows;
}

std::string sensitivity_csv(std::span<const SensitivityRow> rows, const RunMetadata& meta) {
    std::string out = metadata_comment_block(meta);
    out += "factor,low,high,level,value,endpoint,";
    out += kFrontCsvHeader;
    out += ",error\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{},{},{},", r.factor, r.low, r.high, r.level, r.value,
                           r.endpoint);
        if (r.row) {
            out += fmt::format("{:.2f},{:.2f},{},{:.2f},{:.2f},", r.row->cost(),
                               r.row->arl_delta(), r.row->design.n, r.row->design.h,
                               r.row->design.decision_interval);
        } else {
            out += ",,,,,";
        }
        // Quote the message; it may contain commas.
        std::string message;
        for (char ch : r.error) {
            message += ch == '"' ? '\'' : ch;
        }
        out += r.error.empty() ? "" : "\"" + message + "\"";
        out += '\n';
    }
    return out;
}

nlohmann::json sensitivity_json(std::span<const SensitivityRow> rows, const RunMetadata& meta) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json entry{{"factor", r.factor}, {"low", r.low},     {"high", r.high},
                             {"level", r.level},   {"value", r.value}, {"endpoint", r.endpoint}};
        if (r.row) {
            entry["C_E"] = r.row->cost();
            entry["ARL_delta"] = r.row->arl_delta();
            entry["n"] = r.row->design.n;
            entry["h"] = r.row->design.h;
            entry["H"] = r.row->design.decision_interval;
        }
        if (!r.error.empty()) {
            entry["error"] = r.error;
        }
        list.push_back(std::move(entry));
    }
    return {{"metadata", metadata_json(meta)}, {"rows", std::move(list)}};
}

SimulateReport simulate(const SimulateRequest& request) {
    oracles::SimulationPlan plan;
    plan.replications = request.replications;
    plan.rng_seed = request.seed;
    plan.shift = request.shift;
    plan.reference_value = request.reference_value;
    plan.decision_interval = request.decision_interval;
    plan.validate();

    SimulateReport report;
    report.request = request;
    const double b = adjusted_decision_interval(request.decision_interval);
    const double k = request.reference_value;
    report.siegmund = combine_two_sided(one_sided_arl(-request.shift - k, b),
                                        one_sided_arl(request.shift - k, b));
    report.estimate = oracles::simulate_run_length(plan);
    report.relative_error = (report.estimate.mean - report.siegmund) / report.siegmund;
    return report;
}

std::string format_simulate_report(const SimulateReport& r) {
    std::string out;
    out += fmt::format("K={} H={} shift={} replications={} seed={}\n", r.request.reference_value,
                       r.request.decision_interval, r.request.shift, r.request.replications,
                       r.request.seed);
    out += fmt::format("{:>14} {:>12} {:>14} {:>10}\n", "monte_carlo", "ci95_half", "siegmund",
                       "rel_error");
    out += fmt::format("{:>14.4f} {:>12.4f} {:>14.4f} {:>10.4f}\n", r.estimate.mean,
                       r.estimate.half_width, r.siegmund, r.relative_error);
    return out;
}

nlohmann::json simulate_report_json(const SimulateReport& r) {
    return {
        {"K", r.request.reference_value},
        {"H", r.request.decision_interval},
        {"shift", r.request.shift},
        {"replications", r.request.replications},
        {"seed", r.request.seed},
        {"monte_carlo_mean", r.estimate.mean},
        {"ci95_half_width", r.estimate.half_width},
        {"std_dev", r.estimate.std_dev},
        {"siegmund", r.siegmund},
        {"relative_error", r.relative_error},
    };
}

} // namespace cusum::cli
