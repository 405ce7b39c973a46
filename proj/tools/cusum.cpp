// cusum: economic-statistical CUSUM chart design from the command line.
//
//   cusum evaluate N h H          audit one design
//   cusum optimize                NSGA-II Pareto front
//   cusum sensitivity [-f spec]   one-factor-at-a-time sweeps
//   cusum simulate                Monte-Carlo run length vs. closed form

#include "cusum/commands.hpp"
#include "cusum/config.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

struct CommonOptions {
    std::string config = "example_sec5";
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<std::string> variant;
    std::optional<std::string> constraints;
};

cusum::RunConfig resolve_config(const CommonOptions& opts) {
    cusum::RunConfig config;
    if (std::filesystem::exists(opts.config)) {
        config = cusum::load_config(opts.config);
    } else if (opts.config == "example_sec5") {
        config = cusum::example_sec5();
    } else if (opts.config == "reproduction_sec5") {
        config = cusum::reproduction_sec5();
    } else {
        throw std::runtime_error("config '" + opts.config + "' is neither a file nor a bundled fixture");
    }
    if (opts.seed) {
        config.moea.rng_seed = *opts.seed;
    }
    if (opts.variant) {
        config.variant = cusum::CostModelVariant::from_name(*opts.variant);
    }
    if (opts.constraints) {
        config.constraints.policy = cusum::constraint_policy_from_string(*opts.constraints);
    }
    if (opts.format) {
        config.output.format = cusum::output_format_from_string(*opts.format);
    }
    if (opts.out) {
        config.output.path = *opts.out;
    }
    config.validate();
    return config;
}

// Prints to stdout, or writes to --out when given.
void emit(const CommonOptions& opts, const std::string& text) {
    if (opts.out) {
        const std::vector<cusum::cli::OutputFile> files{{*opts.out, text}};
        cusum::cli::write_files(files);
        fmt::print("wrote {}\n", *opts.out);
    } else {
        fmt::print("{}", text);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Economic-statistical design of CUSUM control charts"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonOptions opts;
    app.add_option("--config", opts.config,
                   "config file, or a bundled fixture: example_sec5, reproduction_sec5")
        ->capture_default_str();
    app.add_option("--seed", opts.seed, "RNG seed (overrides the config)");
    app.add_option("--out", opts.out, "output path");
    app.add_option("--format", opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--variant", opts.variant, "cost model: literal or no-in-control-cost")
        ->check(CLI::IsMember({"literal", "no-in-control-cost"}));
    app.add_option("--constraints", opts.constraints, "ARL constraint policy")
        ->check(CLI::IsMember({"enforce", "penalty", "off"}));

    auto* evaluate = app.add_subcommand("evaluate", "audit ARLs and cost terms of one design");
    int n = 0;
    double h = 0.0;
    double big_h = 0.0;
    evaluate->add_option("sample-size", n, "n, items per sample")->required();
    evaluate->add_option("interval", h, "h, hours between samples")->required();
    evaluate->add_option("decision-interval", big_h, "H, in sigma units")->required();

    auto* optimize = app.add_subcommand("optimize", "compute the Pareto front with NSGA-II");

    auto* sensitivity = app.add_subcommand("sensitivity", "one-factor-at-a-time sweeps");
    std::vector<std::string> factor_specs;
    sensitivity->add_option("-f,--factor", factor_specs,
                            "factor=low:high (repeatable; defaults to the standard study levels)");

    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo ARL against the closed form");
    std::optional<double> reference_value;
    std::optional<double> shift;
    double sim_h = 4.19;
    std::uint64_t replications = 200000;
    simulate->add_option("-K,--reference-value", reference_value, "K (default delta/2)");
    simulate->add_option("-H,--decision-interval", sim_h, "H")->capture_default_str();
    simulate->add_option("--shift", shift, "mean shift in sigma (default delta; 0 = in control)");
    simulate->add_option("--replications", replications, "replications")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        const auto config = resolve_config(opts);
        const bool json = config.output.format == cusum::OutputFormat::json;

        if (*evaluate) {
            const auto report = cusum::cli::evaluate_point(config, n, h, big_h);
            emit(opts, json ? cusum::cli::point_report_json(report).dump(2) + "\n"
                            : cusum::cli::format_point_report(report));
        } else if (*optimize) {
            const auto result = cusum::cli::optimize(config);
            const auto files = cusum::cli::render_optimize_outputs(result, config.output);
            cusum::cli::write_files(files);
            fmt::print("{}", cusum::cli::format_optimize_summary(result));
            for (const auto& [path, _] : files) {
                fmt::print("wrote {}\n", path.string());
            }
        } else if (*sensitivity) {
            std::vector<cusum::SensitivitySpec> specs;
            for (const auto& text : factor_specs) {
                specs.push_back(cusum::parse_sensitivity_spec(text));
            }
            if (specs.empty()) {
                specs = cusum::default_sensitivity_specs();
            }
            const auto rows = cusum::cli::sensitivity(config, specs);
            const auto meta = cusum::metadata_for(config);
            emit(opts, json ? cusum::cli::sensitivity_json(rows, meta).dump(2) + "\n"
                            : cusum::cli::sensitivity_csv(rows, meta));
            bool failed = false;
            for (const auto& r : rows) {
                if (!r.error.empty()) {
                    fmt::print(stderr, "factor {} ({}): {}\n", r.factor, r.level, r.error);
                    failed = true;
                }
            }
            if (failed) {
                return 1;
            }
        } else if (*simulate) {
            cusum::cli::SimulateRequest request;
            request.reference_value = reference_value.value_or(config.process.delta / 2.0);
            request.decision_interval = sim_h;
            request.shift = shift.value_or(config.process.delta);
            request.replications = replications;
            request.seed = config.moea.rng_seed;
            const auto report = cusum::cli::simulate(request);
            emit(opts, json ? cusum::cli::simulate_report_json(report).dump(2) + "\n"
                            : cusum::cli::format_simulate_report(report));
        }
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
    return 0;
}
