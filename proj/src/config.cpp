#include "cusum/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <set>
#include <stdexcept>
#include <type_traits>

#include <fmt/core.h>

namespace cusum {

using nlohmann::json;

std::string_view to_string(OutputFormat format) {
    return format == OutputFormat::csv ? "csv" : "json";
}

OutputFormat output_format_from_string(std::string_view name) {
    if (name == "csv") {
        return OutputFormat::csv;
    }
    if (name == "json") {
        return OutputFormat::json;
    }
    throw std::invalid_argument("unknown output format '" + std::string(name) + "'");
}

void RunConfig::validate() const {
    process.validate();
    costs.validate();
    space.validate();
    constraints.validate();
    moea.validate();
}

RunConfig example_sec5() {
    RunConfig c;
    c.process = ProcessModel{1.0, 0.01};
    c.costs = CostTimeParams{};
    c.space = DesignSpace{{2, 20}, {0.01, 2.0}, {0.0001, 5.0}};
    c.constraints = ArlConstraints{200.0, 14.0, ConstraintPolicy::enforce};
    c.moea = moea::MoeaConfig{};
    c.variant = CostModelVariant{true};
    return c;
}

RunConfig reproduction_sec5() {
    RunConfig c = example_sec5();
    c.constraints.policy = ConstraintPolicy::off;
    c.variant = CostModelVariant{false};
    return c;
}

namespace {

// Reads keys out of one JSON object and rejects whatever was not read.
class Section {
public:
    Section(const json& doc, std::string name) : doc_(doc), name_(std::move(name)) {
        if (!doc_.is_object()) {
            throw std::invalid_argument(fmt::format("'{}' must be an object", name_));
        }
    }

    template <typename T>
    void read(const char* key, T& target) {
        seen_.insert(key);
        auto it = doc_.find(key);
        if (it == doc_.end()) {
            return;
        }
        if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
            const bool ok = std::is_unsigned_v<T> ? it->is_number_unsigned()
                                                  : it->is_number_integer();
            if (!ok) {
                throw std::invalid_argument(fmt::format(
                    "{}.{} must be a{} integer", name_, key,
                    std::is_unsigned_v<T> ? " non-negative" : "n"));
            }
        }
        try {
            target = it->template get<T>();
        } catch (const json::exception& e) {
            throw std::invalid_argument(fmt::format("{}.{}: {}", name_, key, e.what()));
        }
    }

    const json* child(const char* key) {
        seen_.insert(key);
        auto it = doc_.find(key);
        return it == doc_.end() ? nullptr : &*it;
    }

    void finish() const {
        for (const auto& item : doc_.items()) {
            if (!seen_.contains(item.key())) {
                throw std::invalid_argument(
                    fmt::format("unknown key '{}' in '{}'", item.key(), name_));
            }
        }
    }

private:
    const json& doc_;
    std::string name_;
    std::set<std::string> seen_;
};

template <typename Range, typename T>
void read_range(Section& s, const char* key, Range& range) {
    if (const json* node = s.child(key)) {
        if (!node->is_array() || node->size() != 2) {
            throw std::invalid_argument(fmt::format("{} must be a [lower, upper] pair", key));
        }
        if constexpr (std::is_integral_v<T>) {
            if (!(*node)[0].is_number_integer() || !(*node)[1].is_number_integer()) {
                throw std::invalid_argument(fmt::format("{} bounds must be integers", key));
            }
        }
        try {
            range.lower = (*node)[0].get<T>();
            range.upper = (*node)[1].get<T>();
        } catch (const json::exception& e) {
            throw std::invalid_argument(fmt::format("{}: {}", key, e.what()));
        }
    }
}

} // namespace

RunConfig config_from_json(const json& doc) {
    RunConfig c = example_sec5();
    Section root(doc, "config");

    if (const json* node = root.child("process")) {
        Section s(*node, "process");
        s.read("delta", c.process.delta);
        s.read("lambda", c.process.lambda);
        s.finish();
    }
    if (const json* node = root.child("costs")) {
        Section s(*node, "costs");
        s.read("c0", c.costs.c0);
        s.read("c1", c.costs.c1);
        s.read("w", c.costs.w);
        s.read("y_cost", c.costs.y_cost);
        s.read("d", c.costs.d);
        s.read("y_var", c.costs.y_var);
        s.read("t", c.costs.t);
        s.read("t0", c.costs.t0);
        s.read("t1", c.costs.t1);
        s.read("t2", c.costs.t2);
        s.read("gamma1", c.costs.gamma1);
        s.read("gamma2", c.costs.gamma2);
        s.finish();
    }
    if (const json* node = root.child("space")) {
        Section s(*node, "space");
        read_range<IntRange, int>(s, "n_range", c.space.n_range);
        read_range<RealRange, double>(s, "h_range", c.space.h_range);
        read_range<RealRange, double>(s, "H_range", c.space.H_range);
        s.finish();
    }
    if (const json* node = root.child("constraints")) {
        Section s(*node, "constraints");
        s.read("arl_lower_bound", c.constraints.arl_lower_bound);
        s.read("arl_upper_bound", c.constraints.arl_upper_bound);
        std::string policy(to_string(c.constraints.policy));
        s.read("policy", policy);
        c.constraints.policy = constraint_policy_from_string(policy);
        s.finish();
    }
    if (const json* node = root.child("moea")) {
        Section s(*node, "moea");
        s.read("population_size", c.moea.population_size);
        s.read("generations", c.moea.generations);
        s.read("crossover_probability", c.moea.crossover_probability);
        s.read("crossover_distribution_index", c.moea.crossover_distribution_index);
        s.read("mutation_probability_per_gene", c.moea.mutation_probability_per_gene);
        s.read("mutation_distribution_index", c.moea.mutation_distribution_index);
        s.read("rng_seed", c.moea.rng_seed);
        s.finish();
    }
    if (const json* node = root.child("variant")) {
        Section s(*node, "variant");
        s.read("include_in_control_cost", c.variant.include_in_control_cost);
        s.finish();
    }
    if (const json* node = root.child("output")) {
        Section s(*node, "output");
        std::string format(to_string(c.output.format));
        s.read("format", format);
        c.output.format = output_format_from_string(format);
        s.read("path", c.output.path);
        s.finish();
    }
    root.finish();
    c.validate();
    return c;
}

json config_to_json(const RunConfig& c) {
    return json{
        {"process", {{"delta", c.process.delta}, {"lambda", c.process.lambda}}},
        {"costs",
         {{"c0", c.costs.c0},
          {"c1", c.costs.c1},
          {"w", c.costs.w},
          {"y_cost", c.costs.y_cost},
          {"d", c.costs.d},
          {"y_var", c.costs.y_var},
          {"t", c.costs.t},
          {"t0", c.costs.t0},
          {"t1", c.costs.t1},
          {"t2", c.costs.t2},
          {"gamma1", c.costs.gamma1},
          {"gamma2", c.costs.gamma2}}},
        {"space",
         {{"n_range", {c.space.n_range.lower, c.space.n_range.upper}},
          {"h_range", {c.space.h_range.lower, c.space.h_range.upper}},
          {"H_range", {c.space.H_range.lower, c.space.H_range.upper}}}},
        {"constraints",
         {{"arl_lower_bound", c.constraints.arl_lower_bound},
          {"arl_upper_bound", c.constraints.arl_upper_bound},
          {"policy", to_string(c.constraints.policy)}}},
        {"moea",
         {{"population_size", c.moea.population_size},
          {"generations", c.moea.generations},
          {"crossover_probability", c.moea.crossover_probability},
          {"crossover_distribution_index", c.moea.crossover_distribution_index},
          {"mutation_probability_per_gene", c.moea.mutation_probability_per_gene},
          {"mutation_distribution_index", c.moea.mutation_distribution_index},
          {"rng_seed", c.moea.rng_seed}}},
        {"variant", {{"include_in_control_cost", c.variant.include_in_control_cost}}},
        {"output", {{"format", to_string(c.output.format)}, {"path", c.output.path}}},
    };
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open config '{}'", path.string()));
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(fmt::format("{}: {}", path.string(), e.what()));
    }
    return config_from_json(doc);
}

namespace {

constexpr std::array<std::string_view, 12> kFactors = {
    "delta", "c0", "c1", "w", "y_cost", "d", "y_var", "lambda", "t", "t0", "t1", "t2"};

double* factor_slot(RunConfig& c, std::string_view factor) {
    if (factor == "delta") return &c.process.delta;
    if (factor == "lambda") return &c.process.lambda;
    if (factor == "c0") return &c.costs.c0;
    if (factor == "c1") return &c.costs.c1;
    if (factor == "w") return &c.costs.w;
    if (factor == "y_cost") return &c.costs.y_cost;
    if (factor == "d") return &c.costs.d;
    if (factor == "y_var") return &c.costs.y_var;
    if (factor == "t") return &c.costs.t;
    if (factor == "t0") return &c.costs.t0;
    if (factor == "t1") return &c.costs.t1;
    if (factor == "t2") return &c.costs.t2;
    throw std::invalid_argument("unknown sensitivity factor '" + std::string(factor) + "'");
}

double parse_double(std::string_view text) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return value;
}

} // namespace

std::span<const std::string_view> sensitivity_factors() { return kFactors; }

void SensitivitySpec::validate() const {
    RunConfig scratch;
    factor_slot(scratch, factor);
    if (low == high) {
        throw std::invalid_argument(fmt::format("factor {}: low and high levels coincide", factor));
    }
}

SensitivitySpec parse_sensitivity_spec(std::string_view text) {
    const auto eq = text.find('=');
    const auto colon = text.find(':', eq == std::string_view::npos ? 0 : eq);
    if (eq == std::string_view::npos || colon == std::string_view::npos) {
        throw std::invalid_argument("expected factor=low:high, got '" + std::string(text) + "'");
    }
    SensitivitySpec spec{std::string(text.substr(0, eq)),
                         parse_double(text.substr(eq + 1, colon - eq - 1)),
                         parse_double(text.substr(colon + 1))};
    spec.validate();
    return spec;
}

std::vector<SensitivitySpec> default_sensitivity_specs() {
    return {
        {"delta", 1.0, 1.5}, {"delta", 1.0, 2.0}, {"delta", 1.0, 2.5},
        {"c0", 10.0, 20.0},  {"c1", 100.0, 200.0}, {"w", 50.0, 100.0},
        {"y_cost", 25.0, 50.0}, {"d", 0.5, 5.0},   {"y_var", 0.1, 1.0},
        {"lambda", 0.01, 0.05}, {"t", 0.05, 0.25}, {"t0", 2.0, 5.0},
        {"t1", 2.0, 5.0},    {"t2", 2.0, 5.0},
    };
}

void set_factor(RunConfig& config, std::string_view factor, double value) {
    *factor_slot(config, factor) = value;
}

double get_factor(const RunConfig& config, std::string_view factor) {
    RunConfig copy = config;
    return *factor_slot(copy, factor);
}

} // namespace cusum
