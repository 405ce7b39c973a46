#include "cusum/report.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

namespace cusum {

RunMetadata metadata_for(const RunConfig& config) {
    return RunMetadata{config.moea.rng_seed, config.variant, config.constraints.policy,
                       config.moea.population_size, config.moea.generations};
}

std::string metadata_comment_block(const RunMetadata& meta) {
    std::string out;
    out += fmt::format("# version: cusum {}\n", kVersion);
    out += fmt::format("# seed: {}\n", meta.seed);
    out += fmt::format("# variant: {}\n", meta.variant.name());
    out += fmt::format("# constraint_policy: {}\n", to_string(meta.policy));
    out += fmt::format("# population_size: {}\n", meta.population_size);
    out += fmt::format("# generations: {}\n", meta.generations);
    return out;
}

nlohmann::json metadata_json(const RunMetadata& meta) {
    return {
        {"version", std::string(kVersion)},
        {"seed", meta.seed},
        {"variant", std::string(meta.variant.name())},
        {"constraint_policy", std::string(to_string(meta.policy))},
        {"population_size", meta.population_size},
        {"generations", meta.generations},
    };
}

namespace {

std::string csv_row(const ParetoRow& r) {
    return fmt::format("{:.2f},{:.2f},{},{:.2f},{:.2f}", r.cost(), r.arl_delta(), r.design.n,
                       r.design.h, r.design.decision_interval);
}

} // namespace

std::string front_csv(const ParetoFront& front, const RunMetadata& meta) {
    std::string out = metadata_comment_block(meta);
    out += kFrontCsvHeader;
    out += '\n';
    for (const auto& row : front.rows) {
        out += csv_row(row);
        out += '\n';
    }
    return out;
}

std::vector<PercentilePick> percentile_picks(std::size_t front_size) {
    std::vector<PercentilePick> picks;
    if (front_size == 0) {
        return picks;
    }
    auto pick = [&](int p) {
        const double rank = std::ceil(static_cast<double>(p) / 100.0 * static_cast<double>(front_size));
        const auto index = static_cast<std::size_t>(std::max(1.0, rank)) - 1;
        picks.push_back({p, std::min(index, front_size - 1)});
    };
    pick(1);
    for (int p = 5; p <= 100; p += 5) {
        pick(p);
    }
    return picks;
}

std::string percentile_csv(const ParetoFront& front, const RunMetadata& meta) {
    std::string out = metadata_comment_block(meta);
    out += fmt::format("# ordering: {}\n", kPercentileOrdering);
    out += "percentile,";
    out += kFrontCsvHeader;
    out += '\n';
    for (const auto& p : percentile_picks(front.size())) {
        out += fmt::format("{},{}\n", p.percentile, csv_row(front.rows[p.index]));
    }
    return out;
}

std::string plot_data(const ParetoFront& front, const RunMetadata& meta) {
    std::string out = metadata_comment_block(meta);
    out += "# C_E ARL_delta\n";
    for (const auto& row : front.rows) {
        out += fmt::format("{:.17g} {:.17g}\n", row.cost(), row.arl_delta());
    }
    return out;
}

nlohmann::json front_json(const ParetoFront& front, const RunMetadata& meta) {
    auto row_json = [](const ParetoRow& r) {
        return nlohmann::json{
            {"C_E", r.cost()},
            {"ARL_delta", r.arl_delta()},
            {"n", r.design.n},
            {"h", r.design.h},
            {"H", r.design.decision_interval},
            {"ARL0", r.evaluation.run_lengths.arl0},
            {"violation", r.evaluation.violation},
            {"feasible", r.feasible()},
        };
    };
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : front.rows) {
        rows.push_back(row_json(r));
    }
    nlohmann::json percentiles = nlohmann::json::array();
    for (const auto& p : percentile_picks(front.size())) {
        auto entry = row_json(front.rows[p.index]);
        entry["percentile"] = p.percentile;
        entry["index"] = p.index;
        percentiles.push_back(std::move(entry));
    }
    return {
        {"metadata", metadata_json(meta)},
        {"rows", std::move(rows)},
        {"percentiles", {{"ordering", std::string(kPercentileOrdering)}, {"rows", std::move(percentiles)}}},
    };
}

} // namespace cusum
