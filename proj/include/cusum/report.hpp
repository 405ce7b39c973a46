#pragma once

#include "cusum/config.hpp"
#include "cusum/pareto_front.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace cusum {

inline constexpr std::string_view kVersion = "1.0.0";
inline constexpr std::string_view kFrontCsvHeader = "C_E,ARL_delta,n,h,H";
inline constexpr std::string_view kPercentileOrdering = "ascending C_E, nearest rank";

/// Enough to re-derive any output table.
struct RunMetadata {
    std::uint64_t seed = 0;
    CostModelVariant variant;
    ConstraintPolicy policy = ConstraintPolicy::enforce;
    std::size_t population_size = 0;
    std::size_t generations = 0;
};

RunMetadata metadata_for(const RunConfig& config);

// "# key: value" lines, one per field, including the version.
std::string metadata_comment_block(const RunMetadata& meta);
nlohmann::json metadata_json(const RunMetadata& meta);

// Metadata block, then the header C_E,ARL_delta,n,h,H and one row per
// front member: two decimals for reals, n as an integer.
std::string front_csv(const ParetoFront& front, const RunMetadata& meta);

struct PercentilePick {
    int percentile = 0;
    std::size_t index = 0; // into the front
};

// 1st, 5th, 10th, ..., 100th percentile of a front of the given size by
// nearest rank. Indices are non-decreasing.
std::vector<PercentilePick> percentile_picks(std::size_t front_size);

std::string percentile_csv(const ParetoFront& front, const RunMetadata& meta);

// Whitespace-separated "C_E ARL_delta" pairs at full precision.
std::string plot_data(const ParetoFront& front, const RunMetadata& meta);

// Rows at full precision plus the percentile summary and metadata.
nlohmann::json front_json(const ParetoFront& front, const RunMetadata& meta);

} // namespace cusum
