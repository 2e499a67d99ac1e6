#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fairkit/manifest.hpp"

namespace fairkit {

struct CurationConfig {
    double q_low = 0.2;
    double q_high = 0.8;
    std::uint64_t seed = 0;
    /// The first feature is balanced exactly; the rest stratify selections.
    std::vector<std::string> feature_priority;

    /// Throws ConfigError on q_low >= q_high, quantiles outside (0, 1) or an
    /// empty priority list.
    void validate() const;
};

/// Per-age, per-state sample counts of one feature. Every age maps every
/// state of the feature, with zero for absent cells.
using StateCounts = std::map<int, std::map<std::string, std::size_t>>;

StateCounts state_counts(std::span<const Record> records, const std::string& feature);

struct Thresholds {
    std::map<int, std::size_t> per_age;  // post-clamp
    std::map<int, std::size_t> raw;      // min over states before clamping
    std::size_t min_sample = 0;
    std::size_t max_sample = 0;
};

/// Clamp bounds from per-state count quantiles across ages, then
/// threshold(age) = min(max_sample, max(min_sample, min_s count(age, s))).
Thresholds compute_thresholds(const StateCounts& counts, const CurationConfig& config);

/// Same, reading the (age, feature, state) cells of `counts`. Throws
/// DataError when `feature` has no cells.
Thresholds compute_thresholds(const GroupCounts& counts, const CurationConfig& config,
                              const std::string& feature);

struct CurationPlan {
    std::vector<std::string> selected_ids;  // pool order
    std::string feature;                    // balanced feature
    std::vector<std::string> sources;       // sorted
    Thresholds thresholds;
    std::vector<int> dropped_ages;          // clamped threshold 0
    std::map<GroupKey, std::size_t> per_group_counts;
    std::map<std::pair<GroupKey, std::string>, std::size_t> per_source_counts;
    /// (age, state) cells of the balanced feature that could not reach the
    /// threshold, with the missing amount.
    std::map<std::pair<int, std::string>, std::size_t> shortfall;
};

/// Balanced multi-source selection. Deterministic in (pool order, config).
CurationPlan curate(std::span<const Record> pool, const CurationConfig& config);

/// Records of `pool` whose ids appear in the plan, in pool order.
std::vector<Record> selected_records(std::span<const Record> pool, const CurationPlan& plan);

}  // namespace fairkit
