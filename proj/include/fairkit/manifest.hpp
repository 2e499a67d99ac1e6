#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fairkit {

using FeatureMap = std::map<std::string, std::string>;

/// Inclusive range of admissible age labels.
struct LabelRange {
    int lo = 0;
    int hi = 100;

    bool contains(int age) const noexcept { return age >= lo && age <= hi; }
};

/// One sample of the pool.
struct Record {
    std::string id;
    std::string source;
    int age = 0;
    FeatureMap features;
    std::optional<std::string> path;

    bool operator==(const Record&) const = default;
};

struct GroupKey {
    int age = 0;
    std::string feature;
    std::string state;

    auto operator<=>(const GroupKey&) const = default;
};

struct GroupCounts {
    std::map<GroupKey, std::size_t> cells;
    std::map<std::pair<GroupKey, std::string>, std::size_t> per_source;
};

/// Parses line-delimited records. Blank lines and lines starting with '#'
/// are skipped but still counted for line numbers in error messages.
std::vector<Record> parse_manifest(std::istream& in, const LabelRange& range = {},
                                   const std::string& origin = "manifest");

std::vector<Record> load_manifest(const std::filesystem::path& path, const LabelRange& range = {});

/// Loads several manifests into one pool; ids must be unique across all of
/// them and every record must carry the same feature names.
std::vector<Record> load_manifests(std::span<const std::filesystem::path> paths,
                                   const LabelRange& range = {});

std::string record_to_json_line(const Record& record);

/// Writes one record per line, optionally preceded by a '#' comment line.
void write_manifest(std::ostream& out, std::span<const Record> records,
                    const std::string& comment = {});

void save_manifest(const std::filesystem::path& path, std::span<const Record> records,
                   const std::string& comment = {});

/// Feature names shared by every record (empty for an empty pool).
std::vector<std::string> feature_names(std::span<const Record> records);

/// Sorted distinct states of `feature` in the pool.
std::vector<std::string> feature_states(std::span<const Record> records, const std::string& feature);

/// Cell counts per (age, feature, state) and per source. Iteration order is
/// age ascending, then feature name, then state.
GroupCounts group_counts(std::span<const Record> records);

}  // namespace fairkit
