#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairkit/augmentation.hpp"
#include "fairkit/curation.hpp"
#include "fairkit/manifest.hpp"

namespace fairkit {

inline constexpr const char* kVersion = "0.1.0";

struct OodConfig {
    std::optional<int> k;
    double shrinkage = 1e-3;
    double floor = 1e-6;
};

struct AugmentationConfig {
    /// Feature whose cells drive ratios and sampling; empty means the first
    /// curation priority feature.
    std::string feature;
    TransformBounds bounds;
    std::size_t budget = 20000;
    FilterRange filter;
};

struct MetricsConfig {
    double t = 3.0;
    std::vector<std::string> features;
};

/// Everything a run depends on. Serialized into every artifact.
struct PipelineConfig {
    std::uint64_t seed = 0;
    LabelRange labels;
    CurationConfig curation;
    OodConfig ood;
    AugmentationConfig augmentation;
    MetricsConfig metrics;

    nlohmann::ordered_json to_json() const;
    /// Keys absent from `doc` keep their defaults. Throws ConfigError on
    /// wrong types.
    static PipelineConfig from_json(const nlohmann::json& doc);
    static PipelineConfig load(const std::filesystem::path& path);

    std::string augmentation_feature() const;
};

/// "fairkit <version> config=<compact json>" for '#' header lines.
std::string provenance(const PipelineConfig& config);

}  // namespace fairkit
