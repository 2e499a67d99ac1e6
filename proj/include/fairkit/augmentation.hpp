#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairkit/image.hpp"
#include "fairkit/kernels.hpp"
#include "fairkit/manifest.hpp"
#include "fairkit/ood.hpp"

namespace fairkit {

/// One (age class, feature state) cell.
struct CellKey {
    int age = 0;
    std::string state;

    auto operator<=>(const CellKey&) const = default;
};

using CellCounts = std::map<CellKey, std::size_t>;

CellCounts cell_counts(std::span<const Record> records, const std::string& feature);

struct AugRatioTable {
    double median_num = 0.0;
    double mean_exact = 0.0;
    std::size_t mean_num = 0;  // mean rounded half-up, used for max_ratio
    std::size_t max_num = 0;
    int max_ratio = 0;
    std::map<CellKey, int> ratios;
    std::vector<CellKey> empty_cells;  // ratio 0, cannot be augmented
};

/// aug_ratio = min(ceil(median / count), ceil(max / mean)) per non-empty
/// cell. Statistics are taken over the non-empty cells. Throws DataError
/// when every cell is empty.
AugRatioTable plan_ratios(const CellCounts& counts);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool operator==(const Interval&) const = default;
};

struct TransformBounds {
    Interval rotation_deg{-15.0, 15.0};
    Interval translate{-0.1, 0.1};  // fraction of width / height, both axes
    Interval scale{0.9, 1.1};
    Interval shear{-0.1, 0.1};
    Interval brightness{-0.2, 0.2};  // fraction of full scale
    Interval contrast{0.8, 1.2};

    static TransformBounds identity();
    /// Throws ConfigError when any lo > hi or a bound is non-finite.
    void validate() const;

    bool operator==(const TransformBounds&) const = default;
};

struct TransformSpec {
    std::string aug_id;
    std::string source_id;
    int age = 0;
    FeatureMap features;
    double rotation_deg = 0.0;
    double translate_x = 0.0;
    double translate_y = 0.0;
    double scale = 1.0;
    double shear = 0.0;
    double brightness_delta = 0.0;
    double contrast_factor = 1.0;
    std::uint64_t seed = 0;

    bool is_identity() const noexcept;
    bool operator==(const TransformSpec&) const = default;
};

/// aug_ratio(cell) specs per record, parameters uniform within `bounds` from
/// a per-spec stream derived from `seed`. Records whose cell has no ratio
/// yield nothing.
std::vector<TransformSpec> generate_specs(std::span<const Record> records, const AugRatioTable& ratios,
                                          const std::string& feature, const TransformBounds& bounds,
                                          std::uint64_t seed);

/// Output pixel -> source pixel map of the spec's affine warp
/// (rotation, scale, shear, translation about the image center).
kernels::PixelMap inverse_map(const TransformSpec& spec, int width, int height);

/// Affine warp with bilinear sampling and clamped borders, then additive
/// brightness and contrast about the channel mean, both clamped to [0, 255].
RgbImage apply_transform(const RgbImage& image, const TransformSpec& spec,
                         kernels::Exec exec = kernels::Exec::parallel);

struct FilterSegment {
    double q_lo = 0.0;
    double q_hi = 1.0;

    bool operator==(const FilterSegment&) const = default;
};

struct FilterRange {
    std::vector<FilterSegment> segments{FilterSegment{}};

    /// Parses "0.05:1.00" or "0.00:0.05,0.95:1.00".
    static FilterRange parse(const std::string& text);
    std::string to_string() const;
    /// Throws ConfigError unless 0 <= q_lo < q_hi <= 1 and segments are
    /// ascending without overlap.
    void validate() const;
};

struct ResolvedSegment {
    FilterSegment quantiles;
    double lo = 0.0;
    double hi = 0.0;
};

struct FilterResult {
    std::vector<ResolvedSegment> cutoffs;
    std::vector<bool> kept;  // aligned with the input scores

    std::vector<std::string> kept_ids(std::span<const LlrScore> scores) const;
};

/// Keeps a score iff its llr lies in [cutoff(q_lo), cutoff(q_hi)] of some
/// segment, cutoffs being nearest-rank quantiles of the training LLR.
FilterResult filter_by_llr(std::span<const LlrScore> scores, std::span<const double> train_llr,
                           const FilterRange& range);
FilterResult filter_by_llr(std::span<const LlrScore> scores, const OodModel& model, const FilterRange& range);

std::string filter_report_csv(std::span<const LlrScore> scores, const FilterResult& result,
                              const std::string& comment = {});

/// An augmentation that survived filtering.
struct KeptItem {
    std::string id;
    CellKey cell;
};

struct SampleResult {
    std::vector<std::string> selected;  // input order
    std::map<int, std::size_t> class_budget;
    std::map<CellKey, std::size_t> per_cell;
    std::map<int, std::size_t> shortfall;  // per class
};

/// Splits `budget` over classes, then each class budget over the feature's
/// states, and samples uniformly without replacement inside each cell.
SampleResult sample_balanced(std::span<const KeptItem> kept, std::size_t budget, std::uint64_t seed);

nlohmann::ordered_json spec_to_json(const TransformSpec& spec);
TransformSpec spec_from_json(const nlohmann::json& obj);

void save_plan(const std::filesystem::path& path, std::span<const TransformSpec> specs,
               const std::string& comment = {});
std::vector<TransformSpec> load_plan(const std::filesystem::path& path);

}  // namespace fairkit
