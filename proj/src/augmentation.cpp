#include "fairkit/augmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "fairkit/allocation.hpp"
#include "fairkit/error.hpp"
#include "fairkit/io.hpp"
#include "fairkit/rng.hpp"

namespace fairkit {

CellCounts cell_counts(std::span<const Record> records, const std::string& feature) {
    CellCounts counts;
    for (const auto& r : records) {
        auto it = r.features.find(feature);
        if (it == r.features.end()) {
            throw DataError("record \"" + r.id + "\" lacks feature \"" + feature + "\"");
        }
        ++counts[{r.age, it->second}];
    }
    return counts;
}

AugRatioTable plan_ratios(const CellCounts& counts) {
    std::vector<std::size_t> sizes;
    for (const auto& [cell, n] : counts) {
        if (n > 0) {
            sizes.push_back(n);
        }
    }
    if (sizes.empty()) {
        throw DataError("cannot plan augmentation ratios: all cells are empty");
    }
    std::sort(sizes.begin(), sizes.end());
    const std::size_t n = sizes.size();
    std::size_t total = 0;
    for (std::size_t s : sizes) {
        total += s;
    }

    AugRatioTable t;
    // Twice the median keeps even-length medians integral.
    const std::size_t median2 = n % 2 == 1 ? 2 * sizes[n / 2] : sizes[n / 2 - 1] + sizes[n / 2];
    t.median_num = static_cast<double>(median2) / 2.0;
    t.mean_exact = static_cast<double>(total) / static_cast<double>(n);
    t.mean_num = (2 * total + n) / (2 * n);
    t.max_num = sizes.back();
    t.max_ratio = static_cast<int>((t.max_num + t.mean_num - 1) / t.mean_num);

    for (const auto& [cell, num] : counts) {
        if (num == 0) {
            t.ratios[cell] = 0;
            t.empty_cells.push_back(cell);
            continue;
        }
        const std::size_t ratio = (median2 + 2 * num - 1) / (2 * num);
        t.ratios[cell] = std::min(static_cast<int>(ratio), t.max_ratio);
    }
    return t;
}

TransformBounds TransformBounds::identity() {
    TransformBounds b;
    b.rotation_deg = {0.0, 0.0};
    b.translate = {0.0, 0.0};
    b.scale = {1.0, 1.0};
    b.shear = {0.0, 0.0};
    b.brightness = {0.0, 0.0};
    b.contrast = {1.0, 1.0};
    return b;
}

void TransformBounds::validate() const {
    const std::pair<const char*, Interval> all[] = {
        {"rotation_deg", rotation_deg}, {"translate", translate},   {"scale", scale},
        {"shear", shear},               {"brightness", brightness}, {"contrast", contrast},
    };
    for (const auto& [name, iv] : all) {
        if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo > iv.hi) {
            throw ConfigError(std::string("malformed bound for ") + name);
        }
    }
    if (scale.lo <= 0.0) {
        throw ConfigError("scale bound must be positive");
    }
    if (contrast.lo < 0.0) {
        throw ConfigError("contrast bound must be non-negative");
    }
}

bool TransformSpec::is_identity() const noexcept {
    return rotation_deg == 0.0 && translate_x == 0.0 && translate_y == 0.0 && scale == 1.0 && shear == 0.0 &&
           brightness_delta == 0.0 && contrast_factor == 1.0;
}

std::vector<TransformSpec> generate_specs(std::span<const Record> records, const AugRatioTable& ratios,
                                          const std::string& feature, const TransformBounds& bounds,
                                          std::uint64_t seed) {
    bounds.validate();
    std::vector<TransformSpec> specs;
    for (const auto& r : records) {
        auto state = r.features.find(feature);
        if (state == r.features.end()) {
            throw DataError("record \"" + r.id + "\" lacks feature \"" + feature + "\"");
        }
        auto ratio = ratios.ratios.find({r.age, state->second});
        if (ratio == ratios.ratios.end()) {
            continue;
        }
        for (int k = 0; k < ratio->second; ++k) {
            TransformSpec s;
            s.aug_id = r.id + "__aug" + std::to_string(k);
            s.source_id = r.id;
            s.age = r.age;
            s.features = r.features;
            s.seed = derive_seed(seed, {hash_label("augment"), hash_label(r.id), static_cast<std::uint64_t>(k)});
            Engine eng(s.seed);
            s.rotation_deg = uniform_real(eng, bounds.rotation_deg.lo, bounds.rotation_deg.hi);
            s.translate_x = uniform_real(eng, bounds.translate.lo, bounds.translate.hi);
            s.translate_y = uniform_real(eng, bounds.translate.lo, bounds.translate.hi);
            s.scale = uniform_real(eng, bounds.scale.lo, bounds.scale.hi);
            s.shear = uniform_real(eng, bounds.shear.lo, bounds.shear.hi);
            s.brightness_delta = uniform_real(eng, bounds.brightness.lo, bounds.brightness.hi);
            s.contrast_factor = uniform_real(eng, bounds.contrast.lo, bounds.contrast.hi);
            specs.push_back(std::move(s));
        }
    }
    return specs;
}

kernels::PixelMap inverse_map(const TransformSpec& spec, int width, int height) {
    if (!(spec.scale > 0.0)) {
        throw DataError("transform scale must be positive (" + spec.aug_id + ")");
    }
    const double theta = spec.rotation_deg * std::numbers::pi / 180.0;
    const double cs = std::cos(theta);
    const double sn = std::sin(theta);
    // Forward A = Shear * Scale * Rotation; rotation is counter-clockwise as
    // displayed with y pointing down.
    const double r11 = cs, r12 = sn, r21 = -sn, r22 = cs;
    const double s = spec.scale;
    const double a11 = s * (r11 + spec.shear * r21);
    const double a12 = s * (r12 + spec.shear * r22);
    const double a21 = s * r21;
    const double a22 = s * r22;
    const double det = a11 * a22 - a12 * a21;
    const double i11 = a22 / det, i12 = -a12 / det, i21 = -a21 / det, i22 = a11 / det;

    const double cx = (width - 1) / 2.0;
    const double cy = (height - 1) / 2.0;
    const double ox = cx + spec.translate_x * width;
    const double oy = cy + spec.translate_y * height;

    kernels::PixelMap m;
    m.a = i11;
    m.b = i12;
    m.tx = cx - (i11 * ox + i12 * oy);
    m.c = i21;
    m.d = i22;
    m.ty = cy - (i21 * ox + i22 * oy);
    return m;
}

RgbImage apply_transform(const RgbImage& image, const TransformSpec& spec, kernels::Exec exec) {
    if (image.empty() || image.pixels.size() != static_cast<std::size_t>(image.width) * image.height * 3) {
        throw DataError("unreadable image: empty or inconsistent raster");
    }
    std::vector<double> px = kernels::warp(image, inverse_map(spec, image.width, image.height), exec);

    const double shift = spec.brightness_delta * 255.0;
    for (double& v : px) {
        v = std::clamp(v + shift, 0.0, 255.0);
    }

    const std::size_t count = static_cast<std::size_t>(image.width) * image.height;
    double mean[3] = {0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < count; ++i) {
        for (int ch = 0; ch < 3; ++ch) {
            mean[ch] += px[i * 3 + ch];
        }
    }
    for (double& m : mean) {
        m /= static_cast<double>(count);
    }

    RgbImage out(image.width, image.height);
    for (std::size_t i = 0; i < count; ++i) {
        for (int ch = 0; ch < 3; ++ch) {
            const double v = mean[ch] + spec.contrast_factor * (px[i * 3 + ch] - mean[ch]);
            out.pixels[i * 3 + ch] = static_cast<std::uint8_t>(std::floor(std::clamp(v, 0.0, 255.0) + 0.5));
        }
    }
    return out;
}

FilterRange FilterRange::parse(const std::string& text) {
    FilterRange r;
    r.segments.clear();
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        const std::size_t colon = part.find(':');
        if (colon == std::string::npos) {
            throw ConfigError("filter segment '" + part + "' must look like lo:hi");
        }
        try {
            r.segments.push_back({io::parse_double(part.substr(0, colon), "filter lower quantile"),
                                  io::parse_double(part.substr(colon + 1), "filter upper quantile")});
        } catch (const DataError& e) {
            throw ConfigError(e.what());
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    r.validate();
    return r;
}

std::string FilterRange::to_string() const {
    std::string out;
    for (const auto& s : segments) {
        if (!out.empty()) {
            out += ',';
        }
        out += io::format_double(s.q_lo) + ':' + io::format_double(s.q_hi);
    }
    return out;
}

void FilterRange::validate() const {
    if (segments.empty()) {
        throw ConfigError("filter range needs at least one segment");
    }
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& s = segments[i];
        if (!(s.q_lo >= 0.0 && s.q_lo < s.q_hi && s.q_hi <= 1.0)) {
            throw ConfigError("filter segment must satisfy 0 <= lo < hi <= 1");
        }
        if (i > 0 && !(segments[i - 1].q_hi < s.q_lo)) {
            throw ConfigError("filter segments must be ascending and disjoint");
        }
    }
}

std::vector<std::string> FilterResult::kept_ids(std::span<const LlrScore> scores) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < scores.size() && i < kept.size(); ++i) {
        if (kept[i]) {
            out.push_back(scores[i].id);
        }
    }
    return out;
}

FilterResult filter_by_llr(std::span<const LlrScore> scores, std::span<const double> train_llr,
                           const FilterRange& range) {
    range.validate();
    if (train_llr.empty()) {
        throw DataError("filtering needs training LLR scores");
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    FilterResult result;
    for (const auto& seg : range.segments) {
        ResolvedSegment r{seg, nearest_rank_quantile(train_llr, seg.q_lo), nearest_rank_quantile(train_llr, seg.q_hi)};
        // The extreme quantiles leave that side open: [0, 1] keeps everything.
        if (seg.q_lo == 0.0) {
            r.lo = -inf;
        }
        if (seg.q_hi == 1.0) {
            r.hi = inf;
        }
        result.cutoffs.push_back(r);
    }
    result.kept.reserve(scores.size());
    for (const auto& s : scores) {
        bool keep = false;
        for (const auto& c : result.cutoffs) {
            keep = keep || (s.llr >= c.lo && s.llr <= c.hi);
        }
        result.kept.push_back(keep);
    }
    return result;
}

FilterResult filter_by_llr(std::span<const LlrScore> scores, const OodModel& model, const FilterRange& range) {
    return filter_by_llr(scores, std::span<const double>(model.train_llr()), range);
}

std::string filter_report_csv(std::span<const LlrScore> scores, const FilterResult& result,
                              const std::string& comment) {
    std::ostringstream out;
    if (!comment.empty()) {
        out << "# " << comment << '\n';
    }
    auto text = [](double v) { return std::isinf(v) ? std::string(v < 0 ? "-inf" : "inf") : io::format_double(v); };
    for (const auto& c : result.cutoffs) {
        out << "# cutoff q_lo=" << io::format_double(c.quantiles.q_lo) << " q_hi=" << io::format_double(c.quantiles.q_hi)
            << " llr_lo=" << text(c.lo) << " llr_hi=" << text(c.hi) << '\n';
    }
    out << "aug_id,llr,kept\n";
    for (std::size_t i = 0; i < scores.size(); ++i) {
        out << scores[i].id << ',' << io::format_double(scores[i].llr) << ',' << (result.kept[i] ? 1 : 0) << '\n';
    }
    return out.str();
}

SampleResult sample_balanced(std::span<const KeptItem> kept, std::size_t budget, std::uint64_t seed) {
    SampleResult result;
    if (budget == 0 || kept.empty()) {
        return result;
    }
    std::map<int, std::map<std::string, std::vector<std::size_t>>> cells;
    std::set<std::string> states;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        cells[kept[i].cell.age][kept[i].cell.state].push_back(i);
        states.insert(kept[i].cell.state);
    }

    // Class budgets: floor share, leftover units to the classes holding the
    // most kept items (ties: smaller class id).
    std::vector<std::pair<int, std::size_t>> class_sizes;
    for (const auto& [age, by_state] : cells) {
        std::size_t n = 0;
        for (const auto& [state, items] : by_state) {
            n += items.size();
        }
        class_sizes.emplace_back(age, n);
        result.class_budget[age] = budget / cells.size();
    }
    std::stable_sort(class_sizes.begin(), class_sizes.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    for (std::size_t i = 0; i < budget % cells.size(); ++i) {
        ++result.class_budget[class_sizes[i].first];
    }

    std::vector<bool> chosen(kept.size(), false);
    const std::vector<std::size_t> none;
    for (const auto& [age, by_state] : cells) {
        struct Bin {
            const std::string* state;
            const std::vector<std::size_t>* items;
        };
        std::vector<Bin> bins;
        for (const auto& state : states) {
            auto it = by_state.find(state);
            bins.push_back({&state, it == by_state.end() ? &none : &it->second});
        }
        std::stable_sort(bins.begin(), bins.end(),
                         [](const Bin& a, const Bin& b) { return a.items->size() < b.items->size(); });
        std::vector<std::size_t> available;
        for (const auto& b : bins) {
            available.push_back(b.items->size());
        }
        const std::size_t want = result.class_budget[age];
        const auto takes = waterfill(available, want);
        std::size_t got = 0;
        for (std::size_t j = 0; j < bins.size(); ++j) {
            const CellKey key{age, *bins[j].state};
            result.per_cell[key] = takes[j];
            got += takes[j];
            if (takes[j] == 0) {
                continue;
            }
            Engine eng(derive_seed(seed, {hash_label("sample"), signed_word(age), hash_label(*bins[j].state)}));
            for (std::size_t i : sample_indices(eng, bins[j].items->size(), takes[j])) {
                chosen[(*bins[j].items)[i]] = true;
            }
        }
        if (got < want) {
            result.shortfall[age] = want - got;
        }
    }
    for (std::size_t i = 0; i < kept.size(); ++i) {
        if (chosen[i]) {
            result.selected.push_back(kept[i].id);
        }
    }
    return result;
}

nlohmann::ordered_json spec_to_json(const TransformSpec& spec) {
    nlohmann::ordered_json obj;
    obj["aug_id"] = spec.aug_id;
    obj["source_id"] = spec.source_id;
    obj["class"] = spec.age;
    nlohmann::ordered_json features = nlohmann::ordered_json::object();
    for (const auto& [name, state] : spec.features) {
        features[name] = state;
    }
    obj["features"] = std::move(features);
    nlohmann::ordered_json t;
    t["rotation_deg"] = spec.rotation_deg;
    t["translate_x"] = spec.translate_x;
    t["translate_y"] = spec.translate_y;
    t["scale"] = spec.scale;
    t["shear"] = spec.shear;
    t["brightness_delta"] = spec.brightness_delta;
    t["contrast_factor"] = spec.contrast_factor;
    obj["transform"] = std::move(t);
    obj["seed"] = spec.seed;
    return obj;
}

TransformSpec spec_from_json(const nlohmann::json& obj) {
    TransformSpec s;
    s.aug_id = obj.at("aug_id").get<std::string>();
    s.source_id = obj.at("source_id").get<std::string>();
    s.age = obj.at("class").get<int>();
    s.features = obj.at("features").get<FeatureMap>();
    const auto& t = obj.at("transform");
    s.rotation_deg = t.at("rotation_deg").get<double>();
    s.translate_x = t.at("translate_x").get<double>();
    s.translate_y = t.at("translate_y").get<double>();
    s.scale = t.at("scale").get<double>();
    s.shear = t.at("shear").get<double>();
    s.brightness_delta = t.at("brightness_delta").get<double>();
    s.contrast_factor = t.at("contrast_factor").get<double>();
    s.seed = obj.at("seed").get<std::uint64_t>();
    return s;
}

void save_plan(const std::filesystem::path& path, std::span<const TransformSpec> specs, const std::string& comment) {
    std::string text;
    if (!comment.empty()) {
        text += "# " + comment + "\n";
    }
    for (const auto& s : specs) {
        text += spec_to_json(s).dump();
        text += '\n';
    }
    io::write_text(path, text);
}

std::vector<TransformSpec> load_plan(const std::filesystem::path& path) {
    std::istringstream in(io::read_text(path));
    std::vector<TransformSpec> specs;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (io::is_skippable(line)) {
            continue;
        }
        try {
            specs.push_back(spec_from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw DataError("parse failure, " + path.string() + ", line " + std::to_string(number) + ": " + e.what());
        }
    }
    return specs;
}

}  // namespace fairkit
