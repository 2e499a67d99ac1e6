#include "fairkit/config.hpp"

#include "fairkit/error.hpp"
#include "fairkit/io.hpp"

namespace fairkit {

namespace {

nlohmann::ordered_json interval_json(const Interval& iv) { return {iv.lo, iv.hi}; }

Interval interval_from(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw ConfigError("bound must be a [lo, hi] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

template <typename T>
void read_if(const nlohmann::json& obj, const char* key, T& target) {
    if (auto it = obj.find(key); it != obj.end() && !it->is_null()) {
        target = it->get<T>();
    }
}

}  // namespace

nlohmann::ordered_json PipelineConfig::to_json() const {
    nlohmann::ordered_json doc;
    doc["seed"] = seed;
    doc["label_range"] = {labels.lo, labels.hi};

    nlohmann::ordered_json cur;
    cur["q_low"] = curation.q_low;
    cur["q_high"] = curation.q_high;
    cur["feature_priority"] = curation.feature_priority;
    doc["curation"] = std::move(cur);

    nlohmann::ordered_json o;
    o["k"] = ood.k ? nlohmann::ordered_json(*ood.k) : nlohmann::ordered_json(nullptr);
    o["shrinkage"] = ood.shrinkage;
    o["floor"] = ood.floor;
    doc["ood"] = std::move(o);

    nlohmann::ordered_json aug;
    aug["feature"] = augmentation.feature;
    nlohmann::ordered_json b;
    b["rotation_deg"] = interval_json(augmentation.bounds.rotation_deg);
    b["translate"] = interval_json(augmentation.bounds.translate);
    b["scale"] = interval_json(augmentation.bounds.scale);
    b["shear"] = interval_json(augmentation.bounds.shear);
    b["brightness"] = interval_json(augmentation.bounds.brightness);
    b["contrast"] = interval_json(augmentation.bounds.contrast);
    aug["bounds"] = std::move(b);
    aug["budget"] = augmentation.budget;
    aug["filter"] = augmentation.filter.to_string();
    doc["augmentation"] = std::move(aug);

    nlohmann::ordered_json m;
    m["t"] = metrics.t;
    m["features"] = metrics.features;
    doc["metrics"] = std::move(m);
    return doc;
}

PipelineConfig PipelineConfig::from_json(const nlohmann::json& doc) {
    PipelineConfig c;
    try {
        if (!doc.is_object()) {
            throw ConfigError("config document must be an object");
        }
        read_if(doc, "seed", c.seed);
        if (auto it = doc.find("label_range"); it != doc.end()) {
            const auto range = it->get<std::vector<int>>();
            if (range.size() != 2 || range[0] > range[1]) {
                throw ConfigError("label_range must be [lo, hi] with lo <= hi");
            }
            c.labels = {range[0], range[1]};
        }
        if (auto it = doc.find("curation"); it != doc.end()) {
            read_if(*it, "q_low", c.curation.q_low);
            read_if(*it, "q_high", c.curation.q_high);
            read_if(*it, "feature_priority", c.curation.feature_priority);
        }
        if (auto it = doc.find("ood"); it != doc.end()) {
            if (auto k = it->find("k"); k != it->end() && !k->is_null()) {
                c.ood.k = k->get<int>();
            }
            read_if(*it, "shrinkage", c.ood.shrinkage);
            read_if(*it, "floor", c.ood.floor);
        }
        if (auto it = doc.find("augmentation"); it != doc.end()) {
            read_if(*it, "feature", c.augmentation.feature);
            read_if(*it, "budget", c.augmentation.budget);
            if (auto f = it->find("filter"); f != it->end()) {
                c.augmentation.filter = FilterRange::parse(f->get<std::string>());
            }
            if (auto b = it->find("bounds"); b != it->end()) {
                auto& bounds = c.augmentation.bounds;
                const std::pair<const char*, Interval*> fields[] = {
                    {"rotation_deg", &bounds.rotation_deg}, {"translate", &bounds.translate},
                    {"scale", &bounds.scale},               {"shear", &bounds.shear},
                    {"brightness", &bounds.brightness},     {"contrast", &bounds.contrast},
                };
                for (const auto& [key, target] : fields) {
                    if (auto v = b->find(key); v != b->end()) {
                        *target = interval_from(*v);
                    }
                }
                bounds.validate();
            }
        }
        if (auto it = doc.find("metrics"); it != doc.end()) {
            read_if(*it, "t", c.metrics.t);
            read_if(*it, "features", c.metrics.features);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    return c;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
    std::string text;
    try {
        text = io::read_text(path);
    } catch (const DataError& e) {
        throw ConfigError(e.what());
    }
    try {
        return from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("cannot parse config " + path.string() + ": " + e.what());
    }
}

std::string PipelineConfig::augmentation_feature() const {
    if (!augmentation.feature.empty()) {
        return augmentation.feature;
    }
    if (!curation.feature_priority.empty()) {
        return curation.feature_priority.front();
    }
    throw ConfigError("no augmentation feature: set --feature or feature_priority");
}

std::string provenance(const PipelineConfig& config) {
    return std::string("fairkit ") + kVersion + " config=" + config.to_json().dump();
}

}  // namespace fairkit
