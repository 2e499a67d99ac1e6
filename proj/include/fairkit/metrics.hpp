#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fairkit/manifest.hpp"

namespace fairkit {

struct Prediction {
    std::string id;
    int actual_age = 0;
    double predicted_age = 0.0;
    FeatureMap features;
};

/// CSV with header `id,actual_age,predicted_age,<feature>...`.
std::vector<Prediction> parse_predictions_csv(const std::string& text, const LabelRange& range = {},
                                              const std::string& origin = "predictions");
std::vector<Prediction> load_predictions(const std::filesystem::path& path, const LabelRange& range = {});

/// Mean absolute error in years. Throws DataError on empty input.
double mae(std::span<const Prediction> predictions);

struct FairnessReport {
    double t = 3.0;
    std::string feature;
    std::vector<std::string> states;
    std::map<std::pair<int, std::string>, double> per_age_means;
    std::map<int, double> max_distance;
    std::map<int, int> per_age_fair;
    double score = 0.0;
    std::size_t evaluated_ages = 0;
    std::vector<int> skipped_ages;
};

/// Fraction of ages (with every state present) at which all pairwise
/// differences of per-state mean predictions are strictly below t/2.
FairnessReport fairness_score(std::span<const Prediction> predictions, const std::string& feature, double t = 3.0);

/// Largest pairwise |difference| of per-state mean predictions per
/// evaluable age.
std::map<int, double> mean_distance(std::span<const Prediction> predictions, const std::string& feature);

nlohmann::ordered_json report_to_json(const FairnessReport& report);

/// Flat rows: feature,age,state,mean_predicted,max_distance,fair
std::string reports_to_csv(std::span<const FairnessReport> reports, const std::string& comment = {});

}  // namespace fairkit
