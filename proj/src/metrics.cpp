#include "fairkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "fairkit/error.hpp"
#include "fairkit/io.hpp"

namespace fairkit {

std::vector<Prediction> parse_predictions_csv(const std::string& text, const LabelRange& range,
                                              const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    std::size_t number = 0;
    std::vector<std::string> header;
    std::vector<Prediction> out;
    std::set<std::string> ids;
    while (std::getline(in, line)) {
        ++number;
        if (io::is_skippable(line)) {
            continue;
        }
        const auto loc = origin + ", line " + std::to_string(number);
        auto fields = io::split_csv(line);
        if (header.empty()) {
            if (fields.size() < 3 || fields[0] != "id" || fields[1] != "actual_age" || fields[2] != "predicted_age") {
                throw DataError("expected header id,actual_age,predicted_age,... at " + loc);
            }
            header = std::move(fields);
            continue;
        }
        if (fields.size() != header.size()) {
            throw DataError("column count mismatch at " + loc);
        }
        Prediction p;
        p.id = fields[0];
        if (p.id.empty() || !ids.insert(p.id).second) {
            throw DataError("empty or duplicate id at " + loc);
        }
        const long long actual = io::parse_integer(fields[1], "actual_age at " + loc);
        if (actual < range.lo || actual > range.hi) {
            throw DataError("age out of range, " + loc);
        }
        p.actual_age = static_cast<int>(actual);
        p.predicted_age = io::parse_double(fields[2], "predicted_age at " + loc);
        if (!std::isfinite(p.predicted_age)) {
            throw DataError("non-finite predicted_age at " + loc);
        }
        for (std::size_t c = 3; c < header.size(); ++c) {
            if (fields[c].empty()) {
                throw DataError("feature '" + header[c] + "' has no state, " + loc);
            }
            p.features.emplace(header[c], fields[c]);
        }
        out.push_back(std::move(p));
    }
    if (header.empty()) {
        throw DataError(origin + ": missing header");
    }
    return out;
}

std::vector<Prediction> load_predictions(const std::filesystem::path& path, const LabelRange& range) {
    return parse_predictions_csv(io::read_text(path), range, path.string());
}

double mae(std::span<const Prediction> predictions) {
    if (predictions.empty()) {
        throw DataError("MAE of an empty prediction set");
    }
    double sum = 0.0;
    for (const auto& p : predictions) {
        sum += std::abs(p.predicted_age - static_cast<double>(p.actual_age));
    }
    return sum / static_cast<double>(predictions.size());
}

namespace {

struct AgeMeans {
    std::vector<std::string> states;
    std::map<int, std::map<std::string, double>> complete;  // every state present
    std::vector<int> skipped;
};

AgeMeans per_age_means(std::span<const Prediction> predictions, const std::string& feature) {
    std::map<int, std::map<std::string, std::pair<double, std::size_t>>> sums;
    std::set<std::string> states;
    for (const auto& p : predictions) {
        auto it = p.features.find(feature);
        if (it == p.features.end()) {
            throw DataError("prediction \"" + p.id + "\" lacks feature \"" + feature + "\"");
        }
        auto& cell = sums[p.actual_age][it->second];
        cell.first += p.predicted_age;
        ++cell.second;
        states.insert(it->second);
    }
    if (states.size() < 2) {
        throw DataError("feature \"" + feature + "\" needs at least 2 states, found " + std::to_string(states.size()));
    }
    AgeMeans out;
    out.states.assign(states.begin(), states.end());
    for (const auto& [age, by_state] : sums) {
        if (by_state.size() != states.size()) {
            out.skipped.push_back(age);
            continue;
        }
        auto& row = out.complete[age];
        for (const auto& [state, acc] : by_state) {
            row[state] = acc.first / static_cast<double>(acc.second);
        }
    }
    if (out.complete.empty()) {
        throw DataError("no age has predictions for every state of \"" + feature + "\"");
    }
    return out;
}

double max_pairwise(const std::map<std::string, double>& means) {
    double widest = 0.0;
    for (auto a = means.begin(); a != means.end(); ++a) {
        for (auto b = std::next(a); b != means.end(); ++b) {
            widest = std::max(widest, std::abs(a->second - b->second));
        }
    }
    return widest;
}

}  // namespace

FairnessReport fairness_score(std::span<const Prediction> predictions, const std::string& feature, double t) {
    if (!(t > 0.0)) {
        throw ConfigError("fairness threshold t must be positive");
    }
    const auto means = per_age_means(predictions, feature);
    FairnessReport r;
    r.t = t;
    r.feature = feature;
    r.states = means.states;
    r.skipped_ages = means.skipped;
    std::size_t fair = 0;
    for (const auto& [age, row] : means.complete) {
        for (const auto& [state, m] : row) {
            r.per_age_means[{age, state}] = m;
        }
        // F(age) = 1 iff every pair satisfies |diff| < t/2, i.e. the widest does.
        const double widest = max_pairwise(row);
        r.max_distance[age] = widest;
        const int ok = widest < t / 2.0 ? 1 : 0;
        r.per_age_fair[age] = ok;
        fair += static_cast<std::size_t>(ok);
    }
    r.evaluated_ages = means.complete.size();
    r.score = static_cast<double>(fair) / static_cast<double>(r.evaluated_ages);
    return r;
}

std::map<int, double> mean_distance(std::span<const Prediction> predictions, const std::string& feature) {
    std::map<int, double> out;
    for (const auto& [age, row] : per_age_means(predictions, feature).complete) {
        out[age] = max_pairwise(row);
    }
    return out;
}

nlohmann::ordered_json report_to_json(const FairnessReport& r) {
    nlohmann::ordered_json doc;
    doc["feature"] = r.feature;
    doc["t"] = r.t;
    doc["score"] = r.score;
    doc["evaluated_ages"] = r.evaluated_ages;
    doc["skipped_ages"] = r.skipped_ages;
    doc["states"] = r.states;
    auto ages = nlohmann::ordered_json::array();
    for (const auto& [age, fair] : r.per_age_fair) {
        nlohmann::ordered_json row;
        row["age"] = age;
        nlohmann::ordered_json means = nlohmann::ordered_json::object();
        for (const auto& state : r.states) {
            means[state] = r.per_age_means.at({age, state});
        }
        row["means"] = std::move(means);
        row["max_distance"] = r.max_distance.at(age);
        row["fair"] = fair;
        ages.push_back(std::move(row));
    }
    doc["ages"] = std::move(ages);
    return doc;
}

std::string reports_to_csv(std::span<const FairnessReport> reports, const std::string& comment) {
    std::ostringstream out;
    if (!comment.empty()) {
        out << "# " << comment << '\n';
    }
    out << "feature,age,state,mean_predicted,max_distance,fair\n";
    for (const auto& r : reports) {
        for (const auto& [age, fair] : r.per_age_fair) {
            for (const auto& state : r.states) {
                out << r.feature << ',' << age << ',' << state << ','
                    << io::format_double(r.per_age_means.at({age, state})) << ','
                    << io::format_double(r.max_distance.at(age)) << ',' << fair << '\n';
            }
        }
    }
    return out.str();
}

}  // namespace fairkit
