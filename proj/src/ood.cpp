#include "fairkit/ood.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "fairkit/allocation.hpp"
#include "fairkit/error.hpp"
#include "fairkit/io.hpp"

namespace fairkit {

int default_k(std::size_t class_count) {
    return class_count < 2 ? 1 : static_cast<int>(std::min<std::size_t>(10, class_count - 1));
}

OodModel::OodModel(std::vector<GaussianClassModel> classes, int k, double shrinkage, double floor,
                   std::vector<double> train_llr)
    : classes_(std::move(classes)), k_(k), shrinkage_(shrinkage), floor_(floor), train_llr_(std::move(train_llr)) {
    if (classes_.empty()) {
        throw DataError("model needs at least one class");
    }
    std::sort(classes_.begin(), classes_.end(),
              [](const auto& a, const auto& b) { return a.class_id < b.class_id; });
    for (std::size_t i = 0; i < classes_.size(); ++i) {
        if (classes_[i].dim() != classes_.front().dim()) {
            throw DataError("all classes must share one dimension");
        }
        if (i > 0 && classes_[i].class_id == classes_[i - 1].class_id) {
            throw DataError("duplicate class id " + std::to_string(classes_[i].class_id));
        }
    }
    if (k_ < 1) {
        throw ConfigError("k must be at least 1");
    }
    if (static_cast<std::size_t>(k_) > classes_.size() - 1) {
        throw ConfigError("k exceeds class count - 1 (k=" + std::to_string(k_) + ", classes=" +
                          std::to_string(classes_.size()) + ")");
    }
}

LlrScore OodModel::llr_from_densities(std::span<const double> f, std::optional<int> exclude_class) const {
    if (f.size() != classes_.size()) {
        throw DataError("density count does not match class count");
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < f.size(); ++c) {
        if (f[c] > f[best]) {
            best = c;  // strict: ties stay with the smaller class id
        }
    }
    std::size_t excluded = best;
    if (exclude_class) {
        for (std::size_t c = 0; c < classes_.size(); ++c) {
            if (classes_[c].class_id == *exclude_class) {
                excluded = c;
            }
        }
    }
    std::vector<std::size_t> contrast;
    contrast.reserve(f.size() - 1);
    for (std::size_t c = 0; c < f.size(); ++c) {
        if (c != excluded) {
            contrast.push_back(c);
        }
    }
    const auto k = static_cast<std::size_t>(k_);
    std::partial_sort(contrast.begin(), contrast.begin() + static_cast<std::ptrdiff_t>(k), contrast.end(),
                      [&](std::size_t a, std::size_t b) { return f[a] > f[b] || (f[a] == f[b] && a < b); });
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sum += f[contrast[i]];
    }
    LlrScore s;
    s.llr = f[best] - sum / static_cast<double>(k);
    s.predicted_class = classes_[best].class_id;
    if (!std::isfinite(s.llr)) {
        throw NumericError("non-finite LLR");
    }
    return s;
}

LlrScore OodModel::llr(const Eigen::Ref<const Eigen::VectorXd>& x, std::optional<int> exclude_class) const {
    std::vector<double> f(classes_.size());
    for (std::size_t c = 0; c < classes_.size(); ++c) {
        f[c] = classes_[c].log_density(x);
    }
    return llr_from_densities(f, exclude_class);
}

OodModel fit(const EmbeddingTable& embeddings, const std::map<std::string, int>& labels, const FitOptions& options) {
    if (!(options.shrinkage >= 0.0) || !(options.floor >= 0.0)) {
        throw ConfigError("shrinkage and floor must be non-negative");
    }
    std::map<int, std::vector<std::size_t>> members;
    for (std::size_t r = 0; r < embeddings.size(); ++r) {
        auto it = labels.find(embeddings.ids()[r]);
        if (it == labels.end()) {
            throw DataError("embedding id \"" + embeddings.ids()[r] + "\" has no label");
        }
        members[it->second].push_back(r);
    }
    if (members.empty()) {
        throw DataError("no embeddings to fit");
    }
    const int k = options.k.value_or(default_k(members.size()));
    if (k < 1) {
        throw ConfigError("k must be at least 1");
    }
    if (static_cast<std::size_t>(k) > members.size() - 1) {
        throw ConfigError("k exceeds class count - 1 (k=" + std::to_string(k) + ", classes=" +
                          std::to_string(members.size()) + ")");
    }

    std::vector<GaussianClassModel> classes;
    const double d = static_cast<double>(embeddings.dim());
    for (const auto& [label, rows] : members) {
        if (rows.size() < 2) {
            throw DataError("class " + std::to_string(label) + " has fewer than 2 samples");
        }
        auto m = kernels::class_moments(embeddings, rows, options.exec);
        const double loading = std::max(options.shrinkage * m.cov.trace() / d, options.floor);
        m.cov.diagonal().array() += loading;
        classes.push_back(GaussianClassModel::factorize(label, std::move(m.mean), std::move(m.cov), rows.size()));
    }

    OodModel model(std::move(classes), k, options.shrinkage, options.floor);
    const auto scores = score_batch(model, embeddings, options.exec);
    std::vector<double> train(scores.size());
    std::transform(scores.begin(), scores.end(), train.begin(), [](const LlrScore& s) { return s.llr; });
    model.set_train_llr(std::move(train));
    return model;
}

std::vector<LlrScore> score_batch(const OodModel& model, const EmbeddingTable& table, kernels::Exec exec,
                                  const std::map<std::string, int>* exclude) {
    std::vector<LlrScore> out;
    if (table.empty()) {
        return out;
    }
    const Eigen::MatrixXd f = kernels::log_densities(model.classes(), table, exec);
    out.reserve(table.size());
    std::vector<double> row(static_cast<std::size_t>(f.cols()));
    for (std::size_t r = 0; r < table.size(); ++r) {
        for (Eigen::Index c = 0; c < f.cols(); ++c) {
            row[static_cast<std::size_t>(c)] = f(static_cast<Eigen::Index>(r), c);
        }
        std::optional<int> label;
        if (exclude != nullptr) {
            if (auto it = exclude->find(table.ids()[r]); it != exclude->end()) {
                label = it->second;
            }
        }
        try {
            auto s = model.llr_from_densities(row, label);
            s.id = table.ids()[r];
            out.push_back(std::move(s));
        } catch (const Error& e) {
            throw NumericError("scoring \"" + table.ids()[r] + "\": " + e.what());
        }
    }
    return out;
}

double train_quantile(const OodModel& model, double q) {
    if (model.train_llr().empty()) {
        throw DataError("model has no training LLR scores");
    }
    if (!(q >= 0.0 && q <= 1.0)) {
        throw ConfigError("quantile must lie in [0, 1]");
    }
    return nearest_rank_quantile(std::span<const double>(model.train_llr()), q);
}

nlohmann::ordered_json model_to_json(const OodModel& model) {
    nlohmann::ordered_json doc;
    doc["format"] = "fairkit-ood-model";
    doc["dim"] = model.dim();
    doc["k"] = model.k();
    doc["shrinkage"] = model.shrinkage();
    doc["floor"] = model.floor();
    auto classes = nlohmann::ordered_json::array();
    for (const auto& c : model.classes()) {
        nlohmann::ordered_json entry;
        entry["class_id"] = c.class_id;
        entry["sample_count"] = c.sample_count;
        entry["mu"] = std::vector<double>(c.mu.data(), c.mu.data() + c.mu.size());
        std::vector<double> lower;
        for (Eigen::Index i = 0; i < c.sigma.rows(); ++i) {
            for (Eigen::Index j = 0; j <= i; ++j) {
                lower.push_back(c.sigma(i, j));
            }
        }
        entry["sigma_lower"] = std::move(lower);
        classes.push_back(std::move(entry));
    }
    doc["classes"] = std::move(classes);
    doc["train_llr"] = model.train_llr();
    return doc;
}

OodModel model_from_json(const nlohmann::json& doc) {
    try {
        const auto dim = doc.at("dim").get<std::size_t>();
        std::vector<GaussianClassModel> classes;
        for (const auto& entry : doc.at("classes")) {
            const auto mu_values = entry.at("mu").get<std::vector<double>>();
            const auto lower = entry.at("sigma_lower").get<std::vector<double>>();
            if (mu_values.size() != dim || lower.size() != dim * (dim + 1) / 2) {
                throw DataError("model class has wrong vector sizes");
            }
            const auto n = static_cast<Eigen::Index>(dim);
            Eigen::VectorXd mu = Eigen::Map<const Eigen::VectorXd>(mu_values.data(), n);
            Eigen::MatrixXd sigma(n, n);
            std::size_t at = 0;
            for (Eigen::Index i = 0; i < n; ++i) {
                for (Eigen::Index j = 0; j <= i; ++j) {
                    sigma(i, j) = lower[at];
                    sigma(j, i) = lower[at];
                    ++at;
                }
            }
            classes.push_back(GaussianClassModel::factorize(entry.at("class_id").get<int>(), std::move(mu),
                                                            std::move(sigma),
                                                            entry.at("sample_count").get<std::size_t>()));
        }
        return OodModel(std::move(classes), doc.at("k").get<int>(), doc.at("shrinkage").get<double>(),
                        doc.value("floor", 1e-6), doc.value("train_llr", std::vector<double>{}));
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed model document: ") + e.what());
    }
}

void save_model(const OodModel& model, const std::filesystem::path& path, const nlohmann::ordered_json& meta) {
    auto doc = model_to_json(model);
    if (!meta.is_null()) {
        doc["meta"] = meta;
    }
    io::write_text(path, doc.dump(1) + "\n");
}

OodModel load_model(const std::filesystem::path& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(io::read_text(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError("cannot parse model " + path.string() + ": " + e.what());
    }
    return model_from_json(doc);
}

std::string scores_to_csv(std::span<const LlrScore> scores, const std::string& comment) {
    std::ostringstream out;
    if (!comment.empty()) {
        out << "# " << comment << '\n';
    }
    out << "id,llr,predicted_class\n";
    for (const auto& s : scores) {
        out << s.id << ',' << io::format_double(s.llr) << ',' << s.predicted_class << '\n';
    }
    return out.str();
}

std::vector<LlrScore> parse_scores_csv(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    std::size_t number = 0;
    bool header = false;
    std::vector<LlrScore> out;
    while (std::getline(in, line)) {
        ++number;
        if (io::is_skippable(line)) {
            continue;
        }
        const auto fields = io::split_csv(line);
        const auto loc = origin + ", line " + std::to_string(number);
        if (!header) {
            if (fields.size() < 3 || fields[0] != "id" || fields[1] != "llr" || fields[2] != "predicted_class") {
                throw DataError("expected header id,llr,predicted_class at " + loc);
            }
            header = true;
            continue;
        }
        if (fields.size() < 3) {
            throw DataError("too few columns at " + loc);
        }
        LlrScore s;
        s.id = fields[0];
        s.llr = io::parse_double(fields[1], "llr at " + loc);
        s.predicted_class = static_cast<int>(io::parse_integer(fields[2], "predicted_class at " + loc));
        out.push_back(std::move(s));
    }
    if (!header) {
        throw DataError(origin + ": missing header");
    }
    return out;
}

}  // namespace fairkit
