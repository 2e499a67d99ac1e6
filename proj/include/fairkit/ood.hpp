#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairkit/embeddings.hpp"
#include "fairkit/gaussian.hpp"
#include "fairkit/kernels.hpp"

namespace fairkit {

struct LlrScore {
    std::string id;
    double llr = 0.0;
    int predicted_class = 0;
};

struct FitOptions {
    /// Contrast-set size; defaults to min(10, classes - 1).
    std::optional<int> k;
    /// Diagonal loading lambda * trace(sigma) / d ...
    double shrinkage = 1e-3;
    /// ... never below this absolute floor.
    double floor = 1e-6;
    kernels::Exec exec = kernels::Exec::parallel;
};

/// Per-class Gaussians over embeddings plus the training set's own LLR
/// scores, which serve as the reference distribution for quantile filters.
class OodModel {
public:
    /// Classes are kept sorted by class id. Throws on mixed dimensions,
    /// duplicate class ids, or k outside [1, classes - 1].
    OodModel(std::vector<GaussianClassModel> classes, int k, double shrinkage, double floor,
             std::vector<double> train_llr = {});

    const std::vector<GaussianClassModel>& classes() const noexcept { return classes_; }
    std::size_t dim() const noexcept { return classes_.front().dim(); }
    int k() const noexcept { return k_; }
    double shrinkage() const noexcept { return shrinkage_; }
    double floor() const noexcept { return floor_; }
    const std::vector<double>& train_llr() const noexcept { return train_llr_; }

    void set_train_llr(std::vector<double> scores) { train_llr_ = std::move(scores); }

    /// Best class minus the mean of the k next-best classes. By default the
    /// contrast set excludes the predicted class; `exclude_class` (a known
    /// ground-truth label) replaces that exclusion.
    LlrScore llr(const Eigen::Ref<const Eigen::VectorXd>& x, std::optional<int> exclude_class = {}) const;

    /// Same, from precomputed per-class log-densities in class order.
    LlrScore llr_from_densities(std::span<const double> densities, std::optional<int> exclude_class = {}) const;

private:
    std::vector<GaussianClassModel> classes_;
    int k_;
    double shrinkage_;
    double floor_;
    std::vector<double> train_llr_;
};

int default_k(std::size_t class_count);

/// Fits one Gaussian per label and scores the training rows. Every id in
/// `embeddings` needs a label; every class needs at least two rows.
OodModel fit(const EmbeddingTable& embeddings, const std::map<std::string, int>& labels,
             const FitOptions& options = {});

/// Row-wise LLR scores in input order. `exclude` optionally supplies a
/// ground-truth label per id.
std::vector<LlrScore> score_batch(const OodModel& model, const EmbeddingTable& table,
                                  kernels::Exec exec = kernels::Exec::parallel,
                                  const std::map<std::string, int>* exclude = nullptr);

/// Nearest-rank quantile of the training LLR scores (q = 0 gives the minimum).
double train_quantile(const OodModel& model, double q);

nlohmann::ordered_json model_to_json(const OodModel& model);
OodModel model_from_json(const nlohmann::json& doc);

void save_model(const OodModel& model, const std::filesystem::path& path,
                const nlohmann::ordered_json& meta = {});
OodModel load_model(const std::filesystem::path& path);

/// CSV `id,llr,predicted_class` with an optional '#' comment line first.
std::string scores_to_csv(std::span<const LlrScore> scores, const std::string& comment = {});
std::vector<LlrScore> parse_scores_csv(const std::string& text, const std::string& origin = "scores");

}  // namespace fairkit
