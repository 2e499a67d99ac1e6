#include "fairkit/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fairkit/error.hpp"

namespace fairkit {

GaussianClassModel GaussianClassModel::factorize(int class_id, Eigen::VectorXd mu, Eigen::MatrixXd sigma,
                                                 std::size_t sample_count) {
    if (sigma.rows() != mu.size() || sigma.cols() != mu.size() || mu.size() == 0) {
        throw DataError("class " + std::to_string(class_id) + ": covariance shape does not match mean");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success) {
        throw NumericError("class " + std::to_string(class_id) +
                           ": covariance is not positive definite (degenerate class covariance)");
    }
    GaussianClassModel m;
    m.class_id = class_id;
    m.chol_lower = llt.matrixL();
    const auto diag = m.chol_lower.diagonal();
    if ((diag.array() <= 0.0).any() || !diag.allFinite()) {
        throw NumericError("class " + std::to_string(class_id) + ": Cholesky factor has a non-positive pivot");
    }
    m.log_det = 2.0 * diag.array().log().sum();
    m.mu = std::move(mu);
    m.sigma = std::move(sigma);
    m.sample_count = sample_count;
    return m;
}

double GaussianClassModel::log_density(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    if (x.size() != mu.size()) {
        throw DataError("dimension mismatch: expected " + std::to_string(mu.size()) + ", got " +
                        std::to_string(x.size()));
    }
    const Eigen::VectorXd z = chol_lower.triangularView<Eigen::Lower>().solve(x - mu);
    const double d = static_cast<double>(mu.size());
    return -0.5 * (d * std::log(2.0 * std::numbers::pi) + log_det + z.squaredNorm());
}

double GaussianClassModel::log_density(std::span<const double> x) const {
    return log_density(Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size())));
}

}  // namespace fairkit
