#pragma once

#include <cstddef>
#include <span>

#include <Eigen/Dense>

namespace fairkit {

/// Class-conditional Gaussian with a cached Cholesky factor.
struct GaussianClassModel {
    int class_id = 0;
    Eigen::VectorXd mu;
    Eigen::MatrixXd sigma;       // regularized covariance
    Eigen::MatrixXd chol_lower;  // sigma = L * L^T
    double log_det = 0.0;        // log|sigma| = 2 * sum(log diag L)
    std::size_t sample_count = 0;

    std::size_t dim() const noexcept { return static_cast<std::size_t>(mu.size()); }

    /// Factorizes `sigma`; throws NumericError naming the class when it is
    /// not positive definite.
    static GaussianClassModel factorize(int class_id, Eigen::VectorXd mu, Eigen::MatrixXd sigma,
                                        std::size_t sample_count);

    /// -(d/2)log(2pi) - log|sigma|/2 - (x-mu)^T sigma^{-1} (x-mu) / 2, using a
    /// triangular solve against the cached factor. Throws DataError on a
    /// dimension mismatch.
    double log_density(const Eigen::Ref<const Eigen::VectorXd>& x) const;
    double log_density(std::span<const double> x) const;
};

}  // namespace fairkit
