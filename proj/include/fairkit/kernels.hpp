#pragma once

// Data-parallel inner loops. Every kernel has a serial reference and an
// OpenMP version that performs the same arithmetic in the same order per
// output element, so the two agree bit for bit.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fairkit/embeddings.hpp"
#include "fairkit/gaussian.hpp"
#include "fairkit/image.hpp"

namespace fairkit::kernels {

enum class Exec { serial, parallel };

/// Biased (1/n) mean and covariance of the selected rows.
struct Moments {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
};

Moments class_moments_serial(const EmbeddingTable& table, std::span<const std::size_t> rows);
Moments class_moments_parallel(const EmbeddingTable& table, std::span<const std::size_t> rows);
Moments class_moments(const EmbeddingTable& table, std::span<const std::size_t> rows, Exec exec);

/// rows x classes matrix of per-class log-densities.
Eigen::MatrixXd log_densities_serial(std::span<const GaussianClassModel> classes, const EmbeddingTable& table);
Eigen::MatrixXd log_densities_parallel(std::span<const GaussianClassModel> classes, const EmbeddingTable& table);
Eigen::MatrixXd log_densities(std::span<const GaussianClassModel> classes, const EmbeddingTable& table, Exec exec);

/// Maps an output pixel (x, y) to its source position:
/// src = (a*x + b*y + tx, c*x + d*y + ty).
struct PixelMap {
    double a = 1.0, b = 0.0, tx = 0.0;
    double c = 0.0, d = 1.0, ty = 0.0;
};

/// Bilinear resampling with edge-clamped borders. Output is interleaved RGB
/// as doubles, same size as `src`.
std::vector<double> warp_serial(const RgbImage& src, const PixelMap& map);
std::vector<double> warp_parallel(const RgbImage& src, const PixelMap& map);
std::vector<double> warp(const RgbImage& src, const PixelMap& map, Exec exec);

}  // namespace fairkit::kernels
