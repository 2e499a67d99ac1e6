#include "fairkit/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "fairkit/error.hpp"

namespace fairkit::kernels {

namespace {

Eigen::VectorXd row_mean(const EmbeddingTable& table, std::span<const std::size_t> rows) {
    const auto dim = static_cast<Eigen::Index>(table.dim());
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(dim);
    for (std::size_t r : rows) {
        const auto x = table.row(r);
        for (Eigen::Index i = 0; i < dim; ++i) {
            sum[i] += static_cast<double>(x[i]);
        }
    }
    return sum / static_cast<double>(rows.size());
}

Eigen::MatrixXd centered(const EmbeddingTable& table, std::span<const std::size_t> rows,
                         const Eigen::VectorXd& mean) {
    const auto dim = static_cast<Eigen::Index>(table.dim());
    // One column per feature, so covariance entries are dot products of contiguous columns.
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), dim);
    for (std::size_t n = 0; n < rows.size(); ++n) {
        const auto x = table.row(rows[n]);
        for (Eigen::Index i = 0; i < dim; ++i) {
            out(static_cast<Eigen::Index>(n), i) = static_cast<double>(x[i]) - mean[i];
        }
    }
    return out;
}

double cov_entry(const Eigen::MatrixXd& z, Eigen::Index i, Eigen::Index j) {
    const double* a = z.col(i).data();
    const double* b = z.col(j).data();
    double acc = 0.0;
    for (Eigen::Index n = 0; n < z.rows(); ++n) {
        acc += a[n] * b[n];
    }
    return acc;
}

void check_rows(const EmbeddingTable& table, std::span<const std::size_t> rows) {
    if (rows.empty()) {
        throw DataError("moments of an empty row set");
    }
    for (std::size_t r : rows) {
        if (r >= table.size()) {
            throw DataError("row index out of range");
        }
    }
}

}  // namespace

Moments class_moments_serial(const EmbeddingTable& table, std::span<const std::size_t> rows) {
    check_rows(table, rows);
    Moments m;
    m.mean = row_mean(table, rows);
    const Eigen::MatrixXd z = centered(table, rows, m.mean);
    const Eigen::Index dim = z.cols();
    const double inv_n = 1.0 / static_cast<double>(rows.size());
    m.cov.resize(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double v = cov_entry(z, i, j) * inv_n;
            m.cov(i, j) = v;
            m.cov(j, i) = v;
        }
    }
    return m;
}

Moments class_moments_parallel(const EmbeddingTable& table, std::span<const std::size_t> rows) {
    check_rows(table, rows);
    Moments m;
    m.mean = row_mean(table, rows);
    const Eigen::MatrixXd z = centered(table, rows, m.mean);
    const Eigen::Index dim = z.cols();
    const double inv_n = 1.0 / static_cast<double>(rows.size());
    m.cov.resize(dim, dim);
    // Lower-triangle rows have uneven length; dynamic scheduling balances them.
#pragma omp parallel for schedule(dynamic)
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double v = cov_entry(z, i, j) * inv_n;
            m.cov(i, j) = v;
            m.cov(j, i) = v;
        }
    }
    return m;
}

Moments class_moments(const EmbeddingTable& table, std::span<const std::size_t> rows, Exec exec) {
    return exec == Exec::parallel ? class_moments_parallel(table, rows) : class_moments_serial(table, rows);
}

namespace {

void check_dims(std::span<const GaussianClassModel> classes, const EmbeddingTable& table) {
    for (const auto& c : classes) {
        if (c.dim() != table.dim()) {
            throw DataError("dimension mismatch: model dim " + std::to_string(c.dim()) + ", embeddings dim " +
                            std::to_string(table.dim()));
        }
    }
}

void score_row(std::span<const GaussianClassModel> classes, const EmbeddingTable& table, std::size_t r,
               Eigen::MatrixXd& out) {
    const auto x = table.row(r);
    Eigen::VectorXd v(static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] = static_cast<double>(x[i]);
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
        out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = classes[c].log_density(v);
    }
}

}  // namespace

Eigen::MatrixXd log_densities_serial(std::span<const GaussianClassModel> classes, const EmbeddingTable& table) {
    check_dims(classes, table);
    Eigen::MatrixXd out(static_cast<Eigen::Index>(table.size()), static_cast<Eigen::Index>(classes.size()));
    for (std::size_t r = 0; r < table.size(); ++r) {
        score_row(classes, table, r, out);
    }
    return out;
}

Eigen::MatrixXd log_densities_parallel(std::span<const GaussianClassModel> classes, const EmbeddingTable& table) {
    check_dims(classes, table);
    Eigen::MatrixXd out(static_cast<Eigen::Index>(table.size()), static_cast<Eigen::Index>(classes.size()));
    const auto rows = static_cast<std::ptrdiff_t>(table.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t r = 0; r < rows; ++r) {
        score_row(classes, table, static_cast<std::size_t>(r), out);
    }
    return out;
}

Eigen::MatrixXd log_densities(std::span<const GaussianClassModel> classes, const EmbeddingTable& table,
                              Exec exec) {
    return exec == Exec::parallel ? log_densities_parallel(classes, table) : log_densities_serial(classes, table);
}

namespace {

double sample_channel(const RgbImage& src, double sx, double sy, int ch) {
    const double cx = std::clamp(sx, 0.0, static_cast<double>(src.width - 1));
    const double cy = std::clamp(sy, 0.0, static_cast<double>(src.height - 1));
    const int x0 = static_cast<int>(std::floor(cx));
    const int y0 = static_cast<int>(std::floor(cy));
    const int x1 = std::min(x0 + 1, src.width - 1);
    const int y1 = std::min(y0 + 1, src.height - 1);
    const double fx = cx - x0;
    const double fy = cy - y0;
    const double top = (1.0 - fx) * src.at(x0, y0, ch) + fx * src.at(x1, y0, ch);
    const double bottom = (1.0 - fx) * src.at(x0, y1, ch) + fx * src.at(x1, y1, ch);
    return (1.0 - fy) * top + fy * bottom;
}

void warp_row(const RgbImage& src, const PixelMap& map, int y, std::vector<double>& out) {
    for (int x = 0; x < src.width; ++x) {
        const double sx = map.a * x + map.b * y + map.tx;
        const double sy = map.c * x + map.d * y + map.ty;
        const std::size_t base = (static_cast<std::size_t>(y) * src.width + x) * 3;
        for (int ch = 0; ch < 3; ++ch) {
            out[base + ch] = sample_channel(src, sx, sy, ch);
        }
    }
}

}  // namespace

std::vector<double> warp_serial(const RgbImage& src, const PixelMap& map) {
    std::vector<double> out(src.pixels.size());
    for (int y = 0; y < src.height; ++y) {
        warp_row(src, map, y, out);
    }
    return out;
}

std::vector<double> warp_parallel(const RgbImage& src, const PixelMap& map) {
    std::vector<double> out(src.pixels.size());
#pragma omp parallel for schedule(static)
    for (int y = 0; y < src.height; ++y) {
        warp_row(src, map, y, out);
    }
    return out;
}

std::vector<double> warp(const RgbImage& src, const PixelMap& map, Exec exec) {
    return exec == Exec::parallel ? warp_parallel(src, map) : warp_serial(src, map);
}

}  // namespace fairkit::kernels
