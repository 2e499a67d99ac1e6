#include <doctest.h>

#include "fairkit/kernels.hpp"
#include "fairkit/rng.hpp"

using namespace fairkit;

namespace {

EmbeddingTable random_table(Engine& eng, std::size_t n, std::size_t d) {
    std::vector<std::string> ids;
    std::vector<float> v;
    for (std::size_t i = 0; i < n; ++i) {
        ids.push_back("e" + std::to_string(i));
        for (std::size_t j = 0; j < d; ++j) {
            v.push_back(static_cast<float>(uniform_real(eng, -3.0, 3.0)));
        }
    }
    return EmbeddingTable(ids, d, v);
}

RgbImage random_image(Engine& eng, int w, int h) {
    RgbImage img(w, h);
    for (auto& p : img.pixels) {
        p = static_cast<std::uint8_t>(uniform_below(eng, 256));
    }
    return img;
}

}  // namespace

TEST_CASE("moments: serial and parallel agree exactly") {
    Engine eng(1);
    for (std::size_t d : {1u, 3u, 17u, 64u}) {
        const auto t = random_table(eng, 120, d);
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < 120; i += 1 + uniform_below(eng, 3)) {
            rows.push_back(i);
        }
        const auto s = kernels::class_moments_serial(t, rows);
        const auto p = kernels::class_moments_parallel(t, rows);
        CHECK(s.mean == p.mean);
        CHECK(s.cov == p.cov);
        CHECK(s.cov == s.cov.transpose());
    }
}

TEST_CASE("log densities: serial and parallel agree exactly") {
    Engine eng(2);
    const std::size_t d = 12;
    const auto t = random_table(eng, 300, d);
    std::vector<GaussianClassModel> classes;
    for (int c = 0; c < 4; ++c) {
        std::vector<std::size_t> rows;
        for (std::size_t i = static_cast<std::size_t>(c); i < 300; i += 4) {
            rows.push_back(i);
        }
        auto m = kernels::class_moments_serial(t, rows);
        m.cov += 0.01 * Eigen::MatrixXd::Identity(d, d);
        classes.push_back(GaussianClassModel::factorize(c, m.mean, m.cov, rows.size()));
    }
    const auto s = kernels::log_densities_serial(classes, t);
    const auto p = kernels::log_densities_parallel(classes, t);
    CHECK(s.rows() == 300);
    CHECK(s.cols() == 4);
    CHECK(s == p);
    const auto r5 = t.row(5);
    const std::vector<double> row(r5.begin(), r5.end());
    CHECK(s(5, 2) == classes[2].log_density(row));
}

TEST_CASE("warp: serial and parallel agree exactly") {
    Engine eng(3);
    const auto img = random_image(eng, 37, 23);
    for (int i = 0; i < 10; ++i) {
        kernels::PixelMap m{uniform_real(eng, 0.8, 1.2), uniform_real(eng, -0.3, 0.3), uniform_real(eng, -4, 4),
                            uniform_real(eng, -0.3, 0.3), uniform_real(eng, 0.8, 1.2), uniform_real(eng, -4, 4)};
        CHECK(kernels::warp_serial(img, m) == kernels::warp_parallel(img, m));
    }
}

TEST_CASE("warp: identity map and edge clamping") {
    Engine eng(4);
    const auto img = random_image(eng, 5, 4);
    const auto out = kernels::warp_serial(img, {});
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        CHECK(out[i] == static_cast<double>(img.pixels[i]));
    }
    // shifting far left samples the clamped left column
    const auto shifted = kernels::warp_serial(img, {1, 0, -100, 0, 1, 0});
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 5; ++x) {
            CHECK(shifted[static_cast<std::size_t>(y * 5 + x) * 3] == static_cast<double>(img.at(0, y, 0)));
        }
    }
    // half-pixel shift averages neighbours
    const auto half = kernels::warp_serial(img, {1, 0, 0.5, 0, 1, 0});
    CHECK(half[0] == doctest::Approx((img.at(0, 0, 0) + img.at(1, 0, 0)) / 2.0));
}
