#include <benchmark/benchmark.h>

#include "fairkit/kernels.hpp"
#include "fairkit/rng.hpp"

using namespace fairkit;

namespace {

EmbeddingTable make_table(std::size_t n, std::size_t d) {
    Engine eng(1);
    std::vector<std::string> ids;
    std::vector<float> v;
    v.reserve(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        ids.push_back("e" + std::to_string(i));
        for (std::size_t j = 0; j < d; ++j) {
            v.push_back(static_cast<float>(uniform_real(eng, -1.0, 1.0)));
        }
    }
    return EmbeddingTable(ids, d, v);
}

std::vector<GaussianClassModel> make_classes(const EmbeddingTable& t, int count) {
    std::vector<GaussianClassModel> classes;
    for (int c = 0; c < count; ++c) {
        std::vector<std::size_t> rows;
        for (std::size_t i = static_cast<std::size_t>(c); i < t.size(); i += static_cast<std::size_t>(count)) {
            rows.push_back(i);
        }
        auto m = kernels::class_moments_serial(t, rows);
        m.cov += 0.01 * Eigen::MatrixXd::Identity(m.cov.rows(), m.cov.cols());
        classes.push_back(GaussianClassModel::factorize(c, m.mean, m.cov, rows.size()));
    }
    return classes;
}

void moments(benchmark::State& state, kernels::Exec exec) {
    const auto t = make_table(4000, static_cast<std::size_t>(state.range(0)));
    std::vector<std::size_t> rows(t.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i] = i;
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::class_moments(t, rows, exec));
    }
}

void densities(benchmark::State& state, kernels::Exec exec) {
    const auto t = make_table(5000, static_cast<std::size_t>(state.range(0)));
    const auto classes = make_classes(t, 10);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::log_densities(classes, t, exec));
    }
}

void warp(benchmark::State& state, kernels::Exec exec) {
    const int side = static_cast<int>(state.range(0));
    RgbImage img(side, side);
    Engine eng(2);
    for (auto& p : img.pixels) {
        p = static_cast<std::uint8_t>(uniform_below(eng, 256));
    }
    const kernels::PixelMap map{0.97, -0.1, 3.0, 0.1, 0.97, -2.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(kernels::warp(img, map, exec));
    }
}

}  // namespace

BENCHMARK_CAPTURE(moments, serial, kernels::Exec::serial)->Arg(64)->Arg(256);
BENCHMARK_CAPTURE(moments, parallel, kernels::Exec::parallel)->Arg(64)->Arg(256);
BENCHMARK_CAPTURE(densities, serial, kernels::Exec::serial)->Arg(64)->Arg(256);
BENCHMARK_CAPTURE(densities, parallel, kernels::Exec::parallel)->Arg(64)->Arg(256);
BENCHMARK_CAPTURE(warp, serial, kernels::Exec::serial)->Arg(200)->Arg(800);
BENCHMARK_CAPTURE(warp, parallel, kernels::Exec::parallel)->Arg(200)->Arg(800);

BENCHMARK_MAIN();
