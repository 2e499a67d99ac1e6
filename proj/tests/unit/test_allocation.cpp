#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "fairkit/allocation.hpp"
#include "fairkit/rng.hpp"

using namespace fairkit;

TEST_CASE("nearest-rank quantile picks the ceil(q*n)-th order statistic") {
    std::vector<long long> one_to_ten(10);
    std::iota(one_to_ten.begin(), one_to_ten.end(), 1);
    CHECK(nearest_rank_quantile(one_to_ten, 0.8) == 8);
    CHECK(nearest_rank_quantile(std::vector<long long>{5}, 0.2) == 5);
    CHECK(nearest_rank_quantile(std::vector<long long>{3, 1, 2}, 1.0) == 3);

    std::vector<double> hundred(100);
    std::iota(hundred.begin(), hundred.end(), 1.0);
    CHECK(nearest_rank_quantile(hundred, 0.05) == 5.0);
    CHECK(nearest_rank_quantile(hundred, 0.0) == 1.0);
    CHECK(nearest_rank_quantile(hundred, 0.07) == 7.0);  // 0.07*100 rounds above 7 in binary
    CHECK(nearest_rank_quantile(hundred, 0.95) == 95.0);
}

TEST_CASE("nearest-rank quantile rejects empty input and bad fractions") {
    CHECK_THROWS(nearest_rank_quantile(std::vector<long long>{}, 0.5));
    CHECK_THROWS(nearest_rank_quantile(std::vector<long long>{1}, 1.5));
    CHECK_THROWS(nearest_rank_quantile(std::vector<long long>{1}, -0.1));
}

TEST_CASE("quantile matches a sort-and-index oracle on random inputs") {
    Engine eng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + uniform_below(eng, 40);
        std::vector<long long> v(n);
        for (auto& x : v) {
            x = static_cast<long long>(uniform_below(eng, 50));
        }
        const double q = static_cast<double>(uniform_below(eng, 101)) / 100.0;
        auto sorted = v;
        std::sort(sorted.begin(), sorted.end());
        // rank = smallest r >= 1 with r >= q*n, by integer arithmetic on percent
        const std::size_t percent = static_cast<std::size_t>(q * 100.0 + 0.5);
        std::size_t rank = (percent * n + 99) / 100;
        rank = std::max<std::size_t>(rank, 1);
        CHECK(nearest_rank_quantile(v, q) == sorted[rank - 1]);
    }
}

TEST_CASE("split_evenly puts leftover units on the last slots") {
    CHECK(split_evenly(10, 3) == std::vector<std::size_t>{3, 3, 4});
    CHECK(split_evenly(11, 3) == std::vector<std::size_t>{3, 4, 4});
    CHECK(split_evenly(2, 4) == std::vector<std::size_t>{0, 0, 1, 1});
    CHECK(split_evenly(5, 0).empty());
}

TEST_CASE("waterfill redistributes a short bin's gap to later bins") {
    // source1 has 1 sample, source2 has 100, 10 wanted from each
    CHECK(waterfill(std::vector<std::size_t>{1, 100}, 20) == std::vector<std::size_t>{1, 19});
    CHECK(waterfill(std::vector<std::size_t>{0, 5, 5}, 10) == std::vector<std::size_t>{0, 5, 5});
    CHECK(waterfill(std::vector<std::size_t>{50, 50, 50}, 10) == split_evenly(10, 3));
    CHECK(waterfill(std::vector<std::size_t>{1, 2}, 10) == std::vector<std::size_t>{1, 2});
    CHECK(waterfill(std::vector<std::size_t>{}, 4).empty());
}

TEST_CASE("waterfill property: reaches the target whenever ascending bins suffice") {
    Engine eng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t bins = 1 + uniform_below(eng, 5);
        std::vector<std::size_t> avail(bins);
        for (auto& a : avail) {
            a = uniform_below(eng, 30);
        }
        std::sort(avail.begin(), avail.end());
        const std::size_t total = std::accumulate(avail.begin(), avail.end(), std::size_t{0});
        const std::size_t want = uniform_below(eng, 60);
        const auto taken = waterfill(avail, want);
        std::size_t got = 0;
        for (std::size_t i = 0; i < bins; ++i) {
            CHECK(taken[i] <= avail[i]);
            got += taken[i];
        }
        CHECK(got == std::min(want, total));
        // Bins that all have at least the even share contribute equally (up to 1).
        if (avail.front() * bins >= want + bins) {
            const auto [lo, hi] = std::minmax_element(taken.begin(), taken.end());
            CHECK(*hi - *lo <= 1);
        }
    }
}

TEST_CASE("sample_indices is a uniform k-subset, deterministic in the seed") {
    Engine a(42), b(42);
    const auto x = sample_indices(a, 20, 7);
    const auto y = sample_indices(b, 20, 7);
    CHECK(x == y);
    CHECK(x.size() == 7);
    CHECK(std::is_sorted(x.begin(), x.end()));
    CHECK(std::set<std::size_t>(x.begin(), x.end()).size() == 7);
    CHECK(x.back() < 20);
    CHECK_THROWS(sample_indices(a, 3, 4));

    // Every element of a 5-set is chosen about 2/5 of the time.
    Engine c(3);
    std::vector<int> hits(5, 0);
    for (int i = 0; i < 20000; ++i) {
        for (std::size_t idx : sample_indices(c, 5, 2)) {
            ++hits[idx];
        }
    }
    for (int h : hits) {
        CHECK(h == doctest::Approx(8000).epsilon(0.05));
    }
}

TEST_CASE("seed derivation separates streams and uniform_real honours degenerate ranges") {
    CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
    CHECK(derive_seed(1, {hash_label("curate")}) != derive_seed(1, {hash_label("sample")}));
    CHECK(hash_label("") == 0xcbf29ce484222325ULL);
    Engine eng(5);
    CHECK(uniform_real(eng, 0.25, 0.25) == 0.25);
    for (int i = 0; i < 1000; ++i) {
        const double u = uniform_real(eng, -1.0, 2.0);
        CHECK(u >= -1.0);
        CHECK(u <= 2.0);
    }
}
