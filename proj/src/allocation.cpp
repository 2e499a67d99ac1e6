#include "fairkit/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fairkit {

std::size_t nearest_rank(std::size_t n, double q) {
    if (n == 0) {
        throw std::invalid_argument("quantile of an empty sequence");
    }
    if (!(q >= 0.0 && q <= 1.0)) {
        throw std::invalid_argument("quantile fraction outside [0, 1]");
    }
    // The guard absorbs binary rounding of products such as 0.07 * 100.
    const double scaled = std::ceil(q * static_cast<double>(n) - 1e-9);
    const auto rank = static_cast<std::size_t>(std::max(1.0, scaled));
    return std::min(rank, n);
}

namespace {

template <typename T>
T select_rank(std::span<const T> values, double q) {
    const std::size_t rank = nearest_rank(values.size(), q);
    std::vector<T> sorted(values.begin(), values.end());
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank - 1), sorted.end());
    return sorted[rank - 1];
}

}  // namespace

long long nearest_rank_quantile(std::span<const long long> values, double q) {
    return select_rank(values, q);
}

double nearest_rank_quantile(std::span<const double> values, double q) {
    return select_rank(values, q);
}

std::vector<std::size_t> split_evenly(std::size_t total, std::size_t slots) {
    std::vector<std::size_t> out(slots, 0);
    if (slots == 0) {
        return out;
    }
    const std::size_t base = total / slots;
    const std::size_t extra = total % slots;
    for (std::size_t i = 0; i < slots; ++i) {
        out[i] = base + (i >= slots - extra ? 1 : 0);
    }
    return out;
}

std::vector<std::size_t> waterfill(std::span<const std::size_t> available, std::size_t total) {
    const std::size_t n = available.size();
    std::vector<std::size_t> taken(n, 0);
    std::size_t needed = total;
    for (std::size_t i = 0; i < n && needed > 0; ++i) {
        const std::size_t left = n - i;
        // Leftover units of the division stay with the later (larger) bins.
        const std::size_t share = needed / left;
        taken[i] = std::min(available[i], share);
        needed -= taken[i];
    }
    return taken;
}

}  // namespace fairkit
