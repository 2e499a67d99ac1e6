#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fairkit {

/// 1-based rank of the nearest-rank q-quantile in a sample of size n.
/// q == 0 maps to rank 1 (the minimum).
std::size_t nearest_rank(std::size_t n, double q);

/// Nearest-rank quantile: the ceil(q*n)-th smallest value, no interpolation.
/// Throws std::invalid_argument on empty input or q outside [0, 1].
long long nearest_rank_quantile(std::span<const long long> values, double q);
double nearest_rank_quantile(std::span<const double> values, double q);

/// Splits `total` over `slots` as evenly as possible: every slot gets
/// total / slots and the total % slots leftover units go to the last slots.
std::vector<std::size_t> split_evenly(std::size_t total, std::size_t slots);

/// Draws `total` units from bins visited in the given order (callers sort
/// bins ascending by availability). At each bin the still-needed amount is
/// split evenly over the bins not yet visited; a bin short of its share gives
/// everything it has and the gap rolls forward. Returns the amount taken per
/// bin. Reaches `total` whenever the bins hold enough in sum and are sorted
/// ascending.
std::vector<std::size_t> waterfill(std::span<const std::size_t> available, std::size_t total);

}  // namespace fairkit
