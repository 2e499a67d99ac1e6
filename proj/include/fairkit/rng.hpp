#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>
#include <vector>

namespace fairkit {

/// Engine used everywhere randomness is needed. Its output sequence is fixed
/// by the standard, so results are reproducible across platforms as long as
/// the helpers below (not std distributions) turn bits into values.
using Engine = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// 64-bit FNV-1a; stable hash for mixing string labels into seeds.
std::uint64_t hash_label(std::string_view label) noexcept;

/// Counter-style stream split: mixes a base seed with an ordered list of
/// words so that every (command, cell, item) gets an independent stream.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) noexcept;

inline std::uint64_t signed_word(long long v) noexcept { return static_cast<std::uint64_t>(v); }

/// Uniform integer in [0, n). n must be positive.
std::uint64_t uniform_below(Engine& eng, std::uint64_t n);

/// Uniform double in [0, 1) with 53 random bits.
double uniform_unit(Engine& eng);

/// Uniform double in [lo, hi]; returns lo exactly when lo == hi.
double uniform_real(Engine& eng, double lo, double hi);

/// k distinct indices drawn uniformly from [0, n), returned ascending.
std::vector<std::size_t> sample_indices(Engine& eng, std::size_t n, std::size_t k);

}  // namespace fairkit
