#pragma once

#include <cstdint>
#include <initializer_list>

#include "iafeas/numerics/complex_matrix.hpp"

namespace iafeas::numerics {

/// Independent random streams; each draw is a pure function of
/// (seed, stream, coordinates), so results never depend on generation order.
enum class RngStream : std::uint64_t {
    Channel = 0x6368616e6e656c00ULL,
    Precoder = 0x707265636f646572ULL,
};

/// SplitMix64 finalizer chained over the words.
std::uint64_t hash_words(std::initializer_list<std::uint64_t> words);

/// Uniform double in the open interval (0, 1) from draw `index` of `key`.
double uniform_open(std::uint64_t key, std::uint64_t index);

/// Circularly-symmetric complex Gaussian with E|z|^2 = 1 (Box-Muller).
cplx complex_gaussian(std::uint64_t key);

/// rows x cols matrix whose (r, c) entry is complex_gaussian keyed by
/// (seed, stream, a, b, r, c).
ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, RngStream stream,
                              std::uint64_t a, std::uint64_t b);

}  // namespace iafeas::numerics
