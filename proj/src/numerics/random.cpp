#include "iafeas/numerics/random.hpp"

#include <cmath>
#include <numbers>

namespace iafeas::numerics {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t splitmix(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (auto w : words) h = splitmix(h ^ splitmix(w));
    return h;
}

double uniform_open(std::uint64_t key, std::uint64_t index) {
    const std::uint64_t bits = splitmix(key + index * kGolden) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

cplx complex_gaussian(std::uint64_t key) {
    const double u1 = uniform_open(key, 0);
    const double u2 = uniform_open(key, 1);
    // |z|^2 = -ln(u1) has unit mean.
    const double radius = std::sqrt(-std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, RngStream stream,
                              std::uint64_t a, std::uint64_t b) {
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = complex_gaussian(hash_words({seed, static_cast<std::uint64_t>(stream), a, b, r, c}));
    return m;
}

}  // namespace iafeas::numerics
