#pragma once

#include <cstdint>
#include <vector>

#include "iafeas/model.hpp"
#include "iafeas/numerics/complex_matrix.hpp"

namespace iafeas::numerics {

/// Channel matrices H^[kj] (receiver k, transmitter j; N^[k] x M^[j]) for
/// every ordered pair including the direct links, plus per-user transmit
/// powers.
class ChannelSet {
public:
    ChannelSet() = default;
    ChannelSet(std::size_t num_users, std::vector<ComplexMatrix> grid, std::vector<double> powers,
               std::uint64_t seed);

    std::size_t num_users() const { return num_users_; }
    const ComplexMatrix& h(std::size_t rx, std::size_t tx) const { return grid_[rx * num_users_ + tx]; }
    ComplexMatrix& h(std::size_t rx, std::size_t tx) { return grid_[rx * num_users_ + tx]; }
    const std::vector<double>& powers() const { return powers_; }
    std::vector<double>& powers() { return powers_; }
    std::uint64_t seed() const { return seed_; }

    /// Shapes agree with `spec` and powers are positive.
    bool consistent_with(const SystemSpec& spec) const;

    /// The network with every link reversed: H'^[jk] = H^[kj]†.
    ChannelSet reciprocal() const;

    friend bool operator==(const ChannelSet&, const ChannelSet&) = default;

private:
    std::size_t num_users_ = 0;
    std::vector<ComplexMatrix> grid_;
    std::vector<double> powers_;
    std::uint64_t seed_ = 0;
};

/// I.i.d. unit-variance complex Gaussian entries keyed by (seed, k, j, row,
/// col); unit powers.
ChannelSet random_channel_set(const SystemSpec& spec, std::uint64_t seed);

/// Swaps transmit and receive antenna counts of every user.
SystemSpec reciprocal_spec(const SystemSpec& spec);

}  // namespace iafeas::numerics
