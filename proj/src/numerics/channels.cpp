#include "iafeas/numerics/channels.hpp"

#include "iafeas/numerics/random.hpp"

namespace iafeas::numerics {

ChannelSet::ChannelSet(std::size_t num_users, std::vector<ComplexMatrix> grid, std::vector<double> powers,
                       std::uint64_t seed)
    : num_users_(num_users), grid_(std::move(grid)), powers_(std::move(powers)), seed_(seed) {
    if (grid_.size() != num_users_ * num_users_ || powers_.size() != num_users_)
        throw ShapeError("channel grid must be K x K with K powers");
}

bool ChannelSet::consistent_with(const SystemSpec& spec) const {
    if (spec.num_users() != num_users_) return false;
    for (std::size_t k = 0; k < num_users_; ++k) {
        if (!(powers_[k] > 0.0)) return false;
        for (std::size_t j = 0; j < num_users_; ++j) {
            const auto& m = h(k, j);
            if (m.rows() != static_cast<std::size_t>(spec[k].rx_antennas) ||
                m.cols() != static_cast<std::size_t>(spec[j].tx_antennas))
                return false;
        }
    }
    return true;
}

ChannelSet ChannelSet::reciprocal() const {
    std::vector<ComplexMatrix> grid(grid_.size());
    for (std::size_t k = 0; k < num_users_; ++k)
        for (std::size_t j = 0; j < num_users_; ++j) grid[j * num_users_ + k] = adjoint(h(k, j));
    return ChannelSet(num_users_, std::move(grid), powers_, seed_);
}

ChannelSet random_channel_set(const SystemSpec& spec, std::uint64_t seed) {
    require_valid(spec);
    const std::size_t K = spec.num_users();
    std::vector<ComplexMatrix> grid;
    grid.reserve(K * K);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t j = 0; j < K; ++j)
            grid.push_back(gaussian_matrix(static_cast<std::size_t>(spec[k].rx_antennas),
                                           static_cast<std::size_t>(spec[j].tx_antennas), seed,
                                           RngStream::Channel, k, j));
    return ChannelSet(K, std::move(grid), std::vector<double>(K, 1.0), seed);
}

SystemSpec reciprocal_spec(const SystemSpec& spec) {
    SystemSpec out = spec;
    for (auto& u : out.users) std::swap(u.tx_antennas, u.rx_antennas);
    return out;
}

}  // namespace iafeas::numerics
