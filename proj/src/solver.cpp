#include "iafeas/solver.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "iafeas/numerics/eigen.hpp"
#include "iafeas/numerics/random.hpp"

namespace iafeas {

using numerics::hermitian_eigen;

namespace {

void require_channels(const SystemSpec& spec, const ChannelSet& channels) {
    if (!channels.consistent_with(spec))
        throw numerics::ShapeError("channel set does not match system " + format_system(spec));
}

void require_filters(const SystemSpec& spec, const std::vector<ComplexMatrix>& filters, bool transmit,
                     const char* what) {
    if (filters.size() != spec.num_users())
        throw numerics::ShapeError(std::string(what) + ": expected one matrix per user");
    for (std::size_t k = 0; k < filters.size(); ++k) {
        const auto rows = static_cast<std::size_t>(transmit ? spec[k].tx_antennas : spec[k].rx_antennas);
        if (filters[k].rows() != rows || filters[k].cols() != static_cast<std::size_t>(spec[k].dof))
            throw numerics::ShapeError(std::string(what) + ": wrong shape for user " + std::to_string(k));
    }
}

struct Evaluation {
    std::vector<ComplexMatrix> filters;
    std::vector<double> leakage;
    double max_leakage = 0.0;
    double total_leakage = 0.0;
};

// For every receiver of `channels`: the d weakest directions of its
// interference covariance under `transmit`, and the resulting leakage.
Evaluation weakest_directions(const SystemSpec& spec, const ChannelSet& channels,
                              const std::vector<ComplexMatrix>& transmit) {
    Evaluation out;
    out.filters.reserve(spec.num_users());
    out.leakage.reserve(spec.num_users());
    for (std::size_t k = 0; k < spec.num_users(); ++k) {
        const auto q = interference_covariance(k, channels, transmit);
        const auto eig = hermitian_eigen(q);
        const auto d = static_cast<std::size_t>(spec[k].dof);
        out.filters.push_back(numerics::smallest_eigenvectors(eig, d));
        double weak = 0.0, total = 0.0;
        for (std::size_t i = 0; i < eig.values.size(); ++i) {
            total += eig.values[i];
            if (i < d) weak += std::max(eig.values[i], 0.0);
        }
        const double p = total > 1e-300 ? std::clamp(weak / total, 0.0, static_cast<double>(d) / q.rows()) : 0.0;
        out.leakage.push_back(p);
        out.total_leakage += weak;
        out.max_leakage = std::max(out.max_leakage, p);
    }
    return out;
}

}  // namespace

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::LeakageTolerance: return "leakage_tolerance";
        case StopReason::Stalled: return "stalled";
        case StopReason::MaxIterations: return "max_iterations";
    }
    return "unknown";
}

void SolverOptions::validate() const {
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
    if (!(leakage_tolerance > 0.0)) throw std::invalid_argument("leakage_tolerance must be positive");
    if (!(stall_tolerance > 0.0)) throw std::invalid_argument("stall_tolerance must be positive");
    if (stall_window < 1) throw std::invalid_argument("stall_window must be at least 1");
}

double AlignmentSolution::max_leakage() const {
    return leakage.empty() ? 0.0 : *std::max_element(leakage.begin(), leakage.end());
}

ComplexMatrix interference_covariance(std::size_t k, const ChannelSet& channels,
                                      const std::vector<ComplexMatrix>& precoders) {
    const std::size_t K = channels.num_users();
    if (k >= K || precoders.size() != K) throw numerics::ShapeError("interference_covariance: bad user index");
    const std::size_t n = channels.h(k, k).rows();
    ComplexMatrix q(n, n);
    for (std::size_t j = 0; j < K; ++j) {
        if (j == k) continue;
        const auto& v = precoders[j];
        if (v.cols() == 0) continue;
        const auto x = numerics::matmul(channels.h(k, j), v);
        q += (channels.powers()[j] / static_cast<double>(v.cols())) * numerics::matmul_adjoint(x, x);
    }
    return q;
}

double leakage_fraction(const ComplexMatrix& q, int d) {
    if (!q.square()) throw numerics::ShapeError("leakage_fraction: covariance must be square");
    if (d < 0 || static_cast<std::size_t>(d) > q.rows())
        throw std::invalid_argument("leakage_fraction: d=" + std::to_string(d) + " exceeds dimension " +
                                    std::to_string(q.rows()));
    const auto eig = hermitian_eigen(q);
    double total = 0.0;
    for (double v : eig.values) total += v;
    if (total <= 1e-300) return 0.0;
    if (!eig.values.empty() && eig.values.front() < -1e-9 * total)
        throw std::invalid_argument("leakage_fraction: covariance is not positive semidefinite");
    double weak = 0.0;
    for (int i = 0; i < d; ++i) weak += std::max(eig.values[static_cast<std::size_t>(i)], 0.0);
    return std::clamp(weak / total, 0.0, static_cast<double>(d) / static_cast<double>(q.rows()));
}

std::vector<ComplexMatrix> initial_precoders(const SystemSpec& spec, std::uint64_t seed) {
    std::vector<ComplexMatrix> out;
    out.reserve(spec.num_users());
    for (std::size_t k = 0; k < spec.num_users(); ++k) {
        out.push_back(numerics::orthonormalize(numerics::gaussian_matrix(
            static_cast<std::size_t>(spec[k].tx_antennas), static_cast<std::size_t>(spec[k].dof), seed,
            numerics::RngStream::Precoder, k, 0)));
    }
    return out;
}

AlignmentSolution alternating_minimization(const SystemSpec& spec, const ChannelSet& channels,
                                           const SolverOptions& opts) {
    require_valid(spec);
    require_channels(spec, channels);
    opts.validate();

    std::vector<ComplexMatrix> precoders;
    if (opts.initial_precoders) {
        require_filters(spec, *opts.initial_precoders, true, "initial_precoders");
        for (const auto& v : *opts.initial_precoders) precoders.push_back(numerics::orthonormalize(v));
    } else {
        precoders = initial_precoders(spec, opts.seed);
    }

    const ChannelSet reverse = channels.reciprocal();
    const SystemSpec reverse_spec = numerics::reciprocal_spec(spec);

    AlignmentSolution sol;
    while (true) {
        auto forward = weakest_directions(spec, channels, precoders);
        sol.history.push_back(forward.max_leakage);
        sol.total_leakage_history.push_back(forward.total_leakage);
        sol.combiners = std::move(forward.filters);
        sol.leakage = std::move(forward.leakage);

        const double current = sol.history.back();
        const auto window = static_cast<std::size_t>(opts.stall_window);
        if (current < opts.leakage_tolerance) {
            sol.stop_reason = StopReason::LeakageTolerance;
            break;
        }
        if (sol.history.size() > window &&
            sol.history[sol.history.size() - 1 - window] - current < opts.stall_tolerance) {
            sol.stop_reason = StopReason::Stalled;
            break;
        }
        if (sol.iterations_run >= opts.max_iterations) {
            sol.stop_reason = StopReason::MaxIterations;
            break;
        }
        precoders = weakest_directions(reverse_spec, reverse, sol.combiners).filters;
        ++sol.iterations_run;
    }
    sol.precoders = std::move(precoders);
    return sol;
}

AlignmentReport verify_alignment(const SystemSpec& spec, const ChannelSet& channels,
                                 const std::vector<ComplexMatrix>& precoders,
                                 const std::vector<ComplexMatrix>& combiners, double zero_tol,
                                 double rank_tol) {
    require_valid(spec);
    require_channels(spec, channels);
    require_filters(spec, precoders, true, "precoders");
    require_filters(spec, combiners, false, "combiners");

    AlignmentReport report;
    report.pass = true;
    const std::size_t K = spec.num_users();
    for (std::size_t k = 0; k < K; ++k) {
        for (std::size_t j = 0; j < K; ++j) {
            const auto link = numerics::matmul(numerics::adjoint_matmul(combiners[k], channels.h(k, j)), precoders[j]);
            if (j == k) {
                auto sv = numerics::singular_values(link);
                const bool pass = sv.empty() || sv.front() >= rank_tol;
                report.desired_links.push_back({k, std::move(sv), pass});
                report.pass = report.pass && pass;
            } else {
                const double norm = numerics::frobenius_norm(link);
                const bool pass = norm <= zero_tol;
                report.cross_links.push_back({k, j, norm, pass});
                report.pass = report.pass && pass;
            }
        }
    }
    return report;
}

}  // namespace iafeas
