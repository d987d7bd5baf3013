#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iafeas/model.hpp"
#include "iafeas/numerics/channels.hpp"
#include "iafeas/numerics/complex_matrix.hpp"

namespace iafeas {

using numerics::ChannelSet;
using numerics::ComplexMatrix;

enum class StopReason { LeakageTolerance, Stalled, MaxIterations };

const char* to_string(StopReason r);

struct SolverOptions {
    int max_iterations = 5000;
    /// Stop once max_k p_k drops below this.
    double leakage_tolerance = 1e-8;
    /// Stop when max leakage improved by less than this over `stall_window`
    /// iterations.
    double stall_tolerance = 1e-12;
    int stall_window = 50;
    /// Key of the precoder initialization stream.
    std::uint64_t seed = 0;
    /// Overrides the random initial precoders (orthonormalized on use).
    std::optional<std::vector<ComplexMatrix>> initial_precoders;

    /// Throws std::invalid_argument on non-positive tolerances or iterations.
    void validate() const;
};

struct AlignmentSolution {
    std::vector<ComplexMatrix> precoders;  // V^[k], M^[k] x d^[k]
    std::vector<ComplexMatrix> combiners;  // U^[k], N^[k] x d^[k]
    /// p_k of the returned precoders.
    std::vector<double> leakage;
    /// Completed precoder updates.
    int iterations_run = 0;
    /// max_k p_k before each precoder update, and of the final precoders.
    std::vector<double> history;
    /// Unnormalized interference power sum_k Tr(U^[k]† Q^[k] U^[k]) at the
    /// same points. Non-increasing whenever P^[k]/d^[k] is equal for all users.
    std::vector<double> total_leakage_history;
    StopReason stop_reason = StopReason::MaxIterations;

    double max_leakage() const;
};

/// Q^[k] = sum_{j != k} (P^[j]/d^[j]) H^[kj] V^[j] V^[j]† H^[kj]†.
ComplexMatrix interference_covariance(std::size_t k, const ChannelSet& channels,
                                      const std::vector<ComplexMatrix>& precoders);

/// Share of Tr Q in its d weakest eigen-directions; 0 when Tr Q ~ 0.
double leakage_fraction(const ComplexMatrix& q, int d);

/// Seeded random orthonormal M^[k] x d^[k] precoders.
std::vector<ComplexMatrix> initial_precoders(const SystemSpec& spec, std::uint64_t seed);

/// Alternating minimum-leakage iteration: receivers take the d weakest
/// interference directions, then the same rule is applied in the reciprocal
/// network to update the precoders.
AlignmentSolution alternating_minimization(const SystemSpec& spec, const ChannelSet& channels,
                                           const SolverOptions& opts = {});

struct LinkResidual {
    std::size_t rx_user;
    std::size_t tx_user;
    double norm;  // ||U^[k]† H^[kj] V^[j]||_F
    bool pass;
};

struct DesiredRank {
    std::size_t user;
    std::vector<double> singular_values;  // of U^[k]† H^[kk] V^[k], ascending
    bool pass;
};

struct AlignmentReport {
    std::vector<LinkResidual> cross_links;
    std::vector<DesiredRank> desired_links;
    bool pass = false;
};

/// Checks zero interference on every cross link and full rank on the
/// direct links.
AlignmentReport verify_alignment(const SystemSpec& spec, const ChannelSet& channels,
                                 const std::vector<ComplexMatrix>& precoders,
                                 const std::vector<ComplexMatrix>& combiners, double zero_tol,
                                 double rank_tol);

struct ExperimentOptions {
    SolverOptions solver;
    std::uint64_t base_seed = 0;
    /// A run counts as converged when its final max leakage is below this.
    double converged_threshold = 1e-6;
    /// Use base_seed for every trial's channels and vary only the start.
    bool fixed_channels = false;
    /// 0 picks the hardware concurrency.
    unsigned threads = 0;
};

struct TrialResult {
    std::uint64_t channel_seed;
    std::uint64_t init_seed;
    std::vector<double> leakage;
    double max_leakage;
    int iterations;
    std::size_t history_len;
    StopReason stop_reason;
    bool converged;
};

struct ExperimentSummary {
    std::vector<TrialResult> trials;  // in seed order
    double min_leakage = 0.0;
    double median_leakage = 0.0;
    double max_leakage = 0.0;
    double frac_converged = 0.0;
};

/// Independent solves for seeds base_seed + i, i < n_seeds, run in parallel.
ExperimentSummary feasibility_experiment(const SystemSpec& spec, int n_seeds, const ExperimentOptions& opts);

}  // namespace iafeas
