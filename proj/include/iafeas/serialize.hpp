#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "json.hpp"

#include "iafeas/feasibility.hpp"
#include "iafeas/numerics/channels.hpp"
#include "iafeas/solver.hpp"

namespace iafeas {

/// {system, verdict, n_equations, n_variables, witness}. The witness holds
/// either `assignment` ({equation, block, slot} entries) or
/// `violating_subset` plus `union_size`; brute-force proper verdicts carry
/// an empty object.
nlohmann::json classification_json(const SystemSpec& spec, const Classification& c);

/// Debug dump: {seed, powers, H: [[ [[re, im], ...] rows ]...]} indexed H[k][j].
nlohmann::json channel_set_json(const numerics::ChannelSet& channels);

/// {system, seed, iterations, leakage, converged, history_len}.
nlohmann::json solution_json(const SystemSpec& spec, std::uint64_t seed, const AlignmentSolution& sol,
                             double converged_threshold);
nlohmann::json trial_json(const SystemSpec& spec, const TrialResult& t);

nlohmann::json experiment_json(const SystemSpec& spec, const ExperimentSummary& s, std::uint64_t base_seed);

/// Rows "iteration,max_leakage".
void write_history_csv(std::ostream& os, const AlignmentSolution& sol);

/// Shortest round-trip decimal form used by every text output.
std::string format_real(double v);

}  // namespace iafeas
