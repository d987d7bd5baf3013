#include "iafeas/serialize.hpp"

#include <charconv>
#include <ostream>

namespace iafeas {

using nlohmann::json;

namespace {

json equation_json(const EquationId& e) {
    return {{"k", e.rx_user}, {"j", e.tx_user}, {"m", e.rx_col}, {"n", e.tx_col}};
}

const char* kind_name(BlockKind k) { return k == BlockKind::Tx ? "tx" : "rx"; }

}  // namespace

json classification_json(const SystemSpec& spec, const Classification& c) {
    json witness = json::object();
    if (const auto* a = std::get_if<SaturatingAssignment>(&c.witness)) {
        json list = json::array();
        for (const auto& s : a->entries) {
            list.push_back({{"equation", equation_json(s.equation)},
                            {"block", {{"kind", kind_name(s.kind)}, {"user", s.user}, {"column", s.column}}},
                            {"slot", s.slot}});
        }
        witness["assignment"] = std::move(list);
    } else if (const auto* v = std::get_if<ViolatingSubset>(&c.witness)) {
        json list = json::array();
        for (const auto& e : v->equations) list.push_back(equation_json(e));
        witness["violating_subset"] = std::move(list);
        witness["union_size"] = v->union_size;
    }
    return {{"system", format_system(spec)},
            {"verdict", to_string(c.verdict)},
            {"n_equations", c.counts.num_equations},
            {"n_variables", c.counts.num_variables},
            {"witness", std::move(witness)}};
}

json channel_set_json(const numerics::ChannelSet& channels) {
    json grid = json::array();
    for (std::size_t k = 0; k < channels.num_users(); ++k) {
        json row = json::array();
        for (std::size_t j = 0; j < channels.num_users(); ++j) {
            const auto& h = channels.h(k, j);
            json m = json::array();
            for (std::size_t r = 0; r < h.rows(); ++r) {
                json entries = json::array();
                for (const auto& v : h.row(r)) entries.push_back({v.real(), v.imag()});
                m.push_back(std::move(entries));
            }
            row.push_back(std::move(m));
        }
        grid.push_back(std::move(row));
    }
    return {{"seed", channels.seed()}, {"powers", channels.powers()}, {"H", std::move(grid)}};
}

json solution_json(const SystemSpec& spec, std::uint64_t seed, const AlignmentSolution& sol,
                   double converged_threshold) {
    return {{"system", format_system(spec)},
            {"seed", seed},
            {"iterations", sol.iterations_run},
            {"leakage", sol.leakage},
            {"converged", sol.max_leakage() < converged_threshold},
            {"history_len", sol.history.size()}};
}

json trial_json(const SystemSpec& spec, const TrialResult& t) {
    return {{"system", format_system(spec)},
            {"seed", t.init_seed},
            {"channel_seed", t.channel_seed},
            {"iterations", t.iterations},
            {"leakage", t.leakage},
            {"converged", t.converged},
            {"history_len", t.history_len},
            {"stop_reason", to_string(t.stop_reason)}};
}

json experiment_json(const SystemSpec& spec, const ExperimentSummary& s, std::uint64_t base_seed) {
    json runs = json::array();
    for (const auto& t : s.trials) runs.push_back(trial_json(spec, t));
    return {{"system", format_system(spec)},
            {"base_seed", base_seed},
            {"runs", std::move(runs)},
            {"min_leakage", s.min_leakage},
            {"median_leakage", s.median_leakage},
            {"max_leakage", s.max_leakage},
            {"frac_converged", s.frac_converged}};
}

void write_history_csv(std::ostream& os, const AlignmentSolution& sol) {
    os << "iteration,max_leakage\n";
    for (std::size_t i = 0; i < sol.history.size(); ++i) os << i << ',' << format_real(sol.history[i]) << '\n';
}

std::string format_real(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ec == std::errc{} ? end : buf);
}

}  // namespace iafeas
