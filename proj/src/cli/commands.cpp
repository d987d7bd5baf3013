#include "iafeas/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "iafeas/feasibility.hpp"
#include "iafeas/numerics/kernels.hpp"
#include "iafeas/serialize.hpp"
#include "iafeas/solver.hpp"

namespace iafeas::cli {

namespace {

struct GlobalFlags {
    bool json = false;
    std::uint64_t seed = 0;
    int trials = 10;
    double tol = SolverOptions{}.leakage_tolerance;
    int max_iters = SolverOptions{}.max_iterations;
    std::string out_path;
    std::string simd;
    unsigned threads = 0;
    bool fixed_channels = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

SystemSpec parse_valid(const std::string& text) {
    SystemSpec spec = parse_system(text);
    require_valid(spec);
    return spec;
}

ExperimentOptions experiment_options(const GlobalFlags& g) {
    ExperimentOptions opts;
    opts.base_seed = g.seed;
    opts.solver.leakage_tolerance = g.tol;
    opts.solver.max_iterations = g.max_iters;
    opts.fixed_channels = g.fixed_channels;
    opts.threads = g.threads;
    if (g.trials < 1) throw UsageError("--trials must be at least 1");
    return opts;
}

// Writes to --out when given, otherwise to `fallback`.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw UsageError("cannot open output file " + path);
            os_ = &file_;
        }
    }
    std::ostream& stream() { return *os_; }
    bool to_file() const { return file_.is_open(); }

private:
    std::ofstream file_;
    std::ostream* os_;
};

void print_witness(std::ostream& os, const Classification& c) {
    if (const auto* v = std::get_if<ViolatingSubset>(&c.witness)) {
        os << "witness: " << v->equations.size() << " equations involve only " << v->union_size
           << " variables:";
        for (const auto& e : v->equations) os << ' ' << to_string(e);
        os << '\n';
    } else if (const auto* a = std::get_if<SaturatingAssignment>(&c.witness)) {
        os << "witness: every equation holds its own variable\n";
        for (const auto& s : a->entries) {
            os << "  " << to_string(s.equation) << " -> " << (s.kind == BlockKind::Tx ? "v" : "u") << "^["
               << s.user + 1 << "]_" << s.column << " slot " << s.slot << '\n';
        }
    }
}

int cmd_classify(const std::string& text, bool brute_force, const GlobalFlags& g, std::ostream& out) {
    const SystemSpec spec = parse_valid(text);
    const Classification c = classify_proper(spec);
    std::optional<Classification> oracle;
    if (brute_force) {
        oracle = brute_force_proper(spec);
        if (oracle->verdict != c.verdict) {
            throw std::logic_error("brute force verdict " + std::string(to_string(oracle->verdict)) +
                                   " disagrees with " + to_string(c.verdict));
        }
    }

    Sink sink(g.out_path, out);
    auto& os = sink.stream();
    if (g.json) {
        auto j = classification_json(spec, c);
        if (oracle) j["brute_force_verdict"] = to_string(oracle->verdict);
        os << j.dump(2) << '\n';
    } else {
        os << "system: " << format_system(spec) << '\n'
           << "verdict: " << to_string(c.verdict) << '\n'
           << "equations N_e: " << c.counts.num_equations << '\n'
           << "variables N_v: " << c.counts.num_variables << '\n';
        if (classify_total(spec) == TotalCheck::Improper) os << "total count: N_v < N_e\n";
        print_witness(os, c);
        if (oracle) os << "brute force: " << to_string(oracle->verdict) << " (agrees)\n";
    }
    return c.verdict == Verdict::Proper ? kOk : kImproper;
}

int cmd_solve(const std::string& text, bool csv, const std::string& history_path, const GlobalFlags& g,
              std::ostream& out) {
    const SystemSpec spec = parse_valid(text);
    const ExperimentOptions opts = experiment_options(g);
    const ExperimentSummary summary = feasibility_experiment(spec, g.trials, opts);

    if (!history_path.empty()) {
        const auto& first = summary.trials.front();
        SolverOptions so = opts.solver;
        so.seed = first.init_seed;
        const auto sol = alternating_minimization(spec, numerics::random_channel_set(spec, first.channel_seed), so);
        std::ofstream hist(history_path, std::ios::binary | std::ios::trunc);
        if (!hist) throw UsageError("cannot open history file " + history_path);
        write_history_csv(hist, sol);
    }

    Sink sink(g.out_path, out);
    auto& os = sink.stream();
    if (g.json) {
        os << experiment_json(spec, summary, g.seed).dump(2) << '\n';
    } else if (csv) {
        os << "seed,channel_seed,iterations,max_leakage,converged\n";
        for (const auto& t : summary.trials) {
            os << t.init_seed << ',' << t.channel_seed << ',' << t.iterations << ',' << format_real(t.max_leakage)
               << ',' << (t.converged ? "true" : "false") << '\n';
        }
    } else {
        os << "system: " << format_system(spec) << '\n'
           << "seed: " << g.seed << " (trials " << g.trials << ", kernels "
           << numerics::kernels::active().name << ")\n";
        os << std::left << std::setw(8) << "seed" << std::setw(12) << "iterations" << std::setw(20)
           << "stop" << "max_leakage\n";
        for (const auto& t : summary.trials) {
            os << std::setw(8) << t.init_seed << std::setw(12) << t.iterations << std::setw(20)
               << to_string(t.stop_reason) << format_real(t.max_leakage) << '\n';
        }
        os << "leakage min/median/max: " << format_real(summary.min_leakage) << " / "
           << format_real(summary.median_leakage) << " / " << format_real(summary.max_leakage) << '\n'
           << "converged fraction: " << format_real(summary.frac_converged) << '\n';
    }
    return summary.frac_converged > 0.0 ? kOk : kNotConverged;
}

int cmd_sweep(const std::string& text, int max_beams, const GlobalFlags& g, std::ostream& out,
              std::ostream& err) {
    const SystemSpec base = parse_valid(text);
    const int base_dof = base.total_dof();
    if (max_beams < base_dof) {
        throw UsageError("--max-beams " + std::to_string(max_beams) + " is below the base DoF " +
                         std::to_string(base_dof));
    }
    const ExperimentOptions opts = experiment_options(g);

    std::ostringstream csv;
    csv << kSweepHeader << '\n';
    for (int t = base_dof; t <= max_beams; ++t) {
        const auto point = distribute_beams(base, t - base_dof);
        if (!point) {
            csv << t << ",saturated,,,\n";
            continue;
        }
        const bool proper = classify_proper(*point).verdict == Verdict::Proper;
        const auto summary = feasibility_experiment(*point, g.trials, opts);
        csv << t << ',' << (proper ? "true" : "false") << ',' << format_real(summary.min_leakage) << ','
            << format_real(summary.median_leakage) << ',' << format_real(summary.frac_converged) << '\n';
    }

    Sink sink(g.out_path, out);
    sink.stream() << csv.str();
    (sink.to_file() ? out : err) << "seed: " << g.seed << '\n';
    return kOk;
}

int cmd_group(const std::string& text, const GlobalFlags& g, std::ostream& out) {
    const SystemSpec spec = parse_valid(text);
    const auto sym = as_symmetric(spec);
    if (!sym) throw UsageError(format_system(spec) + " is not a symmetric system");
    const auto members = antenna_group(*sym);
    const Verdict shared = symmetric_proper(*sym);
    for (const auto& m : members) {
        if (symmetric_proper(m) != shared || classify_proper(m.expand()).verdict != shared)
            throw std::logic_error("antenna transfer changed the verdict of " + format_system(m));
    }

    Sink sink(g.out_path, out);
    auto& os = sink.stream();
    if (g.json) {
        nlohmann::json list = nlohmann::json::array();
        for (const auto& m : members) list.push_back(format_system(m));
        os << nlohmann::json{{"system", format_system(spec)}, {"verdict", to_string(shared)}, {"members", list}}.dump(2)
           << '\n';
    } else {
        os << "group of " << format_system(spec) << " (" << members.size() << " members, all "
           << to_string(shared) << ")\n";
        for (const auto& m : members) os << "  " << format_system(m) << "  " << to_string(shared) << '\n';
    }
    return kOk;
}

}  // namespace

std::optional<SystemSpec> distribute_beams(const SystemSpec& base, int extra) {
    SystemSpec spec = base;
    const std::size_t K = spec.num_users();
    std::size_t cursor = 0;
    for (int beam = 0; beam < extra; ++beam) {
        bool placed = false;
        for (std::size_t tries = 0; tries < K && !placed; ++tries) {
            auto& u = spec.users[(cursor + tries) % K];
            if (u.dof < std::min(u.tx_antennas, u.rx_antennas)) {
                ++u.dof;
                cursor = (cursor + tries + 1) % K;
                placed = true;
            }
        }
        if (!placed) return std::nullopt;
    }
    return spec;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Feasibility of linear interference alignment in MIMO interference networks", "iafeas"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags g;
    app.add_flag("--json", g.json, "Emit JSON");
    app.add_option("--seed", g.seed, "Base seed; trial i uses seed + i");
    app.add_option("--trials", g.trials, "Independent trials per system")->check(CLI::PositiveNumber);
    app.add_option("--tol", g.tol, "Solver leakage tolerance")->check(CLI::PositiveNumber);
    app.add_option("--max-iters", g.max_iters, "Solver iteration cap")->check(CLI::PositiveNumber);
    app.add_option("--out", g.out_path, "Write the report to this file");
    app.add_option("--simd", g.simd, "Kernel backend")->check(CLI::IsMember({"auto", "scalar", "avx2"}));
    app.add_option("--threads", g.threads, "Worker threads for trials (0 = all cores)");
    app.add_flag("--fixed-channels", g.fixed_channels, "Keep the channels of --seed and vary only the start");

    std::string spec_text;
    bool brute_force = false;
    auto* classify = app.add_subcommand("classify", "Decide proper/improper with a witness");
    classify->add_option("system", spec_text, "System, e.g. \"(2x3,1)^4\"")->required();
    classify->add_flag("--brute-force", brute_force, "Cross-check by enumerating all subsets (N_e <= 20)");

    bool csv = false;
    std::string history_path;
    auto* solve = app.add_subcommand("solve", "Run the alternating leakage minimization over random channels");
    solve->add_option("system", spec_text, "System")->required();
    solve->add_flag("--csv", csv, "Per-trial CSV output");
    solve->add_option("--history", history_path, "Write the first trial's leakage history as CSV");

    int max_beams = 0;
    auto* sweep = app.add_subcommand("sweep", "Leakage versus total number of beams");
    sweep->add_option("system", spec_text, "Base system")->required();
    sweep->add_option("--max-beams", max_beams, "Largest total number of beams")->required();

    auto* group = app.add_subcommand("group", "List the antenna-transfer group of a symmetric system");
    group->add_option("system", spec_text, "Symmetric system")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (!g.simd.empty() && g.simd != "auto") {
            numerics::kernels::set_backend(*numerics::kernels::parse_backend(g.simd));
        }
        if (classify->parsed()) return cmd_classify(spec_text, brute_force, g, out);
        if (solve->parsed()) return cmd_solve(spec_text, csv, history_path, g, out);
        if (sweep->parsed()) return cmd_sweep(spec_text, max_beams, g, out, err);
        if (group->parsed()) return cmd_group(spec_text, g, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InvalidSpec& e) {
        err << "error: invalid system: " << e.what() << '\n';
        return kUsage;
    } catch (const SizeError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace iafeas::cli
