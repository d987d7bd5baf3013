#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "iafeas/solver.hpp"

namespace iafeas {

ExperimentSummary feasibility_experiment(const SystemSpec& spec, int n_seeds, const ExperimentOptions& opts) {
    if (n_seeds < 1) throw std::invalid_argument("feasibility_experiment: n_seeds must be at least 1");
    require_valid(spec);
    opts.solver.validate();

    const auto n = static_cast<std::size_t>(n_seeds);
    std::vector<TrialResult> trials(n);
    std::vector<std::exception_ptr> errors(n);

    auto run_trial = [&](std::size_t i) {
        try {
            const std::uint64_t init_seed = opts.base_seed + i;
            const std::uint64_t channel_seed = opts.fixed_channels ? opts.base_seed : init_seed;
            SolverOptions so = opts.solver;
            so.seed = init_seed;
            const auto channels = numerics::random_channel_set(spec, channel_seed);
            const auto sol = alternating_minimization(spec, channels, so);
            const double worst = sol.max_leakage();
            trials[i] = {channel_seed,       init_seed,       sol.leakage,
                         worst,              sol.iterations_run, sol.history.size(),
                         sol.stop_reason,    worst < opts.converged_threshold};
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };

    unsigned workers = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) run_trial(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) run_trial(i);
            });
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    ExperimentSummary summary;
    std::vector<double> finals;
    finals.reserve(n);
    std::size_t converged = 0;
    for (const auto& t : trials) {
        finals.push_back(t.max_leakage);
        converged += t.converged ? 1 : 0;
    }
    std::sort(finals.begin(), finals.end());
    summary.min_leakage = finals.front();
    summary.max_leakage = finals.back();
    summary.median_leakage = n % 2 ? finals[n / 2] : 0.5 * (finals[n / 2 - 1] + finals[n / 2]);
    summary.frac_converged = static_cast<double>(converged) / static_cast<double>(n);
    summary.trials = std::move(trials);
    return summary;
}

}  // namespace iafeas
