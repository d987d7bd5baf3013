#include <cmath>
#include <random>

#include "doctest.h"
#include "iafeas/numerics/channels.hpp"
#include "iafeas/numerics/eigen.hpp"
#include "iafeas/solver.hpp"

using namespace iafeas;
using numerics::cplx;

namespace {

ComplexMatrix projector(const ComplexMatrix& v) { return numerics::matmul_adjoint(v, v); }

double projector_distance(const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        worst = std::max(worst, numerics::max_abs(projector(a[k]) - projector(b[k])));
    return worst;
}

SolverOptions fixed_iterations(int n, std::uint64_t seed) {
    SolverOptions o;
    o.max_iterations = n;
    o.leakage_tolerance = 1e-300;
    o.stall_window = 100000;
    o.seed = seed;
    return o;
}

std::vector<ComplexMatrix> random_filters(const SystemSpec& spec, bool transmit, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<ComplexMatrix> out;
    for (std::size_t k = 0; k < spec.num_users(); ++k) {
        ComplexMatrix m(static_cast<std::size_t>(transmit ? spec[k].tx_antennas : spec[k].rx_antennas),
                        static_cast<std::size_t>(spec[k].dof));
        for (auto& x : m.data()) x = {g(rng), g(rng)};
        out.push_back(numerics::orthonormalize(m));
    }
    return out;
}

}  // namespace

TEST_CASE("interference covariance") {
    SUBCASE("single user has none") {
        const auto spec = parse_system("(3x3,2)");
        const auto ch = numerics::random_channel_set(spec, 1);
        const auto q = interference_covariance(0, ch, initial_precoders(spec, 1));
        CHECK(q.rows() == 3);
        CHECK(numerics::max_abs(q) == 0.0);
    }
    SUBCASE("identity channel passes the precoder direction") {
        const auto spec = parse_system("(2x2,1)^2");
        auto ch = numerics::random_channel_set(spec, 1);
        ch.h(0, 1) = ComplexMatrix::identity(2);
        const std::vector<ComplexMatrix> v{ComplexMatrix{{1.0}, {0.0}}, ComplexMatrix{{1.0}, {0.0}}};
        const auto q = interference_covariance(0, ch, v);
        CHECK(q == (ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}));
    }
    SUBCASE("trace sums interferer powers") {
        const auto spec = parse_system("(2x2,1)^3");
        auto ch = numerics::random_channel_set(spec, 1);
        ch.h(0, 1) = ComplexMatrix::identity(2);
        ch.h(0, 2) = ComplexMatrix::identity(2);
        const std::vector<ComplexMatrix> v{ComplexMatrix{{1.0}, {0.0}}, ComplexMatrix{{1.0}, {0.0}},
                                           ComplexMatrix{{0.0}, {1.0}}};
        const auto q = interference_covariance(0, ch, v);
        CHECK(trace(q).real() == doctest::Approx(2.0));
        CHECK(q == ComplexMatrix::identity(2));
    }
    SUBCASE("power scaling and stream normalization") {
        const auto spec = parse_system("(2x2,1)(2x2,2)");
        auto ch = numerics::random_channel_set(spec, 1);
        ch.h(0, 1) = ComplexMatrix::identity(2);
        ch.powers()[1] = 4.0;
        const std::vector<ComplexMatrix> v{ComplexMatrix{{1.0}, {0.0}}, ComplexMatrix::identity(2)};
        // (P/d) H V V† H† = 2 I
        CHECK(interference_covariance(0, ch, v) == cplx(2.0) * ComplexMatrix::identity(2));
    }
}

TEST_CASE("leakage fraction") {
    CHECK(leakage_fraction(ComplexMatrix::identity(3), 1) == doctest::Approx(1.0 / 3.0));
    const double d1[] = {0.0, 0.0, 5.0};
    CHECK(leakage_fraction(ComplexMatrix::diagonal(d1), 2) == 0.0);
    const double d2[] = {1.0, 2.0, 3.0, 4.0};
    CHECK(leakage_fraction(ComplexMatrix::diagonal(d2), 2) == doctest::Approx(0.3));
    CHECK(leakage_fraction(ComplexMatrix(3, 3), 2) == 0.0);
    CHECK(leakage_fraction(ComplexMatrix::identity(2), 0) == 0.0);

    CHECK_THROWS_AS(leakage_fraction(ComplexMatrix::identity(2), 3), std::invalid_argument);
    const double neg[] = {-1.0, 2.0};
    CHECK_THROWS_AS(leakage_fraction(ComplexMatrix::diagonal(neg), 1), std::invalid_argument);
    CHECK_THROWS_AS(leakage_fraction(ComplexMatrix(2, 3), 1), numerics::ShapeError);

    // Upper bound d/N is attained by a multiple of the identity.
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (int rep = 0; rep < 50; ++rep) {
        ComplexMatrix a(4, 3);
        for (auto& x : a.data()) x = {g(rng), g(rng)};
        const auto q = projector(a);
        for (int d = 0; d <= 4; ++d) {
            const double p = leakage_fraction(q, d);
            CHECK(p >= 0.0);
            CHECK(p <= d / 4.0 + 1e-15);
        }
    }
}

TEST_CASE("solver option validation") {
    SolverOptions o;
    CHECK_NOTHROW(o.validate());
    o.max_iterations = 0;
    CHECK_THROWS_AS(o.validate(), std::invalid_argument);
    o = {};
    o.leakage_tolerance = 0.0;
    CHECK_THROWS_AS(o.validate(), std::invalid_argument);
    o = {};
    o.stall_window = 0;
    CHECK_THROWS_AS(o.validate(), std::invalid_argument);

    const auto spec = parse_system("(2x2,1)^3");
    const auto ch = numerics::random_channel_set(spec, 0);
    CHECK_THROWS_AS(alternating_minimization(parse_system("(2x3,1)^3"), ch), numerics::ShapeError);
    CHECK_THROWS_AS(alternating_minimization(parse_system("(2x2,3)"), ch), InvalidSpec);
    SolverOptions bad;
    bad.initial_precoders = std::vector<ComplexMatrix>(3, ComplexMatrix(3, 1));
    CHECK_THROWS_AS(alternating_minimization(spec, ch, bad), numerics::ShapeError);
}

TEST_CASE("initial precoders are orthonormal and seeded") {
    const auto spec = parse_system("(4x2,2)(3x3,1)(5x5,3)");
    const auto a = initial_precoders(spec, 9);
    REQUIRE(a.size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(a[k].rows() == static_cast<std::size_t>(spec[k].tx_antennas));
        CHECK(a[k].cols() == static_cast<std::size_t>(spec[k].dof));
        CHECK(numerics::max_abs(numerics::adjoint_matmul(a[k], a[k]) - ComplexMatrix::identity(a[k].cols())) <
              1e-12);
    }
    CHECK(initial_precoders(spec, 9) == a);
    CHECK_FALSE(initial_precoders(spec, 10) == a);
}

TEST_CASE("solver converges on a feasible three-user system") {
    const auto spec = parse_system("(2x2,1)^3");
    const auto ch = numerics::random_channel_set(spec, 0);
    SolverOptions o;
    o.seed = 0;
    const auto sol = alternating_minimization(spec, ch, o);
    CHECK(sol.max_leakage() < 1e-6);
    CHECK(sol.stop_reason == StopReason::LeakageTolerance);
    CHECK(sol.history.size() == static_cast<std::size_t>(sol.iterations_run) + 1);
    CHECK(sol.total_leakage_history.size() == sol.history.size());
    CHECK(sol.history.back() == sol.max_leakage());

    const auto again = alternating_minimization(spec, ch, o);
    CHECK(again.precoders == sol.precoders);
    CHECK(again.history == sol.history);
}

TEST_CASE("single user has no leakage") {
    const auto spec = parse_system("(4x4,2)");
    const auto sol = alternating_minimization(spec, numerics::random_channel_set(spec, 3));
    CHECK(sol.iterations_run == 0);
    CHECK(sol.history == std::vector<double>{0.0});
    CHECK(sol.stop_reason == StopReason::LeakageTolerance);
}

TEST_CASE("single-antenna transmitters stay at a leakage floor") {
    const auto spec = parse_system("(1x2,1)^3");
    double lowest = 1.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        SolverOptions o;
        o.seed = s;
        const auto sol = alternating_minimization(spec, numerics::random_channel_set(spec, s), o);
        lowest = std::min(lowest, sol.max_leakage());
        CHECK(sol.stop_reason != StopReason::LeakageTolerance);
    }
    CHECK(lowest > 1e-2);
}

TEST_CASE("total interference power never increases with uniform weights") {
    for (const char* text : {"(2x3,1)^4", "(5x5,2)^4", "(3x3,1)^5", "(4x4,2)(4x4,2)(4x4,2)"}) {
        const auto spec = parse_system(text);
        for (std::uint64_t s = 0; s < 3; ++s) {
            CAPTURE(text);
            CAPTURE(s);
            const auto sol = alternating_minimization(spec, numerics::random_channel_set(spec, s),
                                                      fixed_iterations(200, s));
            const auto& t = sol.total_leakage_history;
            for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i] <= t[i - 1] * (1.0 + 1e-9) + 1e-12);
        }
    }
}

TEST_CASE("max leakage is non-increasing on (2x3,1)^4") {
    const auto spec = parse_system("(2x3,1)^4");
    for (std::uint64_t s = 0; s < 5; ++s) {
        SolverOptions o;
        o.seed = s;
        const auto sol = alternating_minimization(spec, numerics::random_channel_set(spec, s), o);
        for (std::size_t i = 1; i < sol.history.size(); ++i) CHECK(sol.history[i] <= sol.history[i - 1] + 1e-10);
    }
}

TEST_CASE("reported leakage matches a recomputation from the filters") {
    for (const char* text : {"(2x2,1)^3", "(5x5,3)(5x5,2)^3", "(3x4,2)(4x3,1)(2x2,1)"}) {
        const auto spec = parse_system(text);
        const auto ch = numerics::random_channel_set(spec, 11);
        const auto sol = alternating_minimization(spec, ch, fixed_iterations(25, 11));
        for (std::size_t k = 0; k < spec.num_users(); ++k) {
            const auto q = interference_covariance(k, ch, sol.precoders);
            CHECK(std::abs(sol.leakage[k] - leakage_fraction(q, spec[k].dof)) < 1e-10);
            // The combiner spans the weakest directions, so U†QU carries the leakage.
            const double captured = trace(numerics::matmul(numerics::adjoint_matmul(sol.combiners[k], q),
                                                           sol.combiners[k])).real();
            const double total = trace(q).real();
            if (total > 0) CHECK(std::abs(captured / total - sol.leakage[k]) < 1e-10);
        }
    }
}

TEST_CASE("the reverse step is the forward rule on the reciprocal network") {
    const auto spec = parse_system("(3x2,1)(2x3,1)(3x3,2)");
    const auto ch = numerics::random_channel_set(spec, 21);
    const auto rspec = numerics::reciprocal_spec(spec);
    const auto rch = ch.reciprocal();
    for (int n : {1, 2, 4}) {
        CAPTURE(n);
        const auto fwd_n = alternating_minimization(spec, ch, fixed_iterations(n, 21));
        const auto fwd_n1 = alternating_minimization(spec, ch, fixed_iterations(n + 1, 21));
        const auto fwd_n2 = alternating_minimization(spec, ch, fixed_iterations(n + 2, 21));

        auto ro = fixed_iterations(1, 0);
        ro.initial_precoders = fwd_n.combiners;
        const auto rev = alternating_minimization(rspec, rch, ro);
        // rev: U_n -> V_{n+1} -> U_{n+1} -> V_{n+2}
        CHECK(projector_distance(rev.precoders, fwd_n1.combiners) < 1e-8);
        CHECK(projector_distance(rev.combiners, fwd_n2.precoders) < 1e-8);
    }
}

TEST_CASE("verify_alignment") {
    SUBCASE("converged solution passes") {
        const auto spec = parse_system("(2x2,1)^3");
        const auto ch = numerics::random_channel_set(spec, 0);
        SolverOptions o;
        o.leakage_tolerance = 1e-12;
        const auto sol = alternating_minimization(spec, ch, o);
        REQUIRE(sol.max_leakage() < 1e-8);
        const auto r = verify_alignment(spec, ch, sol.precoders, sol.combiners, 1e-5, 1e-3);
        CHECK(r.pass);
        CHECK(r.cross_links.size() == 6);
        CHECK(r.desired_links.size() == 3);
    }
    SUBCASE("transmit zero-forcing passes") {
        const auto spec = parse_system("(8x2,2)^4");
        const auto ch = numerics::random_channel_set(spec, 2);
        std::vector<ComplexMatrix> v, u;
        for (std::size_t j = 0; j < 4; ++j) {
            // Null space of the stacked cross channels out of transmitter j.
            ComplexMatrix gram(8, 8);
            for (std::size_t k = 0; k < 4; ++k)
                if (k != j) gram += numerics::adjoint_matmul(ch.h(k, j), ch.h(k, j));
            v.push_back(numerics::smallest_eigenvectors(numerics::hermitian_eigen(gram), 2));
            u.push_back(ComplexMatrix::identity(2));
        }
        const auto r = verify_alignment(spec, ch, v, u, 1e-8, 1e-3);
        CHECK(r.pass);
        for (const auto& l : r.cross_links) CHECK(l.norm < 1e-8);
        for (std::size_t k = 0; k < 4; ++k) {
            // d = N here, so the fraction itself is pinned at 1; check the power.
            CHECK(trace(interference_covariance(k, ch, v)).real() < 1e-20);
        }
    }
    SUBCASE("random filters fail") {
        const auto spec = parse_system("(2x2,1)^3");
        const auto ch = numerics::random_channel_set(spec, 4);
        std::mt19937_64 rng(4);
        const auto r = verify_alignment(spec, ch, random_filters(spec, true, rng), random_filters(spec, false, rng),
                                        1e-4, 1e-3);
        CHECK_FALSE(r.pass);
        bool any_cross_fail = false;
        for (const auto& l : r.cross_links) any_cross_fail = any_cross_fail || !l.pass;
        CHECK(any_cross_fail);
    }
    SUBCASE("passing cross links imply small leakage") {
        const auto spec = parse_system("(2x3,1)^4");
        for (std::uint64_t s = 0; s < 5; ++s) {
            const auto ch = numerics::random_channel_set(spec, s);
            SolverOptions o;
            o.seed = s;
            const auto sol = alternating_minimization(spec, ch, o);
            const auto r = verify_alignment(spec, ch, sol.precoders, sol.combiners, 1e-4, 1e-3);
            bool cross_ok = true;
            for (const auto& l : r.cross_links) cross_ok = cross_ok && l.pass;
            if (cross_ok) CHECK(sol.max_leakage() < 1e-6);
        }
    }
    SUBCASE("shape errors") {
        const auto spec = parse_system("(2x2,1)^3");
        const auto ch = numerics::random_channel_set(spec, 0);
        const auto v = initial_precoders(spec, 0);
        CHECK_THROWS_AS(verify_alignment(spec, ch, v, {}, 1e-4, 1e-3), numerics::ShapeError);
    }
}

TEST_CASE("feasibility experiment") {
    ExperimentOptions o;
    o.base_seed = 0;

    SUBCASE("proper system converges everywhere") {
        const auto s = feasibility_experiment(parse_system("(2x3,1)^4"), 10, o);
        CHECK(s.frac_converged == 1.0);
        CHECK(s.max_leakage < 1e-6);
        REQUIRE(s.trials.size() == 10);
        for (std::size_t i = 0; i < 10; ++i) {
            CHECK(s.trials[i].init_seed == i);
            CHECK(s.trials[i].channel_seed == i);
            CHECK(s.trials[i].history_len == static_cast<std::size_t>(s.trials[i].iterations) + 1);
        }
    }
    SUBCASE("improper system never converges") {
        const auto s = feasibility_experiment(parse_system("(5x5,3)(5x5,2)^3"), 4, o);
        CHECK(s.frac_converged == 0.0);
        CHECK(s.min_leakage > 1e-3);
    }
    SUBCASE("single user") {
        const auto s = feasibility_experiment(parse_system("(4x4,2)"), 3, o);
        CHECK(s.frac_converged == 1.0);
        CHECK(s.max_leakage == 0.0);
        for (const auto& t : s.trials) CHECK(t.iterations == 0);
    }
    SUBCASE("summary statistics") {
        const auto s = feasibility_experiment(parse_system("(1x2,1)^3"), 4, o);
        std::vector<double> v;
        for (const auto& t : s.trials) v.push_back(t.max_leakage);
        std::sort(v.begin(), v.end());
        CHECK(s.min_leakage == v.front());
        CHECK(s.max_leakage == v.back());
        CHECK(s.median_leakage == 0.5 * (v[1] + v[2]));
    }
    SUBCASE("fixed channels") {
        o.fixed_channels = true;
        o.base_seed = 7;
        const auto s = feasibility_experiment(parse_system("(2x2,1)^3"), 3, o);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(s.trials[i].channel_seed == 7);
            CHECK(s.trials[i].init_seed == 7 + i);
        }
    }
    SUBCASE("thread count does not change results") {
        const auto spec = parse_system("(3x3,1)^4");
        o.threads = 1;
        const auto a = feasibility_experiment(spec, 6, o);
        o.threads = 4;
        const auto b = feasibility_experiment(spec, 6, o);
        REQUIRE(a.trials.size() == b.trials.size());
        for (std::size_t i = 0; i < a.trials.size(); ++i) {
            CHECK(a.trials[i].leakage == b.trials[i].leakage);
            CHECK(a.trials[i].iterations == b.trials[i].iterations);
            CHECK(a.trials[i].stop_reason == b.trials[i].stop_reason);
        }
        CHECK(a.median_leakage == b.median_leakage);
    }
    SUBCASE("bad arguments") {
        CHECK_THROWS_AS(feasibility_experiment(parse_system("(2x2,1)^3"), 0, o), std::invalid_argument);
        CHECK_THROWS_AS(feasibility_experiment(parse_system("(2x2,3)"), 1, o), InvalidSpec);
    }
}
