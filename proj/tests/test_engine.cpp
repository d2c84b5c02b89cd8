// SPDX-License-Identifier: Apache-2.0
#include "iwfa/engine.hpp"
#include "iwfa/equilibrium.hpp"

#include "test_support.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>
#include <string>

using namespace iwfa;
using iwfa::testing::Engine;

namespace {

bool has_code(const Error& e, ErrorCode code) { return e.code() == code; }

SisoChannelSet contractive_siso(std::uint64_t seed, int users, int carriers, double rho) {
    Engine rng(seed);
    auto ch = testing::random_siso(rng, users, carriers);
    testing::set_radius(ch, rho);
    return ch;
}

MimoChannelSet contractive_mimo(std::uint64_t seed, int users, int antennas, double rho) {
    Engine rng(seed);
    auto ch = testing::random_mimo(rng, users, antennas);
    testing::set_radius(ch, rho);
    return ch;
}

double distance(const PowerProfile& a, const PowerProfile& b) {
    return block_max_norm(profile_difference(a, b), RVector::Ones(static_cast<Eigen::Index>(a.size())));
}

double distance(const CovarianceProfile& a, const CovarianceProfile& b) {
    return block_max_norm(profile_difference(a, b), RVector::Ones(static_cast<Eigen::Index>(a.size())));
}

}  // namespace

TEST_CASE("schedule kind names", "[schedule]") {
    for (auto k : {ScheduleKind::Sequential, ScheduleKind::Simultaneous, ScheduleKind::Asynchronous}) {
        CHECK(schedule_kind_from_string(to_string(k)) == k);
    }
    CHECK_THROWS_AS(schedule_kind_from_string("round_robin"), Error);
}

TEST_CASE("sequential schedule updates one user in turn", "[schedule]") {
    const auto s = make_schedule(ScheduleKind::Sequential, 3);
    CHECK(s.window() == 3);
    CHECK(s.max_delay() == 0);
    for (long n = 0; n < 30; ++n) {
        const auto set = s.update_set(n);
        for (int q = 0; q < 3; ++q) {
            CHECK(static_cast<bool>(set[static_cast<std::size_t>(q)]) == (q == n % 3));
            CHECK(s.updates(q, n) == (q == n % 3));
            for (int r = 0; r < 3; ++r) CHECK(s.observed_index(q, r, n) == n);
        }
    }
}

TEST_CASE("simultaneous schedule updates everyone", "[schedule]") {
    const auto s = make_schedule(ScheduleKind::Simultaneous, 4);
    CHECK(s.window() == 1);
    for (long n = 0; n < 10; ++n) {
        for (char c : s.update_set(n)) CHECK(c);
    }
    CHECK(s.descriptor().find("simultaneous") == 0);
}

TEST_CASE("asynchronous schedule honors delays and windows", "[schedule][property]") {
    Engine rng(301);
    for (int t = 0; t < 50; ++t) {
        const int users = testing::uniform_int(rng, 1, 6);
        ScheduleParams p;
        p.max_delay = testing::uniform_int(rng, 0, 6);
        p.window = testing::uniform_int(rng, 1, 8);
        p.seed = rng();
        p.update_probability = testing::uniform(rng, 0.0, 1.0);
        const auto s = make_schedule(ScheduleKind::Asynchronous, users, p);
        std::vector<long> last(static_cast<std::size_t>(users), -1);
        for (long n = 0; n < 400; ++n) {
            const auto set = s.update_set(n);
            REQUIRE(static_cast<int>(set.size()) == users);
            CHECK(std::count(set.begin(), set.end(), 1) >= 1);
            for (int q = 0; q < users; ++q) {
                if (set[static_cast<std::size_t>(q)]) {
                    CHECK(n - last[static_cast<std::size_t>(q)] <= p.window);
                    last[static_cast<std::size_t>(q)] = n;
                }
                for (int r = 0; r < users; ++r) {
                    const long tau = s.observed_index(q, r, n);
                    CHECK(tau >= 0);
                    CHECK(tau <= n);
                    CHECK(n - tau <= p.max_delay);
                    if (r == q) CHECK(tau == n);
                }
            }
        }
        // Pure function of (seed, n).
        const auto again = make_schedule(ScheduleKind::Asynchronous, users, p);
        for (long n = 0; n < 50; ++n) CHECK(again.update_set(n) == s.update_set(n));
    }
}

TEST_CASE("asynchronous schedule without delay and full participation is simultaneous", "[schedule]") {
    const auto ch = contractive_siso(302, 3, 8, 0.5);
    const SisoGame game(ch);
    ScheduleParams p;
    p.update_probability = 1.0;
    p.window = 1;
    RunConfig cfg;
    cfg.tol = 1e-12;
    const auto a = run(game, make_schedule(ScheduleKind::Asynchronous, 3, p), cfg);
    const auto b = run(game, make_schedule(ScheduleKind::Simultaneous, 3), cfg);
    REQUIRE(a.iterations == b.iterations);
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].residual == b.records[i].residual);
    }
    CHECK(distance(a.final_profile, b.final_profile) == 0.0);
}

TEST_CASE("schedule parameter validation", "[schedule][errors]") {
    auto invalid = [](ScheduleKind k, int users, ScheduleParams p) {
        try {
            (void)make_schedule(k, users, p);
        } catch (const Error& e) {
            return has_code(e, ErrorCode::InvalidSchedule);
        }
        return false;
    };
    ScheduleParams p;
    CHECK(invalid(ScheduleKind::Sequential, 0, p));
    p.max_delay = -1;
    CHECK(invalid(ScheduleKind::Asynchronous, 2, p));
    p.max_delay = 2;
    CHECK(invalid(ScheduleKind::Sequential, 2, p));
    CHECK(invalid(ScheduleKind::Simultaneous, 2, p));
    p = {};
    p.window = -1;
    CHECK(invalid(ScheduleKind::Asynchronous, 2, p));
    p = {};
    p.window = 5;
    CHECK(invalid(ScheduleKind::Sequential, 2, p));
    CHECK(invalid(ScheduleKind::Simultaneous, 2, p));
    p = {};
    p.update_probability = 1.5;
    CHECK(invalid(ScheduleKind::Asynchronous, 2, p));
}

TEST_CASE("run configuration validation", "[engine][errors]") {
    const auto ch = contractive_siso(303, 2, 4, 0.5);
    const SisoGame game(ch);
    const auto sched = make_schedule(ScheduleKind::Simultaneous, 2);
    RunConfig cfg;
    cfg.tol = 0.0;
    CHECK_THROWS_AS(run(game, sched, cfg), Error);
    cfg = {};
    cfg.max_iter = 0;
    CHECK_THROWS_AS(run(game, sched, cfg), Error);
    cfg = {};
    cfg.weights = RVector::Ones(3);
    CHECK_THROWS_AS(run(game, sched, cfg), Error);
    cfg.weights = RVector::Constant(2, -1.0);
    CHECK_THROWS_AS(run(game, sched, cfg), Error);
    CHECK_THROWS_MATCHES(run(game, make_schedule(ScheduleKind::Simultaneous, 3)), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return has_code(e, ErrorCode::InvalidSchedule); }));
}

TEST_CASE("a single user converges after one update", "[engine]") {
    Engine rng(304);
    const auto ch = testing::random_siso(rng, 1, 8);
    const SisoGame game(ch);
    const auto trace = run(game, make_schedule(ScheduleKind::Sequential, 1));
    CHECK(trace.converged());
    CHECK(trace.iterations == 2);
    CHECK(trace.records[1].residual == 0.0);
    const auto wf = siso_waterfill(ch, 0, game.uniform_profile()).allocation;
    CHECK((trace.final_profile[0] - wf).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("all schedules and starting points reach the same equilibrium", "[engine][property]") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const int users = 2 + static_cast<int>(seed % 3);
        const auto ch = contractive_siso(400 + seed, users, 8, 0.7);
        const SisoGame game(ch);
        RunConfig cfg;
        cfg.tol = 1e-11;
        cfg.max_iter = 20000;
        Engine rng(seed);
        std::vector<PowerProfile> inits{game.uniform_profile(), game.vertex_profile(0),
                                        game.random_profile(rng)};
        std::vector<PowerProfile> finals;
        for (const auto& init : inits) {
            for (auto kind : {ScheduleKind::Sequential, ScheduleKind::Simultaneous,
                              ScheduleKind::Asynchronous}) {
                ScheduleParams p;
                if (kind == ScheduleKind::Asynchronous) p.max_delay = 3;
                p.seed = seed;
                const auto trace = run(game, make_schedule(kind, users, p), cfg, init);
                REQUIRE(trace.converged());
                finals.push_back(trace.final_profile);
            }
        }
        for (const auto& f : finals) CHECK(distance(f, finals.front()) <= 1e-8);
        const auto fp = verify_fixed_point(ch, finals.front(), 1e-9);
        CHECK(fp.ok);
    }
}

TEST_CASE("mimo schedules reach the same equilibrium", "[engine][property]") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto ch = contractive_mimo(500 + seed, 3, 2, 0.6);
        const MimoGame game(ch);
        RunConfig cfg;
        cfg.tol = 1e-11;
        Engine rng(seed);
        std::vector<CovarianceProfile> finals;
        for (const auto& init : {game.uniform_profile(), game.random_profile(rng)}) {
            for (auto kind : {ScheduleKind::Sequential, ScheduleKind::Simultaneous,
                              ScheduleKind::Asynchronous}) {
                ScheduleParams p;
                if (kind == ScheduleKind::Asynchronous) p.max_delay = 2;
                p.seed = seed;
                const auto trace = run(game, make_schedule(kind, 3, p), cfg, init);
                REQUIRE(trace.converged());
                finals.push_back(trace.final_profile);
            }
        }
        for (const auto& f : finals) CHECK(distance(f, finals.front()) <= 1e-8);
        CHECK(verify_fixed_point(ch, finals.front(), 1e-9).ok);
    }
}

TEST_CASE("runs are deterministic", "[engine]") {
    const auto ch = contractive_siso(306, 3, 8, 0.9);
    const SisoGame game(ch);
    ScheduleParams p;
    p.max_delay = 4;
    p.seed = 17;
    const auto sched = make_schedule(ScheduleKind::Asynchronous, 3, p);
    const auto a = run(game, sched);
    const auto b = run(game, sched);
    REQUIRE(a.iterations == b.iterations);
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].residual == b.records[i].residual);
        CHECK(a.records[i].updated == b.records[i].updated);
    }
    CHECK(a.channel_hash == channel_hash(ch));
    CHECK(a.seed == 17);
    CHECK(a.schedule_descriptor == sched.descriptor());
}

TEST_CASE("every iterate is feasible", "[engine][property]") {
    const auto ch = contractive_siso(307, 4, 8, 2.0);
    const SisoGame game(ch);
    ScheduleParams p;
    p.max_delay = 3;
    RunConfig cfg;
    cfg.record_profiles = true;
    cfg.max_iter = 300;
    const auto trace = run(game, make_schedule(ScheduleKind::Asynchronous, 4, p), cfg);
    CHECK(trace.profiles.size() == static_cast<std::size_t>(trace.iterations) + 1);
    for (const auto& prof : trace.profiles) CHECK(profile_feasible(game, prof));

    const auto mch = contractive_mimo(308, 3, 3, 2.0);
    const MimoGame mgame(mch);
    const auto mtrace = run(mgame, make_schedule(ScheduleKind::Asynchronous, 3, p), cfg);
    for (const auto& prof : mtrace.profiles) CHECK(profile_feasible(mgame, prof));
}

TEST_CASE("infeasible starting points are rejected", "[engine][errors]") {
    const auto ch = contractive_siso(309, 2, 4, 0.5);
    const SisoGame game(ch);
    auto init = game.uniform_profile();
    init[1](0) = -0.1;
    init[1](1) += 0.1;
    const auto sched = make_schedule(ScheduleKind::Simultaneous, 2);
    CHECK_THROWS_MATCHES(run(game, sched, {}, init), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return has_code(e, ErrorCode::InvalidInit); }));
    init = game.uniform_profile();
    init[0] *= 2.0;
    CHECK_THROWS_AS(run(game, sched, {}, init), Error);
    init = game.uniform_profile();
    init[0] = RVector::Constant(3, ch.budgets[0] / 3);
    CHECK_THROWS_AS(run(game, sched, {}, init), Error);
}

TEST_CASE("custom schedules violating the delay contract are rejected", "[engine][errors]") {
    const auto ch = contractive_siso(310, 2, 4, 0.5);
    const SisoGame game(ch);
    const Schedule future(
        ScheduleKind::Asynchronous, 2, 1, 2, 0, [](long) { return std::vector<char>{1, 1}; },
        [](int q, int r, long n) { return q == r ? n : n + 1; });
    CHECK_THROWS_MATCHES(run(game, future), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return has_code(e, ErrorCode::InvalidSchedule); }));
    const Schedule stale(
        ScheduleKind::Asynchronous, 2, 1, 2, 0, [](long) { return std::vector<char>{1, 1}; },
        [](int q, int r, long n) { return q == r || n < 3 ? n : n - 3; });
    CHECK_THROWS_AS(run(game, stale), Error);
    const Schedule wrong_size(
        ScheduleKind::Asynchronous, 2, 0, 2, 0, [](long) { return std::vector<char>{1}; },
        [](int, int, long n) { return n; });
    CHECK_THROWS_AS(run(game, wrong_size), Error);
}

TEST_CASE("hitting the iteration cap is reported", "[engine]") {
    const auto ch = contractive_siso(311, 3, 8, 0.9);
    const SisoGame game(ch);
    RunConfig cfg;
    cfg.max_iter = 3;
    cfg.tol = 1e-14;
    const auto trace = run(game, make_schedule(ScheduleKind::Simultaneous, 3), cfg);
    CHECK_FALSE(trace.converged());
    CHECK(trace.iterations == 3);
    CHECK(std::string(to_string(trace.stop_reason)) == "max_iter");
}

TEST_CASE("fixed point verification", "[engine]") {
    const auto ch = contractive_siso(312, 3, 8, 0.5);
    const SisoGame game(ch);
    RunConfig cfg;
    cfg.tol = 1e-13;
    const auto trace = run(game, make_schedule(ScheduleKind::Simultaneous, 3), cfg);
    REQUIRE(trace.converged());
    const auto good = verify_fixed_point(ch, trace.final_profile, 1e-9);
    CHECK(good.ok);
    REQUIRE(good.avi);
    CHECK(*good.avi <= 1e-9);
    const auto bad = verify_fixed_point(ch, game.vertex_profile(0), 1e-9);
    CHECK_FALSE(bad.ok);
    CHECK(bad.residual > 1e-3);

    const auto mch = contractive_mimo(313, 2, 2, 0.5);
    const MimoGame mgame(mch);
    const auto mtrace = run(mgame, make_schedule(ScheduleKind::Simultaneous, 2), cfg);
    CHECK(verify_fixed_point(mch, mtrace.final_profile, 1e-9).ok);
    CHECK_FALSE(verify_fixed_point(mch, mgame.vertex_profile(0), 1e-9).ok);
}

TEST_CASE("simultaneous residuals decay at the certified modulus", "[engine]") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto ch = contractive_siso(600 + seed, 3, 8, 0.6);
        const auto rep = certify_uniqueness(build_s_max(ch));
        REQUIRE(rep.unique);
        const SisoGame game(ch);
        RunConfig cfg;
        cfg.tol = 1e-10;
        cfg.weights = rep.weights;
        const auto trace = run(game, make_schedule(ScheduleKind::Simultaneous, 3), cfg, game.vertex_profile(1));
        REQUIRE(trace.converged());
        CHECK(geometric_rate_check(trace, *rep.modulus));
    }
}

TEST_CASE("geometric rate check argument errors", "[engine][errors]") {
    const auto ch = contractive_siso(314, 2, 4, 0.5);
    const SisoGame game(ch);
    const auto sim = run(game, make_schedule(ScheduleKind::Simultaneous, 2));
    CHECK_THROWS_AS(geometric_rate_check(sim, 1.0), Error);
    CHECK_THROWS_AS(geometric_rate_check(sim, -0.1), Error);
    const auto seq = run(game, make_schedule(ScheduleKind::Sequential, 2));
    CHECK_THROWS_MATCHES(geometric_rate_check(seq, 0.5), Error,
                         Catch::Matchers::Predicate<Error>(
                             [](const Error& e) { return has_code(e, ErrorCode::Unsupported); }));
}

TEST_CASE("trace csv export", "[engine]") {
    const auto ch = contractive_siso(315, 2, 4, 0.5);
    const SisoGame game(ch);
    RunConfig cfg;
    cfg.max_iter = 4;
    cfg.tol = 1e-15;
    const auto trace = run(game, make_schedule(ScheduleKind::Sequential, 2), cfg);
    std::ostringstream os;
    write_trace_csv(trace, os);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "n,user,updated,rate_bits,residual");
    int rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 4);
    }
    CHECK(rows == 8);
    CHECK(os.str().find("\n0,0,1,") != std::string::npos);
    CHECK(os.str().find("\n0,1,0,") != std::string::npos);
}
