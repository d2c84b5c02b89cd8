// SPDX-License-Identifier: Apache-2.0
#pragma once

// Totally asynchronous iterative waterfilling on a logical clock. Sequential and
// simultaneous updating are the special cases produced by make_schedule.

#include "iwfa/game.hpp"
#include "iwfa/norms.hpp"
#include "iwfa/schedule.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace iwfa {

struct RunConfig {
    double tol = 1e-6;
    long max_iter = 10000;
    std::optional<RVector> weights;  // all ones when unset
    bool record_profiles = false;

    void validate(int num_users) const;
    [[nodiscard]] RVector weights_or_ones(int num_users) const;
};

enum class StopReason { Converged, MaxIterations };

[[nodiscard]] const char* to_string(StopReason reason) noexcept;

struct IterationRecord {
    long n = 0;
    std::vector<char> updated;
    std::vector<double> rates;  // bits, at the profile after iteration n
    double residual = 0.0;      // weighted block-maximum norm of the change at n
};

template <class Profile>
struct IterationTrace {
    std::vector<IterationRecord> records;
    std::vector<Profile> profiles;  // init followed by one entry per iteration, when recorded
    Profile final_profile;
    StopReason stop_reason = StopReason::MaxIterations;
    long iterations = 0;
    ScheduleKind schedule_kind = ScheduleKind::Sequential;
    std::string schedule_descriptor;
    std::uint64_t channel_hash = 0;
    std::uint64_t seed = 0;
    RVector weights;

    [[nodiscard]] bool converged() const { return stop_reason == StopReason::Converged; }
};

template <class Game>
[[nodiscard]] IterationTrace<typename Game::Profile> run(const Game& game,
                                                         const Schedule& schedule,
                                                         const RunConfig& cfg,
                                                         const typename Game::Profile& init) {
    using Profile = typename Game::Profile;
    const int users = game.num_users();
    cfg.validate(users);
    if (schedule.num_users() != users) {
        throw Error(ErrorCode::InvalidSchedule, "schedule is built for " +
                                                    std::to_string(schedule.num_users()) +
                                                    " users, game has " + std::to_string(users));
    }
    if (!profile_feasible(game, init)) {
        throw Error(ErrorCode::InvalidInit, "initial profile is not feasible");
    }

    IterationTrace<Profile> trace;
    trace.schedule_kind = schedule.kind();
    trace.schedule_descriptor = schedule.descriptor();
    trace.channel_hash = game.hash();
    trace.seed = schedule.seed();
    trace.weights = cfg.weights_or_ones(users);
    if (cfg.record_profiles) trace.profiles.push_back(init);

    const int depth = schedule.max_delay();
    // W + D quiet ticks: every user has then updated against views taken inside the window.
    const long window = static_cast<long>(schedule.window()) + depth;
    std::deque<Profile> history{init};  // profiles at n - depth, ..., n
    std::deque<double> recent;          // last `window` residuals
    Profile current = init;

    for (long n = 0; n < cfg.max_iter; ++n) {
        const auto set = schedule.update_set(n);
        if (static_cast<int>(set.size()) != users) {
            throw Error(ErrorCode::InvalidSchedule, "update set has the wrong size");
        }
        Profile next = current;
        for (int q = 0; q < users; ++q) {
            if (!set[static_cast<std::size_t>(q)]) continue;
            bool latest = true;
            Profile view;
            for (int r = 0; r < users; ++r) {
                const long tau = schedule.observed_index(q, r, n);
                if (tau < 0 || tau > n) {
                    throw Error(ErrorCode::InvalidSchedule,
                                "delay index outside [0, n] at n=" + std::to_string(n));
                }
                const long lag = n - tau;
                if (lag > depth) {
                    throw Error(ErrorCode::InvalidSchedule,
                                "delay exceeds the declared bound at n=" + std::to_string(n));
                }
                if (lag != 0 && r != q) {
                    if (latest) view = current;
                    latest = false;
                    const auto& past = history[history.size() - 1 - static_cast<std::size_t>(lag)];
                    view[static_cast<std::size_t>(r)] = past[static_cast<std::size_t>(r)];
                }
            }
            next[static_cast<std::size_t>(q)] = game.best_response(q, latest ? current : view);
        }

        IterationRecord rec;
        rec.n = n;
        rec.updated = set;
        rec.residual = block_max_norm(profile_difference(next, current), trace.weights);
        rec.rates = rates(game, next);
        trace.records.push_back(std::move(rec));

        current = std::move(next);
        if (cfg.record_profiles) trace.profiles.push_back(current);
        history.push_back(current);
        while (static_cast<int>(history.size()) > depth + 1) history.pop_front();

        recent.push_back(trace.records.back().residual);
        if (static_cast<long>(recent.size()) > window) recent.pop_front();
        trace.iterations = n + 1;
        if (static_cast<long>(recent.size()) == window &&
            *std::max_element(recent.begin(), recent.end()) <= cfg.tol) {
            trace.stop_reason = StopReason::Converged;
            break;
        }
    }
    trace.final_profile = std::move(current);
    return trace;
}

/// Default initial point: uniform power or scaled identity.
template <class Game>
[[nodiscard]] auto run(const Game& game, const Schedule& schedule, const RunConfig& cfg = {}) {
    return run(game, schedule, cfg, game.uniform_profile());
}

struct FixedPointCheck {
    bool ok = false;
    double residual = 0.0;            // block-maximum norm of WF(x) - x
    std::optional<double> avi;        // SISO only
};

[[nodiscard]] FixedPointCheck verify_fixed_point(const SisoChannelSet& ch,
                                                 const PowerProfile& profile, double tol,
                                                 const std::optional<RVector>& weights = {});
[[nodiscard]] FixedPointCheck verify_fixed_point(const MimoChannelSet& ch,
                                                 const CovarianceProfile& profile, double tol,
                                                 const std::optional<RVector>& weights = {});

/// residual(n+1) <= alpha * residual(n) + 1e-12 along a simultaneous trace, in the norm the
/// trace was recorded with.
template <class Profile>
[[nodiscard]] bool geometric_rate_check(const IterationTrace<Profile>& trace, double alpha) {
    if (trace.schedule_kind != ScheduleKind::Simultaneous) {
        throw Error(ErrorCode::Unsupported, "geometric decay is only checked on simultaneous runs");
    }
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw Error(ErrorCode::InvalidInput, "modulus must lie in [0, 1)");
    }
    for (std::size_t i = 1; i < trace.records.size(); ++i) {
        if (trace.records[i].residual > alpha * trace.records[i - 1].residual + 1e-12) return false;
    }
    return true;
}

/// One row per (iteration, user): n,user,updated,rate_bits,residual.
template <class Profile>
void write_trace_csv(const IterationTrace<Profile>& trace, std::ostream& os) {
    const auto old_flags = os.flags();
    const auto old_prec = os.precision();
    os << "n,user,updated,rate_bits,residual\n";
    os << std::setprecision(17);
    for (const auto& rec : trace.records) {
        for (std::size_t q = 0; q < rec.rates.size(); ++q) {
            os << rec.n << ',' << q << ',' << (rec.updated[q] ? 1 : 0) << ',' << rec.rates[q]
               << ',' << rec.residual << '\n';
        }
    }
    os.flags(old_flags);
    os.precision(old_prec);
}

}  // namespace iwfa
