// SPDX-License-Identifier: Apache-2.0
#pragma once

// Update-time sets and delay maps on a single logical clock.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace iwfa {

enum class ScheduleKind { Sequential, Simultaneous, Asynchronous };

[[nodiscard]] const char* to_string(ScheduleKind kind) noexcept;
[[nodiscard]] ScheduleKind schedule_kind_from_string(const std::string& s);

struct ScheduleParams {
    int max_delay = 0;   // D
    int window = 0;      // W; 0 picks the kind's default (Q, or 1 for simultaneous)
    std::uint64_t seed = 0;
    double update_probability = 0.5;  // asynchronous only
};

/// A schedule answers two questions for every iteration n: which users update, and
/// which past iteration's strategy of user r user q sees.
class Schedule {
public:
    using UpdateFn = std::function<std::vector<char>(long n)>;
    using DelayFn = std::function<long(int q, int r, long n)>;

    /// Custom schedule. The engine checks that every delay index lies in [n - D, n].
    Schedule(ScheduleKind kind, int num_users, int max_delay, int window, std::uint64_t seed,
             UpdateFn updates, DelayFn observed);

    [[nodiscard]] ScheduleKind kind() const { return kind_; }
    [[nodiscard]] int num_users() const { return num_users_; }
    [[nodiscard]] int max_delay() const { return max_delay_; }
    [[nodiscard]] int window() const { return window_; }
    [[nodiscard]] std::uint64_t seed() const { return seed_; }

    /// Flags of the users updating at iteration n.
    [[nodiscard]] std::vector<char> update_set(long n) const { return updates_(n); }
    [[nodiscard]] bool updates(int q, long n) const;

    /// tau_r^q(n): iteration index of user r's strategy observed by user q at n.
    [[nodiscard]] long observed_index(int q, int r, long n) const { return observed_(q, r, n); }

    [[nodiscard]] std::string descriptor() const;

private:
    ScheduleKind kind_;
    int num_users_;
    int max_delay_;
    int window_;
    std::uint64_t seed_;
    UpdateFn updates_;
    DelayFn observed_;
};

/// Sequential: user n mod Q updates at n. Simultaneous: everyone at every n. Asynchronous:
/// a random nonempty subset, each user forced once per window of W iterations, delays
/// drawn uniformly from {0, ..., min(D, n)}. Pure functions of (seed, n).
[[nodiscard]] Schedule make_schedule(ScheduleKind kind, int num_users,
                                     const ScheduleParams& params = {});

}  // namespace iwfa
