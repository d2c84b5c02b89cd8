// SPDX-License-Identifier: Apache-2.0
#include "iwfa/schedule.hpp"

#include "iwfa/random.hpp"
#include "iwfa/types.hpp"

#include <algorithm>
#include <sstream>

namespace iwfa {

namespace {

constexpr std::uint64_t kUpdateStream = 0x7570646174650001ULL;
constexpr std::uint64_t kPickStream = 0x7069636b00000002ULL;
constexpr std::uint64_t kDelayStream = 0x64656c6179000003ULL;

}  // namespace

const char* to_string(ScheduleKind kind) noexcept {
    switch (kind) {
        case ScheduleKind::Sequential: return "sequential";
        case ScheduleKind::Simultaneous: return "simultaneous";
        case ScheduleKind::Asynchronous: return "asynchronous";
    }
    return "unknown";
}

ScheduleKind schedule_kind_from_string(const std::string& s) {
    if (s == "sequential") return ScheduleKind::Sequential;
    if (s == "simultaneous") return ScheduleKind::Simultaneous;
    if (s == "asynchronous") return ScheduleKind::Asynchronous;
    throw Error(ErrorCode::InvalidInput, "unknown schedule kind '" + s + "'");
}

Schedule::Schedule(ScheduleKind kind, int num_users, int max_delay, int window,
                   std::uint64_t seed, UpdateFn updates, DelayFn observed)
    : kind_(kind),
      num_users_(num_users),
      max_delay_(max_delay),
      window_(window),
      seed_(seed),
      updates_(std::move(updates)),
      observed_(std::move(observed)) {
    if (num_users < 1) throw Error(ErrorCode::InvalidSchedule, "schedule needs at least one user");
    if (max_delay < 0) throw Error(ErrorCode::InvalidSchedule, "max_delay must be >= 0");
    if (window < 1) throw Error(ErrorCode::InvalidSchedule, "window must be >= 1");
    if (!updates_ || !observed_) throw Error(ErrorCode::InvalidSchedule, "empty schedule maps");
}

bool Schedule::updates(int q, long n) const {
    const auto set = update_set(n);
    return set.at(static_cast<std::size_t>(q)) != 0;
}

std::string Schedule::descriptor() const {
    std::ostringstream os;
    os << to_string(kind_) << "(Q=" << num_users_ << ",D=" << max_delay_ << ",W=" << window_
       << ",seed=" << seed_ << ")";
    return os.str();
}

Schedule make_schedule(ScheduleKind kind, int num_users, const ScheduleParams& params) {
    if (num_users < 1) throw Error(ErrorCode::InvalidSchedule, "schedule needs at least one user");
    if (params.max_delay < 0) throw Error(ErrorCode::InvalidSchedule, "max_delay must be >= 0");
    if (params.window < 0) throw Error(ErrorCode::InvalidSchedule, "window must be >= 1");
    const int users = num_users;

    switch (kind) {
        case ScheduleKind::Sequential: {
            if (params.max_delay != 0) {
                throw Error(ErrorCode::InvalidSchedule, "sequential schedule has no delays");
            }
            if (params.window != 0 && params.window != users) {
                throw Error(ErrorCode::InvalidSchedule, "sequential window is fixed to Q");
            }
            auto upd = [users](long n) {
                std::vector<char> s(static_cast<std::size_t>(users), 0);
                s[static_cast<std::size_t>(n % users)] = 1;
                return s;
            };
            auto del = [](int, int, long n) { return n; };
            return {kind, users, 0, users, params.seed, upd, del};
        }
        case ScheduleKind::Simultaneous: {
            if (params.max_delay != 0) {
                throw Error(ErrorCode::InvalidSchedule, "simultaneous schedule has no delays");
            }
            if (params.window > 1) {
                throw Error(ErrorCode::InvalidSchedule, "simultaneous window is fixed to 1");
            }
            auto upd = [users](long) { return std::vector<char>(static_cast<std::size_t>(users), 1); };
            auto del = [](int, int, long n) { return n; };
            return {kind, users, 0, 1, params.seed, upd, del};
        }
        case ScheduleKind::Asynchronous: {
            const double prob = params.update_probability;
            if (!(prob >= 0.0 && prob <= 1.0)) {
                throw Error(ErrorCode::InvalidSchedule, "update_probability must lie in [0, 1]");
            }
            const int window = params.window == 0 ? users : params.window;
            const std::uint64_t seed = params.seed;
            const int d = params.max_delay;
            auto upd = [users, window, seed, prob](long n) {
                std::vector<char> s(static_cast<std::size_t>(users), 0);
                rnd::Engine rng(rnd::mix_seed(seed ^ kUpdateStream, static_cast<std::uint64_t>(n)));
                std::bernoulli_distribution coin(prob);
                bool any = false;
                for (int q = 0; q < users; ++q) {
                    const bool forced = (n % window) == (q % window);
                    const bool drawn = coin(rng);
                    if (forced || drawn) {
                        s[static_cast<std::size_t>(q)] = 1;
                        any = true;
                    }
                }
                if (!any) {
                    rnd::Engine pick(rnd::mix_seed(seed ^ kPickStream, static_cast<std::uint64_t>(n)));
                    std::uniform_int_distribution<int> u(0, users - 1);
                    s[static_cast<std::size_t>(u(pick))] = 1;
                }
                return s;
            };
            auto del = [users, seed, d](int q, int r, long n) -> long {
                if (q == r || d == 0) return n;
                rnd::Engine rng(rnd::mix_seed(seed ^ kDelayStream, static_cast<std::uint64_t>(n),
                                              static_cast<std::uint64_t>(q * users + r)));
                std::uniform_int_distribution<long> u(0, std::min<long>(d, n));
                return n - u(rng);
            };
            return {kind, users, d, window, seed, upd, del};
        }
    }
    throw Error(ErrorCode::InvalidSchedule, "unknown schedule kind");
}

}  // namespace iwfa
