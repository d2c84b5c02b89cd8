// SPDX-License-Identifier: Apache-2.0
#pragma once

// Uniform adapters over SISO and MIMO instances so that the iteration engine and the
// contraction diagnostics can be written once.

#include "iwfa/channel_model.hpp"
#include "iwfa/norms.hpp"
#include "iwfa/random.hpp"
#include "iwfa/waterfill.hpp"

#include <cstdint>
#include <vector>

namespace iwfa {

class SisoGame {
public:
    using Channel = SisoChannelSet;
    using Strategy = RVector;
    using Profile = PowerProfile;

    /// The channel must outlive the game.
    explicit SisoGame(const SisoChannelSet& ch) : ch_(&ch) { ch.validate(); }

    [[nodiscard]] const SisoChannelSet& channel() const { return *ch_; }
    [[nodiscard]] int num_users() const { return ch_->num_users; }
    [[nodiscard]] static const char* name() { return "siso"; }

    [[nodiscard]] Strategy best_response(int q, const Profile& view) const {
        return siso_waterfill(*ch_, q, view).allocation;
    }
    [[nodiscard]] double rate(int q, const Profile& profile) const {
        return rate_bits(*ch_, q, profile);
    }
    [[nodiscard]] bool feasible(const Strategy& s, int q) const {
        return static_cast<int>(s.size()) == ch_->num_carriers &&
               is_feasible_allocation(s, ch_->budgets[static_cast<std::size_t>(q)]);
    }

    /// Equal power on every carrier.
    [[nodiscard]] Profile uniform_profile() const {
        Profile out;
        for (int q = 0; q < num_users(); ++q) {
            out.push_back(RVector::Constant(ch_->num_carriers,
                                            ch_->budgets[static_cast<std::size_t>(q)] /
                                                ch_->num_carriers));
        }
        return out;
    }

    /// Whole budget on carrier (q + shift) mod N.
    [[nodiscard]] Profile vertex_profile(int shift) const {
        Profile out;
        const int n = ch_->num_carriers;
        for (int q = 0; q < num_users(); ++q) {
            RVector p = RVector::Zero(n);
            p(((q + shift) % n + n) % n) = ch_->budgets[static_cast<std::size_t>(q)];
            out.push_back(std::move(p));
        }
        return out;
    }

    [[nodiscard]] Profile random_profile(rnd::Engine& rng) const {
        Profile out;
        for (int q = 0; q < num_users(); ++q) {
            out.push_back(rnd::uniform_simplex(rng, ch_->num_carriers,
                                               ch_->budgets[static_cast<std::size_t>(q)]));
        }
        return out;
    }

    [[nodiscard]] std::uint64_t hash() const { return channel_hash(*ch_); }

private:
    const SisoChannelSet* ch_;
};

class MimoGame {
public:
    using Channel = MimoChannelSet;
    using Strategy = CMatrix;
    using Profile = CovarianceProfile;

    explicit MimoGame(const MimoChannelSet& ch) : ch_(&ch) { ch.validate(); }

    [[nodiscard]] const MimoChannelSet& channel() const { return *ch_; }
    [[nodiscard]] int num_users() const { return ch_->num_users; }
    [[nodiscard]] static const char* name() { return "mimo"; }

    [[nodiscard]] Strategy best_response(int q, const Profile& view) const {
        return mimo_waterfill(*ch_, q, view).covariance;
    }
    [[nodiscard]] double rate(int q, const Profile& profile) const {
        return rate_bits(*ch_, q, profile);
    }
    [[nodiscard]] bool feasible(const Strategy& s, int q) const {
        const auto n = ch_->dims[static_cast<std::size_t>(q)];
        return s.rows() == n && s.cols() == n &&
               is_feasible_covariance(s, ch_->budgets[static_cast<std::size_t>(q)]);
    }

    /// (P_q / n_q) I.
    [[nodiscard]] Profile uniform_profile() const {
        Profile out;
        for (int q = 0; q < num_users(); ++q) {
            const int n = ch_->dims[static_cast<std::size_t>(q)];
            out.push_back(CMatrix::Identity(n, n) *
                          cplx(ch_->budgets[static_cast<std::size_t>(q)] / n, 0.0));
        }
        return out;
    }

    /// Whole budget on antenna (q + shift) mod n_q.
    [[nodiscard]] Profile vertex_profile(int shift) const {
        Profile out;
        for (int q = 0; q < num_users(); ++q) {
            const int n = ch_->dims[static_cast<std::size_t>(q)];
            CMatrix m = CMatrix::Zero(n, n);
            const int i = ((q + shift) % n + n) % n;
            m(i, i) = ch_->budgets[static_cast<std::size_t>(q)];
            out.push_back(std::move(m));
        }
        return out;
    }

    /// Block-diagonal draws when the channel is block-structured.
    [[nodiscard]] Profile random_profile(rnd::Engine& rng) const {
        Profile out;
        for (int q = 0; q < num_users(); ++q) {
            const int n = ch_->dims[static_cast<std::size_t>(q)];
            const double p = ch_->budgets[static_cast<std::size_t>(q)];
            out.push_back(ch_->blocks > 1
                              ? rnd::block_trace_normalized_psd(rng, n, ch_->blocks, p)
                              : rnd::trace_normalized_psd(rng, n, p));
        }
        return out;
    }

    [[nodiscard]] std::uint64_t hash() const { return channel_hash(*ch_); }

private:
    const MimoChannelSet* ch_;
};

/// Joint best response of every user against the same profile.
template <class Game>
[[nodiscard]] typename Game::Profile waterfill_map(const Game& game,
                                                   const typename Game::Profile& profile) {
    typename Game::Profile out;
    out.reserve(profile.size());
    for (int q = 0; q < game.num_users(); ++q) out.push_back(game.best_response(q, profile));
    return out;
}

template <class Game>
[[nodiscard]] std::vector<double> rates(const Game& game, const typename Game::Profile& profile) {
    std::vector<double> out;
    out.reserve(profile.size());
    for (int q = 0; q < game.num_users(); ++q) out.push_back(game.rate(q, profile));
    return out;
}

template <class Game>
[[nodiscard]] bool profile_feasible(const Game& game, const typename Game::Profile& profile) {
    if (static_cast<int>(profile.size()) != game.num_users()) return false;
    for (int q = 0; q < game.num_users(); ++q) {
        if (!game.feasible(profile[static_cast<std::size_t>(q)], q)) return false;
    }
    return true;
}

}  // namespace iwfa
