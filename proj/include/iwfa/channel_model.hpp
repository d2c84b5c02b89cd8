// SPDX-License-Identifier: Apache-2.0
#pragma once

// Interference-channel instances: per-carrier SISO sets and (block-diagonal) MIMO sets,
// plus reproducible random generation with path loss.
//
// Link indexing follows the signal direction: the pair (r, q) is the channel from
// transmitter r to receiver q. H_qq is the direct channel of link q.

#include "iwfa/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace iwfa {

struct SisoChannelSet {
    int num_users = 0;
    int num_carriers = 0;
    std::vector<CVector> gains;  // [r * Q + q], length N each
    std::vector<RVector> noise;  // per receiver, length N
    std::vector<double> budgets;
    std::vector<double> gaps;

    [[nodiscard]] const CVector& gain(int r, int q) const {
        return gains[static_cast<std::size_t>(r * num_users + q)];
    }
    [[nodiscard]] CVector& gain(int r, int q) {
        return gains[static_cast<std::size_t>(r * num_users + q)];
    }

    /// Throws InvalidSpec / SingularChannel when a type invariant is violated.
    void validate() const;

    friend bool operator==(const SisoChannelSet&, const SisoChannelSet&) = default;
};

struct MimoChannelSet {
    int num_users = 0;
    std::vector<int> dims;           // antennas per user (transmit = receive)
    std::vector<CMatrix> channels;   // [r * Q + q], shape n_q x n_r
    std::vector<CMatrix> noise_cov;  // per receiver, n_q x n_q
    std::vector<double> budgets;
    std::vector<double> gaps;
    int blocks = 1;  // >1 marks every matrix block-diagonal with this many carriers

    [[nodiscard]] const CMatrix& channel(int r, int q) const {
        return channels[static_cast<std::size_t>(r * num_users + q)];
    }
    [[nodiscard]] CMatrix& channel(int r, int q) {
        return channels[static_cast<std::size_t>(r * num_users + q)];
    }

    void validate() const;

    friend bool operator==(const MimoChannelSet& a, const MimoChannelSet& b);
};

enum class GenMode { SisoFreqSelective, MimoFlat, MimoWideband };

[[nodiscard]] const char* to_string(GenMode mode) noexcept;
[[nodiscard]] GenMode gen_mode_from_string(const std::string& s);

struct ChannelGenSpec {
    RMatrix distances;  // (r, q): transmitter r to receiver q, direct distances on the diagonal
    double path_loss_exponent = 2.5;
    int tap_count = 6;
    std::vector<double> snr_db;  // P_q / sigma_q^2 per user, with P_q = 1
    std::uint64_t seed = 0;
    GenMode mode = GenMode::SisoFreqSelective;

    [[nodiscard]] int num_users() const { return static_cast<int>(distances.rows()); }
    void validate() const;
};

/// Q users with unit direct distance and a common cross distance.
[[nodiscard]] ChannelGenSpec symmetric_spec(int users, double cross_distance, double snr_db,
                                            std::uint64_t seed, GenMode mode,
                                            double path_loss_exponent = 2.5, int taps = 6);

[[nodiscard]] SisoChannelSet generate_siso(const ChannelGenSpec& spec, int carriers);

/// `carriers` is required for wideband mode and ignored for flat mode.
[[nodiscard]] MimoChannelSet generate_mimo(const ChannelGenSpec& spec, int antennas,
                                           std::optional<int> carriers = std::nullopt);

/// Scales every direct channel by 1/gap; the returned set carries unit gaps.
[[nodiscard]] SisoChannelSet apply_gap(const SisoChannelSet& ch);
[[nodiscard]] MimoChannelSet apply_gap(const MimoChannelSet& ch);

/// Embeds a SISO set as diagonal per-carrier MIMO channels (n = N, one carrier per block).
[[nodiscard]] MimoChannelSet to_mimo(const SisoChannelSet& ch);

/// FNV-1a over the raw numeric content; used to tag traces.
[[nodiscard]] std::uint64_t channel_hash(const SisoChannelSet& ch);
[[nodiscard]] std::uint64_t channel_hash(const MimoChannelSet& ch);

}  // namespace iwfa
