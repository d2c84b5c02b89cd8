// SPDX-License-Identifier: Apache-2.0
#pragma once

// Interference matrices, uniqueness certificates and empirical contraction diagnostics.

#include "iwfa/engine.hpp"
#include "iwfa/norms.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace iwfa {

enum class InterferenceKind { SMimo, SMaxSiso };

[[nodiscard]] const char* to_string(InterferenceKind kind) noexcept;

struct InterferenceMatrix {
    RMatrix entries;  // hollow, nonnegative
    InterferenceKind kind = InterferenceKind::SMaxSiso;
};

/// [S]_qr = max_k |H_rq(k)|^2 / |H_qq(k)|^2 for r != q: the strongest per-carrier gain of the
/// interference from transmitter r at receiver q relative to q's direct link.
[[nodiscard]] InterferenceMatrix build_s_max(const SisoChannelSet& ch);

/// [S]_qr = sigma_max(H_qq^{-1} H_rq)^2 for r != q.
[[nodiscard]] InterferenceMatrix build_s_mimo(const MimoChannelSet& ch);

/// Largest eigenvalue modulus of a square nonnegative matrix.
[[nodiscard]] double spectral_radius(const RMatrix& m);

/// Perron vector of m + 1e-14 J, scaled to min entry 1.
[[nodiscard]] RVector perron_vector(const RMatrix& m);

struct EquilibriumReport {
    InterferenceMatrix matrix;
    double spectral_radius = 0.0;
    bool unique = false;                   // rho(S) < 1
    RVector weights;                       // certifying w; empty unless unique
    std::optional<double> weighted_norm;   // ||S||^w for the certifying w
    std::optional<double> modulus;         // contraction modulus (= weighted_norm when < 1)
    std::optional<bool> c2;                // row condition for w
    std::optional<bool> c3;                // column condition for w
    bool c2_unit = false;                  // row condition for w = 1
    bool c3_unit = false;                  // column condition for w = 1
};

[[nodiscard]] EquilibriumReport certify_uniqueness(const InterferenceMatrix& s);

/// Largest observed ratio ||WF(x) - WF(y)||^w_block / ||x - y||^w_block over random pairs of
/// feasible profiles. Pairs closer than 1e-10 of the profile size are skipped.
[[nodiscard]] double contraction_probe(const SisoChannelSet& ch, int trials, const RVector& w,
                                       std::uint64_t seed);
[[nodiscard]] double contraction_probe(const MimoChannelSet& ch, int trials, const RVector& w,
                                       std::uint64_t seed);

/// e_q(n) = ||p_q(n) - p_q(n-1)||_{1,inf} for every recorded transition of a SISO trace.
[[nodiscard]] std::vector<RVector> error_dynamic(const IterationTrace<PowerProfile>& trace);
[[noreturn]] void error_dynamic(const IterationTrace<CovarianceProfile>& trace);

}  // namespace iwfa
