// SPDX-License-Identifier: Apache-2.0
#pragma once

// Best-response waterfilling for SISO and MIMO users, its projection forms, link rates
// and optimality residuals.
//
// Every function taking a strategy profile reads the other users' entries only; the
// entry of the user being evaluated is ignored unless it is passed separately.

#include "iwfa/channel_model.hpp"
#include "iwfa/linalg.hpp"

#include <vector>

namespace iwfa {

struct WaterlevelSolution {
    double level = 0.0;
    RVector allocation;  // (level - c_k)^+
};

/// Exact solution of sum_k (mu - c_k)^+ = budget by sorting the thresholds and scanning
/// breakpoints. No iteration and no tolerance.
[[nodiscard]] WaterlevelSolution waterlevel_solve(const RVector& thresholds, double budget);

/// Euclidean projection of x0 onto {x >= 0, sum x = budget}.
[[nodiscard]] RVector simplex_project(const RVector& x0, double budget);

/// Frobenius projection of a Hermitian matrix onto {X psd, Tr X = budget}. With
/// `blocks` > 1 the input must be block-diagonal and the projection is taken over the
/// block-diagonal set (one waterlevel shared by all blocks).
[[nodiscard]] CMatrix psd_trace_project(const CMatrix& x0, double budget, int blocks = 1);

// ---------------------------------------------------------------------------------------
// SISO

/// Interference-plus-noise to direct-gain ratio per carrier seen by user q.
[[nodiscard]] RVector insr(const SisoChannelSet& ch, int q, const PowerProfile& profile);

struct SisoWaterfillResult {
    RVector allocation;
    double waterlevel = 0.0;
    std::vector<int> active_set;
};

[[nodiscard]] SisoWaterfillResult siso_waterfill(const SisoChannelSet& ch, int q,
                                                 const PowerProfile& profile);

/// Rate of user q in bits: sum_k log2(1 + p_q(k) / insr_k).
[[nodiscard]] double rate_bits(const SisoChannelSet& ch, int q, const PowerProfile& profile);

/// Throws InvalidStrategy unless p >= 0 and sum p <= budget (or == budget when `full`).
void check_allocation(const RVector& p, double budget, bool full);
[[nodiscard]] bool is_feasible_allocation(const RVector& p, double budget);

/// Distance of a SISO profile from the solution set of the affine variational
/// inequality characterizing the equilibria: zero exactly at a Nash equilibrium.
[[nodiscard]] double avi_residual_siso(const SisoChannelSet& ch, const PowerProfile& profile);

// ---------------------------------------------------------------------------------------
// MIMO

/// Number of diagonal blocks usable for user q: the channel's block count when every
/// strategy in the profile (other than q's unless `include_self`) is exactly
/// block-diagonal, otherwise 1.
[[nodiscard]] int effective_blocks(const MimoChannelSet& ch, int q,
                                   const CovarianceProfile& profile, bool include_self = false);

/// Interference-plus-noise covariance R_{-q}, per block.
[[nodiscard]] std::vector<CMatrix> interference_plus_noise(const MimoChannelSet& ch, int q,
                                                           const CovarianceProfile& profile,
                                                           int blocks);

/// (H_qq^H R_{-q}^{-1} H_qq)^{-1}, per block, computed as (H^{-1} L)(H^{-1} L)^H with
/// R_{-q} = L L^H.
[[nodiscard]] std::vector<CMatrix> inverse_equivalent_channel(const MimoChannelSet& ch, int q,
                                                              const CovarianceProfile& profile,
                                                              int blocks);

struct MimoWaterfillResult {
    CMatrix covariance;
    double waterlevel = 0.0;
    std::vector<int> active_set;          // indices into the concatenated eigenvalues
    std::vector<linalg::HermitianEig> eig_basis;  // per block: U_q and D_q
};

[[nodiscard]] MimoWaterfillResult mimo_waterfill(const MimoChannelSet& ch, int q,
                                                 const CovarianceProfile& profile);

[[nodiscard]] CMatrix mimo_waterfill_via_projection(const MimoChannelSet& ch, int q,
                                                    const CovarianceProfile& profile);

/// log2 det(I + H^H R_{-q}^{-1} H Q_q) evaluated as log det(R + H Q H^H) - log det(R).
/// profile[q] is the evaluated strategy.
[[nodiscard]] double rate_bits(const MimoChannelSet& ch, int q, const CovarianceProfile& profile);

void check_covariance(const CMatrix& x, double budget, bool full);
[[nodiscard]] bool is_feasible_covariance(const CMatrix& x, double budget);

/// Aggregate violation of the single-user optimality conditions for strategy `qq`
/// against the interference generated by `profile`: stationarity, dual feasibility
/// and complementarity. Vanishes iff `qq` is the best response.
[[nodiscard]] double kkt_residual_mimo(const MimoChannelSet& ch, int q, const CMatrix& qq,
                                       const CovarianceProfile& profile);

}  // namespace iwfa
