// SPDX-License-Identifier: Apache-2.0
#include "iwfa/engine.hpp"

#include <cmath>

namespace iwfa {

void RunConfig::validate(int num_users) const {
    if (!(tol > 0.0) || !std::isfinite(tol)) throw Error(ErrorCode::InvalidInput, "tol must be > 0");
    if (max_iter < 1) throw Error(ErrorCode::InvalidInput, "max_iter must be >= 1");
    if (weights) {
        if (weights->size() != num_users) {
            throw Error(ErrorCode::InvalidInput, "weights must have one entry per user");
        }
        if (!weights->allFinite() || (weights->array() <= 0.0).any()) {
            throw Error(ErrorCode::InvalidInput, "weights must be positive");
        }
    }
}

RVector RunConfig::weights_or_ones(int num_users) const {
    return weights ? *weights : RVector::Ones(num_users);
}

const char* to_string(StopReason reason) noexcept {
    switch (reason) {
        case StopReason::Converged: return "converged";
        case StopReason::MaxIterations: return "max_iter";
    }
    return "unknown";
}

FixedPointCheck verify_fixed_point(const SisoChannelSet& ch, const PowerProfile& profile,
                                   double tol, const std::optional<RVector>& weights) {
    const SisoGame game(ch);
    const RVector w = weights ? *weights : RVector::Ones(ch.num_users);
    FixedPointCheck out;
    out.residual = block_max_norm(profile_difference(waterfill_map(game, profile), profile), w);
    out.avi = avi_residual_siso(ch, profile);
    out.ok = out.residual <= tol && *out.avi <= tol;
    return out;
}

FixedPointCheck verify_fixed_point(const MimoChannelSet& ch, const CovarianceProfile& profile,
                                   double tol, const std::optional<RVector>& weights) {
    const MimoGame game(ch);
    const RVector w = weights ? *weights : RVector::Ones(ch.num_users);
    FixedPointCheck out;
    out.residual = block_max_norm(profile_difference(waterfill_map(game, profile), profile), w);
    out.ok = out.residual <= tol;
    return out;
}

}  // namespace iwfa
