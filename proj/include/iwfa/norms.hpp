// SPDX-License-Identifier: Apache-2.0
#pragma once

// Norms used to measure contraction of the joint waterfilling map.

#include "iwfa/types.hpp"

namespace iwfa {

/// max_q |x_q| / w_q
[[nodiscard]] double weighted_max_norm(const RVector& x, const RVector& w);

/// Matrix norm induced by weighted_max_norm: max_q (1/w_q) sum_r |A_qr| w_r.
[[nodiscard]] double weighted_matrix_norm(const RMatrix& a, const RVector& w);

/// max_q ||delta_q||_2 / w_q over per-user blocks.
[[nodiscard]] double block_max_norm(const PowerProfile& delta, const RVector& w);

/// max_q ||delta_q||_F / w_q over per-user blocks.
[[nodiscard]] double block_max_norm(const CovarianceProfile& delta, const RVector& w);

/// max{ ||(x)^+||_1, ||(x)^-||_1 }
[[nodiscard]] double one_inf_norm(const RVector& x);

/// Profile difference a - b, blockwise.
[[nodiscard]] PowerProfile profile_difference(const PowerProfile& a, const PowerProfile& b);
[[nodiscard]] CovarianceProfile profile_difference(const CovarianceProfile& a,
                                                   const CovarianceProfile& b);

}  // namespace iwfa
