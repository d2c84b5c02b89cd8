// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "iwfa/types.hpp"

namespace iwfa::linalg {

[[nodiscard]] inline CMatrix hermitian_part(const CMatrix& a) {
    return (a + a.adjoint()) * 0.5;
}

[[nodiscard]] inline bool is_hermitian(const CMatrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

[[nodiscard]] inline bool all_finite(const CMatrix& a) {
    return a.allFinite();
}

/// Eigenvalues ascending, columns of `vectors` orthonormal.
struct HermitianEig {
    RVector values;
    CMatrix vectors;
};

/// Symmetrizes before factorizing.
[[nodiscard]] HermitianEig eig_hermitian(const CMatrix& a);

[[nodiscard]] double lambda_max_hermitian(const CMatrix& a);
[[nodiscard]] double lambda_min_hermitian(const CMatrix& a);

/// log det of a Hermitian positive-definite matrix via Cholesky.
/// Throws NumericalDegeneracy when the factorization fails.
[[nodiscard]] double log_det_pd(const CMatrix& a);

/// Side length of each of `blocks` equal diagonal blocks of a `dim`-square matrix.
[[nodiscard]] int block_size(Eigen::Index dim, int blocks);

/// True when every entry outside the `blocks` diagonal blocks has magnitude <= tol.
[[nodiscard]] bool is_block_diagonal(const CMatrix& a, int blocks, double tol = 0.0);

[[nodiscard]] inline CMatrix diag_block(const CMatrix& a, int b, int bs) {
    return a.block(static_cast<Eigen::Index>(b) * bs, static_cast<Eigen::Index>(b) * bs, bs, bs);
}

/// Assembles a block-diagonal matrix from equal-size square blocks.
[[nodiscard]] CMatrix block_diagonal(const std::vector<CMatrix>& blocks);

}  // namespace iwfa::linalg
