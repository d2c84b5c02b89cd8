// SPDX-License-Identifier: Apache-2.0
#include "iwfa/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace iwfa::linalg {

HermitianEig eig_hermitian(const CMatrix& a) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(a));
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NumericalDegeneracy, "Hermitian eigendecomposition failed");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double lambda_max_hermitian(const CMatrix& a) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(a), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().maxCoeff();
}

double lambda_min_hermitian(const CMatrix& a) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(a), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double log_det_pd(const CMatrix& a) {
    Eigen::LLT<CMatrix> llt(hermitian_part(a));
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::NumericalDegeneracy, "matrix is not positive definite");
    }
    const auto& l = llt.matrixLLT();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < l.rows(); ++i) acc += std::log(l(i, i).real());
    return 2.0 * acc;
}

int block_size(Eigen::Index dim, int blocks) {
    if (blocks < 1 || dim % blocks != 0) {
        throw Error(ErrorCode::InvalidInput,
                    "dimension " + std::to_string(dim) + " not divisible into " +
                        std::to_string(blocks) + " blocks");
    }
    return static_cast<int>(dim / blocks);
}

bool is_block_diagonal(const CMatrix& a, int blocks, double tol) {
    if (blocks <= 1) return true;
    const int bs = block_size(a.rows(), blocks);
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (i / bs != j / bs && std::abs(a(i, j)) > tol) return false;
        }
    }
    return true;
}

CMatrix block_diagonal(const std::vector<CMatrix>& blocks) {
    if (blocks.empty()) return {};
    const Eigen::Index bs = blocks.front().rows();
    const auto total = bs * static_cast<Eigen::Index>(blocks.size());
    CMatrix out = CMatrix::Zero(total, total);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        out.block(static_cast<Eigen::Index>(b) * bs, static_cast<Eigen::Index>(b) * bs, bs, bs) =
            blocks[b];
    }
    return out;
}

}  // namespace iwfa::linalg
