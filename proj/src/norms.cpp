// SPDX-License-Identifier: Apache-2.0
#include "iwfa/norms.hpp"

#include <algorithm>

namespace iwfa {

namespace {

void check_weights(const RVector& w, Eigen::Index expected) {
    if (w.size() != expected) {
        throw Error(ErrorCode::InvalidInput, "weight vector has " + std::to_string(w.size()) +
                                                 " entries, expected " + std::to_string(expected));
    }
    if (!w.allFinite() || (w.array() <= 0.0).any()) {
        throw Error(ErrorCode::InvalidInput, "weights must be positive");
    }
}

template <class Profile>
double block_max(const Profile& delta, const RVector& w) {
    check_weights(w, static_cast<Eigen::Index>(delta.size()));
    double out = 0.0;
    for (std::size_t q = 0; q < delta.size(); ++q) {
        out = std::max(out, delta[q].norm() / w(static_cast<Eigen::Index>(q)));
    }
    return out;
}

template <class Profile>
Profile difference(const Profile& a, const Profile& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::InvalidInput, "profile size mismatch");
    Profile out;
    out.reserve(a.size());
    for (std::size_t q = 0; q < a.size(); ++q) {
        if (a[q].size() != b[q].size()) {
            throw Error(ErrorCode::InvalidInput, "strategy dimension mismatch");
        }
        out.push_back(a[q] - b[q]);
    }
    return out;
}

}  // namespace

double weighted_max_norm(const RVector& x, const RVector& w) {
    check_weights(w, x.size());
    return (x.cwiseAbs().array() / w.array()).maxCoeff();
}

double weighted_matrix_norm(const RMatrix& a, const RVector& w) {
    if (a.rows() != a.cols()) throw Error(ErrorCode::InvalidInput, "matrix must be square");
    check_weights(w, a.rows());
    if (a.rows() == 0) return 0.0;
    const RVector row = a.cwiseAbs() * w;
    return (row.array() / w.array()).maxCoeff();
}

double block_max_norm(const PowerProfile& delta, const RVector& w) { return block_max(delta, w); }

double block_max_norm(const CovarianceProfile& delta, const RVector& w) {
    return block_max(delta, w);
}

double one_inf_norm(const RVector& x) {
    const double pos = x.cwiseMax(0.0).sum();
    const double neg = (-x).cwiseMax(0.0).sum();
    return std::max(pos, neg);
}

PowerProfile profile_difference(const PowerProfile& a, const PowerProfile& b) {
    return difference(a, b);
}

CovarianceProfile profile_difference(const CovarianceProfile& a, const CovarianceProfile& b) {
    return difference(a, b);
}

}  // namespace iwfa
