// SPDX-License-Identifier: Apache-2.0
#include "iwfa/random.hpp"

#include "iwfa/linalg.hpp"

namespace iwfa::rnd {

RVector uniform_simplex(Engine& rng, Eigen::Index n, double total) {
    std::exponential_distribution<double> e(1.0);
    RVector x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = e(rng);
    return x * (total / x.sum());
}

CMatrix trace_normalized_psd(Engine& rng, Eigen::Index n, double trace) {
    // Random rank in [1, n] so boundary (rank-deficient) strategies are also drawn.
    std::uniform_int_distribution<Eigen::Index> rank_dist(1, n);
    const Eigen::Index rank = rank_dist(rng);
    CMatrix g = complex_gaussian_matrix(rng, n, rank);
    CMatrix w = g * g.adjoint();
    w = linalg::hermitian_part(w);
    return w * (trace / w.trace().real());
}

CMatrix block_trace_normalized_psd(Engine& rng, Eigen::Index n, int blocks, double trace) {
    if (blocks <= 1) return trace_normalized_psd(rng, n, trace);
    const int bs = linalg::block_size(n, blocks);
    const RVector split = uniform_simplex(rng, blocks, trace);
    std::vector<CMatrix> parts;
    parts.reserve(static_cast<std::size_t>(blocks));
    for (int b = 0; b < blocks; ++b) parts.push_back(trace_normalized_psd(rng, bs, split(b)));
    return linalg::block_diagonal(parts);
}

}  // namespace iwfa::rnd
