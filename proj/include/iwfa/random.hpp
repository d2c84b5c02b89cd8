// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "iwfa/types.hpp"

#include <cstdint>
#include <random>

namespace iwfa::rnd {

using Engine = std::mt19937_64;

[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Derives an independent sub-stream seed from a master seed and two indices.
[[nodiscard]] constexpr std::uint64_t mix_seed(std::uint64_t master, std::uint64_t a,
                                               std::uint64_t b = 0) noexcept {
    return splitmix64(splitmix64(splitmix64(master) ^ (a + 0x632BE59BD9B4E019ULL)) ^
                      (b + 0x8CB92BA72F3D8DD7ULL));
}

/// Circularly-symmetric complex Gaussian with unit variance.
[[nodiscard]] inline cplx complex_gaussian(Engine& rng) {
    std::normal_distribution<double> n(0.0, std::sqrt(0.5));
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

[[nodiscard]] inline CMatrix complex_gaussian_matrix(Engine& rng, Eigen::Index rows,
                                                     Eigen::Index cols) {
    CMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_gaussian(rng);
    return m;
}

/// Uniform point on the scaled simplex {x >= 0, sum x = total} (flat Dirichlet).
[[nodiscard]] RVector uniform_simplex(Engine& rng, Eigen::Index n, double total);

/// Wishart-style PSD draw normalized to the given trace.
[[nodiscard]] CMatrix trace_normalized_psd(Engine& rng, Eigen::Index n, double trace);

/// Block-diagonal PSD draw with a single trace budget split across blocks.
[[nodiscard]] CMatrix block_trace_normalized_psd(Engine& rng, Eigen::Index n, int blocks,
                                                 double trace);

}  // namespace iwfa::rnd
