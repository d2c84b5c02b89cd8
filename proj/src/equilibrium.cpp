// SPDX-License-Identifier: Apache-2.0
#include "iwfa/equilibrium.hpp"

#include "iwfa/linalg.hpp"
#include "iwfa/random.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace iwfa {

namespace {

constexpr double kRidge = 1e-14;
constexpr double kDegenerateDistance = 1e-10;  // relative to the profile size

void check_square(const RMatrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidInput, "matrix must be square");
}

void check_nonnegative(const RMatrix& m) {
    check_square(m);
    if (!m.allFinite() || (m.array() < 0.0).any()) {
        throw Error(ErrorCode::InvalidInput, "matrix must be finite and nonnegative");
    }
}

RVector normalize_min_one(RVector v) {
    const double lo = v.minCoeff();
    if (!(lo > 0.0)) throw Error(ErrorCode::NumericalDegeneracy, "Perron vector not positive");
    return v / lo;
}

/// Power iteration on m + I (the shift removes the other peripheral eigenvalues of
/// cyclic matrices).
RVector shifted_power_iteration(const RMatrix& m, RVector v, int iters) {
    const RMatrix shifted = m + RMatrix::Identity(m.rows(), m.cols());
    for (int i = 0; i < iters; ++i) {
        RVector next = shifted * v;
        next /= next.maxCoeff();
        if ((next - v).cwiseAbs().maxCoeff() <= 1e-15) return next;
        v = std::move(next);
    }
    return v;
}

/// Strongly connected components of the directed graph with an edge i -> j when m(i, j) > 0.
std::vector<std::vector<Eigen::Index>> strong_components(const RMatrix& m) {
    const Eigen::Index n = m.rows();
    std::vector<Eigen::Index> index(static_cast<std::size_t>(n), -1);
    std::vector<Eigen::Index> low(static_cast<std::size_t>(n), 0);
    std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
    std::vector<Eigen::Index> stack;
    std::vector<std::vector<Eigen::Index>> out;
    Eigen::Index counter = 0;
    auto visit = [&](auto&& self, Eigen::Index v) -> void {
        const auto uv = static_cast<std::size_t>(v);
        index[uv] = low[uv] = counter++;
        stack.push_back(v);
        on_stack[uv] = 1;
        for (Eigen::Index u = 0; u < n; ++u) {
            if (!(m(v, u) > 0.0)) continue;
            const auto uu = static_cast<std::size_t>(u);
            if (index[uu] < 0) {
                self(self, u);
                low[uv] = std::min(low[uv], low[uu]);
            } else if (on_stack[uu]) {
                low[uv] = std::min(low[uv], index[uu]);
            }
        }
        if (low[uv] == index[uv]) {
            std::vector<Eigen::Index> comp;
            Eigen::Index u = -1;
            do {
                u = stack.back();
                stack.pop_back();
                on_stack[static_cast<std::size_t>(u)] = 0;
                comp.push_back(u);
            } while (u != v);
            out.push_back(std::move(comp));
        }
    };
    for (Eigen::Index v = 0; v < n; ++v)
        if (index[static_cast<std::size_t>(v)] < 0) visit(visit, v);
    return out;
}

double dense_spectral_radius(const RMatrix& m) {
    Eigen::EigenSolver<RMatrix> es(m, false);
    if (es.info() != Eigen::Success) {
        throw Error(ErrorCode::NumericalDegeneracy, "eigenvalue solver did not converge");
    }
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

/// w = (I - S / beta)^{-1} 1 satisfies S w = beta (w - 1), so the weighted norm stays below
/// beta whenever rho(S) < beta.
std::optional<RVector> resolvent_weights(const RMatrix& s, double beta) {
    const Eigen::Index n = s.rows();
    const RMatrix a = RMatrix::Identity(n, n) - s / beta;
    const RVector w = a.partialPivLu().solve(RVector::Ones(n));
    if (!w.allFinite() || !(w.minCoeff() > 0.0)) return std::nullopt;
    return RVector(w / w.minCoeff());
}

template <class Game>
double probe(const Game& game, int trials, const RVector& w, std::uint64_t seed) {
    if (trials < 1) throw Error(ErrorCode::InvalidInput, "trials must be >= 1");
    if (w.size() != game.num_users()) {
        throw Error(ErrorCode::InvalidInput, "weights must have one entry per user");
    }
    rnd::Engine rng(seed);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const auto x = game.random_profile(rng);
        const auto y = game.random_profile(rng);
        const double den = block_max_norm(profile_difference(x, y), w);
        const double scale = std::max(block_max_norm(x, w), block_max_norm(y, w));
        if (den <= kDegenerateDistance * scale) continue;
        const double num =
            block_max_norm(profile_difference(waterfill_map(game, x), waterfill_map(game, y)), w);
        worst = std::max(worst, num / den);
    }
    return worst;
}

}  // namespace

const char* to_string(InterferenceKind kind) noexcept {
    switch (kind) {
        case InterferenceKind::SMimo: return "S_mimo";
        case InterferenceKind::SMaxSiso: return "S_max_siso";
    }
    return "unknown";
}

InterferenceMatrix build_s_max(const SisoChannelSet& ch) {
    ch.validate();
    const int users = ch.num_users;
    InterferenceMatrix out{RMatrix::Zero(users, users), InterferenceKind::SMaxSiso};
    for (int q = 0; q < users; ++q) {
        const RVector direct = ch.gain(q, q).cwiseAbs2();
        for (int r = 0; r < users; ++r) {
            if (r == q) continue;
            out.entries(q, r) = (ch.gain(r, q).cwiseAbs2().array() / direct.array()).maxCoeff();
        }
    }
    return out;
}

InterferenceMatrix build_s_mimo(const MimoChannelSet& ch) {
    ch.validate();
    const int users = ch.num_users;
    InterferenceMatrix out{RMatrix::Zero(users, users), InterferenceKind::SMimo};
    for (int q = 0; q < users; ++q) {
        const auto lu = ch.channel(q, q).partialPivLu();
        for (int r = 0; r < users; ++r) {
            if (r == q) continue;
            const CMatrix g = lu.solve(ch.channel(r, q));
            if (!g.allFinite()) {
                throw Error(ErrorCode::SingularChannel,
                            "direct channel " + std::to_string(q) + " is singular");
            }
            out.entries(q, r) = std::max(0.0, linalg::lambda_max_hermitian(g.adjoint() * g));
        }
    }
    return out;
}

double spectral_radius(const RMatrix& m) {
    check_square(m);
    if (m.rows() == 0) return 0.0;
    if (!m.allFinite()) throw Error(ErrorCode::InvalidInput, "matrix must be finite");
    if ((m.array() < 0.0).any()) return dense_spectral_radius(m);
    // Nonnegative: the radius is the largest over irreducible diagonal blocks, each of which
    // has a simple Perron root. Defective reducible patterns never reach the eigensolver.
    double rho = 0.0;
    for (const auto& comp : strong_components(m)) {
        const auto k = static_cast<Eigen::Index>(comp.size());
        RMatrix sub(k, k);
        for (Eigen::Index i = 0; i < k; ++i)
            for (Eigen::Index j = 0; j < k; ++j)
                sub(i, j) = m(comp[static_cast<std::size_t>(i)], comp[static_cast<std::size_t>(j)]);
        rho = std::max(rho, k == 1 ? sub(0, 0) : dense_spectral_radius(sub));
    }
    return rho;
}

RVector perron_vector(const RMatrix& m) {
    check_nonnegative(m);
    const Eigen::Index n = m.rows();
    if (n == 0) return {};
    const RMatrix positive = m + RMatrix::Constant(n, n, kRidge);
    Eigen::EigenSolver<RMatrix> es(positive, true);
    if (es.info() != Eigen::Success) {
        throw Error(ErrorCode::NumericalDegeneracy, "eigenvalue solver did not converge");
    }
    Eigen::Index top = 0;
    es.eigenvalues().real().maxCoeff(&top);
    RVector v = es.eigenvectors().col(top).real();
    if (v.sum() < 0.0) v = -v;
    if (v.minCoeff() <= 0.0) v = RVector::Ones(n);
    return normalize_min_one(shifted_power_iteration(positive, v, 20000));
}

EquilibriumReport certify_uniqueness(const InterferenceMatrix& s) {
    check_nonnegative(s.entries);
    if ((s.entries.diagonal().array() != 0.0).any()) {
        throw Error(ErrorCode::InvalidInput, "interference matrix must have a zero diagonal");
    }
    EquilibriumReport out;
    out.matrix = s;
    out.spectral_radius = spectral_radius(s.entries);
    out.unique = out.spectral_radius < 1.0;
    const Eigen::Index n = s.entries.rows();
    const RVector ones = RVector::Ones(n);
    out.c2_unit = weighted_matrix_norm(s.entries, ones) < 1.0;
    out.c3_unit = weighted_matrix_norm(s.entries.transpose(), ones) < 1.0;
    if (!out.unique) return out;

    // Perron vector of the ridged matrix first; resolvent vectors cover reducible S, where
    // the ridge perturbation is not small relative to the spectral gap.
    std::vector<RVector> candidates;
    try {
        candidates.push_back(perron_vector(s.entries));
    } catch (const Error&) {
    }
    for (double f : {0.5, 0.1, 0.01}) {
        const double beta = out.spectral_radius + f * (1.0 - out.spectral_radius);
        if (auto w = resolvent_weights(s.entries, beta)) candidates.push_back(std::move(*w));
    }
    if (candidates.empty()) {
        throw Error(ErrorCode::NumericalDegeneracy, "no positive certifying weight found");
    }
    double row = std::numeric_limits<double>::infinity();
    for (auto& w : candidates) {
        if (!w.allFinite()) continue;
        const double norm = weighted_matrix_norm(s.entries, w);
        if (norm < row) {
            row = norm;
            out.weights = std::move(w);
        }
    }
    if (out.weights.size() == 0) {
        throw Error(ErrorCode::NumericalDegeneracy, "no finite certifying weight found");
    }
    out.weighted_norm = row;
    out.modulus = row;
    out.c2 = row < 1.0;
    out.c3 = weighted_matrix_norm(s.entries.transpose(), out.weights) < 1.0;
    return out;
}

double contraction_probe(const SisoChannelSet& ch, int trials, const RVector& w,
                         std::uint64_t seed) {
    return probe(SisoGame(ch), trials, w, seed);
}

double contraction_probe(const MimoChannelSet& ch, int trials, const RVector& w,
                         std::uint64_t seed) {
    return probe(MimoGame(ch), trials, w, seed);
}

std::vector<RVector> error_dynamic(const IterationTrace<PowerProfile>& trace) {
    if (trace.profiles.size() < 3) {
        throw Error(ErrorCode::InvalidInput,
                    "error dynamic needs a trace with recorded profiles and >= 2 iterations");
    }
    std::vector<RVector> out;
    out.reserve(trace.profiles.size() - 1);
    for (std::size_t i = 1; i < trace.profiles.size(); ++i) {
        const auto& prev = trace.profiles[i - 1];
        const auto& cur = trace.profiles[i];
        RVector e(static_cast<Eigen::Index>(cur.size()));
        for (std::size_t q = 0; q < cur.size(); ++q) {
            e(static_cast<Eigen::Index>(q)) = one_inf_norm(cur[q] - prev[q]);
        }
        out.push_back(std::move(e));
    }
    return out;
}

void error_dynamic(const IterationTrace<CovarianceProfile>&) {
    throw Error(ErrorCode::Unsupported, "error dynamic is defined for SISO traces only");
}

}  // namespace iwfa
