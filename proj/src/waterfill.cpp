// SPDX-License-Identifier: Apache-2.0
#include "iwfa/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace iwfa {

namespace {

constexpr double kEigFloor = 1e-12;       // relative clamp on equivalent-channel eigenvalues
constexpr double kFeasRel = 1e-9;         // budget tolerance, relative
constexpr double kHermTol = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr double kActiveRel = 1e-8;       // active-subspace threshold in the KKT residual

void check_budget(double budget) {
    if (!std::isfinite(budget) || budget <= 0.0) {
        throw Error(ErrorCode::InvalidInput, "budget must be positive and finite");
    }
}

void check_user(int q, int users) {
    if (q < 0 || q >= users) {
        throw Error(ErrorCode::InvalidInput, "user index " + std::to_string(q) + " out of range");
    }
}

std::vector<int> positive_indices(const RVector& x) {
    std::vector<int> out;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (x(i) > 0.0) out.push_back(static_cast<int>(i));
    return out;
}

/// Euclidean projection onto {x >= 0, sum x = budget} by Michelot's active-set iteration:
/// drop coordinates below the current shift until the set stabilizes. No sorting, so it
/// serves as a route independent of waterlevel_solve.
WaterlevelSolution michelot_project(const RVector& x0, double budget) {
    std::vector<Eigen::Index> active(static_cast<std::size_t>(x0.size()));
    std::iota(active.begin(), active.end(), Eigen::Index{0});
    double shift = 0.0;
    for (;;) {
        double sum = 0.0;
        for (auto i : active) sum += x0(i);
        shift = (sum - budget) / static_cast<double>(active.size());
        std::vector<Eigen::Index> kept;
        kept.reserve(active.size());
        for (auto i : active)
            if (x0(i) > shift) kept.push_back(i);
        if (kept.size() == active.size()) break;
        active = std::move(kept);
    }
    WaterlevelSolution out;
    out.level = -shift;
    out.allocation = (x0.array() - shift).max(0.0).matrix();
    return out;
}

/// Waterfilling over the concatenated eigenvalues of several Hermitian blocks.
struct BlockWaterfill {
    std::vector<linalg::HermitianEig> eig;
    WaterlevelSolution wl;
};

BlockWaterfill waterfill_blocks(const std::vector<CMatrix>& equivalent, double budget,
                                bool thresholds_are_eigenvalues) {
    BlockWaterfill out;
    Eigen::Index total = 0;
    for (const auto& a : equivalent) {
        out.eig.push_back(linalg::eig_hermitian(a));
        total += a.rows();
    }
    RVector thresholds(total);
    Eigen::Index off = 0;
    if (thresholds_are_eigenvalues) {
        // Projection form: thresholds are -lambda(X0).
        for (const auto& e : out.eig) {
            thresholds.segment(off, e.values.size()) = -e.values;
            off += e.values.size();
        }
    } else {
        double dmax = 0.0;
        for (const auto& e : out.eig) dmax = std::max(dmax, e.values.maxCoeff());
        if (!(dmax > 0.0)) {
            throw Error(ErrorCode::NumericalDegeneracy, "equivalent channel has no positive gain");
        }
        const double floor = kEigFloor * dmax;
        for (const auto& e : out.eig) {
            for (Eigen::Index i = 0; i < e.values.size(); ++i) {
                thresholds(off + i) = 1.0 / std::max(e.values(i), floor);
            }
            off += e.values.size();
        }
    }
    out.wl = thresholds_are_eigenvalues ? michelot_project(-thresholds, budget)
                                        : waterlevel_solve(thresholds, budget);
    return out;
}

CMatrix assemble(const BlockWaterfill& bw) {
    std::vector<CMatrix> parts;
    Eigen::Index off = 0;
    for (const auto& e : bw.eig) {
        const auto n = e.values.size();
        const RVector alloc = bw.wl.allocation.segment(off, n);
        CMatrix block = e.vectors * alloc.cast<cplx>().asDiagonal() * e.vectors.adjoint();
        parts.push_back(linalg::hermitian_part(block));
        off += n;
    }
    return parts.size() == 1 ? parts.front() : linalg::block_diagonal(parts);
}

std::vector<CMatrix> split_blocks(const CMatrix& m, int blocks) {
    if (blocks <= 1) return {m};
    const int bs = linalg::block_size(m.rows(), blocks);
    std::vector<CMatrix> out;
    out.reserve(static_cast<std::size_t>(blocks));
    for (int b = 0; b < blocks; ++b) out.push_back(linalg::diag_block(m, b, bs));
    return out;
}

Eigen::LLT<CMatrix> cholesky_or_throw(const CMatrix& r) {
    Eigen::LLT<CMatrix> llt(r);
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::NumericalDegeneracy,
                    "interference-plus-noise covariance is not positive definite");
    }
    return llt;
}

/// Equivalent channel H^H R^{-1} H per block, with R applied through its Cholesky factor.
std::vector<CMatrix> equivalent_channel(const MimoChannelSet& ch, int q,
                                        const CovarianceProfile& profile, int blocks) {
    const auto r_blocks = interference_plus_noise(ch, q, profile, blocks);
    const auto h_blocks = split_blocks(ch.channel(q, q), blocks);
    std::vector<CMatrix> out;
    out.reserve(r_blocks.size());
    for (std::size_t b = 0; b < r_blocks.size(); ++b) {
        const auto llt = cholesky_or_throw(r_blocks[b]);
        const CMatrix g = llt.matrixL().solve(h_blocks[b]);
        out.push_back(linalg::hermitian_part(g.adjoint() * g));
    }
    return out;
}

void check_profile_size(std::size_t size, int users) {
    if (size != static_cast<std::size_t>(users)) {
        throw Error(ErrorCode::InvalidInput, "profile must hold one strategy per user");
    }
}

}  // namespace

// -----------------------------------------------------------------------------------------

WaterlevelSolution waterlevel_solve(const RVector& thresholds, double budget) {
    if (thresholds.size() == 0) throw Error(ErrorCode::InvalidInput, "empty threshold vector");
    if (!thresholds.allFinite()) throw Error(ErrorCode::InvalidInput, "thresholds must be finite");
    check_budget(budget);

    std::vector<double> sorted(thresholds.data(), thresholds.data() + thresholds.size());
    std::sort(sorted.begin(), sorted.end());

    // With the m smallest thresholds active, mu = (budget + sum_{i<m} c_(i)) / m. The
    // first m for which mu does not exceed the next threshold is the solution.
    double level = 0.0;
    double prefix = 0.0;
    const std::size_t n = sorted.size();
    for (std::size_t m = 1; m <= n; ++m) {
        prefix += sorted[m - 1];
        level = (budget + prefix) / static_cast<double>(m);
        if (m == n || level <= sorted[m]) break;
    }

    WaterlevelSolution out;
    out.level = level;
    out.allocation = (level - thresholds.array()).max(0.0).matrix();
    return out;
}

RVector simplex_project(const RVector& x0, double budget) {
    if (x0.size() == 0) throw Error(ErrorCode::InvalidInput, "empty input vector");
    if (!x0.allFinite()) throw Error(ErrorCode::InvalidInput, "input must be finite");
    check_budget(budget);
    return michelot_project(x0, budget).allocation;
}

CMatrix psd_trace_project(const CMatrix& x0, double budget, int blocks) {
    if (x0.rows() != x0.cols() || x0.rows() == 0) {
        throw Error(ErrorCode::InvalidInput, "projection input must be square and nonempty");
    }
    if (!x0.allFinite()) throw Error(ErrorCode::InvalidInput, "projection input is not finite");
    check_budget(budget);
    if (blocks > 1 && !linalg::is_block_diagonal(x0, blocks)) {
        throw Error(ErrorCode::InvalidInput, "projection input is not block-diagonal");
    }
    const CMatrix sym = linalg::hermitian_part(x0);
    return assemble(waterfill_blocks(split_blocks(sym, blocks), budget, true));
}

// -----------------------------------------------------------------------------------------
// SISO

RVector insr(const SisoChannelSet& ch, int q, const PowerProfile& profile) {
    check_user(q, ch.num_users);
    check_profile_size(profile.size(), ch.num_users);
    const RVector direct = ch.gain(q, q).cwiseAbs2();
    if ((direct.array() <= 0.0).any()) {
        throw Error(ErrorCode::SingularChannel,
                    "direct gain of user " + std::to_string(q) + " vanishes");
    }
    RVector num = ch.noise[static_cast<std::size_t>(q)];
    for (int r = 0; r < ch.num_users; ++r) {
        if (r == q) continue;
        const auto& p = profile[static_cast<std::size_t>(r)];
        if (p.size() != ch.num_carriers) {
            throw Error(ErrorCode::InvalidInput, "allocation length mismatch");
        }
        num.array() += ch.gain(r, q).cwiseAbs2().array() * p.array();
    }
    return num.cwiseQuotient(direct);
}

SisoWaterfillResult siso_waterfill(const SisoChannelSet& ch, int q, const PowerProfile& profile) {
    auto wl = waterlevel_solve(insr(ch, q, profile), ch.budgets[static_cast<std::size_t>(q)]);
    SisoWaterfillResult out;
    out.active_set = positive_indices(wl.allocation);
    out.waterlevel = wl.level;
    out.allocation = std::move(wl.allocation);
    return out;
}

void check_allocation(const RVector& p, double budget, bool full) {
    if (!p.allFinite() || (p.array() < 0.0).any()) {
        throw Error(ErrorCode::InvalidStrategy, "power allocation must be finite and nonnegative");
    }
    const double s = p.sum();
    if (s > budget * (1.0 + kFeasRel) || (full && s < budget * (1.0 - kFeasRel))) {
        throw Error(ErrorCode::InvalidStrategy, "power allocation violates its budget");
    }
}

bool is_feasible_allocation(const RVector& p, double budget) {
    try {
        check_allocation(p, budget, true);
    } catch (const Error&) {
        return false;
    }
    return true;
}

double rate_bits(const SisoChannelSet& ch, int q, const PowerProfile& profile) {
    const auto& p = profile.at(static_cast<std::size_t>(q));
    if (p.size() != ch.num_carriers) throw Error(ErrorCode::InvalidStrategy, "length mismatch");
    check_allocation(p, ch.budgets[static_cast<std::size_t>(q)], false);
    const RVector floor = insr(ch, q, profile);
    double acc = 0.0;
    for (Eigen::Index k = 0; k < p.size(); ++k) acc += std::log1p(p(k) / floor(k));
    return acc / kLn2;
}

double avi_residual_siso(const SisoChannelSet& ch, const PowerProfile& profile) {
    check_profile_size(profile.size(), ch.num_users);
    // Affine map sigma~ + M p restricted to user q equals insr_q(p_{-q}) + p_q.
    // min over the product of simplices of (p - p*)^T F(p*) separates per user and is
    // attained at single-carrier vertices P_q e_k.
    double value = 0.0;
    for (int q = 0; q < ch.num_users; ++q) {
        const auto& p = profile[static_cast<std::size_t>(q)];
        const RVector f = insr(ch, q, profile) + p;
        value += ch.budgets[static_cast<std::size_t>(q)] * f.minCoeff() - p.dot(f);
    }
    return std::max(0.0, -value);
}

// -----------------------------------------------------------------------------------------
// MIMO

int effective_blocks(const MimoChannelSet& ch, int q, const CovarianceProfile& profile,
                     bool include_self) {
    if (ch.blocks <= 1) return 1;
    for (int r = 0; r < ch.num_users; ++r) {
        if (r == q && !include_self) continue;
        if (!linalg::is_block_diagonal(profile[static_cast<std::size_t>(r)], ch.blocks)) return 1;
    }
    return ch.blocks;
}

std::vector<CMatrix> interference_plus_noise(const MimoChannelSet& ch, int q,
                                             const CovarianceProfile& profile, int blocks) {
    check_user(q, ch.num_users);
    check_profile_size(profile.size(), ch.num_users);
    const auto nq = ch.dims[static_cast<std::size_t>(q)];
    if (blocks <= 1) {
        CMatrix r = ch.noise_cov[static_cast<std::size_t>(q)];
        for (int s = 0; s < ch.num_users; ++s) {
            if (s == q) continue;
            const auto& h = ch.channel(s, q);
            const auto& x = profile[static_cast<std::size_t>(s)];
            if (x.rows() != h.cols() || x.cols() != h.cols()) {
                throw Error(ErrorCode::InvalidInput, "covariance shape mismatch");
            }
            r.noalias() += h * x * h.adjoint();
        }
        return {linalg::hermitian_part(r)};
    }
    const int bq = linalg::block_size(nq, blocks);
    std::vector<CMatrix> out;
    out.reserve(static_cast<std::size_t>(blocks));
    for (int b = 0; b < blocks; ++b) {
        out.push_back(linalg::diag_block(ch.noise_cov[static_cast<std::size_t>(q)], b, bq));
    }
    for (int s = 0; s < ch.num_users; ++s) {
        if (s == q) continue;
        const auto& h = ch.channel(s, q);
        const auto& x = profile[static_cast<std::size_t>(s)];
        if (x.rows() != h.cols() || x.cols() != h.cols()) {
            throw Error(ErrorCode::InvalidInput, "covariance shape mismatch");
        }
        const int bs = linalg::block_size(h.cols(), blocks);
        for (int b = 0; b < blocks; ++b) {
            const auto hb = h.block(b * bq, b * bs, bq, bs);
            const auto xb = x.block(b * bs, b * bs, bs, bs);
            out[static_cast<std::size_t>(b)].noalias() += hb * xb * hb.adjoint();
        }
    }
    for (auto& r : out) r = linalg::hermitian_part(r);
    return out;
}

std::vector<CMatrix> inverse_equivalent_channel(const MimoChannelSet& ch, int q,
                                                const CovarianceProfile& profile, int blocks) {
    const auto r_blocks = interference_plus_noise(ch, q, profile, blocks);
    const auto h_blocks = split_blocks(ch.channel(q, q), blocks);
    std::vector<CMatrix> out;
    out.reserve(r_blocks.size());
    for (std::size_t b = 0; b < r_blocks.size(); ++b) {
        const auto llt = cholesky_or_throw(r_blocks[b]);
        const CMatrix l = llt.matrixL();
        const CMatrix c = h_blocks[b].partialPivLu().solve(l);
        out.push_back(linalg::hermitian_part(c * c.adjoint()));
    }
    return out;
}

MimoWaterfillResult mimo_waterfill(const MimoChannelSet& ch, int q,
                                   const CovarianceProfile& profile) {
    const int blocks = effective_blocks(ch, q, profile);
    const auto bw = waterfill_blocks(equivalent_channel(ch, q, profile, blocks),
                                     ch.budgets[static_cast<std::size_t>(q)], false);
    MimoWaterfillResult out;
    out.covariance = assemble(bw);
    out.waterlevel = bw.wl.level;
    out.active_set = positive_indices(bw.wl.allocation);
    out.eig_basis = bw.eig;
    return out;
}

CMatrix mimo_waterfill_via_projection(const MimoChannelSet& ch, int q,
                                      const CovarianceProfile& profile) {
    const int blocks = effective_blocks(ch, q, profile);
    auto x0 = inverse_equivalent_channel(ch, q, profile, blocks);
    for (auto& b : x0) b = -b;
    return assemble(waterfill_blocks(x0, ch.budgets[static_cast<std::size_t>(q)], true));
}

void check_covariance(const CMatrix& x, double budget, bool full) {
    if (x.rows() != x.cols() || !x.allFinite()) {
        throw Error(ErrorCode::InvalidStrategy, "covariance must be square and finite");
    }
    const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
    if (!linalg::is_hermitian(x, kHermTol * scale)) {
        throw Error(ErrorCode::InvalidStrategy, "covariance is not Hermitian");
    }
    if (x.rows() > 0 && linalg::lambda_min_hermitian(x) < -kPsdTol * scale) {
        throw Error(ErrorCode::InvalidStrategy, "covariance is not positive semidefinite");
    }
    const double tr = x.trace().real();
    if (tr > budget * (1.0 + kFeasRel) || (full && tr < budget * (1.0 - kFeasRel))) {
        throw Error(ErrorCode::InvalidStrategy, "covariance violates its trace budget");
    }
}

bool is_feasible_covariance(const CMatrix& x, double budget) {
    try {
        check_covariance(x, budget, true);
    } catch (const Error&) {
        return false;
    }
    return true;
}

double rate_bits(const MimoChannelSet& ch, int q, const CovarianceProfile& profile) {
    check_user(q, ch.num_users);
    check_profile_size(profile.size(), ch.num_users);
    const auto& x = profile[static_cast<std::size_t>(q)];
    const auto nq = ch.dims[static_cast<std::size_t>(q)];
    if (x.rows() != nq) throw Error(ErrorCode::InvalidStrategy, "covariance shape mismatch");
    check_covariance(x, ch.budgets[static_cast<std::size_t>(q)], false);

    const int blocks = effective_blocks(ch, q, profile, true);
    const auto r_blocks = interference_plus_noise(ch, q, profile, blocks);
    const auto h_blocks = split_blocks(ch.channel(q, q), blocks);
    const auto x_blocks = split_blocks(x, blocks);
    double nats = 0.0;
    for (std::size_t b = 0; b < r_blocks.size(); ++b) {
        const CMatrix total = r_blocks[b] + h_blocks[b] * x_blocks[b] * h_blocks[b].adjoint();
        nats += linalg::log_det_pd(total) - linalg::log_det_pd(r_blocks[b]);
    }
    return std::max(0.0, nats) / kLn2;
}

double kkt_residual_mimo(const MimoChannelSet& ch, int q, const CMatrix& qq,
                         const CovarianceProfile& profile) {
    const int blocks = effective_blocks(ch, q, profile);
    const auto inv_blocks = inverse_equivalent_channel(ch, q, profile, blocks);
    const CMatrix x0 = -(inv_blocks.size() == 1 ? inv_blocks.front()
                                                : linalg::block_diagonal(inv_blocks));
    const auto n = qq.rows();
    const double budget = ch.budgets[static_cast<std::size_t>(q)];

    const CMatrix y = linalg::hermitian_part(qq - x0);  // positive definite since x0 < 0
    const auto eq = linalg::eig_hermitian(qq);

    // Least-squares fit of 1/lambda over the numerically active subspace of Q_q.
    const double active_floor = kActiveRel * budget / static_cast<double>(n);
    double fit = 0.0;
    int active = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (eq.values(i) > active_floor) {
            const auto v = eq.vectors.col(i);
            fit += (v.adjoint() * y * v)(0, 0).real();
            ++active;
        }
    }
    if (active == 0 || !(fit > 0.0)) return std::numeric_limits<double>::infinity();
    fit /= active;
    const double lambda = 1.0 / fit;

    const CMatrix id = CMatrix::Identity(n, n);
    const double stationarity = (qq * (y - fit * id)).norm();
    const CMatrix y_inv = cholesky_or_throw(y).solve(id);
    const CMatrix psi = linalg::hermitian_part(lambda * id - y_inv);
    const double dual = std::max(0.0, -linalg::lambda_min_hermitian(psi));
    const double complementarity = std::abs((psi * qq).trace());
    return stationarity + dual + complementarity;
}

}  // namespace iwfa
