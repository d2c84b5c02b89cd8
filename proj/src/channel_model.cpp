// SPDX-License-Identifier: Apache-2.0
#include "iwfa/channel_model.hpp"

#include "iwfa/linalg.hpp"
#include "iwfa/random.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <cstring>
#include <numbers>

namespace iwfa {

namespace {

constexpr double kSingularRatio = 1e-10;
constexpr double kHermitianTol = 1e-12;
constexpr int kMaxRegenerations = 64;

void require(bool cond, ErrorCode code, const std::string& msg) {
    if (!cond) throw Error(code, msg);
}

void validate_common(int users, const std::vector<double>& budgets,
                     const std::vector<double>& gaps) {
    require(users >= 1, ErrorCode::InvalidSpec, "num_users must be positive");
    require(budgets.size() == static_cast<std::size_t>(users), ErrorCode::InvalidSpec,
            "budgets size mismatch");
    require(gaps.size() == static_cast<std::size_t>(users), ErrorCode::InvalidSpec,
            "gaps size mismatch");
    for (int q = 0; q < users; ++q) {
        require(std::isfinite(budgets[q]) && budgets[q] > 0.0, ErrorCode::InvalidSpec,
                "budget of user " + std::to_string(q) + " must be positive");
        require(std::isfinite(gaps[q]) && gaps[q] >= 1.0, ErrorCode::InvalidGap,
                "gap of user " + std::to_string(q) + " must be >= 1");
    }
}

/// N-point frequency response of a tap sequence: H(k) = sum_l h_l exp(-j 2 pi k l / N).
template <class Tap>
std::vector<Tap> frequency_response(const std::vector<Tap>& taps, int points) {
    std::vector<Tap> out;
    out.reserve(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) {
        Tap acc = taps.front() * cplx(0.0, 0.0);
        for (std::size_t l = 0; l < taps.size(); ++l) {
            const double phase = -2.0 * std::numbers::pi * static_cast<double>(k) *
                                 static_cast<double>(l) / static_cast<double>(points);
            acc = acc + taps[l] * cplx(std::cos(phase), std::sin(phase));
        }
        out.push_back(acc);
    }
    return out;
}

double amplitude_scale(const ChannelGenSpec& spec, int r, int q) {
    return std::pow(spec.distances(r, q), -spec.path_loss_exponent / 2.0);
}

std::vector<double> noise_from_snr(const ChannelGenSpec& spec) {
    std::vector<double> out;
    for (double snr : spec.snr_db) out.push_back(1.0 / std::pow(10.0, snr / 10.0));
    return out;
}

SisoChannelSet draw_siso(const ChannelGenSpec& spec, int carriers, std::uint64_t seed) {
    const int users = spec.num_users();
    SisoChannelSet ch;
    ch.num_users = users;
    ch.num_carriers = carriers;
    ch.gains.resize(static_cast<std::size_t>(users * users));
    for (int r = 0; r < users; ++r) {
        for (int q = 0; q < users; ++q) {
            rnd::Engine rng(rnd::mix_seed(seed, static_cast<std::uint64_t>(r),
                                          static_cast<std::uint64_t>(q)));
            std::vector<cplx> taps;
            for (int l = 0; l < spec.tap_count; ++l) taps.push_back(rnd::complex_gaussian(rng));
            const auto resp = frequency_response(taps, carriers);
            const double s = amplitude_scale(spec, r, q);
            CVector g(carriers);
            for (int k = 0; k < carriers; ++k) g(k) = resp[static_cast<std::size_t>(k)] * s;
            ch.gain(r, q) = g;
        }
    }
    const auto sigma2 = noise_from_snr(spec);
    for (int q = 0; q < users; ++q) {
        ch.noise.push_back(RVector::Constant(carriers, sigma2[static_cast<std::size_t>(q)]));
    }
    ch.budgets.assign(static_cast<std::size_t>(users), 1.0);
    ch.gaps.assign(static_cast<std::size_t>(users), 1.0);
    return ch;
}

MimoChannelSet draw_mimo(const ChannelGenSpec& spec, int antennas, int carriers,
                         std::uint64_t seed) {
    const int users = spec.num_users();
    const bool wideband = spec.mode == GenMode::MimoWideband;
    MimoChannelSet ch;
    ch.num_users = users;
    ch.blocks = wideband ? carriers : 1;
    ch.dims.assign(static_cast<std::size_t>(users), wideband ? antennas * carriers : antennas);
    ch.channels.resize(static_cast<std::size_t>(users * users));
    for (int r = 0; r < users; ++r) {
        for (int q = 0; q < users; ++q) {
            rnd::Engine rng(rnd::mix_seed(seed, static_cast<std::uint64_t>(r),
                                          static_cast<std::uint64_t>(q)));
            const double s = amplitude_scale(spec, r, q);
            if (!wideband) {
                ch.channel(r, q) = rnd::complex_gaussian_matrix(rng, antennas, antennas) * s;
                continue;
            }
            std::vector<CMatrix> taps;
            for (int l = 0; l < spec.tap_count; ++l) {
                taps.push_back(rnd::complex_gaussian_matrix(rng, antennas, antennas));
            }
            auto resp = frequency_response(taps, carriers);
            for (auto& block : resp) block *= s;
            ch.channel(r, q) = linalg::block_diagonal(resp);
        }
    }
    const auto sigma2 = noise_from_snr(spec);
    for (int q = 0; q < users; ++q) {
        const auto n = ch.dims[static_cast<std::size_t>(q)];
        ch.noise_cov.push_back(CMatrix::Identity(n, n) * sigma2[static_cast<std::size_t>(q)]);
    }
    ch.budgets.assign(static_cast<std::size_t>(users), 1.0);
    ch.gaps.assign(static_cast<std::size_t>(users), 1.0);
    return ch;
}

bool direct_channels_ok(const SisoChannelSet& ch) {
    for (int q = 0; q < ch.num_users; ++q) {
        if ((ch.gain(q, q).cwiseAbs().array() <= 0.0).any()) return false;
    }
    return true;
}

bool well_conditioned(const CMatrix& h) {
    Eigen::JacobiSVD<CMatrix> svd(h);
    const auto& s = svd.singularValues();
    return s.size() > 0 && s(s.size() - 1) >= kSingularRatio * s(0) && s(0) > 0.0;
}

bool direct_channels_ok(const MimoChannelSet& ch) {
    for (int q = 0; q < ch.num_users; ++q) {
        if (!well_conditioned(ch.channel(q, q))) return false;
    }
    return true;
}

template <class T>
void hash_bytes(std::uint64_t& h, const T& value) {
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    for (unsigned char c : buf) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
}

}  // namespace

void SisoChannelSet::validate() const {
    validate_common(num_users, budgets, gaps);
    require(num_carriers >= 1, ErrorCode::InvalidSpec, "num_carriers must be positive");
    require(gains.size() == static_cast<std::size_t>(num_users * num_users),
            ErrorCode::InvalidSpec, "gains must hold Q*Q carrier vectors");
    require(noise.size() == static_cast<std::size_t>(num_users), ErrorCode::InvalidSpec,
            "noise must hold Q vectors");
    for (const auto& g : gains) {
        require(g.size() == num_carriers && g.allFinite(), ErrorCode::InvalidSpec,
                "gain vector length/finiteness mismatch");
    }
    for (int q = 0; q < num_users; ++q) {
        const auto& s = noise[static_cast<std::size_t>(q)];
        require(s.size() == num_carriers && s.allFinite() && (s.array() > 0.0).all(),
                ErrorCode::InvalidSpec, "noise of user " + std::to_string(q) + " must be positive");
        require((gain(q, q).cwiseAbs().array() > 0.0).all(), ErrorCode::SingularChannel,
                "direct gain of user " + std::to_string(q) + " vanishes on some carrier");
    }
}

void MimoChannelSet::validate() const {
    validate_common(num_users, budgets, gaps);
    require(dims.size() == static_cast<std::size_t>(num_users), ErrorCode::InvalidSpec,
            "dims size mismatch");
    require(channels.size() == static_cast<std::size_t>(num_users * num_users),
            ErrorCode::InvalidSpec, "channels must hold Q*Q matrices");
    require(noise_cov.size() == static_cast<std::size_t>(num_users), ErrorCode::InvalidSpec,
            "noise_cov must hold Q matrices");
    require(blocks >= 1, ErrorCode::InvalidSpec, "blocks must be positive");
    for (int q = 0; q < num_users; ++q) {
        require(dims[q] >= 1 && dims[q] % blocks == 0, ErrorCode::InvalidSpec,
                "dimension of user " + std::to_string(q) + " incompatible with block count");
    }
    for (int r = 0; r < num_users; ++r) {
        for (int q = 0; q < num_users; ++q) {
            const auto& h = channel(r, q);
            require(h.rows() == dims[q] && h.cols() == dims[r] && h.allFinite(),
                    ErrorCode::InvalidSpec,
                    "channel " + std::to_string(r) + "->" + std::to_string(q) + " has wrong shape");
            require(linalg::is_block_diagonal(h, blocks), ErrorCode::InvalidSpec,
                    "channel " + std::to_string(r) + "->" + std::to_string(q) +
                        " is not block-diagonal");
        }
    }
    for (int q = 0; q < num_users; ++q) {
        const auto& rn = noise_cov[static_cast<std::size_t>(q)];
        require(rn.rows() == dims[q] && rn.cols() == dims[q] && rn.allFinite(),
                ErrorCode::InvalidSpec, "noise covariance shape mismatch");
        require(linalg::is_hermitian(rn, kHermitianTol), ErrorCode::InvalidSpec,
                "noise covariance of user " + std::to_string(q) + " is not Hermitian");
        require(linalg::is_block_diagonal(rn, blocks), ErrorCode::InvalidSpec,
                "noise covariance is not block-diagonal");
        Eigen::LLT<CMatrix> llt(linalg::hermitian_part(rn));
        require(llt.info() == Eigen::Success, ErrorCode::InvalidSpec,
                "noise covariance of user " + std::to_string(q) + " is not positive definite");
        require(well_conditioned(channel(q, q)), ErrorCode::SingularChannel,
                "direct channel of user " + std::to_string(q) + " is singular");
    }
}

bool operator==(const MimoChannelSet& a, const MimoChannelSet& b) {
    if (a.num_users != b.num_users || a.dims != b.dims || a.blocks != b.blocks ||
        a.budgets != b.budgets || a.gaps != b.gaps || a.channels.size() != b.channels.size() ||
        a.noise_cov.size() != b.noise_cov.size()) {
        return false;
    }
    auto same = [](const CMatrix& x, const CMatrix& y) {
        return x.rows() == y.rows() && x.cols() == y.cols() && x == y;
    };
    for (std::size_t i = 0; i < a.channels.size(); ++i)
        if (!same(a.channels[i], b.channels[i])) return false;
    for (std::size_t i = 0; i < a.noise_cov.size(); ++i)
        if (!same(a.noise_cov[i], b.noise_cov[i])) return false;
    return true;
}

const char* to_string(GenMode mode) noexcept {
    switch (mode) {
        case GenMode::SisoFreqSelective: return "siso_freq_selective";
        case GenMode::MimoFlat: return "mimo_flat";
        case GenMode::MimoWideband: return "mimo_wideband";
    }
    return "unknown";
}

GenMode gen_mode_from_string(const std::string& s) {
    if (s == "siso_freq_selective") return GenMode::SisoFreqSelective;
    if (s == "mimo_flat") return GenMode::MimoFlat;
    if (s == "mimo_wideband") return GenMode::MimoWideband;
    throw Error(ErrorCode::InvalidSpec, "unknown generation mode '" + s + "'");
}

void ChannelGenSpec::validate() const {
    require(distances.rows() >= 1 && distances.rows() == distances.cols(), ErrorCode::InvalidSpec,
            "distance matrix must be square and nonempty");
    require(distances.allFinite() && (distances.array() > 0.0).all(), ErrorCode::InvalidSpec,
            "distances must be positive");
    require(std::isfinite(path_loss_exponent) && path_loss_exponent > 0.0,
            ErrorCode::InvalidSpec, "path-loss exponent must be positive");
    require(tap_count >= 1, ErrorCode::InvalidSpec, "tap_count must be positive");
    require(snr_db.size() == static_cast<std::size_t>(distances.rows()), ErrorCode::InvalidSpec,
            "snr_db must hold one value per user");
    for (double s : snr_db) require(std::isfinite(s), ErrorCode::InvalidSpec, "snr_db not finite");
}

ChannelGenSpec symmetric_spec(int users, double cross_distance, double snr_db, std::uint64_t seed,
                              GenMode mode, double path_loss_exponent, int taps) {
    ChannelGenSpec spec;
    spec.distances = RMatrix::Constant(users, users, cross_distance);
    spec.distances.diagonal().setOnes();
    spec.path_loss_exponent = path_loss_exponent;
    spec.tap_count = taps;
    spec.snr_db.assign(static_cast<std::size_t>(users), snr_db);
    spec.seed = seed;
    spec.mode = mode;
    return spec;
}

SisoChannelSet generate_siso(const ChannelGenSpec& spec, int carriers) {
    spec.validate();
    require(spec.mode == GenMode::SisoFreqSelective, ErrorCode::InvalidSpec,
            "generate_siso requires siso_freq_selective mode");
    require(carriers >= 1, ErrorCode::InvalidSpec, "carrier count must be positive");
    require(spec.tap_count <= carriers, ErrorCode::InvalidSpec,
            "tap_count (" + std::to_string(spec.tap_count) + ") exceeds carriers (" +
                std::to_string(carriers) + ")");
    for (int attempt = 0; attempt < kMaxRegenerations; ++attempt) {
        auto ch = draw_siso(spec, carriers, spec.seed + static_cast<std::uint64_t>(attempt));
        if (direct_channels_ok(ch)) {
            ch.validate();
            return ch;
        }
    }
    throw Error(ErrorCode::SingularChannel, "could not draw nonsingular direct channels");
}

MimoChannelSet generate_mimo(const ChannelGenSpec& spec, int antennas,
                             std::optional<int> carriers) {
    spec.validate();
    require(spec.mode == GenMode::MimoFlat || spec.mode == GenMode::MimoWideband,
            ErrorCode::InvalidSpec, "generate_mimo requires a MIMO mode");
    require(antennas >= 1, ErrorCode::InvalidSpec, "antenna count must be positive");
    int nc = 1;
    if (spec.mode == GenMode::MimoWideband) {
        require(carriers.has_value() && *carriers >= 1, ErrorCode::InvalidSpec,
                "wideband mode needs a positive carrier count");
        nc = *carriers;
        require(spec.tap_count <= nc, ErrorCode::InvalidSpec,
                "tap_count (" + std::to_string(spec.tap_count) + ") exceeds carriers (" +
                    std::to_string(nc) + ")");
    }
    for (int attempt = 0; attempt < kMaxRegenerations; ++attempt) {
        auto ch = draw_mimo(spec, antennas, nc, spec.seed + static_cast<std::uint64_t>(attempt));
        if (direct_channels_ok(ch)) {
            ch.validate();
            return ch;
        }
    }
    throw Error(ErrorCode::SingularChannel, "could not draw nonsingular direct channels");
}

SisoChannelSet apply_gap(const SisoChannelSet& ch) {
    for (double g : ch.gaps) require(g >= 1.0, ErrorCode::InvalidGap, "gap must be >= 1");
    SisoChannelSet out = ch;
    for (int q = 0; q < ch.num_users; ++q) {
        out.gain(q, q) = ch.gain(q, q) / ch.gaps[static_cast<std::size_t>(q)];
        out.gaps[static_cast<std::size_t>(q)] = 1.0;
    }
    return out;
}

MimoChannelSet apply_gap(const MimoChannelSet& ch) {
    for (double g : ch.gaps) require(g >= 1.0, ErrorCode::InvalidGap, "gap must be >= 1");
    MimoChannelSet out = ch;
    for (int q = 0; q < ch.num_users; ++q) {
        out.channel(q, q) = ch.channel(q, q) / ch.gaps[static_cast<std::size_t>(q)];
        out.gaps[static_cast<std::size_t>(q)] = 1.0;
    }
    return out;
}

MimoChannelSet to_mimo(const SisoChannelSet& ch) {
    MimoChannelSet out;
    out.num_users = ch.num_users;
    out.blocks = ch.num_carriers;
    out.dims.assign(static_cast<std::size_t>(ch.num_users), ch.num_carriers);
    out.channels.resize(ch.gains.size());
    for (std::size_t i = 0; i < ch.gains.size(); ++i) out.channels[i] = ch.gains[i].asDiagonal();
    for (const auto& s : ch.noise) out.noise_cov.push_back(s.cast<cplx>().asDiagonal());
    out.budgets = ch.budgets;
    out.gaps = ch.gaps;
    return out;
}

std::uint64_t channel_hash(const SisoChannelSet& ch) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    hash_bytes(h, ch.num_users);
    hash_bytes(h, ch.num_carriers);
    for (const auto& g : ch.gains)
        for (Eigen::Index k = 0; k < g.size(); ++k) hash_bytes(h, g(k));
    for (const auto& s : ch.noise)
        for (Eigen::Index k = 0; k < s.size(); ++k) hash_bytes(h, s(k));
    for (double p : ch.budgets) hash_bytes(h, p);
    for (double g : ch.gaps) hash_bytes(h, g);
    return h;
}

std::uint64_t channel_hash(const MimoChannelSet& ch) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    hash_bytes(h, ch.num_users);
    hash_bytes(h, ch.blocks);
    for (int d : ch.dims) hash_bytes(h, d);
    auto mat = [&h](const CMatrix& m) {
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i < m.rows(); ++i) hash_bytes(h, m(i, j));
    };
    for (const auto& m : ch.channels) mat(m);
    for (const auto& m : ch.noise_cov) mat(m);
    for (double p : ch.budgets) hash_bytes(h, p);
    for (double g : ch.gaps) hash_bytes(h, g);
    return h;
}

}  // namespace iwfa
