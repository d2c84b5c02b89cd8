// SPDX-License-Identifier: Apache-2.0
#include "iwfa/serialization.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace iwfa {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::Validation, path + ": " + what);
}

double number(const Json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "expected a finite number");
    return v;
}

cplx complex_number(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) fail(path, "expected [re, im]");
    return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

const Json& field(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, std::string("missing field '") + key + "'");
    return *it;
}

std::string at(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

int integer(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
}

std::vector<double> doubles(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], at(path, i)));
    return out;
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed,
                const std::string& path) {
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) fail(path, "unknown field '" + key + "'");
    }
}

void check_finite(double v) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidInput, "cannot serialize non-finite value");
}

}  // namespace

Json to_json(const CVector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        check_finite(v(i).real());
        check_finite(v(i).imag());
        out.push_back({v(i).real(), v(i).imag()});
    }
    return out;
}

Json to_json(const RVector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        check_finite(v(i));
        out.push_back(v(i));
    }
    return out;
}

Json to_json(const CMatrix& m) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(to_json(CVector(m.row(i).transpose())));
    return out;
}

Json to_json(const RMatrix& m) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(to_json(RVector(m.row(i).transpose())));
    return out;
}

CVector cvector_from_json(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    CVector out(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        out(static_cast<Eigen::Index>(i)) = complex_number(j[i], at(path, i));
    }
    return out;
}

RVector rvector_from_json(const Json& j, const std::string& path) {
    const auto v = doubles(j, path);
    return Eigen::Map<const RVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

CMatrix cmatrix_from_json(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0) return CMatrix(0, 0);
    CMatrix out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const CVector row = cvector_from_json(j[i], at(path, i));
        if (i == 0) out.resize(rows, row.size());
        if (row.size() != out.cols()) fail(at(path, i), "ragged matrix rows");
        out.row(static_cast<Eigen::Index>(i)) = row.transpose();
    }
    return out;
}

RMatrix rmatrix_from_json(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0) return RMatrix(0, 0);
    RMatrix out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const RVector row = rvector_from_json(j[i], at(path, i));
        if (i == 0) out.resize(rows, row.size());
        if (row.size() != out.cols()) fail(at(path, i), "ragged matrix rows");
        out.row(static_cast<Eigen::Index>(i)) = row.transpose();
    }
    return out;
}

Json to_json(const SisoChannelSet& ch) {
    Json gains = Json::array();
    for (int r = 0; r < ch.num_users; ++r) {
        Json row = Json::array();
        for (int q = 0; q < ch.num_users; ++q) row.push_back(to_json(ch.gain(r, q)));
        gains.push_back(std::move(row));
    }
    Json noise = Json::array();
    for (const auto& n : ch.noise) noise.push_back(to_json(n));
    return {{"kind", "siso"},          {"num_users", ch.num_users},
            {"num_carriers", ch.num_carriers}, {"gains", gains},
            {"noise", noise},          {"budgets", ch.budgets},
            {"gaps", ch.gaps}};
}

Json to_json(const MimoChannelSet& ch) {
    Json channels = Json::array();
    for (int r = 0; r < ch.num_users; ++r) {
        Json row = Json::array();
        for (int q = 0; q < ch.num_users; ++q) row.push_back(to_json(ch.channel(r, q)));
        channels.push_back(std::move(row));
    }
    Json noise = Json::array();
    for (const auto& n : ch.noise_cov) noise.push_back(to_json(n));
    return {{"kind", "mimo"},     {"num_users", ch.num_users}, {"dims", ch.dims},
            {"blocks", ch.blocks}, {"channels", channels},      {"noise_cov", noise},
            {"budgets", ch.budgets}, {"gaps", ch.gaps}};
}

AnyChannel channel_from_json(const Json& j) {
    const std::string root = "channel";
    const auto& kind = field(j, "kind", root);
    if (!kind.is_string()) fail(root + ".kind", "expected a string");
    const int users = integer(field(j, "num_users", root), root + ".num_users");
    if (users < 1) fail(root + ".num_users", "must be >= 1");
    const auto uq = static_cast<std::size_t>(users);

    if (kind == "siso") {
        check_keys(j, {"kind", "num_users", "num_carriers", "gains", "noise", "budgets", "gaps"},
                   root);
        SisoChannelSet ch;
        ch.num_users = users;
        ch.num_carriers = integer(field(j, "num_carriers", root), root + ".num_carriers");
        const auto& gains = field(j, "gains", root);
        if (!gains.is_array() || gains.size() != uq) fail(root + ".gains", "expected Q rows");
        ch.gains.resize(uq * uq);
        for (std::size_t r = 0; r < uq; ++r) {
            if (!gains[r].is_array() || gains[r].size() != uq) {
                fail(at(root + ".gains", r), "expected Q entries");
            }
            for (std::size_t q = 0; q < uq; ++q) {
                ch.gains[r * uq + q] = cvector_from_json(gains[r][q], at(at(root + ".gains", r), q));
            }
        }
        const auto& noise = field(j, "noise", root);
        if (!noise.is_array() || noise.size() != uq) fail(root + ".noise", "expected Q entries");
        for (std::size_t q = 0; q < uq; ++q) {
            ch.noise.push_back(rvector_from_json(noise[q], at(root + ".noise", q)));
        }
        ch.budgets = doubles(field(j, "budgets", root), root + ".budgets");
        ch.gaps = doubles(field(j, "gaps", root), root + ".gaps");
        try {
            ch.validate();
        } catch (const Error& e) {
            fail(root, e.what());
        }
        return ch;
    }
    if (kind == "mimo") {
        check_keys(j, {"kind", "num_users", "dims", "blocks", "channels", "noise_cov", "budgets",
                       "gaps"},
                   root);
        MimoChannelSet ch;
        ch.num_users = users;
        const auto& dims = field(j, "dims", root);
        if (!dims.is_array()) fail(root + ".dims", "expected an array");
        for (std::size_t q = 0; q < dims.size(); ++q) {
            ch.dims.push_back(integer(dims[q], at(root + ".dims", q)));
        }
        ch.blocks = j.contains("blocks") ? integer(j["blocks"], root + ".blocks") : 1;
        const auto& channels = field(j, "channels", root);
        if (!channels.is_array() || channels.size() != uq) fail(root + ".channels", "expected Q rows");
        ch.channels.resize(uq * uq);
        for (std::size_t r = 0; r < uq; ++r) {
            if (!channels[r].is_array() || channels[r].size() != uq) {
                fail(at(root + ".channels", r), "expected Q entries");
            }
            for (std::size_t q = 0; q < uq; ++q) {
                ch.channels[r * uq + q] =
                    cmatrix_from_json(channels[r][q], at(at(root + ".channels", r), q));
            }
        }
        const auto& noise = field(j, "noise_cov", root);
        if (!noise.is_array() || noise.size() != uq) fail(root + ".noise_cov", "expected Q entries");
        for (std::size_t q = 0; q < uq; ++q) {
            ch.noise_cov.push_back(cmatrix_from_json(noise[q], at(root + ".noise_cov", q)));
        }
        ch.budgets = doubles(field(j, "budgets", root), root + ".budgets");
        ch.gaps = doubles(field(j, "gaps", root), root + ".gaps");
        try {
            ch.validate();
        } catch (const Error& e) {
            fail(root, e.what());
        }
        return ch;
    }
    fail(root + ".kind", "expected \"siso\" or \"mimo\"");
}

Json to_json(const EquilibriumReport& report) {
    Json j;
    j["kind"] = to_string(report.matrix.kind);
    j["matrix"] = to_json(report.matrix.entries);
    j["spectral_radius"] = report.spectral_radius;
    j["unique"] = report.unique;
    j["weights"] = report.unique ? to_json(report.weights) : Json(nullptr);
    j["weighted_norm"] = report.weighted_norm ? Json(*report.weighted_norm) : Json(nullptr);
    j["modulus"] = report.modulus ? Json(*report.modulus) : Json(nullptr);
    j["c2_satisfied"] = report.c2 ? Json(*report.c2) : Json(nullptr);
    j["c3_satisfied"] = report.c3 ? Json(*report.c3) : Json(nullptr);
    j["c2_satisfied_unit_weights"] = report.c2_unit;
    j["c3_satisfied_unit_weights"] = report.c3_unit;
    return j;
}

Json to_json(const PowerProfile& profile) {
    Json out = Json::array();
    for (const auto& p : profile) out.push_back(to_json(p));
    return out;
}

Json to_json(const CovarianceProfile& profile) {
    Json out = Json::array();
    for (const auto& p : profile) out.push_back(to_json(p));
    return out;
}

PowerProfile power_profile_from_json(const Json& j) {
    if (!j.is_array()) fail("profile", "expected an array");
    PowerProfile out;
    for (std::size_t q = 0; q < j.size(); ++q) out.push_back(rvector_from_json(j[q], at("profile", q)));
    return out;
}

CovarianceProfile covariance_profile_from_json(const Json& j) {
    if (!j.is_array()) fail("profile", "expected an array");
    CovarianceProfile out;
    for (std::size_t q = 0; q < j.size(); ++q) out.push_back(cmatrix_from_json(j[q], at("profile", q)));
    return out;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::Parse, path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "failed writing '" + path + "'");
}

}  // namespace iwfa
