// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace iwfa {

using cplx = std::complex<double>;
using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;

/// Per-user power allocations over carriers (SISO strategy profile).
using PowerProfile = std::vector<RVector>;
/// Per-user transmit covariance matrices (MIMO strategy profile).
using CovarianceProfile = std::vector<CMatrix>;

enum class ErrorCode {
    InvalidSpec,
    InvalidInput,
    InvalidGap,
    SingularChannel,
    NumericalDegeneracy,
    InvalidStrategy,
    InvalidSchedule,
    InvalidInit,
    Unsupported,
    Parse,
    Validation,
    Io,
};

[[nodiscard]] constexpr const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidSpec: return "invalid-spec";
        case ErrorCode::InvalidInput: return "invalid-input";
        case ErrorCode::InvalidGap: return "invalid-gap";
        case ErrorCode::SingularChannel: return "singular-channel";
        case ErrorCode::NumericalDegeneracy: return "numerical-degeneracy";
        case ErrorCode::InvalidStrategy: return "invalid-strategy";
        case ErrorCode::InvalidSchedule: return "invalid-schedule";
        case ErrorCode::InvalidInit: return "invalid-init";
        case ErrorCode::Unsupported: return "unsupported";
        case ErrorCode::Parse: return "parse";
        case ErrorCode::Validation: return "validation";
        case ErrorCode::Io: return "io";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline constexpr double kLn2 = 0.69314718055994530942;

}  // namespace iwfa
