// SPDX-License-Identifier: Apache-2.0
#pragma once

// JSON encodings of channels, strategies, reports and traces. Complex numbers are
// [re, im] pairs; matrices are arrays of rows. Doubles round-trip exactly.

#include "iwfa/channel_model.hpp"
#include "iwfa/engine.hpp"
#include "iwfa/equilibrium.hpp"

#include "json.hpp"

#include <string>
#include <variant>

namespace iwfa {

using Json = nlohmann::json;
using AnyChannel = std::variant<SisoChannelSet, MimoChannelSet>;

[[nodiscard]] Json to_json(const CVector& v);
[[nodiscard]] Json to_json(const RVector& v);
[[nodiscard]] Json to_json(const CMatrix& m);
[[nodiscard]] Json to_json(const RMatrix& m);

[[nodiscard]] CVector cvector_from_json(const Json& j, const std::string& path);
[[nodiscard]] RVector rvector_from_json(const Json& j, const std::string& path);
[[nodiscard]] CMatrix cmatrix_from_json(const Json& j, const std::string& path);
[[nodiscard]] RMatrix rmatrix_from_json(const Json& j, const std::string& path);

[[nodiscard]] Json to_json(const SisoChannelSet& ch);
[[nodiscard]] Json to_json(const MimoChannelSet& ch);
[[nodiscard]] AnyChannel channel_from_json(const Json& j);

[[nodiscard]] Json to_json(const EquilibriumReport& report);
[[nodiscard]] Json to_json(const PowerProfile& profile);
[[nodiscard]] Json to_json(const CovarianceProfile& profile);
[[nodiscard]] PowerProfile power_profile_from_json(const Json& j);
[[nodiscard]] CovarianceProfile covariance_profile_from_json(const Json& j);

template <class Profile>
[[nodiscard]] Json to_json(const IterationTrace<Profile>& trace, bool include_profiles) {
    Json j;
    j["schedule"] = trace.schedule_descriptor;
    j["schedule_kind"] = to_string(trace.schedule_kind);
    j["channel_hash"] = trace.channel_hash;
    j["seed"] = trace.seed;
    j["stop_reason"] = to_string(trace.stop_reason);
    j["iterations"] = trace.iterations;
    j["weights"] = to_json(trace.weights);
    Json recs = Json::array();
    for (const auto& r : trace.records) {
        Json updated = Json::array();
        for (char c : r.updated) updated.push_back(c != 0);
        recs.push_back({{"n", r.n}, {"updated", updated}, {"rate_bits", r.rates},
                        {"residual", r.residual}});
    }
    j["records"] = std::move(recs);
    j["final_profile"] = to_json(trace.final_profile);
    if (include_profiles) {
        Json ps = Json::array();
        for (const auto& p : trace.profiles) ps.push_back(to_json(p));
        j["profiles"] = std::move(ps);
    }
    return j;
}

/// Parse errors report line and column; unreadable files raise Io.
[[nodiscard]] Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace iwfa
