// SPDX-License-Identifier: Apache-2.0
#pragma once

// Scenario files, Monte-Carlo sweeps and tabular output.

#include "iwfa/channel_model.hpp"
#include "iwfa/engine.hpp"
#include "iwfa/schedule.hpp"
#include "iwfa/serialization.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace iwfa {

enum class GameMode { Siso, Mimo, MimoWideband };

[[nodiscard]] const char* to_string(GameMode mode) noexcept;
[[nodiscard]] GameMode game_mode_from_string(const std::string& s);

struct ModeSpec {
    GameMode game = GameMode::Siso;
    int antennas = 1;

    /// "siso", "mimo_2x2", "mimo_wideband_4x4".
    [[nodiscard]] std::string label() const;
    friend bool operator==(const ModeSpec&, const ModeSpec&) = default;
};

enum class SweepVariable { None, CrossDistance, SnrDb, PathLossExponent };

[[nodiscard]] const char* to_string(SweepVariable v) noexcept;
[[nodiscard]] SweepVariable sweep_variable_from_string(const std::string& s);

struct ScenarioConfig {
    std::uint64_t seed = 0;

    // channel
    int num_users = 2;
    int num_carriers = 16;
    int tap_count = 6;
    double path_loss_exponent = 2.5;
    std::vector<double> snr_db{5.0};  // one entry applies to every user
    double cross_distance = 1.0;
    std::vector<std::vector<double>> distances;  // explicit (r, q) matrix; overrides cross_distance

    std::vector<ModeSpec> modes{ModeSpec{}};

    // schedule
    ScheduleKind schedule = ScheduleKind::Simultaneous;
    int max_delay = 0;
    int window = 0;
    double update_probability = 0.5;

    // run
    double tol = 1e-6;
    long max_iter = 10000;
    std::vector<double> weights;  // empty means all ones

    // experiment
    SweepVariable sweep = SweepVariable::None;
    std::vector<double> values;
    int realizations = 50;
    bool compare_schedules = false;

    // output
    std::string csv_path;
    std::string raw_path;

    /// Throws Validation naming the offending field path.
    void validate() const;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

[[nodiscard]] ScenarioConfig config_from_json(const Json& j);
[[nodiscard]] Json to_json(const ScenarioConfig& cfg);
[[nodiscard]] ScenarioConfig parse_config(const std::string& path);

/// Generation spec for one realization at one sweep value.
[[nodiscard]] ChannelGenSpec realization_spec(const ScenarioConfig& cfg, double sweep_value,
                                              int realization, GameMode game);

struct RealizationRecord {
    double sweep_value = 0.0;
    std::string mode;
    int realization = 0;
    std::uint64_t seed = 0;
    double spectral_radius = 0.0;
    bool unique = false;
    double sum_rate_bits = 0.0;
    StopReason stop_reason = StopReason::MaxIterations;
    long iterations = 0;
    bool fixed_point_ok = false;
    double fixed_point_residual = 0.0;
    // Iterations per schedule kind, indexed by ScheduleKind; -1 when not run.
    long iters_by_kind[3] = {-1, -1, -1};
    bool converged_by_kind[3] = {false, false, false};
};

struct ExperimentPoint {
    double sweep_value = 0.0;
    std::string mode;
    int realizations = 0;
    double mean_sum_rate_bits = 0.0;
    double stderr_sum_rate = 0.0;
    double frac_unique = 0.0;
    // Mean over converged runs; nullopt when the kind was not run or never converged.
    std::optional<double> mean_iters[3];
};

struct ExperimentResult {
    std::vector<ExperimentPoint> points;     // sweep-major, then mode
    std::vector<RealizationRecord> raw;      // same order, realizations innermost
};

[[nodiscard]] ExperimentResult run_sweep(const ScenarioConfig& cfg);

/// Aggregates per-realization records into summary rows.
[[nodiscard]] std::vector<ExperimentPoint> aggregate(const std::vector<RealizationRecord>& raw,
                                                     const ScenarioConfig& cfg);

enum class OutputFormat { Csv, Json };

[[nodiscard]] std::string format_csv(const ExperimentResult& result);
[[nodiscard]] std::string format_raw_csv(const ExperimentResult& result);
[[nodiscard]] Json to_json(const ExperimentResult& result);
void emit(const ExperimentResult& result, OutputFormat format, const std::string& path);

}  // namespace iwfa
