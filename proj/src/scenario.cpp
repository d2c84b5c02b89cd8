// SPDX-License-Identifier: Apache-2.0
#include "iwfa/scenario.hpp"

#include "iwfa/equilibrium.hpp"
#include "iwfa/game.hpp"
#include "iwfa/random.hpp"

#include <cmath>
#include <limits>
#include <locale>
#include <sstream>

namespace iwfa {

namespace {

constexpr std::size_t kKinds = 3;

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::Validation, path + ": " + what);
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed,
                const std::string& path) {
    if (!j.is_object()) invalid(path.empty() ? "<root>" : path, "expected an object");
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) invalid(path.empty() ? key : path + "." + key, "unknown key");
    }
}

double get_number(const Json& j, const std::string& path) {
    if (!j.is_number()) invalid(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) invalid(path, "expected a finite number");
    return v;
}

long get_integer(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) invalid(path, "expected an integer");
    return j.get<long>();
}

std::vector<double> get_numbers(const Json& j, const std::string& path) {
    if (!j.is_array()) invalid(path, "expected an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(get_number(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::string get_string(const Json& j, const std::string& path) {
    if (!j.is_string()) invalid(path, "expected a string");
    return j.get<std::string>();
}

template <class F>
auto with_path(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        invalid(path, e.what());
    }
}

GenMode gen_mode(GameMode g) {
    switch (g) {
        case GameMode::Siso: return GenMode::SisoFreqSelective;
        case GameMode::Mimo: return GenMode::MimoFlat;
        case GameMode::MimoWideband: return GenMode::MimoWideband;
    }
    return GenMode::SisoFreqSelective;
}

bool frequency_selective(GameMode g) { return g != GameMode::Mimo; }

std::string fmt(double v, int digits) {
    if (std::isnan(v)) return "nan";
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(digits);
    os << v;
    return os.str();
}

std::string fmt(const std::optional<double>& v, int digits) {
    return v ? fmt(*v, digits) : "nan";
}

struct Outcome {
    double sum_rate = 0.0;
    StopReason stop = StopReason::MaxIterations;
    long iterations = 0;
    bool fp_ok = false;
    double fp_residual = 0.0;
};

template <class Game>
Outcome run_once(const Game& game, ScheduleKind kind, const ScenarioConfig& cfg,
                 std::uint64_t seed, const RunConfig& rc) {
    ScheduleParams params;
    params.seed = seed;
    if (kind == ScheduleKind::Asynchronous) {
        params.max_delay = cfg.max_delay;
        params.window = cfg.window;
        params.update_probability = cfg.update_probability;
    }
    const auto trace = run(game, make_schedule(kind, game.num_users(), params), rc,
                           game.uniform_profile());
    Outcome out;
    for (double r : rates(game, trace.final_profile)) out.sum_rate += r;
    out.stop = trace.stop_reason;
    out.iterations = trace.iterations;
    const auto fp = verify_fixed_point(game.channel(), trace.final_profile, rc.tol, rc.weights);
    out.fp_ok = fp.ok;
    out.fp_residual = fp.residual;
    return out;
}

template <class Game>
void simulate(const Game& game, const InterferenceMatrix& s, const ScenarioConfig& cfg,
              std::uint64_t seed, RealizationRecord& rec) {
    const auto report = certify_uniqueness(s);
    rec.spectral_radius = report.spectral_radius;
    rec.unique = report.unique;

    RunConfig rc;
    rc.tol = cfg.tol;
    rc.max_iter = cfg.max_iter;
    if (!cfg.weights.empty()) {
        rc.weights = Eigen::Map<const RVector>(cfg.weights.data(),
                                               static_cast<Eigen::Index>(cfg.weights.size()));
    }
    const auto primary = run_once(game, cfg.schedule, cfg, seed, rc);
    rec.sum_rate_bits = primary.sum_rate;
    rec.stop_reason = primary.stop;
    rec.iterations = primary.iterations;
    rec.fixed_point_ok = primary.fp_ok;
    rec.fixed_point_residual = primary.fp_residual;
    const auto pk = static_cast<std::size_t>(cfg.schedule);
    rec.iters_by_kind[pk] = primary.iterations;
    rec.converged_by_kind[pk] = primary.stop == StopReason::Converged;
    if (!cfg.compare_schedules) return;
    for (std::size_t k = 0; k < kKinds; ++k) {
        if (k == pk) continue;
        const auto other = run_once(game, static_cast<ScheduleKind>(k), cfg, seed, rc);
        rec.iters_by_kind[k] = other.iterations;
        rec.converged_by_kind[k] = other.stop == StopReason::Converged;
    }
}

}  // namespace

const char* to_string(GameMode mode) noexcept {
    switch (mode) {
        case GameMode::Siso: return "siso";
        case GameMode::Mimo: return "mimo";
        case GameMode::MimoWideband: return "mimo_wideband";
    }
    return "unknown";
}

GameMode game_mode_from_string(const std::string& s) {
    if (s == "siso") return GameMode::Siso;
    if (s == "mimo") return GameMode::Mimo;
    if (s == "mimo_wideband") return GameMode::MimoWideband;
    throw Error(ErrorCode::Validation, "unknown game mode '" + s + "'");
}

std::string ModeSpec::label() const {
    if (game == GameMode::Siso) return "siso";
    const std::string n = std::to_string(antennas);
    return std::string(to_string(game)) + "_" + n + "x" + n;
}

const char* to_string(SweepVariable v) noexcept {
    switch (v) {
        case SweepVariable::None: return "none";
        case SweepVariable::CrossDistance: return "cross_distance";
        case SweepVariable::SnrDb: return "snr_db";
        case SweepVariable::PathLossExponent: return "path_loss_exponent";
    }
    return "unknown";
}

SweepVariable sweep_variable_from_string(const std::string& s) {
    if (s == "none") return SweepVariable::None;
    if (s == "cross_distance") return SweepVariable::CrossDistance;
    if (s == "snr_db") return SweepVariable::SnrDb;
    if (s == "path_loss_exponent") return SweepVariable::PathLossExponent;
    throw Error(ErrorCode::Validation, "unknown sweep variable '" + s + "'");
}

void ScenarioConfig::validate() const {
    if (num_users < 1) invalid("channel.num_users", "must be >= 1");
    if (num_carriers < 1) invalid("channel.num_carriers", "must be >= 1");
    if (tap_count < 1) invalid("channel.tap_count", "must be >= 1");
    if (!(path_loss_exponent > 0.0)) invalid("channel.path_loss_exponent", "must be > 0");
    if (snr_db.size() != 1 && snr_db.size() != static_cast<std::size_t>(num_users)) {
        invalid("channel.snr_db", "expected one value or one per user");
    }
    if (!(cross_distance > 0.0)) invalid("channel.cross_distance", "must be > 0");
    if (!distances.empty()) {
        if (distances.size() != static_cast<std::size_t>(num_users)) {
            invalid("channel.distances", "expected num_users rows");
        }
        for (std::size_t r = 0; r < distances.size(); ++r) {
            const std::string p = "channel.distances[" + std::to_string(r) + "]";
            if (distances[r].size() != static_cast<std::size_t>(num_users)) {
                invalid(p, "expected num_users entries");
            }
            for (double d : distances[r]) {
                if (!(d > 0.0)) invalid(p, "distances must be > 0");
            }
        }
    }
    if (modes.empty()) invalid("modes", "at least one mode is required");
    bool needs_taps = false;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const std::string p = "modes[" + std::to_string(i) + "].antennas";
        if (modes[i].antennas < 1) invalid(p, "must be >= 1");
        if (modes[i].game == GameMode::Siso && modes[i].antennas != 1) {
            invalid(p, "siso mode has a single antenna");
        }
        needs_taps = needs_taps || frequency_selective(modes[i].game);
    }
    if (needs_taps && tap_count > num_carriers) {
        invalid("channel.tap_count", "channel.tap_count (" + std::to_string(tap_count) +
                                         ") exceeds channel.num_carriers (" +
                                         std::to_string(num_carriers) + ")");
    }
    if (max_delay < 0) invalid("schedule.max_delay", "must be >= 0");
    if (window < 0) invalid("schedule.window", "must be >= 1 (0 selects the default)");
    if (!(update_probability >= 0.0 && update_probability <= 1.0)) {
        invalid("schedule.update_probability", "must lie in [0, 1]");
    }
    if (schedule != ScheduleKind::Asynchronous && max_delay != 0) {
        invalid("schedule.max_delay", "only asynchronous schedules take delays");
    }
    if (!(tol > 0.0)) invalid("run.tol", "must be > 0");
    if (max_iter < 1) invalid("run.max_iter", "must be >= 1");
    if (!weights.empty()) {
        if (weights.size() != static_cast<std::size_t>(num_users)) {
            invalid("run.weights", "expected one weight per user");
        }
        for (double w : weights) {
            if (!(w > 0.0)) invalid("run.weights", "weights must be > 0");
        }
    }
    if (realizations < 1) invalid("experiment.realizations", "must be >= 1");
    if (sweep == SweepVariable::None) {
        if (!values.empty()) invalid("experiment.values", "not allowed without a sweep variable");
    } else {
        if (values.empty()) invalid("experiment.values", "must be nonempty");
        for (double v : values) {
            if (!std::isfinite(v)) invalid("experiment.values", "must be finite");
            if ((sweep == SweepVariable::CrossDistance || sweep == SweepVariable::PathLossExponent) &&
                !(v > 0.0)) {
                invalid("experiment.values", "must be > 0");
            }
        }
        if (sweep == SweepVariable::CrossDistance && !distances.empty()) {
            invalid("experiment.variable", "cross_distance sweep conflicts with channel.distances");
        }
    }
}

ScenarioConfig config_from_json(const Json& j) {
    ScenarioConfig cfg;
    check_keys(j, {"seed", "channel", "modes", "schedule", "run", "experiment", "output"}, "");
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0)) {
            invalid("seed", "expected a nonnegative integer");
        }
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("channel")) {
        const auto& c = j["channel"];
        check_keys(c, {"num_users", "num_carriers", "tap_count", "path_loss_exponent", "snr_db",
                       "cross_distance", "distances"},
                   "channel");
        if (c.contains("num_users")) cfg.num_users = static_cast<int>(get_integer(c["num_users"], "channel.num_users"));
        if (c.contains("num_carriers")) cfg.num_carriers = static_cast<int>(get_integer(c["num_carriers"], "channel.num_carriers"));
        if (c.contains("tap_count")) cfg.tap_count = static_cast<int>(get_integer(c["tap_count"], "channel.tap_count"));
        if (c.contains("path_loss_exponent")) {
            cfg.path_loss_exponent = get_number(c["path_loss_exponent"], "channel.path_loss_exponent");
        }
        if (c.contains("snr_db")) {
            cfg.snr_db = c["snr_db"].is_array() ? get_numbers(c["snr_db"], "channel.snr_db")
                                                : std::vector<double>{get_number(c["snr_db"], "channel.snr_db")};
        }
        if (c.contains("cross_distance")) cfg.cross_distance = get_number(c["cross_distance"], "channel.cross_distance");
        if (c.contains("distances")) {
            const auto& d = c["distances"];
            if (!d.is_array()) invalid("channel.distances", "expected an array of rows");
            for (std::size_t r = 0; r < d.size(); ++r) {
                cfg.distances.push_back(get_numbers(d[r], "channel.distances[" + std::to_string(r) + "]"));
            }
        }
    }
    if (j.contains("modes")) {
        const auto& m = j["modes"];
        if (!m.is_array()) invalid("modes", "expected an array");
        cfg.modes.clear();
        for (std::size_t i = 0; i < m.size(); ++i) {
            const std::string p = "modes[" + std::to_string(i) + "]";
            check_keys(m[i], {"game", "antennas"}, p);
            if (!m[i].contains("game")) invalid(p + ".game", "missing");
            ModeSpec spec;
            spec.game = with_path(p + ".game", [&] { return game_mode_from_string(get_string(m[i]["game"], p + ".game")); });
            if (m[i].contains("antennas")) {
                spec.antennas = static_cast<int>(get_integer(m[i]["antennas"], p + ".antennas"));
            } else if (spec.game != GameMode::Siso) {
                invalid(p + ".antennas", "required for MIMO modes");
            }
            cfg.modes.push_back(spec);
        }
    }
    if (j.contains("schedule")) {
        const auto& s = j["schedule"];
        check_keys(s, {"kind", "max_delay", "window", "update_probability"}, "schedule");
        if (s.contains("kind")) {
            cfg.schedule = with_path("schedule.kind", [&] { return schedule_kind_from_string(get_string(s["kind"], "schedule.kind")); });
        }
        if (s.contains("max_delay")) cfg.max_delay = static_cast<int>(get_integer(s["max_delay"], "schedule.max_delay"));
        if (s.contains("window")) cfg.window = static_cast<int>(get_integer(s["window"], "schedule.window"));
        if (s.contains("update_probability")) {
            cfg.update_probability = get_number(s["update_probability"], "schedule.update_probability");
        }
    }
    if (j.contains("run")) {
        const auto& r = j["run"];
        check_keys(r, {"tol", "max_iter", "weights"}, "run");
        if (r.contains("tol")) cfg.tol = get_number(r["tol"], "run.tol");
        if (r.contains("max_iter")) cfg.max_iter = get_integer(r["max_iter"], "run.max_iter");
        if (r.contains("weights")) cfg.weights = get_numbers(r["weights"], "run.weights");
    }
    if (j.contains("experiment")) {
        const auto& e = j["experiment"];
        check_keys(e, {"variable", "values", "realizations", "compare_schedules"}, "experiment");
        if (e.contains("variable")) {
            cfg.sweep = with_path("experiment.variable", [&] { return sweep_variable_from_string(get_string(e["variable"], "experiment.variable")); });
        }
        if (e.contains("values")) cfg.values = get_numbers(e["values"], "experiment.values");
        if (e.contains("realizations")) {
            cfg.realizations = static_cast<int>(get_integer(e["realizations"], "experiment.realizations"));
        }
        if (e.contains("compare_schedules")) {
            if (!e["compare_schedules"].is_boolean()) invalid("experiment.compare_schedules", "expected a boolean");
            cfg.compare_schedules = e["compare_schedules"].get<bool>();
        }
    }
    if (j.contains("output")) {
        const auto& o = j["output"];
        check_keys(o, {"csv", "raw"}, "output");
        if (o.contains("csv")) cfg.csv_path = get_string(o["csv"], "output.csv");
        if (o.contains("raw")) cfg.raw_path = get_string(o["raw"], "output.raw");
    }
    cfg.validate();
    return cfg;
}

Json to_json(const ScenarioConfig& cfg) {
    Json channel = {{"num_users", cfg.num_users},
                    {"num_carriers", cfg.num_carriers},
                    {"tap_count", cfg.tap_count},
                    {"path_loss_exponent", cfg.path_loss_exponent},
                    {"cross_distance", cfg.cross_distance}};
    channel["snr_db"] = cfg.snr_db.size() == 1 ? Json(cfg.snr_db[0]) : Json(cfg.snr_db);
    if (!cfg.distances.empty()) channel["distances"] = cfg.distances;
    Json modes = Json::array();
    for (const auto& m : cfg.modes) {
        Json e = {{"game", to_string(m.game)}};
        if (m.game != GameMode::Siso) e["antennas"] = m.antennas;
        modes.push_back(std::move(e));
    }
    Json run = {{"tol", cfg.tol}, {"max_iter", cfg.max_iter}};
    if (!cfg.weights.empty()) run["weights"] = cfg.weights;
    Json experiment = {{"variable", to_string(cfg.sweep)},
                       {"realizations", cfg.realizations},
                       {"compare_schedules", cfg.compare_schedules}};
    if (!cfg.values.empty()) experiment["values"] = cfg.values;
    Json output = Json::object();
    if (!cfg.csv_path.empty()) output["csv"] = cfg.csv_path;
    if (!cfg.raw_path.empty()) output["raw"] = cfg.raw_path;
    return {{"seed", cfg.seed},
            {"channel", channel},
            {"modes", modes},
            {"schedule",
             {{"kind", to_string(cfg.schedule)},
              {"max_delay", cfg.max_delay},
              {"window", cfg.window},
              {"update_probability", cfg.update_probability}}},
            {"run", run},
            {"experiment", experiment},
            {"output", output}};
}

ScenarioConfig parse_config(const std::string& path) { return config_from_json(read_json_file(path)); }

ChannelGenSpec realization_spec(const ScenarioConfig& cfg, double sweep_value, int realization,
                                GameMode game) {
    const int users = cfg.num_users;
    ChannelGenSpec spec;
    spec.mode = gen_mode(game);
    spec.seed = rnd::mix_seed(cfg.seed, static_cast<std::uint64_t>(realization));
    spec.tap_count = cfg.tap_count;
    spec.path_loss_exponent =
        cfg.sweep == SweepVariable::PathLossExponent ? sweep_value : cfg.path_loss_exponent;
    if (cfg.snr_db.size() == 1) {
        spec.snr_db.assign(static_cast<std::size_t>(users), cfg.snr_db[0]);
    } else {
        spec.snr_db = cfg.snr_db;
    }
    if (cfg.sweep == SweepVariable::SnrDb) {
        spec.snr_db.assign(static_cast<std::size_t>(users), sweep_value);
    }
    if (!cfg.distances.empty()) {
        spec.distances.resize(users, users);
        for (int r = 0; r < users; ++r)
            for (int q = 0; q < users; ++q)
                spec.distances(r, q) = cfg.distances[static_cast<std::size_t>(r)][static_cast<std::size_t>(q)];
    } else {
        const double cross =
            cfg.sweep == SweepVariable::CrossDistance ? sweep_value : cfg.cross_distance;
        spec.distances = RMatrix::Constant(users, users, cross);
        spec.distances.diagonal().setOnes();
    }
    return spec;
}

ExperimentResult run_sweep(const ScenarioConfig& cfg) {
    cfg.validate();
    const std::vector<double> points =
        cfg.sweep == SweepVariable::None ? std::vector<double>{std::numeric_limits<double>::quiet_NaN()}
                                         : cfg.values;
    ExperimentResult result;
    for (double value : points) {
        for (const auto& mode : cfg.modes) {
            for (int k = 0; k < cfg.realizations; ++k) {
                RealizationRecord rec;
                rec.sweep_value = value;
                rec.mode = mode.label();
                rec.realization = k;
                const auto spec = realization_spec(cfg, value, k, mode.game);
                rec.seed = spec.seed;
                if (mode.game == GameMode::Siso) {
                    const auto ch = generate_siso(spec, cfg.num_carriers);
                    simulate(SisoGame(ch), build_s_max(ch), cfg, spec.seed, rec);
                } else {
                    const auto ch = mode.game == GameMode::Mimo
                                        ? generate_mimo(spec, mode.antennas)
                                        : generate_mimo(spec, mode.antennas, cfg.num_carriers);
                    simulate(MimoGame(ch), build_s_mimo(ch), cfg, spec.seed, rec);
                }
                result.raw.push_back(std::move(rec));
            }
        }
    }
    result.points = aggregate(result.raw, cfg);
    return result;
}

std::vector<ExperimentPoint> aggregate(const std::vector<RealizationRecord>& raw,
                                       const ScenarioConfig& cfg) {
    std::vector<ExperimentPoint> out;
    const auto per_point = static_cast<std::size_t>(cfg.realizations);
    if (per_point == 0 || raw.size() % per_point != 0) {
        throw Error(ErrorCode::InvalidInput, "raw records do not tile the sweep");
    }
    for (std::size_t start = 0; start < raw.size(); start += per_point) {
        ExperimentPoint pt;
        pt.sweep_value = raw[start].sweep_value;
        pt.mode = raw[start].mode;
        pt.realizations = cfg.realizations;
        const double n = static_cast<double>(per_point);
        double sum = 0.0;
        double unique = 0.0;
        double iters[kKinds] = {0.0, 0.0, 0.0};
        double converged[kKinds] = {0.0, 0.0, 0.0};
        for (std::size_t i = start; i < start + per_point; ++i) {
            sum += raw[i].sum_rate_bits;
            unique += raw[i].unique ? 1.0 : 0.0;
            for (std::size_t k = 0; k < kKinds; ++k) {
                if (raw[i].converged_by_kind[k]) {
                    iters[k] += static_cast<double>(raw[i].iters_by_kind[k]);
                    converged[k] += 1.0;
                }
            }
        }
        pt.mean_sum_rate_bits = sum / n;
        double ss = 0.0;
        for (std::size_t i = start; i < start + per_point; ++i) {
            const double d = raw[i].sum_rate_bits - pt.mean_sum_rate_bits;
            ss += d * d;
        }
        pt.stderr_sum_rate = per_point > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
        pt.frac_unique = unique / n;
        for (std::size_t k = 0; k < kKinds; ++k) {
            if (converged[k] > 0.0) pt.mean_iters[k] = iters[k] / converged[k];
        }
        out.push_back(std::move(pt));
    }
    return out;
}

std::string format_csv(const ExperimentResult& result) {
    std::string out =
        "sweep_value,mode,mean_sum_rate_bits,stderr,frac_unique,mean_iters_sequential,"
        "mean_iters_simultaneous,mean_iters_async\n";
    for (const auto& p : result.points) {
        out += fmt(p.sweep_value, 12) + "," + p.mode + "," + fmt(p.mean_sum_rate_bits, 12) + "," +
               fmt(p.stderr_sum_rate, 12) + "," + fmt(p.frac_unique, 12) + "," +
               fmt(p.mean_iters[0], 12) + "," + fmt(p.mean_iters[1], 12) + "," +
               fmt(p.mean_iters[2], 12) + "\n";
    }
    return out;
}

std::string format_raw_csv(const ExperimentResult& result) {
    std::string out =
        "sweep_value,mode,realization,seed,spectral_radius,unique,sum_rate_bits,stop_reason,"
        "iterations,fixed_point_ok,fixed_point_residual,iters_sequential,iters_simultaneous,"
        "iters_async,converged_sequential,converged_simultaneous,converged_async\n";
    for (const auto& r : result.raw) {
        out += fmt(r.sweep_value, 17) + "," + r.mode + "," + std::to_string(r.realization) + "," +
               std::to_string(r.seed) + "," + fmt(r.spectral_radius, 17) + "," +
               (r.unique ? "1" : "0") + "," + fmt(r.sum_rate_bits, 17) + "," +
               to_string(r.stop_reason) + "," + std::to_string(r.iterations) + "," +
               (r.fixed_point_ok ? "1" : "0") + "," + fmt(r.fixed_point_residual, 17);
        for (std::size_t k = 0; k < kKinds; ++k) out += "," + std::to_string(r.iters_by_kind[k]);
        for (std::size_t k = 0; k < kKinds; ++k) out += std::string(",") + (r.converged_by_kind[k] ? "1" : "0");
        out += "\n";
    }
    return out;
}

Json to_json(const ExperimentResult& result) {
    auto num = [](double v) { return std::isnan(v) ? Json(nullptr) : Json(v); };
    auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
    Json points = Json::array();
    for (const auto& p : result.points) {
        points.push_back({{"sweep_value", num(p.sweep_value)},
                          {"mode", p.mode},
                          {"realizations", p.realizations},
                          {"mean_sum_rate_bits", p.mean_sum_rate_bits},
                          {"stderr", p.stderr_sum_rate},
                          {"frac_unique", p.frac_unique},
                          {"mean_iters_sequential", opt(p.mean_iters[0])},
                          {"mean_iters_simultaneous", opt(p.mean_iters[1])},
                          {"mean_iters_async", opt(p.mean_iters[2])}});
    }
    return {{"points", points}};
}

void emit(const ExperimentResult& result, OutputFormat format, const std::string& path) {
    write_text_file(path, format == OutputFormat::Csv ? format_csv(result)
                                                      : to_json(result).dump(2) + "\n");
}

}  // namespace iwfa
