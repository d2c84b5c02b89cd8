// SPDX-License-Identifier: Apache-2.0
#include "iwfa/scenario.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace iwfa;

namespace {

std::string validation_message(const Json& j) {
    try {
        (void)config_from_json(j);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Validation) return e.what();
        return std::string("wrong code: ") + e.what();
    }
    return "no error";
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << text;
    return path;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) out.push_back(line);
    return out;
}

ScenarioConfig small_sweep() {
    ScenarioConfig cfg;
    cfg.seed = 9;
    cfg.num_carriers = 8;
    cfg.tap_count = 3;
    cfg.modes = {ModeSpec{}, ModeSpec{GameMode::MimoWideband, 2}};
    cfg.sweep = SweepVariable::CrossDistance;
    cfg.values = {1.0, 4.0};
    cfg.realizations = 3;
    cfg.schedule = ScheduleKind::Sequential;
    cfg.compare_schedules = true;
    return cfg;
}

}  // namespace

TEST_CASE("empty configuration takes the defaults", "[scenario]") {
    const auto cfg = config_from_json(Json::object());
    CHECK(cfg == ScenarioConfig{});
    CHECK(cfg.num_users == 2);
    CHECK(cfg.num_carriers == 16);
    CHECK(cfg.tap_count == 6);
    CHECK(cfg.path_loss_exponent == 2.5);
    CHECK(cfg.snr_db == std::vector<double>{5.0});
    CHECK(cfg.tol == 1e-6);
    CHECK(cfg.modes.size() == 1);
    CHECK(cfg.modes[0].label() == "siso");
}

TEST_CASE("mode labels", "[scenario]") {
    CHECK(ModeSpec{GameMode::Mimo, 2}.label() == "mimo_2x2");
    CHECK(ModeSpec{GameMode::MimoWideband, 4}.label() == "mimo_wideband_4x4");
}

TEST_CASE("tap count beyond the carrier count is rejected", "[scenario][errors]") {
    const Json j = {{"channel", {{"num_carriers", 4}, {"tap_count", 6}}}};
    const auto msg = validation_message(j);
    CHECK(contains(msg, "channel.tap_count (6) exceeds channel.num_carriers (4)"));
    // Flat MIMO has no frequency axis.
    const Json flat = {{"channel", {{"num_carriers", 4}, {"tap_count", 6}}},
                       {"modes", {{{"game", "mimo"}, {"antennas", 2}}}}};
    CHECK(validation_message(flat) == "no error");
}

TEST_CASE("unknown keys report a dotted path", "[scenario][errors]") {
    CHECK(contains(validation_message({{"run", {{"tolx", 1e-6}}}}), "run.tolx"));
    CHECK(contains(validation_message({{"bogus", 1}}), "bogus"));
    CHECK(contains(validation_message({{"modes", {{{"game", "siso"}, {"extra", 1}}}}}), "modes[0].extra"));
}

TEST_CASE("semantic validation names the field", "[scenario][errors]") {
    CHECK(contains(validation_message({{"channel", {{"num_users", 0}}}}), "channel.num_users"));
    CHECK(contains(validation_message({{"modes", {{{"game", "mimo"}}}}}), "modes[0].antennas"));
    CHECK(contains(validation_message({{"modes", {{{"game", "laser"}}}}}), "modes[0].game"));
    CHECK(contains(validation_message({{"schedule", {{"kind", "sequential"}, {"max_delay", 2}}}}),
                   "schedule.max_delay"));
    CHECK(contains(validation_message({{"run", {{"tol", -1.0}}}}), "run.tol"));
    CHECK(contains(validation_message({{"run", {{"weights", {1.0}}}}}), "run.weights"));
    CHECK(contains(validation_message({{"experiment", {{"values", {1.0}}}}}), "experiment.values"));
    CHECK(contains(validation_message({{"experiment", {{"variable", "snr_db"}}}}), "experiment.values"));
    CHECK(contains(validation_message({{"channel", {{"distances", {{1.0, 2.0}, {2.0, 1.0}}}}},
                                       {"experiment", {{"variable", "cross_distance"}, {"values", {1.0}}}}}),
                   "experiment.variable"));
    CHECK(contains(validation_message({{"channel", {{"snr_db", "loud"}}}}), "channel.snr_db"));
    CHECK(contains(validation_message({{"experiment", {{"compare_schedules", 1}}}}),
                   "experiment.compare_schedules"));
}

TEST_CASE("configuration json round-trip", "[scenario][json]") {
    auto cfg = small_sweep();
    cfg.snr_db = {3.0, 7.0};
    cfg.weights = {1.0, 2.0};
    cfg.csv_path = "out.csv";
    cfg.schedule = ScheduleKind::Asynchronous;
    cfg.max_delay = 2;
    cfg.window = 4;
    CHECK(config_from_json(to_json(cfg)) == cfg);
    CHECK(config_from_json(Json::parse(to_json(cfg).dump())) == cfg);
}

TEST_CASE("parse errors carry a location", "[scenario][errors]") {
    const auto path = temp_file("iwfa_bad_scenario.json", "{\n  \"seed\": 1,\n  \"run\": {\n");
    try {
        (void)parse_config(path.string());
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Parse);
        CHECK(contains(e.what(), "line"));
    }
    std::filesystem::remove(path);
}

TEST_CASE("missing files are io errors naming the path", "[scenario][errors]") {
    const std::string path = "/nonexistent/dir/scenario.json";
    try {
        (void)parse_config(path);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Io);
        CHECK(contains(e.what(), path));
    }
    try {
        write_text_file("/nonexistent/dir/out.csv", "x");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Io);
        CHECK(contains(e.what(), "/nonexistent/dir/out.csv"));
    }
}

TEST_CASE("realization seeds are shared across sweep values", "[scenario]") {
    const auto cfg = small_sweep();
    const auto a = realization_spec(cfg, 1.0, 2, GameMode::Siso);
    const auto b = realization_spec(cfg, 4.0, 2, GameMode::Siso);
    CHECK(a.seed == b.seed);
    CHECK(a.distances(0, 1) == 1.0);
    CHECK(b.distances(0, 1) == 4.0);
    CHECK(b.distances(1, 1) == 1.0);
    CHECK(realization_spec(cfg, 1.0, 3, GameMode::Siso).seed != a.seed);
}

TEST_CASE("sweeps are deterministic", "[scenario]") {
    const auto cfg = small_sweep();
    const auto a = run_sweep(cfg);
    const auto b = run_sweep(cfg);
    CHECK(format_csv(a) == format_csv(b));
    CHECK(format_raw_csv(a) == format_raw_csv(b));
    auto other = cfg;
    other.seed = 10;
    CHECK(format_raw_csv(run_sweep(other)) != format_raw_csv(a));
}

TEST_CASE("sweep output has one row per point and mode", "[scenario]") {
    const auto cfg = small_sweep();
    const auto result = run_sweep(cfg);
    REQUIRE(result.points.size() == 4);
    REQUIRE(result.raw.size() == 12);
    const auto rows = lines(format_csv(result));
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] ==
          "sweep_value,mode,mean_sum_rate_bits,stderr,frac_unique,mean_iters_sequential,"
          "mean_iters_simultaneous,mean_iters_async");
    CHECK(rows[1].rfind("1,siso,", 0) == 0);
    CHECK(rows[2].rfind("1,mimo_wideband_2x2,", 0) == 0);
    CHECK(rows[3].rfind("4,siso,", 0) == 0);
    for (const auto& p : result.points) {
        for (const auto& m : p.mean_iters) CHECK(m.has_value());
        CHECK(p.frac_unique >= 0.0);
        CHECK(p.frac_unique <= 1.0);
    }
    for (const auto& r : result.raw) {
        for (long it : r.iters_by_kind) CHECK(it >= 1);
    }
    CHECK(lines(format_raw_csv(result)).size() == 13);
}

TEST_CASE("summary rows agree with the raw records", "[scenario]") {
    const auto cfg = small_sweep();
    const auto result = run_sweep(cfg);
    for (std::size_t p = 0; p < result.points.size(); ++p) {
        double sum = 0.0;
        double unique = 0.0;
        for (int k = 0; k < cfg.realizations; ++k) {
            const auto& r = result.raw[p * static_cast<std::size_t>(cfg.realizations) + static_cast<std::size_t>(k)];
            CHECK(r.mode == result.points[p].mode);
            CHECK(r.sweep_value == result.points[p].sweep_value);
            sum += r.sum_rate_bits;
            unique += r.unique ? 1.0 : 0.0;
        }
        const double n = cfg.realizations;
        CHECK(std::abs(result.points[p].mean_sum_rate_bits - sum / n) <= 1e-12);
        CHECK(result.points[p].frac_unique == unique / n);
    }
}

TEST_CASE("csv numbers use twelve significant digits", "[scenario]") {
    ExperimentResult r;
    ExperimentPoint p;
    p.sweep_value = 0.5;
    p.mode = "siso";
    p.realizations = 1;
    p.mean_sum_rate_bits = 1.0 / 3.0;
    p.stderr_sum_rate = 0.0;
    p.frac_unique = 1.0;
    p.mean_iters[1] = 12.5;
    r.points.push_back(p);
    const auto rows = lines(format_csv(r));
    REQUIRE(rows.size() == 2);
    CHECK(rows[1] == "0.5,siso,0.333333333333,0,1,nan,12.5,nan");
}

TEST_CASE("an empty result writes only the header", "[scenario]") {
    const ExperimentResult empty;
    CHECK(lines(format_csv(empty)).size() == 1);
    const auto path = std::filesystem::temp_directory_path() / "iwfa_empty.csv";
    emit(empty, OutputFormat::Csv, path.string());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == format_csv(empty));
    std::filesystem::remove(path);
    CHECK(to_json(empty)["points"].empty());
}

TEST_CASE("a sweep without a variable yields a single point", "[scenario]") {
    ScenarioConfig cfg;
    cfg.num_carriers = 8;
    cfg.tap_count = 2;
    cfg.realizations = 2;
    const auto result = run_sweep(cfg);
    REQUIRE(result.points.size() == 1);
    CHECK(std::isnan(result.points[0].sweep_value));
    CHECK(lines(format_csv(result))[1].rfind("nan,siso,", 0) == 0);
    CHECK(to_json(result)["points"][0]["sweep_value"].is_null());
}

TEST_CASE("aggregation rejects records that do not tile the sweep", "[scenario][errors]") {
    ScenarioConfig cfg;
    cfg.realizations = 2;
    std::vector<RealizationRecord> raw(3);
    CHECK_THROWS_AS(aggregate(raw, cfg), Error);
}
