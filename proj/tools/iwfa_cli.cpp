// SPDX-License-Identifier: Apache-2.0
// Command-line front end: scenario sweeps, uniqueness certificates, single best responses,
// channel generation and traced runs.

#include "iwfa/channel_model.hpp"
#include "iwfa/engine.hpp"
#include "iwfa/equilibrium.hpp"
#include "iwfa/game.hpp"
#include "iwfa/scenario.hpp"
#include "iwfa/serialization.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace iwfa;

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

struct Globals {
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "csv";
};

void write_output(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
    } else {
        write_text_file(g.out, text);
    }
}

OutputFormat output_format(const Globals& g) {
    return g.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
}

int cmd_run(const Globals& g, const std::string& scenario_path, const std::string& raw_path) {
    auto cfg = parse_config(scenario_path);
    if (g.seed) cfg.seed = *g.seed;
    const auto result = run_sweep(cfg);
    const std::string text = output_format(g) == OutputFormat::Csv
                                 ? format_csv(result)
                                 : to_json(result).dump(2) + "\n";
    Globals sink = g;
    if (sink.out.empty()) sink.out = cfg.csv_path;
    write_output(sink, text);
    const std::string raw = raw_path.empty() ? cfg.raw_path : raw_path;
    if (!raw.empty()) write_text_file(raw, format_raw_csv(result));
    return 0;
}

EquilibriumReport certify(const AnyChannel& ch) {
    if (const auto* siso = std::get_if<SisoChannelSet>(&ch)) {
        return certify_uniqueness(build_s_max(apply_gap(*siso)));
    }
    return certify_uniqueness(build_s_mimo(apply_gap(std::get<MimoChannelSet>(ch))));
}

int cmd_certify(const Globals& g, const std::string& channel_path) {
    const auto report = certify(channel_from_json(read_json_file(channel_path)));
    if (output_format(g) == OutputFormat::Json) {
        write_output(g, to_json(report).dump(2) + "\n");
        return 0;
    }
    std::ostringstream os;
    os.precision(17);
    os << "kind,spectral_radius,unique,weighted_norm,c2,c3,c2_unit,c3_unit\n";
    auto opt_bool = [](const std::optional<bool>& b) { return b ? (*b ? "1" : "0") : "nan"; };
    os << to_string(report.matrix.kind) << ',' << report.spectral_radius << ','
       << (report.unique ? 1 : 0) << ',';
    if (report.weighted_norm) {
        os << *report.weighted_norm;
    } else {
        os << "nan";
    }
    os << ',' << opt_bool(report.c2) << ',' << opt_bool(report.c3) << ','
       << (report.c2_unit ? 1 : 0) << ',' << (report.c3_unit ? 1 : 0) << '\n';
    write_output(g, os.str());
    return 0;
}

int cmd_wf(const Globals& g, const std::string& channel_path, int user,
           const std::string& profile_path) {
    const auto any = channel_from_json(read_json_file(channel_path));
    Json out;
    if (const auto* raw = std::get_if<SisoChannelSet>(&any)) {
        const auto ch = apply_gap(*raw);
        const SisoGame game(ch);
        if (user < 0 || user >= game.num_users()) throw Error(ErrorCode::Validation, "--user out of range");
        auto profile = profile_path.empty() ? game.uniform_profile()
                                            : power_profile_from_json(read_json_file(profile_path));
        const auto res = siso_waterfill(ch, user, profile);
        profile.at(static_cast<std::size_t>(user)) = res.allocation;
        out = {{"user", user},
               {"allocation", to_json(res.allocation)},
               {"waterlevel", res.waterlevel},
               {"active_set", res.active_set},
               {"rate_bits", rate_bits(ch, user, profile)}};
    } else {
        const auto ch = apply_gap(std::get<MimoChannelSet>(any));
        const MimoGame game(ch);
        if (user < 0 || user >= game.num_users()) throw Error(ErrorCode::Validation, "--user out of range");
        auto profile = profile_path.empty()
                           ? game.uniform_profile()
                           : covariance_profile_from_json(read_json_file(profile_path));
        const auto res = mimo_waterfill(ch, user, profile);
        profile.at(static_cast<std::size_t>(user)) = res.covariance;
        out = {{"user", user},
               {"covariance", to_json(res.covariance)},
               {"waterlevel", res.waterlevel},
               {"active_set", res.active_set},
               {"rate_bits", rate_bits(ch, user, profile)}};
    }
    write_output(g, out.dump(2) + "\n");
    return 0;
}

struct GenOptions {
    std::string mode = "siso_freq_selective";
    int users = 2;
    int carriers = 16;
    int antennas = 2;
    int taps = 6;
    double cross_distance = 1.0;
    double snr_db = 5.0;
    double path_loss_exponent = 2.5;
};

int cmd_gen(const Globals& g, const GenOptions& o) {
    const GenMode mode = gen_mode_from_string(o.mode);
    const auto spec = symmetric_spec(o.users, o.cross_distance, o.snr_db, g.seed.value_or(0), mode,
                                     o.path_loss_exponent, o.taps);
    const Json j = mode == GenMode::SisoFreqSelective
                       ? to_json(generate_siso(spec, o.carriers))
                       : to_json(generate_mimo(spec, o.antennas, o.carriers));
    write_output(g, j.dump() + "\n");
    return 0;
}

struct IterateOptions {
    std::string schedule = "simultaneous";
    int max_delay = 0;
    int window = 0;
    double tol = 1e-6;
    long max_iter = 10000;
    bool profiles = false;
};

template <class Game>
std::string traced_run(const Globals& g, const Game& game, const IterateOptions& o) {
    ScheduleParams params;
    params.max_delay = o.max_delay;
    params.window = o.window;
    params.seed = g.seed.value_or(0);
    RunConfig rc;
    rc.tol = o.tol;
    rc.max_iter = o.max_iter;
    rc.record_profiles = o.profiles;
    const auto trace = run(
        game, make_schedule(schedule_kind_from_string(o.schedule), game.num_users(), params), rc);
    if (output_format(g) == OutputFormat::Json) return to_json(trace, o.profiles).dump(2) + "\n";
    std::ostringstream os;
    write_trace_csv(trace, os);
    return os.str();
}

int cmd_iterate(const Globals& g, const std::string& channel_path, const IterateOptions& o) {
    const auto any = channel_from_json(read_json_file(channel_path));
    std::string text;
    if (const auto* raw = std::get_if<SisoChannelSet>(&any)) {
        const auto ch = apply_gap(*raw);
        text = traced_run(g, SisoGame(ch), o);
    } else {
        const auto ch = apply_gap(std::get<MimoChannelSet>(any));
        text = traced_run(g, MimoGame(ch), o);
    }
    write_output(g, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Iterative waterfilling simulator for Gaussian interference channels"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    std::uint64_t seed = 0;
    auto* seed_opt = app.add_option("--seed", seed, "Master seed (overrides the scenario file)");
    app.add_option("--out", g.out, "Output path (stdout when omitted)");
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));

    std::string scenario_path;
    std::string raw_path;
    auto* run_cmd = app.add_subcommand("run", "Run a scenario sweep");
    run_cmd->add_option("scenario", scenario_path, "Scenario file")->required();
    run_cmd->add_option("--raw", raw_path, "Per-realization dump path");

    std::string channel_path;
    auto* certify_cmd = app.add_subcommand("certify", "Print the uniqueness report of a channel");
    certify_cmd->add_option("channel", channel_path, "Channel file")->required();

    int user = 0;
    std::string profile_path;
    auto* wf_cmd = app.add_subcommand("wf", "Evaluate one best response");
    wf_cmd->add_option("channel", channel_path, "Channel file")->required();
    wf_cmd->add_option("--user", user, "User index");
    wf_cmd->add_option("--profile", profile_path, "Strategy profile file (uniform when omitted)");

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a random channel file");
    gen_cmd->add_option("--mode", gen.mode, "siso_freq_selective | mimo_flat | mimo_wideband");
    gen_cmd->add_option("--users", gen.users, "Number of links");
    gen_cmd->add_option("--carriers", gen.carriers, "Number of carriers");
    gen_cmd->add_option("--antennas", gen.antennas, "Antennas per user (MIMO)");
    gen_cmd->add_option("--taps", gen.taps, "Channel taps");
    gen_cmd->add_option("--cross-distance", gen.cross_distance, "Cross-link distance");
    gen_cmd->add_option("--snr-db", gen.snr_db, "SNR in dB");
    gen_cmd->add_option("--path-loss-exponent", gen.path_loss_exponent, "Path-loss exponent");

    IterateOptions it;
    auto* it_cmd = app.add_subcommand("iterate", "Run iterative waterfilling on a channel file");
    it_cmd->add_option("channel", channel_path, "Channel file")->required();
    it_cmd->add_option("--schedule", it.schedule, "sequential | simultaneous | asynchronous");
    it_cmd->add_option("--max-delay", it.max_delay, "Maximum delay (asynchronous)");
    it_cmd->add_option("--window", it.window, "Update window (asynchronous)");
    it_cmd->add_option("--tol", it.tol, "Stopping tolerance");
    it_cmd->add_option("--max-iter", it.max_iter, "Iteration cap");
    it_cmd->add_flag("--profiles", it.profiles, "Include full profiles (json format)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }
    if (*seed_opt) g.seed = seed;

    try {
        if (*run_cmd) return cmd_run(g, scenario_path, raw_path);
        if (*certify_cmd) return cmd_certify(g, channel_path);
        if (*wf_cmd) return cmd_wf(g, channel_path, user, profile_path);
        if (*gen_cmd) return cmd_gen(g, gen);
        if (*it_cmd) return cmd_iterate(g, channel_path, it);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == ErrorCode::Io ? kExitIo : kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return 0;
}
