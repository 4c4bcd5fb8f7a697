#include "irsoff/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "irsoff/baselines.hpp"
#include "irsoff/config_file.hpp"
#include "irsoff/csv.hpp"
#include "irsoff/harness.hpp"
#include "irsoff/matching.hpp"

namespace irsoff {

namespace {

// Thrown after --help text has already been printed; maps to exit 0.
struct HelpShown {};

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

std::vector<SchemeId> resolve_schemes(const Command& cmd) {
    if (cmd.scheme_names.empty()) {
        if (cmd.kind == Command::Kind::Convergence) {
            return {SchemeId::ProposedTts};
        }
        return all_schemes();
    }
    std::vector<SchemeId> schemes;
    schemes.reserve(cmd.scheme_names.size());
    for (const std::string& name : cmd.scheme_names) {
        schemes.push_back(scheme_from_string(name));
    }
    return schemes;
}

// Shared output preamble: resolved config text, its fingerprint, and a
// manifest. Nothing here may vary between identical runs, so no clocks.

struct ManifestInfo {
    std::string subcommand;
    std::vector<std::string> files;
    std::vector<std::string> schemes;
    std::string axis;
    std::vector<double> values;
};

void write_manifest(const std::string& outdir, const ScenarioConfig& cfg,
                    const ManifestInfo& info) {
    const std::string config_text = dump_config(cfg);
    {
        std::ofstream out(join_path(outdir, "config.txt"), std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + join_path(outdir, "config.txt"));
        out << config_text;
    }
    nlohmann::json j;
    std::ostringstream hash;
    hash << "0x" << std::hex << fnv1a64(config_text);
    j["config_fnv1a64"] = hash.str();
    j["config_file"] = "config.txt";
    j["csv_schema"] = kCsvSchemaVersion;
    j["version"] = kToolVersion;
    j["subcommand"] = info.subcommand;
    j["seed"] = cfg.rng_seed;
    j["trials"] = cfg.trials;
    j["schemes"] = info.schemes;
    if (!info.axis.empty()) {
        j["axis"] = info.axis;
        j["values"] = info.values;
    }
    std::vector<std::string> files = info.files;
    files.push_back("config.txt");
    std::sort(files.begin(), files.end());
    j["files"] = files;

    const std::string path = join_path(outdir, "manifest.json");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing " + path);
}

std::vector<std::string> scheme_name_list(const std::vector<SchemeId>& schemes) {
    std::vector<std::string> names;
    names.reserve(schemes.size());
    for (SchemeId s : schemes) names.push_back(to_string(s));
    return names;
}

void emit_run(const Command& cmd, const ScenarioConfig& cfg) {
    const std::vector<SchemeId> schemes = resolve_schemes(cmd);
    ManifestInfo info;
    info.subcommand = "run";
    info.schemes = scheme_name_list(schemes);

    CsvWriter summary(join_path(cmd.outdir, "summary.csv"),
                      {"scheme", "trial", "seed", "mean_delay_s", "csi_coefficients", "csi_bits"});
    CsvWriter agg(join_path(cmd.outdir, "summary_agg.csv"),
                  {"scheme", "trials", "mean_delay_s", "stderr_mean_delay_s",
                   "csi_coefficients_per_trial", "csi_bits_per_trial"});
    info.files.push_back("summary.csv");
    info.files.push_back("summary_agg.csv");

    for (SchemeId scheme : schemes) {
        const RunResult run = run_trials(cfg, scheme, /*keep_slots=*/true);
        const std::string tag = to_string(scheme);

        CsvWriter slots(join_path(cmd.outdir, "slots_" + tag + ".csv"),
                        {"trial", "frame", "slot", "weighted_delay_s", "csi_coefficients"});
        CsvWriter pairs(join_path(cmd.outdir, "pairs_" + tag + ".csv"),
                        {"trial", "frame", "slot", "user", "helper", "ratio", "rate_bps",
                         "local_delay_s", "offload_delay_s", "delay_s"});
        CsvWriter frames(join_path(cmd.outdir, "frames_" + tag + ".csv"),
                         {"trial", "frame", "mean_delay_s"});
        info.files.push_back("slots_" + tag + ".csv");
        info.files.push_back("pairs_" + tag + ".csv");
        info.files.push_back("frames_" + tag + ".csv");

        for (const TrialResult& tr : run.trials) {
            const std::string trial = std::to_string(tr.trial_index);
            for (const SlotMetrics& sm : tr.slots) {
                slots.row({trial, std::to_string(sm.frame), std::to_string(sm.slot),
                           format_double(sm.weighted_delay_s),
                           std::to_string(sm.csi_coefficients)});
                for (const PairRecord& pr : sm.pairs) {
                    pairs.row({trial, std::to_string(sm.frame), std::to_string(sm.slot),
                               std::to_string(pr.user), std::to_string(pr.helper),
                               format_double(pr.ratio), format_double(pr.rate_bps),
                               format_double(pr.local_delay_s),
                               format_double(pr.offload_delay_s), format_double(pr.delay_s)});
                }
            }
            for (std::size_t f = 0; f < tr.frame_mean_delay_s.size(); ++f) {
                frames.row({trial, std::to_string(f), format_double(tr.frame_mean_delay_s[f])});
            }
            summary.row({tag, trial, std::to_string(tr.seed), format_double(tr.mean_delay_s),
                         std::to_string(tr.csi_coefficients), std::to_string(tr.csi_bits)});
        }
        const Aggregate a = aggregate_mean_delay(run);
        const std::uint64_t coeffs = run.trials.empty() ? 0 : run.trials.front().csi_coefficients;
        const std::uint64_t bits = run.trials.empty() ? 0 : run.trials.front().csi_bits;
        agg.row({tag, std::to_string(a.count), format_double(a.mean),
                 format_double(a.stderr_mean), std::to_string(coeffs), std::to_string(bits)});
        slots.close();
        pairs.close();
        frames.close();
        std::cout << tag << ": mean weighted delay " << format_double(a.mean) << " s over "
                  << a.count << " trials\n";
    }
    summary.close();
    agg.close();
    write_manifest(cmd.outdir, cfg, info);
}

void emit_convergence(const Command& cmd, const ScenarioConfig& cfg) {
    const std::vector<SchemeId> schemes = resolve_schemes(cmd);
    ManifestInfo info;
    info.subcommand = "convergence";
    info.schemes = scheme_name_list(schemes);

    std::vector<std::string> header = {"frame"};
    for (SchemeId s : schemes) header.push_back(to_string(s));

    std::vector<std::vector<double>> series;
    series.reserve(schemes.size());
    for (SchemeId scheme : schemes) {
        const RunResult run = run_trials(cfg, scheme, /*keep_slots=*/false);
        series.push_back(mean_frame_series(run));
        std::cout << to_string(scheme) << ": frame 0 "
                  << format_double(series.back().empty() ? 0.0 : series.back().front())
                  << " s, frame " << (cfg.frames - 1) << " "
                  << format_double(series.back().empty() ? 0.0 : series.back().back()) << " s\n";
    }

    CsvWriter out(join_path(cmd.outdir, "convergence.csv"), header);
    info.files.push_back("convergence.csv");
    for (int f = 0; f < cfg.frames; ++f) {
        std::vector<std::string> cells = {std::to_string(f)};
        for (const std::vector<double>& s : series) {
            cells.push_back(format_double(s[static_cast<std::size_t>(f)]));
        }
        out.row(cells);
    }
    out.close();
    write_manifest(cmd.outdir, cfg, info);
}

void emit_sweep(const Command& cmd, const ScenarioConfig& cfg) {
    if (cmd.values.empty()) {
        throw UsageError("sweep requires --values");
    }
    const std::vector<SchemeId> schemes = resolve_schemes(cmd);
    const SweepAxis axis = sweep_axis_from_string(cmd.axis);
    const std::string axis_tag = to_string(axis);

    ManifestInfo info;
    info.subcommand = "sweep";
    info.schemes = scheme_name_list(schemes);
    info.axis = axis_tag;
    info.values = cmd.values;

    const std::string by_trial_name = "sweep_" + axis_tag + ".csv";
    const std::string agg_name = "sweep_" + axis_tag + "_agg.csv";
    CsvWriter by_trial(join_path(cmd.outdir, by_trial_name),
                       {"axis", "value", "scheme", "trial", "mean_delay_s", "csi_coefficients",
                        "csi_bits"});
    CsvWriter agg(join_path(cmd.outdir, agg_name),
                  {"axis", "value", "scheme", "trials", "mean_delay_s", "stderr_mean_delay_s"});
    info.files.push_back(by_trial_name);
    info.files.push_back(agg_name);

    const std::vector<SweepPoint> points =
        run_sweep(cfg, axis, cmd.values, schemes, /*keep_slots=*/false);
    for (const SweepPoint& point : points) {
        for (std::size_t k = 0; k < schemes.size(); ++k) {
            const RunResult& run = point.runs[k];
            const std::string tag = to_string(schemes[k]);
            for (const TrialResult& tr : run.trials) {
                by_trial.row({axis_tag, format_double(point.value), tag,
                              std::to_string(tr.trial_index), format_double(tr.mean_delay_s),
                              std::to_string(tr.csi_coefficients), std::to_string(tr.csi_bits)});
            }
            const Aggregate a = aggregate_mean_delay(run);
            agg.row({axis_tag, format_double(point.value), tag, std::to_string(a.count),
                     format_double(a.mean), format_double(a.stderr_mean)});
            std::cout << axis_tag << "=" << format_double(point.value) << " " << tag << ": "
                      << format_double(a.mean) << " s\n";
        }
    }
    by_trial.close();
    agg.close();
    write_manifest(cmd.outdir, cfg, info);
}

void emit_overhead(const Command& cmd, const ScenarioConfig& cfg) {
    ManifestInfo info;
    info.subcommand = "overhead";
    info.schemes = scheme_name_list(all_schemes());

    CsvWriter out(join_path(cmd.outdir, "overhead.csv"),
                  {"scheme", "task_users", "helpers", "elements", "slots_per_frame",
                   "bits_per_coefficient", "coefficients_per_frame", "bits_per_frame"});
    info.files.push_back("overhead.csv");
    for (SchemeId scheme : all_schemes()) {
        const CsiOverhead oh =
            csi_overhead(scheme, cfg.num_task_users, cfg.num_helpers, cfg.num_elements,
                         cfg.slots_per_frame, cfg.bits_per_coefficient);
        out.row({to_string(scheme), std::to_string(cfg.num_task_users),
                 std::to_string(cfg.num_helpers), std::to_string(cfg.num_elements),
                 std::to_string(cfg.slots_per_frame), std::to_string(cfg.bits_per_coefficient),
                 std::to_string(oh.coefficients_per_frame), std::to_string(oh.bits_per_frame)});
        std::cout << to_string(scheme) << ": " << oh.coefficients_per_frame
                  << " coefficients/frame, " << oh.bits_per_frame << " bits/frame\n";
    }
    out.close();
    write_manifest(cmd.outdir, cfg, info);
}

// Rows of comma-separated costs; all rows must have equal width.
void run_match_debug(const Command& cmd) {
    std::ifstream in(cmd.cost_csv);
    if (!in) throw std::runtime_error("cannot open cost file: " + cmd.cost_csv);
    std::vector<double> costs;
    int rows = 0, cols = -1;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        int width = 0;
        while (std::getline(ss, cell, ',')) {
            try {
                costs.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw std::runtime_error("cost file row " + std::to_string(rows + 1) + " col " +
                                         std::to_string(width + 1) + ": '" + cell +
                                         "' is not a number");
            }
            ++width;
        }
        if (cols < 0) cols = width;
        if (width != cols) {
            throw std::runtime_error("ragged cost matrix at row " + std::to_string(rows));
        }
        ++rows;
    }
    if (rows == 0) throw std::runtime_error("empty cost matrix: " + cmd.cost_csv);

    const MatchingOutcome outcome = solve_assignment(costs, rows, cols);
    std::cout << "user,helper,cost\n";
    for (int i = 0; i < rows; ++i) {
        const int j = outcome.assignment[static_cast<std::size_t>(i)];
        std::cout << i << "," << j << ","
                  << format_double(costs[static_cast<std::size_t>(i) * cols + j]) << "\n";
    }
    std::cout << "total," << format_double(outcome.total_cost) << "\n";
}

}  // namespace

Command parse_cli(const std::vector<std::string>& args) {
    Command cmd;
    CLI::App app{"IRS-assisted D2D computation offloading simulator"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool with_schemes) {
        sub->add_option("--config", cmd.config_path, "INI-style config file");
        sub->add_option("--outdir", cmd.outdir, "output directory (created if missing)")
            ->capture_default_str();
        sub->add_option_function<std::uint64_t>(
            "--seed", [&cmd](const std::uint64_t& v) { cmd.seed = v; },
            "master RNG seed override");
        sub->add_option_function<int>(
            "--trials", [&cmd](const int& v) { cmd.trials = v; }, "trial count override");
        sub->add_flag("--serial", cmd.serial, "run trials sequentially");
        sub->add_option("--set", cmd.overrides,
                        "config override section.key=value (repeatable)");
        if (with_schemes) {
            sub->add_option("--scheme", cmd.scheme_names,
                            "scheme to run (repeatable): proposed-tts, sts, max-to-max-tts, "
                            "random-irs, no-irs");
        }
    };

    CLI::App* run = app.add_subcommand("run", "run schemes and export per-slot metrics");
    add_common(run, true);

    CLI::App* sweep = app.add_subcommand("sweep", "sweep one config axis across schemes");
    add_common(sweep, true);
    sweep->add_option("--axis", cmd.axis, "axis: elements (M), irs-y (y_I), helpers (J), frames")
        ->capture_default_str();
    sweep->add_option("--values", cmd.values, "comma-separated axis values")
        ->delimiter(',')
        ->required();

    CLI::App* conv = app.add_subcommand("convergence", "per-frame mean delay series");
    add_common(conv, true);

    CLI::App* overhead = app.add_subcommand("overhead", "per-frame CSI estimation load");
    add_common(overhead, false);

    CLI::App* match = app.add_subcommand("match-debug", "solve an assignment from a cost CSV");
    match->add_option("--cost-csv", cmd.cost_csv, "CSV of costs, users x helpers")->required();

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            app.exit(e);  // prints the requested help text
            throw HelpShown{};
        }
        throw UsageError(std::string(e.what()) + " (try --help)");
    }

    if (app.got_subcommand(run)) cmd.kind = Command::Kind::Run;
    else if (app.got_subcommand(sweep)) cmd.kind = Command::Kind::Sweep;
    else if (app.got_subcommand(conv)) cmd.kind = Command::Kind::Convergence;
    else if (app.got_subcommand(overhead)) cmd.kind = Command::Kind::Overhead;
    else cmd.kind = Command::Kind::MatchDebug;
    return cmd;
}

ScenarioConfig resolve_config(const Command& cmd) {
    ScenarioConfig cfg;
    if (!cmd.config_path.empty()) {
        cfg = load_config(cmd.config_path);
    }
    try {
        cfg = apply_overrides(cfg, cmd.overrides);
        if (cmd.seed) cfg.rng_seed = *cmd.seed;
        if (cmd.trials) cfg.trials = *cmd.trials;
        if (cmd.serial) cfg.parallel = false;
        return validate(cfg);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void run_command(const Command& cmd) {
    if (cmd.kind == Command::Kind::MatchDebug) {
        run_match_debug(cmd);
        return;
    }
    const ScenarioConfig cfg = resolve_config(cmd);
    std::error_code ec;
    std::filesystem::create_directories(cmd.outdir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory " + cmd.outdir + ": " +
                                 ec.message());
    }
    switch (cmd.kind) {
        case Command::Kind::Run: emit_run(cmd, cfg); break;
        case Command::Kind::Sweep: emit_sweep(cmd, cfg); break;
        case Command::Kind::Convergence: emit_convergence(cmd, cfg); break;
        case Command::Kind::Overhead: emit_overhead(cmd, cfg); break;
        case Command::Kind::MatchDebug: break;
    }
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

    try {
        const Command cmd = parse_cli(args);
        run_command(cmd);
        return 0;
    } catch (const HelpShown&) {
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace irsoff
