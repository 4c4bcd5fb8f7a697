#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "irsoff/baselines.hpp"
#include "irsoff/harness.hpp"
#include "irsoff/scenario.hpp"

using namespace irsoff;

namespace {

ScenarioConfig tiny_config() {
    ScenarioConfig cfg;
    cfg.num_task_users = 3;
    cfg.num_helpers = 4;
    cfg.num_elements = 4;
    cfg.slots_per_frame = 3;
    cfg.frames = 2;
    cfg.trials = 3;
    return validate(cfg);
}

bool same_trial(const TrialResult& a, const TrialResult& b) {
    return a.scheme == b.scheme && a.trial_index == b.trial_index && a.seed == b.seed &&
           a.mean_delay_s == b.mean_delay_s && a.frame_mean_delay_s == b.frame_mean_delay_s &&
           a.csi_coefficients == b.csi_coefficients && a.csi_bits == b.csi_bits &&
           a.final_theta == b.final_theta;
}

}  // namespace

TEST_CASE("per-frame CSI loads at the reference population") {
    // I = 8, J = 10, M = 40, T_s = 100, 8-bit coefficients
    CsiOverhead tts = csi_overhead(SchemeId::ProposedTts, 8, 10, 40, 100, 8);
    CHECK(tts.coefficients_per_frame == 8320);
    CHECK(tts.bits_per_frame == 66560);
    CsiOverhead m2m = csi_overhead(SchemeId::MaxToMaxTts, 8, 10, 40, 100, 8);
    CHECK(m2m.coefficients_per_frame == 8320);
    CsiOverhead sts = csi_overhead(SchemeId::Sts, 8, 10, 40, 100, 8);
    CHECK(sts.coefficients_per_frame == 40000);
    CHECK(sts.bits_per_frame == 320000);
    CsiOverhead rnd = csi_overhead(SchemeId::RandomIrs, 8, 10, 40, 100, 8);
    CsiOverhead no = csi_overhead(SchemeId::NoIrs, 8, 10, 40, 100, 8);
    CHECK(rnd.coefficients_per_frame == 8000);
    CHECK(no.coefficients_per_frame == 8000);
    CHECK(tts.coefficients_per_frame < sts.coefficients_per_frame);

    CHECK_THROWS_AS(csi_overhead(SchemeId::Sts, 8, 10, 40, 0, 8), std::invalid_argument);
    CHECK_THROWS_AS(csi_overhead(SchemeId::Sts, -1, 10, 40, 100, 8), std::invalid_argument);
}

TEST_CASE("slot-level CSI counts sum to the frame formula") {
    ScenarioConfig cfg = tiny_config();
    for (SchemeId scheme : all_schemes()) {
        CAPTURE(to_string(scheme));
        TrialResult tr = run_trial(cfg, scheme, 0, /*keep_slots=*/true);
        const CsiOverhead per_frame =
            csi_overhead(scheme, cfg.num_task_users, cfg.num_helpers, cfg.num_elements,
                         cfg.slots_per_frame, cfg.bits_per_coefficient);
        REQUIRE(tr.slots.size() ==
                static_cast<size_t>(cfg.frames) * static_cast<size_t>(cfg.slots_per_frame));
        std::uint64_t total = 0;
        for (int f = 0; f < cfg.frames; ++f) {
            std::uint64_t frame_sum = 0;
            for (int s = 0; s < cfg.slots_per_frame; ++s) {
                frame_sum += tr.slots[static_cast<size_t>(f * cfg.slots_per_frame + s)]
                                 .csi_coefficients;
            }
            CHECK(frame_sum == per_frame.coefficients_per_frame);
            total += frame_sum;
        }
        CHECK(tr.csi_coefficients == total);
        CHECK(tr.csi_bits == total * static_cast<std::uint64_t>(cfg.bits_per_coefficient));
    }
}

TEST_CASE("trials replay bit-identically") {
    ScenarioConfig cfg = tiny_config();
    for (SchemeId scheme : all_schemes()) {
        CAPTURE(to_string(scheme));
        TrialResult a = run_trial(cfg, scheme, 1, true);
        TrialResult b = run_trial(cfg, scheme, 1, true);
        CHECK(same_trial(a, b));
        REQUIRE(a.slots.size() == b.slots.size());
        for (size_t k = 0; k < a.slots.size(); ++k) {
            CHECK(a.slots[k].weighted_delay_s == b.slots[k].weighted_delay_s);
        }
    }
}

TEST_CASE("parallel and serial trial runners agree exactly") {
    ScenarioConfig cfg = tiny_config();
    cfg.trials = 5;
    for (SchemeId scheme : {SchemeId::ProposedTts, SchemeId::Sts, SchemeId::NoIrs}) {
        CAPTURE(to_string(scheme));
        RunResult par = run_trials(cfg, scheme, false);
        RunResult ser = run_trials_serial(cfg, scheme, false);
        REQUIRE(par.trials.size() == ser.trials.size());
        CHECK(par.mean_delay_s == ser.mean_delay_s);
        for (size_t t = 0; t < par.trials.size(); ++t) {
            CHECK(same_trial(par.trials[t], ser.trials[t]));
        }
    }
}

TEST_CASE("reported means re-derive from the slot records") {
    ScenarioConfig cfg = tiny_config();
    TrialResult tr = run_trial(cfg, SchemeId::ProposedTts, 0, true);
    double total = 0.0;
    for (int f = 0; f < cfg.frames; ++f) {
        double frame_sum = 0.0;
        for (int s = 0; s < cfg.slots_per_frame; ++s) {
            frame_sum += tr.slots[static_cast<size_t>(f * cfg.slots_per_frame + s)]
                             .weighted_delay_s;
        }
        CHECK(tr.frame_mean_delay_s[static_cast<size_t>(f)] ==
              doctest::Approx(frame_sum / cfg.slots_per_frame).epsilon(1e-12));
        total += frame_sum;
    }
    CHECK(tr.mean_delay_s ==
          doctest::Approx(total / (cfg.frames * cfg.slots_per_frame)).epsilon(1e-12));

    // slot weighted delays re-derive from their pair records
    for (const SlotMetrics& sm : tr.slots) {
        double sum = 0.0;
        for (const PairRecord& p : sm.pairs) sum += p.delay_s;  // weights are 1 here
        CHECK(sm.weighted_delay_s == doctest::Approx(sum).epsilon(1e-12));
    }
}

TEST_CASE("surplus task users compute locally on blank helpers") {
    ScenarioConfig cfg;
    cfg.num_task_users = 5;
    cfg.num_helpers = 3;
    cfg.num_elements = 2;
    cfg.slots_per_frame = 2;
    cfg.frames = 1;
    cfg.trials = 1;
    cfg = validate(cfg);

    TrialResult tr = run_trial(cfg, SchemeId::ProposedTts, 0, true);
    for (const SlotMetrics& sm : tr.slots) {
        REQUIRE(sm.pairs.size() == 5);
        int blanked = 0;
        for (const PairRecord& p : sm.pairs) {
            if (p.helper >= cfg.num_helpers) {
                // blank pad: fully local, no transmission
                ++blanked;
                CHECK(p.ratio == 0.0);
                CHECK(p.rate_bps == 0.0);
                CHECK(p.offload_delay_s == 0.0);
                CHECK(p.delay_s == p.local_delay_s);  // the whole task runs locally
            } else {
                CHECK(p.ratio > 0.0);
                CHECK(p.ratio < 1.0);
                CHECK(p.rate_bps > 0.0);
                // delay-equalizing split: both branches within numerical noise
                CHECK(p.local_delay_s == doctest::Approx(p.offload_delay_s).epsilon(1e-9));
            }
        }
        CHECK(blanked == 2);
    }
}

TEST_CASE("final phases reflect each scheme's design") {
    ScenarioConfig cfg = tiny_config();
    const std::uint64_t seed = trial_seed(cfg.rng_seed, 0);

    TrialResult no = run_trial(cfg, SchemeId::NoIrs, 0, false);
    CHECK(no.final_theta.empty());

    TrialResult rnd = run_trial(cfg, SchemeId::RandomIrs, 0, false);
    CHECK(rnd.final_theta == random_irs_phases(seed, cfg.num_elements));

    TrialResult tts = run_trial(cfg, SchemeId::ProposedTts, 0, false);
    CHECK(tts.final_theta.size() == static_cast<size_t>(cfg.num_elements));
    bool moved = false;
    for (double t : tts.final_theta) moved = moved || t != 0.0;
    CHECK(moved);  // two frame updates with nonzero gradients

    TrialResult sts = run_trial(cfg, SchemeId::Sts, 0, false);
    CHECK(sts.final_theta.size() == static_cast<size_t>(cfg.num_elements));
}

TEST_CASE("aggregate mean and standard error") {
    RunResult run;
    for (double v : {1.0, 2.0, 3.0}) {
        TrialResult tr;
        tr.mean_delay_s = v;
        run.trials.push_back(tr);
    }
    Aggregate agg = aggregate_mean_delay(run);
    CHECK(agg.count == 3);
    CHECK(agg.mean == doctest::Approx(2.0));
    CHECK(agg.stderr_mean == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));

    RunResult empty;
    Aggregate zero = aggregate_mean_delay(empty);
    CHECK(zero.count == 0);
    CHECK(zero.mean == 0.0);

    RunResult single;
    single.trials.push_back(TrialResult{});
    CHECK(aggregate_mean_delay(single).stderr_mean == 0.0);
}

TEST_CASE("frame series average across trials") {
    ScenarioConfig cfg = tiny_config();
    RunResult run = run_trials_serial(cfg, SchemeId::NoIrs, false);
    std::vector<double> series = mean_frame_series(run);
    REQUIRE(series.size() == static_cast<size_t>(cfg.frames));
    for (size_t f = 0; f < series.size(); ++f) {
        double sum = 0.0;
        for (const TrialResult& tr : run.trials) sum += tr.frame_mean_delay_s[f];
        CHECK(series[f] == doctest::Approx(sum / cfg.trials).epsilon(1e-12));
    }
    CHECK(mean_frame_series(RunResult{}).empty());
}

TEST_CASE("sweep axes rename, apply, and revalidate") {
    CHECK(sweep_axis_from_string("elements") == SweepAxis::Elements);
    CHECK(sweep_axis_from_string("M") == SweepAxis::Elements);
    CHECK(sweep_axis_from_string("irs-y") == SweepAxis::IrsY);
    CHECK(sweep_axis_from_string("y_I") == SweepAxis::IrsY);
    CHECK(sweep_axis_from_string("yI") == SweepAxis::IrsY);
    CHECK(sweep_axis_from_string("helpers") == SweepAxis::Helpers);
    CHECK(sweep_axis_from_string("J") == SweepAxis::Helpers);
    CHECK(sweep_axis_from_string("frames") == SweepAxis::Frames);
    CHECK_THROWS_AS(sweep_axis_from_string("power"), std::invalid_argument);
    for (SweepAxis a : {SweepAxis::Elements, SweepAxis::IrsY, SweepAxis::Helpers,
                        SweepAxis::Frames}) {
        CHECK(sweep_axis_from_string(to_string(a)) == a);
    }

    ScenarioConfig cfg = tiny_config();
    CHECK(apply_axis(cfg, SweepAxis::Elements, 16).num_elements == 16);
    CHECK(apply_axis(cfg, SweepAxis::IrsY, 50.0).irs_y == 50.0);
    CHECK(apply_axis(cfg, SweepAxis::Helpers, 2).num_helpers == 2);
    CHECK(apply_axis(cfg, SweepAxis::Frames, 7).frames == 7);
    CHECK_THROWS_AS(apply_axis(cfg, SweepAxis::Elements, -4), std::invalid_argument);
    CHECK_THROWS_AS(apply_axis(cfg, SweepAxis::Frames, 0), std::invalid_argument);
}

TEST_CASE("a zero-element IRS leaves every scheme on the direct links") {
    ScenarioConfig cfg = tiny_config();
    cfg.trials = 2;
    std::vector<SweepPoint> points =
        run_sweep(cfg, SweepAxis::Elements, {0.0},
                  {SchemeId::RandomIrs, SchemeId::NoIrs, SchemeId::ProposedTts}, false);
    REQUIRE(points.size() == 1);
    REQUIRE(points[0].runs.size() == 3);
    const RunResult& rnd = points[0].runs[0];
    const RunResult& no = points[0].runs[1];
    const RunResult& tts = points[0].runs[2];
    // with no reflecting surface the phase design is vacuous, so all
    // matching-based schemes coincide slot for slot
    for (size_t t = 0; t < rnd.trials.size(); ++t) {
        CHECK(rnd.trials[t].mean_delay_s == no.trials[t].mean_delay_s);
        CHECK(tts.trials[t].mean_delay_s == no.trials[t].mean_delay_s);
        CHECK(rnd.trials[t].frame_mean_delay_s == no.trials[t].frame_mean_delay_s);
    }
}

TEST_CASE("sweep points share fading across schemes by construction") {
    ScenarioConfig cfg = tiny_config();
    cfg.trials = 2;
    std::vector<SweepPoint> points = run_sweep(cfg, SweepAxis::Frames, {1.0, 2.0},
                                               {SchemeId::NoIrs}, false);
    REQUIRE(points.size() == 2);
    // frame 0 statistics are identical whether the run lasts 1 or 2 frames
    const RunResult& short_run = points[0].runs[0];
    const RunResult& long_run = points[1].runs[0];
    for (size_t t = 0; t < short_run.trials.size(); ++t) {
        CHECK(short_run.trials[t].frame_mean_delay_s[0] ==
              long_run.trials[t].frame_mean_delay_s[0]);
    }
}
