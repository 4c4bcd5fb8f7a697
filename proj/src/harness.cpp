#include "irsoff/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "irsoff/matching.hpp"
#include "irsoff/offload.hpp"
#include "irsoff/rng.hpp"
#include "irsoff/ssca.hpp"

namespace irsoff {

CsiOverhead csi_overhead(SchemeId scheme, int num_task_users, int num_helpers, int num_elements,
                         int slots_per_frame, int bits_per_coefficient) {
    if (num_task_users < 0 || num_helpers < 0 || num_elements < 0 || slots_per_frame < 1 ||
        bits_per_coefficient < 1) {
        throw std::invalid_argument("csi_overhead: counts must be non-negative, T_s and bits >= 1");
    }
    const auto I = static_cast<std::uint64_t>(num_task_users);
    const auto J = static_cast<std::uint64_t>(num_helpers);
    const auto M = static_cast<std::uint64_t>(num_elements);
    const auto Ts = static_cast<std::uint64_t>(slots_per_frame);

    CsiOverhead out;
    switch (scheme) {
        case SchemeId::ProposedTts:
        case SchemeId::MaxToMaxTts:
            out.coefficients_per_frame = Ts * I * J + I * M;
            break;
        case SchemeId::Sts:
            out.coefficients_per_frame = Ts * (I * J + I * M);
            break;
        case SchemeId::RandomIrs:
        case SchemeId::NoIrs:
            out.coefficients_per_frame = Ts * I * J;
            break;
    }
    out.bits_per_frame = out.coefficients_per_frame * static_cast<std::uint64_t>(bits_per_coefficient);
    return out;
}

namespace {

// Coefficients estimated in one slot; summing over a frame's slots
// reproduces csi_overhead exactly.
std::uint64_t slot_csi_coefficients(SchemeId scheme, int num_task_users, int num_helpers,
                                    int num_elements, int slot, int slots_per_frame) {
    const auto I = static_cast<std::uint64_t>(num_task_users);
    const auto J = static_cast<std::uint64_t>(num_helpers);
    const auto M = static_cast<std::uint64_t>(num_elements);
    std::uint64_t count = I * J;  // effective coefficients, every slot
    switch (scheme) {
        case SchemeId::ProposedTts:
        case SchemeId::MaxToMaxTts:
            if (slot == slots_per_frame - 1) count += I * M;  // one reflected snapshot per frame
            break;
        case SchemeId::Sts:
            count += I * M;  // reflected CSI re-estimated every slot
            break;
        case SchemeId::RandomIrs:
        case SchemeId::NoIrs:
            break;
    }
    return count;
}

struct SlotOutcome {
    std::vector<int> assignment;
    double weighted_delay_s = 0.0;
    std::vector<PairRecord> pairs;
};

SlotOutcome settle_slot(std::span<const TaskUserProfile> users,
                        std::span<const HelperProfile> helpers, const EffectiveChannel& eff,
                        std::vector<int> assignment, double bandwidth_hz) {
    SlotOutcome out;
    out.pairs.reserve(users.size());
    for (std::size_t i = 0; i < users.size(); ++i) {
        const int j = assignment[i];
        const TaskUserProfile& u = users[i];
        const HelperProfile& h = helpers[static_cast<std::size_t>(j)];
        double rate = 0.0;
        if (!h.is_blank && h.helper_cpu_hz > 0.0) {
            rate = rate_bps(u.tx_power_w, eff.at(static_cast<int>(i), j), h.noise_power_w,
                            bandwidth_hz);
        }
        const double rho = optimal_ratio(u.cycles_per_bit, u.local_cpu_hz, h.helper_cpu_hz, rate);
        const PairDelay d =
            pair_delay(u.task_bits, u.cycles_per_bit, u.local_cpu_hz, h.helper_cpu_hz, rate, rho);
        out.weighted_delay_s += u.weight * d.total_s;
        PairRecord rec;
        rec.user = static_cast<int>(i);
        rec.helper = j;
        rec.ratio = d.ratio;
        rec.rate_bps = d.rate_bps;
        rec.local_delay_s = d.local_delay_s;
        rec.offload_delay_s = d.offload_delay_s;
        rec.delay_s = d.total_s;
        out.pairs.push_back(rec);
    }
    out.assignment = std::move(assignment);
    return out;
}

}  // namespace

TrialResult run_trial(const ScenarioConfig& cfg, SchemeId scheme, int trial_index,
                      bool keep_slots) {
    const auto t_start = std::chrono::steady_clock::now();
    const std::uint64_t seed = trial_seed(cfg.rng_seed, trial_index);

    Materialized world = materialize(cfg, seed);
    world.helpers = pad_blank_users(std::move(world.helpers), cfg.num_task_users,
                                    cfg.noise_power_w,
                                    Vec3{cfg.helper_circle_x, cfg.helper_circle_y, cfg.user_height});
    const std::span<const TaskUserProfile> users(world.users);
    const std::span<const HelperProfile> helpers(world.helpers);
    const int num_elements = cfg.num_elements;

    TrialResult out;
    out.scheme = scheme;
    out.trial_index = trial_index;
    out.seed = seed;
    out.frame_mean_delay_s.reserve(static_cast<std::size_t>(cfg.frames));

    // Long-timescale phase state; only the adaptive schemes consult it.
    BeamformerState beam(num_elements, cfg.ssca);
    const StepSchedules schedules =
        make_step_schedules(cfg.ssca.rho_exponent, cfg.ssca.gamma_exponent);
    std::vector<double> sts_theta(static_cast<std::size_t>(num_elements), 0.0);
    std::vector<double> fixed_theta;
    if (scheme == SchemeId::RandomIrs) {
        fixed_theta = random_irs_phases(seed, num_elements);
    }

    double delay_sum = 0.0;
    ChannelSample sample;            // survives the slot loop for the frame-end update
    std::vector<int> last_assignment;

    for (int frame = 0; frame < cfg.frames; ++frame) {
        double frame_sum = 0.0;
        for (int slot = 0; slot < cfg.slots_per_frame; ++slot) {
            sample = draw_slot_channels(world, cfg, SlotKey{seed, frame, slot});

            SlotOutcome outcome;
            if (scheme == SchemeId::Sts) {
                StsSlotResult sts = sts_slot(sts_theta, users, helpers, sample,
                                             cfg.bandwidth_hz, cfg.sts);
                sts_theta = std::move(sts.theta);
                const EffectiveChannel eff =
                    effective_channels(sample, phases_to_vector(sts_theta));
                outcome = settle_slot(users, helpers, eff, sts.matching.assignment,
                                      cfg.bandwidth_hz);
            } else {
                std::vector<cplx> phi;
                switch (scheme) {
                    case SchemeId::ProposedTts:
                    case SchemeId::MaxToMaxTts:
                        phi = beam.phase_vector();
                        break;
                    case SchemeId::RandomIrs:
                        phi = phases_to_vector(fixed_theta);
                        break;
                    default:
                        break;  // NoIrs: empty, direct links only
                }
                const EffectiveChannel eff = effective_channels(sample, phi);
                std::vector<int> assignment;
                if (scheme == SchemeId::MaxToMaxTts) {
                    assignment = max_to_max_matching(users, helpers);
                } else {
                    const std::vector<double> costs =
                        reduced_delay_costs(users, helpers, eff, cfg.bandwidth_hz);
                    assignment = solve_assignment(costs, static_cast<int>(users.size()),
                                                  static_cast<int>(helpers.size()))
                                     .assignment;
                }
                outcome = settle_slot(users, helpers, eff, std::move(assignment),
                                      cfg.bandwidth_hz);
            }

            frame_sum += outcome.weighted_delay_s;
            const std::uint64_t csi = slot_csi_coefficients(
                scheme, cfg.num_task_users, cfg.num_helpers, num_elements, slot,
                cfg.slots_per_frame);
            out.csi_coefficients += csi;
            last_assignment = outcome.assignment;
            if (keep_slots) {
                SlotMetrics sm;
                sm.frame = frame;
                sm.slot = slot;
                sm.weighted_delay_s = outcome.weighted_delay_s;
                sm.csi_coefficients = csi;
                sm.pairs = std::move(outcome.pairs);
                out.slots.push_back(std::move(sm));
            }
        }
        delay_sum += frame_sum;
        out.frame_mean_delay_s.push_back(frame_sum / cfg.slots_per_frame);

        // Frame boundary: fold the freshest sample into the long-term design.
        if (scheme == SchemeId::ProposedTts || scheme == SchemeId::MaxToMaxTts) {
            const std::vector<GradientTerm> terms =
                matched_terms(users, helpers, sample, last_assignment);
            const std::vector<double> grad =
                sample_gradient(beam.theta(), terms, cfg.bandwidth_hz);
            beam.advance(grad, schedules);
        }
    }

    const double total_slots = static_cast<double>(cfg.frames) * cfg.slots_per_frame;
    out.mean_delay_s = delay_sum / total_slots;
    out.csi_bits = out.csi_coefficients * static_cast<std::uint64_t>(cfg.bits_per_coefficient);
    switch (scheme) {
        case SchemeId::ProposedTts:
        case SchemeId::MaxToMaxTts:
            out.final_theta.assign(beam.theta().begin(), beam.theta().end());
            break;
        case SchemeId::Sts:
            out.final_theta = sts_theta;
            break;
        case SchemeId::RandomIrs:
            out.final_theta = fixed_theta;
            break;
        case SchemeId::NoIrs:
            break;
    }
    out.wall_clock_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return out;
}

RunResult run_trials_serial(const ScenarioConfig& cfg, SchemeId scheme, bool keep_slots) {
    RunResult run;
    run.scheme = scheme;
    run.trials.resize(static_cast<std::size_t>(cfg.trials));
    for (int t = 0; t < cfg.trials; ++t) {
        run.trials[static_cast<std::size_t>(t)] = run_trial(cfg, scheme, t, keep_slots);
    }
    double sum = 0.0;
    for (const TrialResult& tr : run.trials) sum += tr.mean_delay_s;
    run.mean_delay_s = cfg.trials > 0 ? sum / cfg.trials : 0.0;
    return run;
}

RunResult run_trials(const ScenarioConfig& cfg, SchemeId scheme, bool keep_slots) {
    if (!cfg.parallel) {
        return run_trials_serial(cfg, scheme, keep_slots);
    }
    RunResult run;
    run.scheme = scheme;
    run.trials.resize(static_cast<std::size_t>(cfg.trials));
    // Trials are independent; each iteration writes only its own slot.
#pragma omp parallel for schedule(dynamic, 1)
    for (int t = 0; t < cfg.trials; ++t) {
        run.trials[static_cast<std::size_t>(t)] = run_trial(cfg, scheme, t, keep_slots);
    }
    double sum = 0.0;
    for (const TrialResult& tr : run.trials) sum += tr.mean_delay_s;
    run.mean_delay_s = cfg.trials > 0 ? sum / cfg.trials : 0.0;
    return run;
}

Aggregate aggregate_mean_delay(const RunResult& run) {
    Aggregate agg;
    agg.count = static_cast<int>(run.trials.size());
    if (agg.count == 0) return agg;
    double sum = 0.0;
    for (const TrialResult& tr : run.trials) sum += tr.mean_delay_s;
    agg.mean = sum / agg.count;
    if (agg.count > 1) {
        double ss = 0.0;
        for (const TrialResult& tr : run.trials) {
            const double d = tr.mean_delay_s - agg.mean;
            ss += d * d;
        }
        agg.stderr_mean = std::sqrt(ss / (agg.count - 1)) / std::sqrt(double(agg.count));
    }
    return agg;
}

std::vector<double> mean_frame_series(const RunResult& run) {
    if (run.trials.empty()) return {};
    const std::size_t frames = run.trials.front().frame_mean_delay_s.size();
    std::vector<double> series(frames, 0.0);
    for (const TrialResult& tr : run.trials) {
        if (tr.frame_mean_delay_s.size() != frames) {
            throw std::logic_error("mean_frame_series: ragged frame series");
        }
        for (std::size_t f = 0; f < frames; ++f) series[f] += tr.frame_mean_delay_s[f];
    }
    for (double& v : series) v /= static_cast<double>(run.trials.size());
    return series;
}

SweepAxis sweep_axis_from_string(const std::string& name) {
    if (name == "elements" || name == "M") return SweepAxis::Elements;
    if (name == "irs-y" || name == "y_I" || name == "yI") return SweepAxis::IrsY;
    if (name == "helpers" || name == "J") return SweepAxis::Helpers;
    if (name == "frames") return SweepAxis::Frames;
    throw std::invalid_argument("unknown sweep axis: " + name +
                                " (expected elements/M, irs-y/y_I, helpers/J, or frames)");
}

std::string to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Elements: return "elements";
        case SweepAxis::IrsY: return "irs-y";
        case SweepAxis::Helpers: return "helpers";
        case SweepAxis::Frames: return "frames";
    }
    throw std::invalid_argument("to_string: unknown sweep axis");
}

ScenarioConfig apply_axis(ScenarioConfig cfg, SweepAxis axis, double value) {
    switch (axis) {
        case SweepAxis::Elements:
            cfg.num_elements = static_cast<int>(std::llround(value));
            break;
        case SweepAxis::IrsY:
            cfg.irs_y = value;
            break;
        case SweepAxis::Helpers:
            cfg.num_helpers = static_cast<int>(std::llround(value));
            break;
        case SweepAxis::Frames:
            cfg.frames = static_cast<int>(std::llround(value));
            break;
    }
    return validate(cfg);
}

std::vector<SweepPoint> run_sweep(const ScenarioConfig& cfg, SweepAxis axis,
                                  const std::vector<double>& values,
                                  const std::vector<SchemeId>& schemes, bool keep_slots) {
    std::vector<SweepPoint> points;
    points.reserve(values.size());
    for (double value : values) {
        const ScenarioConfig point_cfg = apply_axis(cfg, axis, value);
        SweepPoint point;
        point.value = value;
        point.runs.reserve(schemes.size());
        for (SchemeId scheme : schemes) {
            point.runs.push_back(run_trials(point_cfg, scheme, keep_slots));
        }
        points.push_back(std::move(point));
    }
    return points;
}

}  // namespace irsoff
