#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "irsoff/baselines.hpp"
#include "irsoff/channel.hpp"
#include "irsoff/scenario.hpp"

namespace irsoff {

// One matched pair's outcome in one slot, at the delay-equalizing split.
struct PairRecord {
    int user = -1;
    int helper = -1;
    double ratio = 0.0;
    double rate_bps = 0.0;
    double local_delay_s = 0.0;
    double offload_delay_s = 0.0;
    double delay_s = 0.0;  // max of the two branches
};

struct SlotMetrics {
    int frame = 0;
    int slot = 0;
    double weighted_delay_s = 0.0;        // sum_i w_i * delay_i
    std::uint64_t csi_coefficients = 0;   // estimated in this slot
    std::vector<PairRecord> pairs;
};

// One trial of one scheme. wall_clock_s is diagnostic only and must never
// reach a data file: emitted outputs are byte-reproducible across runs.
struct TrialResult {
    SchemeId scheme = SchemeId::ProposedTts;
    int trial_index = 0;
    std::uint64_t seed = 0;
    double mean_delay_s = 0.0;                // over all T_f * T_s slots
    std::vector<double> frame_mean_delay_s;   // length T_f
    std::uint64_t csi_coefficients = 0;
    std::uint64_t csi_bits = 0;
    double wall_clock_s = 0.0;
    std::vector<double> final_theta;          // phases after the last frame
    std::vector<SlotMetrics> slots;           // filled only when keep_slots
};

struct RunResult {
    SchemeId scheme = SchemeId::ProposedTts;
    std::vector<TrialResult> trials;
    double mean_delay_s = 0.0;  // mean of per-trial means
};

// Per-frame CSI estimation load. Long-timescale schemes refresh effective
// coefficients every slot and full reflected CSI once per frame; the
// short-timescale scheme refreshes everything every slot; schemes that never
// adapt phases only track effective coefficients.
struct CsiOverhead {
    std::uint64_t coefficients_per_frame = 0;
    std::uint64_t bits_per_frame = 0;
};
CsiOverhead csi_overhead(SchemeId scheme, int num_task_users, int num_helpers, int num_elements,
                         int slots_per_frame, int bits_per_coefficient);

// Runs one scheme for one trial: materializes the population, then walks
// frames and slots drawing fading, matching users to helpers, and splitting
// tasks; phase-adaptive schemes update their design at frame boundaries.
// keep_slots retains per-slot pair detail (memory scales with T_f * T_s * I).
TrialResult run_trial(const ScenarioConfig& cfg, SchemeId scheme, int trial_index,
                      bool keep_slots);

// All trials of one scheme. The parallel variant distributes trials across
// threads; results are positionally identical to the serial variant.
RunResult run_trials(const ScenarioConfig& cfg, SchemeId scheme, bool keep_slots);
RunResult run_trials_serial(const ScenarioConfig& cfg, SchemeId scheme, bool keep_slots);

// Mean and standard error of per-trial mean delays.
struct Aggregate {
    double mean = 0.0;
    double stderr_mean = 0.0;
    int count = 0;
};
Aggregate aggregate_mean_delay(const RunResult& run);

// Per-frame average of frame_mean_delay_s across trials; length T_f.
std::vector<double> mean_frame_series(const RunResult& run);

// Sweep one numeric config axis. Each point revalidates the adjusted config
// and runs every requested scheme with the same master seed, so points and
// schemes share fading realizations trial-for-trial.
struct SweepPoint {
    double value = 0.0;
    std::vector<RunResult> runs;  // one per scheme, in request order
};
enum class SweepAxis { Elements, IrsY, Helpers, Frames };
SweepAxis sweep_axis_from_string(const std::string& name);
std::string to_string(SweepAxis axis);
ScenarioConfig apply_axis(ScenarioConfig cfg, SweepAxis axis, double value);
std::vector<SweepPoint> run_sweep(const ScenarioConfig& cfg, SweepAxis axis,
                                  const std::vector<double>& values,
                                  const std::vector<SchemeId>& schemes, bool keep_slots);

}  // namespace irsoff
