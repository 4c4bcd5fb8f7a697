// Times the OpenMP kernels against their serial twins: per-slot channel
// synthesis, effective-channel reduction, and whole-trial batches. The two
// paths are bit-identical (tests assert it); this reports the speed gap.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "irsoff/baselines.hpp"
#include "irsoff/channel.hpp"
#include "irsoff/harness.hpp"
#include "irsoff/scenario.hpp"

using namespace irsoff;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

// Smallest repetition count pushing the measured region past ~0.2 s.
template <typename F>
double time_per_call(F&& body, int reps) {
    const auto start = clock_type::now();
    for (int r = 0; r < reps; ++r) body(r);
    return seconds_since(start) / reps;
}

void report(const char* name, double serial_s, double parallel_s) {
    std::printf("%-28s serial %10.3f us   parallel %10.3f us   speedup %5.2fx\n", name,
                serial_s * 1e6, parallel_s * 1e6, serial_s / parallel_s);
}

}  // namespace

int main() {
    ScenarioConfig cfg;
    cfg.num_task_users = 8;
    cfg.num_helpers = 10;
    cfg.num_elements = 40;
    cfg.slots_per_frame = 20;
    cfg.frames = 10;
    cfg.trials = 8;
    cfg = validate(cfg);

#ifdef _OPENMP
    std::printf("OpenMP enabled, max %d threads\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; parallel paths fall back to serial code\n");
#endif
    std::printf("population: %d users, %d helpers, %d elements\n\n", cfg.num_task_users,
                cfg.num_helpers, cfg.num_elements);

    const std::uint64_t seed = trial_seed(cfg.rng_seed, 0);
    Materialized world = materialize(cfg, seed);
    world.helpers = pad_blank_users(std::move(world.helpers), cfg.num_task_users,
                                    cfg.noise_power_w,
                                    Vec3{cfg.helper_circle_x, cfg.helper_circle_y,
                                         cfg.user_height});

    {
        constexpr int kReps = 400;
        const double serial = time_per_call(
            [&](int r) { (void)draw_slot_channels_serial(world, cfg, {seed, 0, r}); }, kReps);
        const double parallel = time_per_call(
            [&](int r) { (void)draw_slot_channels(world, cfg, {seed, 0, r}); }, kReps);
        report("draw_slot_channels", serial, parallel);
    }

    {
        const ChannelSample sample = draw_slot_channels(world, cfg, {seed, 0, 0});
        const std::vector<cplx> phi =
            phases_to_vector(random_irs_phases(seed, cfg.num_elements));
        constexpr int kReps = 2000;
        const double serial = time_per_call(
            [&](int) { (void)effective_channels_serial(sample, phi); }, kReps);
        const double parallel =
            time_per_call([&](int) { (void)effective_channels(sample, phi); }, kReps);
        report("effective_channels", serial, parallel);
    }

    {
        ScenarioConfig serial_cfg = cfg;
        serial_cfg.parallel = false;
        const auto t0 = clock_type::now();
        (void)run_trials_serial(serial_cfg, SchemeId::ProposedTts, false);
        const double serial = seconds_since(t0);
        const auto t1 = clock_type::now();
        (void)run_trials(cfg, SchemeId::ProposedTts, false);
        const double parallel = seconds_since(t1);
        std::printf("%-28s serial %10.3f s    parallel %10.3f s    speedup %5.2fx\n",
                    "run_trials (8 trials)", serial, parallel, serial / parallel);
    }
    return 0;
}
