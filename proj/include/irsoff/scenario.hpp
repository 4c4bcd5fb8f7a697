#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace irsoff {

// ---------- unit conversions ----------
// Decibel inputs are converted to linear units at parse time; everything
// downstream is linear (watts, Hz, dimensionless gains).
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

inline double distance(const Vec3& a, const Vec3& b) {
    double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// A task user: owns a divisible computation task and a D2D transmitter.
struct TaskUserProfile {
    double task_bits = 0.0;       // L, bits
    double cycles_per_bit = 0.0;  // C, CPU cycles/bit
    double local_cpu_hz = 0.0;    // f_i, CPU cycles/s
    double weight = 1.0;          // priority
    double tx_power_w = 0.0;      // p_i, watts
    Vec3 position;                // meters
};

// An idle helper. Blank helpers (cpu = 0) are fictitious pads used when
// task users outnumber real helpers; matching one means computing locally.
struct HelperProfile {
    double helper_cpu_hz = 0.0;   // f_j, CPU cycles/s; 0 only for blanks
    double noise_power_w = 0.0;   // receiver noise power over the sub-channel
    Vec3 position;                // meters
    bool is_blank = false;
};

enum class LosMode { Ula, Ones };
enum class DirectFading { Rician, Rayleigh };

struct SscaParams {
    double varpi = 5.0;            // surrogate curvature constant
    double rho_exponent = 0.7;     // gradient-averaging sequence (1+t)^-a
    double gamma_exponent = 0.9;   // iterate-averaging sequence (1+t)^-b
    bool auto_varpi = true;        // rescale varpi once from the first sample gradient
    double auto_varpi_step_rad = 1.0;   // target magnitude of the first phase move
};

struct StsParams {
    int max_iters = 50;
    double tol = 1e-6;            // relative improvement threshold
    double init_step_rad = 0.5;   // first line-search trial step, radians
};

// Every static parameter of an experiment. Immutable after validate();
// safe to share read-only across parallel trials.
struct ScenarioConfig {
    // population and frame structure
    int num_task_users = 8;       // I
    int num_helpers = 10;         // J
    int num_elements = 40;        // M
    int slots_per_frame = 100;    // T_s
    int frames = 300;             // T_f

    // radio
    double bandwidth_hz = 2e6;
    double tx_power_w = dbm_to_watts(24.0);
    double noise_density_w_per_hz = dbm_to_watts(-174.0);
    double noise_power_w = 0.0;   // derived: density * bandwidth (filled by validate)

    // channel statistics
    double rician_factor = db_to_linear(3.0);   // beta, linear
    double pathloss_ref = db_to_linear(-30.0);  // C0, linear gain at ref distance
    double ref_distance_m = 1.0;                // D0
    double exponent_uu = 3.2;
    double exponent_ui = 2.2;
    LosMode los_mode = LosMode::Ula;
    DirectFading direct_fading = DirectFading::Rician;

    // geometry (meters)
    double task_circle_x = -5.0, task_circle_y = 0.0, task_circle_radius = 10.0;
    double helper_circle_x = 5.0, helper_circle_y = 0.0, helper_circle_radius = 10.0;
    double irs_x = 0.0, irs_y = 0.0, irs_height = 3.0;
    double user_height = 1.0;

    // task and compute profiles
    double task_bits_min = 1e6;   // 1 Mbit
    double task_bits_max = 5e6;   // 5 Mbit
    double cycles_per_bit = 12.0;
    double task_user_cpu_hz = 1e9;
    double helper_cpu_min_hz = 0.5e9;
    double helper_cpu_max_hz = 2.5e9;
    double weight = 1.0;

    // algorithms
    SscaParams ssca;
    StsParams sts;

    // execution
    std::uint64_t rng_seed = 1;
    int trials = 10;
    int bits_per_coefficient = 8;
    bool parallel = true;

    Vec3 irs_position() const { return {irs_x, irs_y, irs_height}; }
};

// Checks every invariant and fills derived fields (noise_power_w).
// Throws std::invalid_argument naming the offending field.
ScenarioConfig validate(ScenarioConfig cfg);

struct Materialized {
    std::vector<TaskUserProfile> users;
    std::vector<HelperProfile> helpers;
};

// Draws user placements and task/compute profiles. Pure function of
// (config, seed): same inputs give identical profiles. Does not pad blanks.
Materialized materialize(const ScenarioConfig& cfg, std::uint64_t seed);

// Appends I-J blank helpers (cpu = 0) when task users outnumber helpers;
// otherwise returns the input unchanged. Existing entries are never altered.
std::vector<HelperProfile> pad_blank_users(std::vector<HelperProfile> helpers, int num_task_users,
                                           double noise_power_w, Vec3 blank_position);

}  // namespace irsoff
