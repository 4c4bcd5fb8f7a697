#include "irsoff/scenario.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "irsoff/rng.hpp"

namespace irsoff {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

}  // namespace

ScenarioConfig validate(ScenarioConfig cfg) {
    require(cfg.num_task_users >= 1, "num_task_users (I) must be >= 1");
    require(cfg.num_helpers >= 1, "num_helpers (J) must be >= 1");
    require(cfg.num_elements >= 0, "num_elements (M) must be >= 0");
    require(cfg.slots_per_frame >= 1, "slots_per_frame (T_s) must be >= 1");
    require(cfg.frames >= 1, "frames (T_f) must be >= 1");
    require(cfg.bandwidth_hz > 0, "bandwidth_hz must be > 0");
    require(cfg.tx_power_w > 0, "tx_power_w must be > 0");
    require(cfg.noise_density_w_per_hz > 0, "noise_density_w_per_hz must be > 0");
    require(cfg.rician_factor >= 0, "rician_factor must be >= 0");
    require(cfg.pathloss_ref > 0, "pathloss_ref must be > 0");
    require(cfg.ref_distance_m > 0, "ref_distance_m must be > 0");
    require(cfg.exponent_uu > 0, "exponent_uu must be > 0");
    require(cfg.exponent_ui > 0, "exponent_ui must be > 0");
    require(cfg.task_circle_radius > 0, "task_circle_radius must be > 0");
    require(cfg.helper_circle_radius > 0, "helper_circle_radius must be > 0");
    require(cfg.irs_height > 0, "irs_height must be > 0");
    require(cfg.user_height > 0, "user_height must be > 0");
    require(cfg.task_bits_min > 0, "task_bits_min must be > 0");
    require(cfg.task_bits_max >= cfg.task_bits_min, "task_bits_max must be >= task_bits_min");
    require(cfg.cycles_per_bit > 0, "cycles_per_bit must be > 0");
    require(cfg.task_user_cpu_hz > 0, "task_user_cpu_hz must be > 0");
    require(cfg.helper_cpu_min_hz > 0, "helper_cpu_min_hz must be > 0");
    require(cfg.helper_cpu_max_hz >= cfg.helper_cpu_min_hz,
            "helper_cpu_max_hz must be >= helper_cpu_min_hz");
    require(cfg.weight > 0, "weight must be > 0");
    require(cfg.ssca.varpi > 0, "ssca.varpi must be > 0");
    // Diminishing-step conditions: both exponents in (0.5, 1] and the iterate
    // sequence decaying strictly faster than the gradient-averaging one.
    require(cfg.ssca.rho_exponent > 0.5 && cfg.ssca.rho_exponent <= 1.0,
            "ssca.rho_exponent must lie in (0.5, 1]");
    require(cfg.ssca.gamma_exponent > 0.5 && cfg.ssca.gamma_exponent <= 1.0,
            "ssca.gamma_exponent must lie in (0.5, 1]");
    require(cfg.ssca.gamma_exponent > cfg.ssca.rho_exponent,
            "ssca.gamma_exponent must be > ssca.rho_exponent");
    require(cfg.ssca.auto_varpi_step_rad > 0, "ssca.auto_varpi_step_rad must be > 0");
    require(cfg.sts.max_iters >= 1, "sts.max_iters must be >= 1");
    require(cfg.sts.tol > 0, "sts.tol must be > 0");
    require(cfg.sts.init_step_rad > 0, "sts.init_step_rad must be > 0");
    require(cfg.trials >= 1, "trials must be >= 1");
    require(cfg.bits_per_coefficient >= 1, "bits_per_coefficient must be >= 1");

    cfg.noise_power_w = cfg.noise_density_w_per_hz * cfg.bandwidth_hz;
    return cfg;
}

namespace {

Vec3 draw_in_circle(Substream& rng, double cx, double cy, double radius, double height) {
    double r = radius * std::sqrt(rng.uniform01());
    double a = rng.uniform(0.0, 6.283185307179586476925286766559);
    return {cx + r * std::cos(a), cy + r * std::sin(a), height};
}

}  // namespace

Materialized materialize(const ScenarioConfig& cfg, std::uint64_t seed) {
    Substream rng{seed, static_cast<std::uint64_t>(StreamClass::Placement)};

    Materialized out;
    out.users.reserve(cfg.num_task_users);
    for (int i = 0; i < cfg.num_task_users; ++i) {
        TaskUserProfile u;
        u.position = draw_in_circle(rng, cfg.task_circle_x, cfg.task_circle_y,
                                    cfg.task_circle_radius, cfg.user_height);
        u.task_bits = rng.uniform(cfg.task_bits_min, cfg.task_bits_max);
        u.cycles_per_bit = cfg.cycles_per_bit;
        u.local_cpu_hz = cfg.task_user_cpu_hz;
        u.weight = cfg.weight;
        u.tx_power_w = cfg.tx_power_w;
        out.users.push_back(u);
    }
    out.helpers.reserve(cfg.num_helpers);
    for (int j = 0; j < cfg.num_helpers; ++j) {
        HelperProfile h;
        h.position = draw_in_circle(rng, cfg.helper_circle_x, cfg.helper_circle_y,
                                    cfg.helper_circle_radius, cfg.user_height);
        h.helper_cpu_hz = rng.uniform(cfg.helper_cpu_min_hz, cfg.helper_cpu_max_hz);
        h.noise_power_w = cfg.noise_power_w;
        h.is_blank = false;
        out.helpers.push_back(h);
    }
    return out;
}

std::vector<HelperProfile> pad_blank_users(std::vector<HelperProfile> helpers, int num_task_users,
                                           double noise_power_w, Vec3 blank_position) {
    const int deficit = num_task_users - static_cast<int>(helpers.size());
    for (int k = 0; k < deficit; ++k) {
        HelperProfile blank;
        blank.helper_cpu_hz = 0.0;
        blank.noise_power_w = noise_power_w;
        blank.position = blank_position;
        blank.is_blank = true;
        helpers.push_back(blank);
    }
    return helpers;
}

}  // namespace irsoff
