#include "irsoff/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "irsoff/rng.hpp"

namespace irsoff {

double path_loss(double distance_m, double exponent, double c0, double d0) {
    if (!(distance_m > 0.0)) throw std::invalid_argument("path_loss: distance must be > 0");
    return c0 * std::pow(distance_m / d0, -exponent);
}

std::vector<cplx> phases_to_vector(std::span<const double> theta) {
    std::vector<cplx> phi(theta.size());
    for (size_t m = 0; m < theta.size(); ++m) phi[m] = std::polar(1.0, theta[m]);
    return phi;
}

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

struct RicianMix {
    double los_scale;   // sqrt(PL * beta/(1+beta))
    double nlos_scale;  // sqrt(PL * 1/(1+beta))
};

RicianMix rician_mix(double pl, double beta) {
    return {std::sqrt(pl * beta / (1.0 + beta)), std::sqrt(pl / (1.0 + beta))};
}

// Steering phase per element for a half-wavelength ULA along the x axis:
// pi * m * (direction cosine toward the terminal).
double steering_dircos(const Vec3& terminal, const Vec3& irs) {
    double d = distance(terminal, irs);
    return (terminal.x - irs.x) / d;
}

void draw_irs_link(cplx* out, int m_count, const Vec3& terminal, const ScenarioConfig& cfg,
                   Substream rng) {
    double d = distance(terminal, cfg.irs_position());
    double pl = path_loss(d, cfg.exponent_ui, cfg.pathloss_ref, cfg.ref_distance_m);
    RicianMix mix = rician_mix(pl, cfg.rician_factor);
    double dircos = cfg.los_mode == LosMode::Ula ? steering_dircos(terminal, cfg.irs_position()) : 0.0;
    for (int m = 0; m < m_count; ++m) {
        cplx los = cfg.los_mode == LosMode::Ula ? std::polar(1.0, kPi * m * dircos) : cplx{1.0, 0.0};
        out[m] = mix.los_scale * los + mix.nlos_scale * rng.cgauss();
    }
}

cplx draw_direct_link(const Vec3& a, const Vec3& b, const ScenarioConfig& cfg, Substream rng) {
    double pl = path_loss(distance(a, b), cfg.exponent_uu, cfg.pathloss_ref, cfg.ref_distance_m);
    if (cfg.direct_fading == DirectFading::Rayleigh) {
        return std::sqrt(pl) * rng.cgauss();
    }
    RicianMix mix = rician_mix(pl, cfg.rician_factor);
    return mix.los_scale + mix.nlos_scale * rng.cgauss();
}

ChannelSample make_empty_sample(const Materialized& world, int num_elements) {
    ChannelSample s;
    s.num_users = static_cast<int>(world.users.size());
    s.num_helpers = static_cast<int>(world.helpers.size());
    s.num_elements = num_elements;
    s.direct.assign(static_cast<size_t>(s.num_users) * s.num_helpers, cplx{});
    s.user_irs.assign(static_cast<size_t>(s.num_users) * num_elements, cplx{});
    s.helper_irs.assign(static_cast<size_t>(s.num_helpers) * num_elements, cplx{});
    s.cascaded.assign(static_cast<size_t>(s.num_users) * s.num_helpers * num_elements, cplx{});
    return s;
}

void fill_cascaded_pair(ChannelSample& s, int i, int j) {
    const cplx* gi = s.user_irs.data() + static_cast<size_t>(i) * s.num_elements;
    const cplx* gj = s.helper_irs.data() + static_cast<size_t>(j) * s.num_elements;
    cplx* c = s.cascaded.data() + (static_cast<size_t>(i) * s.num_helpers + j) * s.num_elements;
    for (int m = 0; m < s.num_elements; ++m) c[m] = std::conj(gi[m]) * gj[m];
}

Substream link_stream(SlotKey key, StreamClass cls, std::uint64_t a, std::uint64_t b = 0) {
    return Substream{key.trial_seed, static_cast<std::uint64_t>(cls),
                     static_cast<std::uint64_t>(key.frame), static_cast<std::uint64_t>(key.slot), a, b};
}

}  // namespace

ChannelSample draw_slot_channels_serial(const Materialized& world, const ScenarioConfig& cfg,
                                        SlotKey key) {
    ChannelSample s = make_empty_sample(world, cfg.num_elements);
    for (int i = 0; i < s.num_users; ++i) {
        draw_irs_link(s.user_irs.data() + static_cast<size_t>(i) * s.num_elements, s.num_elements,
                      world.users[i].position, cfg, link_stream(key, StreamClass::UserIrs, i));
    }
    for (int j = 0; j < s.num_helpers; ++j) {
        if (world.helpers[j].is_blank) continue;  // fictitious pad, no radio link
        draw_irs_link(s.helper_irs.data() + static_cast<size_t>(j) * s.num_elements, s.num_elements,
                      world.helpers[j].position, cfg, link_stream(key, StreamClass::HelperIrs, j));
    }
    for (int i = 0; i < s.num_users; ++i) {
        for (int j = 0; j < s.num_helpers; ++j) {
            if (world.helpers[j].is_blank) continue;
            s.direct[static_cast<size_t>(i) * s.num_helpers + j] =
                draw_direct_link(world.users[i].position, world.helpers[j].position, cfg,
                                 link_stream(key, StreamClass::DirectLink, i, j));
            fill_cascaded_pair(s, i, j);
        }
    }
    return s;
}

ChannelSample draw_slot_channels(const Materialized& world, const ScenarioConfig& cfg, SlotKey key) {
    ChannelSample s = make_empty_sample(world, cfg.num_elements);
    const int users = s.num_users, helpers = s.num_helpers;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < users; ++i) {
        draw_irs_link(s.user_irs.data() + static_cast<size_t>(i) * s.num_elements, s.num_elements,
                      world.users[i].position, cfg, link_stream(key, StreamClass::UserIrs, i));
    }
#pragma omp parallel for schedule(static)
    for (int j = 0; j < helpers; ++j) {
        if (world.helpers[j].is_blank) continue;
        draw_irs_link(s.helper_irs.data() + static_cast<size_t>(j) * s.num_elements, s.num_elements,
                      world.helpers[j].position, cfg, link_stream(key, StreamClass::HelperIrs, j));
    }
#pragma omp parallel for schedule(static)
    for (int pair = 0; pair < users * helpers; ++pair) {
        int i = pair / helpers, j = pair % helpers;
        if (world.helpers[j].is_blank) continue;
        s.direct[static_cast<size_t>(i) * helpers + j] =
            draw_direct_link(world.users[i].position, world.helpers[j].position, cfg,
                             link_stream(key, StreamClass::DirectLink, i, j));
        fill_cascaded_pair(s, i, j);
    }
    return s;
}

namespace {

void check_unit_modulus(std::span<const cplx> phi, int num_elements) {
    if (static_cast<int>(phi.size()) != num_elements)
        throw std::invalid_argument("effective_channels: phase vector length mismatch");
    for (const cplx& p : phi) {
        if (std::abs(std::abs(p) - 1.0) > 1e-9)
            throw std::invalid_argument("effective_channels: phase vector entry is not unit modulus");
    }
}

cplx effective_pair(const ChannelSample& s, int i, int j, std::span<const cplx> phi) {
    cplx acc = s.direct_at(i, j);
    std::span<const cplx> c = s.cascaded_at(i, j);
    for (size_t m = 0; m < phi.size(); ++m) acc += std::conj(c[m]) * phi[m];
    return acc;
}

}  // namespace

EffectiveChannel effective_channels_serial(const ChannelSample& sample, std::span<const cplx> phi) {
    if (!phi.empty()) check_unit_modulus(phi, sample.num_elements);
    EffectiveChannel eff;
    eff.num_users = sample.num_users;
    eff.num_helpers = sample.num_helpers;
    eff.coeff.resize(static_cast<size_t>(sample.num_users) * sample.num_helpers);
    for (int i = 0; i < sample.num_users; ++i)
        for (int j = 0; j < sample.num_helpers; ++j)
            eff.coeff[static_cast<size_t>(i) * sample.num_helpers + j] =
                phi.empty() ? sample.direct_at(i, j) : effective_pair(sample, i, j, phi);
    return eff;
}

EffectiveChannel effective_channels(const ChannelSample& sample, std::span<const cplx> phi) {
    if (!phi.empty()) check_unit_modulus(phi, sample.num_elements);
    EffectiveChannel eff;
    eff.num_users = sample.num_users;
    eff.num_helpers = sample.num_helpers;
    const int pairs = sample.num_users * sample.num_helpers;
    eff.coeff.resize(static_cast<size_t>(pairs));
#pragma omp parallel for schedule(static)
    for (int pair = 0; pair < pairs; ++pair) {
        int i = pair / sample.num_helpers, j = pair % sample.num_helpers;
        eff.coeff[pair] = phi.empty() ? sample.direct_at(i, j) : effective_pair(sample, i, j, phi);
    }
    return eff;
}

}  // namespace irsoff
