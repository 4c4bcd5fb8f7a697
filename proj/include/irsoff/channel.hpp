#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "irsoff/scenario.hpp"

namespace irsoff {

using cplx = std::complex<double>;

// One slot's full CSI. Direct coefficients for every (task user, helper)
// pair plus the per-link IRS vectors and their cascaded products.
// Cascaded entry m is conj(user_irs[i][m]) * helper_irs[j][m].
struct ChannelSample {
    int num_users = 0;    // I
    int num_helpers = 0;  // J (after blank padding)
    int num_elements = 0; // M

    std::vector<cplx> direct;      // I*J, row-major (i, j)
    std::vector<cplx> user_irs;    // I*M
    std::vector<cplx> helper_irs;  // J*M
    std::vector<cplx> cascaded;    // I*J*M

    cplx direct_at(int i, int j) const { return direct[static_cast<size_t>(i) * num_helpers + j]; }
    std::span<const cplx> cascaded_at(int i, int j) const {
        return {cascaded.data() + (static_cast<size_t>(i) * num_helpers + j) * num_elements,
                static_cast<size_t>(num_elements)};
    }
    std::span<const cplx> user_irs_at(int i) const {
        return {user_irs.data() + static_cast<size_t>(i) * num_elements,
                static_cast<size_t>(num_elements)};
    }
    std::span<const cplx> helper_irs_at(int j) const {
        return {helper_irs.data() + static_cast<size_t>(j) * num_elements,
                static_cast<size_t>(num_elements)};
    }
};

// Per-pair effective coefficients h + g^H phi under one phase configuration.
struct EffectiveChannel {
    int num_users = 0, num_helpers = 0;
    std::vector<cplx> coeff;  // I*J

    cplx at(int i, int j) const { return coeff[static_cast<size_t>(i) * num_helpers + j]; }
};

// C0 * (d / D0)^(-alpha), linear power gain. Throws on non-positive distance.
double path_loss(double distance_m, double exponent, double c0, double d0);

// Unit-modulus phase vector from phase angles.
std::vector<cplx> phases_to_vector(std::span<const double> theta);

// Keys one slot's channel realization. Scheme identity is deliberately
// absent: schemes compared under the same trial seed see the same fading.
struct SlotKey {
    std::uint64_t trial_seed = 0;
    int frame = 0;
    int slot = 0;
};

// Draws one slot's fading for all links. Rician mixing per link:
//   sqrt(PL) * ( sqrt(beta/(1+beta)) * LOS + sqrt(1/(1+beta)) * CN(0,1) )
// User-IRS links use exponent_ui with a ULA steering-vector LOS (or all-ones
// in LosMode::Ones); user-user links use exponent_uu with unit LOS, or pure
// Rayleigh when configured. Blank helpers get zero channels. Deterministic
// given (profiles, cfg, key).
ChannelSample draw_slot_channels(const Materialized& world, const ScenarioConfig& cfg, SlotKey key);
ChannelSample draw_slot_channels_serial(const Materialized& world, const ScenarioConfig& cfg,
                                        SlotKey key);

// h~_{i,j} = h_{i,j} + g_{i,j}^H phi for every pair. Throws if any |phi_m|
// deviates from 1 by more than 1e-9. Empty phi is the no-IRS case (g
// treated as zero).
EffectiveChannel effective_channels(const ChannelSample& sample, std::span<const cplx> phi);
EffectiveChannel effective_channels_serial(const ChannelSample& sample, std::span<const cplx> phi);

}  // namespace irsoff
