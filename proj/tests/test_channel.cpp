#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "irsoff/channel.hpp"
#include "irsoff/rng.hpp"
#include "irsoff/scenario.hpp"

using namespace irsoff;

namespace {

ScenarioConfig small_cfg() {
    ScenarioConfig cfg;
    cfg.num_task_users = 3;
    cfg.num_helpers = 4;
    cfg.num_elements = 8;
    return validate(cfg);
}

}  // namespace

TEST_CASE("path_loss matches hand values and rejects bad distance") {
    // C0 = 1e-3 at 1 m, exponent 2.2, d = 10 m: 1e-3 * 10^-2.2
    CHECK(path_loss(10.0, 2.2, 1e-3, 1.0) == doctest::Approx(6.309573444801933e-6).epsilon(1e-12));
    CHECK(path_loss(1.0, 3.2, 1e-3, 1.0) == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK_THROWS_AS(path_loss(0.0, 2.2, 1e-3, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(path_loss(-1.0, 2.2, 1e-3, 1.0), std::invalid_argument);
}

TEST_CASE("phases_to_vector produces unit-modulus entries") {
    std::vector<double> theta = {0.0, 1.0, -2.5, 9.0};
    auto phi = phases_to_vector(theta);
    REQUIRE(phi.size() == 4);
    CHECK(phi[0] == cplx{1.0, 0.0});
    for (const auto& p : phi) CHECK(std::abs(std::abs(p) - 1.0) < 1e-15);
    CHECK(std::arg(phi[1]) == doctest::Approx(1.0));
}

TEST_CASE("same slot key replays the same sample, other keys differ") {
    ScenarioConfig cfg = small_cfg();
    Materialized w = materialize(cfg, 5);
    ChannelSample a = draw_slot_channels(w, cfg, {5, 2, 3});
    ChannelSample b = draw_slot_channels(w, cfg, {5, 2, 3});
    CHECK(a.direct == b.direct);
    CHECK(a.user_irs == b.user_irs);
    CHECK(a.helper_irs == b.helper_irs);
    CHECK(a.cascaded == b.cascaded);

    ChannelSample c = draw_slot_channels(w, cfg, {5, 2, 4});
    CHECK(a.direct != c.direct);
    ChannelSample d = draw_slot_channels(w, cfg, {5, 3, 3});
    CHECK(a.direct != d.direct);
}

TEST_CASE("parallel and serial channel draws are bit-identical") {
    ScenarioConfig cfg = small_cfg();
    Materialized w = materialize(cfg, 11);
    for (int slot = 0; slot < 4; ++slot) {
        ChannelSample p = draw_slot_channels(w, cfg, {11, 0, slot});
        ChannelSample s = draw_slot_channels_serial(w, cfg, {11, 0, slot});
        CHECK(p.direct == s.direct);
        CHECK(p.user_irs == s.user_irs);
        CHECK(p.helper_irs == s.helper_irs);
        CHECK(p.cascaded == s.cascaded);
    }
}

TEST_CASE("cascaded entries are conj(user leg) times helper leg") {
    ScenarioConfig cfg = small_cfg();
    Materialized w = materialize(cfg, 5);
    ChannelSample s = draw_slot_channels(w, cfg, {5, 0, 0});
    for (int i = 0; i < s.num_users; ++i) {
        for (int j = 0; j < s.num_helpers; ++j) {
            auto c = s.cascaded_at(i, j);
            auto gi = s.user_irs_at(i);
            auto gj = s.helper_irs_at(j);
            for (int m = 0; m < s.num_elements; ++m) {
                CHECK(c[m] == std::conj(gi[m]) * gj[m]);
            }
        }
    }
}

TEST_CASE("blank helpers have zero channels and consume no randomness") {
    ScenarioConfig cfg;
    cfg.num_task_users = 3;
    cfg.num_helpers = 2;
    cfg.num_elements = 4;
    cfg = validate(cfg);
    Materialized w = materialize(cfg, 9);
    Materialized padded = w;
    padded.helpers = pad_blank_users(padded.helpers, cfg.num_task_users, cfg.noise_power_w,
                                     {5, 0, 1});
    REQUIRE(padded.helpers.size() == 3);

    ChannelSample bare = draw_slot_channels(w, cfg, {9, 1, 2});
    ChannelSample with_blank = draw_slot_channels(padded, cfg, {9, 1, 2});

    // real links identical whether or not the pad exists
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 2; ++j) {
            CHECK(bare.direct_at(i, j) == with_blank.direct_at(i, j));
        }
        CHECK(with_blank.direct_at(i, 2) == cplx{0.0, 0.0});
        for (const cplx& c : with_blank.cascaded_at(i, 2)) CHECK(c == cplx{0.0, 0.0});
    }
    for (const cplx& g : with_blank.helper_irs_at(2)) CHECK(g == cplx{0.0, 0.0});
}

TEST_CASE("ULA LOS phase advances linearly in the element index") {
    ScenarioConfig cfg = small_cfg();
    cfg.rician_factor = 1e12;  // effectively pure LOS
    cfg = validate(cfg);
    Materialized w = materialize(cfg, 5);
    ChannelSample s = draw_slot_channels(w, cfg, {5, 0, 0});
    const Vec3 pos = w.users[0].position;
    const double d = distance(pos, cfg.irs_position());
    const double step = 3.14159265358979323846 * (pos.x - cfg.irs_x) / d;
    auto g = s.user_irs_at(0);
    for (int m = 1; m < s.num_elements; ++m) {
        double got = std::arg(g[m] * std::conj(g[m - 1]));
        double want = std::remainder(step, 2 * 3.14159265358979323846);
        CHECK(got == doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("ones LOS mode gives identical elements in the LOS limit") {
    ScenarioConfig cfg = small_cfg();
    cfg.los_mode = LosMode::Ones;
    cfg.rician_factor = 1e16;  // scatter residual ~1e-8, far under the tolerance
    cfg = validate(cfg);
    Materialized w = materialize(cfg, 5);
    ChannelSample s = draw_slot_channels(w, cfg, {5, 0, 0});
    auto g = s.user_irs_at(1);
    for (int m = 1; m < s.num_elements; ++m) {
        CHECK(std::abs(g[m] - g[0]) < 1e-6 * std::abs(g[0]));
    }
}

TEST_CASE("fading power matches the path-loss profile (Monte Carlo)") {
    ScenarioConfig cfg = small_cfg();
    Materialized w = materialize(cfg, 21);
    const double d01 = distance(w.users[0].position, w.helpers[1].position);
    const double pl = path_loss(d01, cfg.exponent_uu, cfg.pathloss_ref, cfg.ref_distance_m);

    double direct_power = 0.0, irs_power = 0.0;
    const int n = 20000;
    for (int t = 0; t < n; ++t) {
        ChannelSample s = draw_slot_channels(w, cfg, {21, 0, t});
        direct_power += std::norm(s.direct_at(0, 1));
        irs_power += std::norm(s.user_irs_at(0)[0]);
    }
    CHECK(direct_power / n == doctest::Approx(pl).epsilon(0.03));

    const double d_ui = distance(w.users[0].position, cfg.irs_position());
    const double pl_ui = path_loss(d_ui, cfg.exponent_ui, cfg.pathloss_ref, cfg.ref_distance_m);
    CHECK(irs_power / n == doctest::Approx(pl_ui).epsilon(0.03));
}

TEST_CASE("rayleigh direct mode has zero mean (Monte Carlo)") {
    ScenarioConfig cfg = small_cfg();
    cfg.direct_fading = DirectFading::Rayleigh;
    cfg = validate(cfg);
    Materialized w = materialize(cfg, 22);
    cplx acc{};
    double power = 0.0;
    const int n = 20000;
    for (int t = 0; t < n; ++t) {
        ChannelSample s = draw_slot_channels(w, cfg, {22, 0, t});
        acc += s.direct_at(0, 0);
        power += std::norm(s.direct_at(0, 0));
    }
    const double d = distance(w.users[0].position, w.helpers[0].position);
    const double pl = path_loss(d, cfg.exponent_uu, cfg.pathloss_ref, cfg.ref_distance_m);
    CHECK(std::abs(acc) / n < 0.02 * std::sqrt(pl));
    CHECK(power / n == doctest::Approx(pl).epsilon(0.03));
}

TEST_CASE("effective channels combine direct and reflected paths") {
    ScenarioConfig cfg = small_cfg();
    Materialized w = materialize(cfg, 5);
    ChannelSample s = draw_slot_channels(w, cfg, {5, 0, 0});

    SUBCASE("empty phase vector reduces to the direct link") {
        EffectiveChannel eff = effective_channels(s, {});
        for (int i = 0; i < s.num_users; ++i)
            for (int j = 0; j < s.num_helpers; ++j) CHECK(eff.at(i, j) == s.direct_at(i, j));
    }

    SUBCASE("manual accumulation matches") {
        std::vector<double> theta(static_cast<size_t>(s.num_elements), 0.7);
        auto phi = phases_to_vector(theta);
        EffectiveChannel eff = effective_channels(s, phi);
        cplx want = s.direct_at(1, 2);
        auto c = s.cascaded_at(1, 2);
        for (int m = 0; m < s.num_elements; ++m) want += std::conj(c[m]) * phi[m];
        CHECK(std::abs(eff.at(1, 2) - want) < 1e-18);
    }

    SUBCASE("parallel equals serial") {
        std::vector<double> theta(static_cast<size_t>(s.num_elements), -1.3);
        auto phi = phases_to_vector(theta);
        EffectiveChannel a = effective_channels(s, phi);
        EffectiveChannel b = effective_channels_serial(s, phi);
        CHECK(a.coeff == b.coeff);
    }

    SUBCASE("non-unit modulus rejected") {
        std::vector<cplx> phi(static_cast<size_t>(s.num_elements), cplx{0.5, 0.0});
        CHECK_THROWS_AS(effective_channels(s, phi), std::invalid_argument);
        std::vector<cplx> short_phi(static_cast<size_t>(s.num_elements - 1), cplx{1.0, 0.0});
        CHECK_THROWS_AS(effective_channels(s, short_phi), std::invalid_argument);
    }
}
