#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "irsoff/offload.hpp"
#include "irsoff/rng.hpp"

using namespace irsoff;

TEST_CASE("rate worked example") {
    const double p = 0.251188643150958;
    const double sigma2 = 7.962143411069939e-15;
    const std::complex<double> h{1e-5, 0.0};  // |h|^2 = 1e-10
    const double r = rate_bps(p, h, sigma2, 2e6);
    // SNR = p * 1e-10 / sigma2 = 3.1549e3; rate = 2e6 * log2(1 + SNR)
    CHECK(r == doctest::Approx(2e6 * std::log2(1.0 + p * 1e-10 / sigma2)).epsilon(1e-15));
    CHECK(r == doctest::Approx(2.3248e7).epsilon(1e-3));
}

TEST_CASE("optimal ratio worked example equals one third") {
    // C=12, f_i=f_j=1e9, r chosen so C*r = 1e9: ratio = C f_j r / (C (f_i+f_j) r + f_i f_j)
    const double r = 1e9 / 12.0;
    CHECK(optimal_ratio(12.0, 1e9, 1e9, r) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("blank helper or dead link force local computation") {
    CHECK(optimal_ratio(12.0, 1e9, 0.0, 1e7) == 0.0);
    CHECK(optimal_ratio(12.0, 1e9, 1e9, 0.0) == 0.0);
    const PairDelay d = pair_delay(1e6, 12.0, 1e9, 0.0, 0.0, 0.0);
    CHECK(d.total_s == doctest::Approx(12.0 * 1e6 / 1e9).epsilon(1e-15));
    CHECK(d.offload_delay_s == 0.0);
}

TEST_CASE("pair_delay validates its inputs") {
    CHECK_THROWS_AS(pair_delay(1e6, 12, 1e9, 1e9, 1e7, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(pair_delay(1e6, 12, 1e9, 1e9, 1e7, 1.1), std::invalid_argument);
    CHECK_THROWS_AS(pair_delay(1e6, 12, 1e9, 1e9, 0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(pair_delay(1e6, 12, 1e9, 0.0, 1e7, 0.5), std::invalid_argument);
}

TEST_CASE("reduced delay worked example is 8 ms") {
    const double r = 1e9 / 12.0;  // C*r = 1e9
    const double t = reduced_delay(1e6, 12.0, 1e9, 1e9, r);
    CHECK(t == doctest::Approx(8e-3).epsilon(1e-12));
}

TEST_CASE("the optimal ratio equalizes both branch delays") {
    Substream rng{1001};
    for (int k = 0; k < 20000; ++k) {
        const double L = rng.uniform(1e5, 1e7);
        const double C = rng.uniform(1.0, 100.0);
        const double fi = rng.uniform(1e8, 5e9);
        const double fj = rng.uniform(1e8, 5e9);
        const double r = rng.uniform(1e5, 1e9);
        const double rho = optimal_ratio(C, fi, fj, r);
        REQUIRE(rho > 0.0);
        REQUIRE(rho < 1.0);
        const PairDelay d = pair_delay(L, C, fi, fj, r, rho);
        CHECK(std::abs(d.local_delay_s - d.offload_delay_s) / d.total_s <= 1e-9);
    }
}

TEST_CASE("reduced delay equals pair delay at the optimal ratio") {
    Substream rng{1002};
    for (int k = 0; k < 20000; ++k) {
        const double L = rng.uniform(1e5, 1e7);
        const double C = rng.uniform(1.0, 100.0);
        const double fi = rng.uniform(1e8, 5e9);
        const double fj = rng.uniform(1e8, 5e9);
        const double r = rng.uniform(1e5, 1e9);
        const double rho = optimal_ratio(C, fi, fj, r);
        const PairDelay d = pair_delay(L, C, fi, fj, r, rho);
        const double t = reduced_delay(L, C, fi, fj, r);
        CHECK(std::abs(t - d.total_s) / t <= 1e-12);
    }
}

TEST_CASE("reduced delay never exceeds pure-local and falls with rate") {
    Substream rng{1003};
    for (int k = 0; k < 2000; ++k) {
        const double L = rng.uniform(1e5, 1e7);
        const double C = rng.uniform(1.0, 100.0);
        const double fi = rng.uniform(1e8, 5e9);
        const double fj = rng.uniform(1e8, 5e9);
        const double r = rng.uniform(1e5, 1e9);
        const double local = C * L / fi;
        const double t1 = reduced_delay(L, C, fi, fj, r);
        const double t2 = reduced_delay(L, C, fi, fj, r * 1.5);
        CHECK(t1 <= local * (1 + 1e-12));
        CHECK(t2 <= t1);
    }
}
