#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>

namespace irsoff {

// SplitMix64 finalizer. Used both to fold key words into a stream seed and
// as the output function of the generator itself.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Folds a sequence of key words into a single 64-bit seed. Order-sensitive,
// so {a,b} and {b,a} give unrelated streams.
constexpr std::uint64_t fold_key(std::initializer_list<std::uint64_t> words) {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t w : words) {
        h = mix64(h + 0x9e3779b97f4a7c15ULL + w);
    }
    return h;
}

// Stream-class tags keep substreams for different purposes disjoint even
// when the remaining key words collide.
enum class StreamClass : std::uint64_t {
    Placement = 1,
    DirectLink = 2,
    UserIrs = 3,
    HelperIrs = 4,
    IrsPhases = 5,
    Test = 6,
};

// Counter-based substream: the state walks the SplitMix64 sequence from a
// seed derived by hashing the key path. Streams with different keys never
// interact, so drawing extra values from one stream cannot shift another.
// This is what makes common random numbers across schemes work: channel
// draws are keyed by (trial, frame, slot, link) and nothing else.
class Substream {
public:
    explicit Substream(std::initializer_list<std::uint64_t> key) : state_(fold_key(key)) {}
    explicit Substream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Standard normal via Box-Muller; the partner deviate is cached.
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        // u1 in (0,1] so the log is finite
        double u1 = 1.0 - uniform01();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

    // Circularly-symmetric complex Gaussian CN(0,1): unit total power,
    // each component N(0, 1/2).
    std::complex<double> cgauss() {
        double re = normal();
        double im = normal();
        return {re * 0.70710678118654752440, im * 0.70710678118654752440};
    }

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

// Per-trial root seed. Every substream used inside a trial is keyed off
// this value, never off the scheme, so compared schemes see identical fading.
constexpr std::uint64_t trial_seed(std::uint64_t master_seed, int trial_index) {
    return fold_key({master_seed, 0xfeedULL, static_cast<std::uint64_t>(trial_index)});
}

}  // namespace irsoff
