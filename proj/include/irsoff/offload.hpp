#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace irsoff {

// Closed-form computation/communication model for one (task user, helper)
// pair: transmission rate, local and offload delays, the delay-equalizing
// offloading ratio, and the reduced (already-optimized) pair delay.
//
// Rates use log base 2 throughout so bits and bits/s stay consistent; the
// beamforming gradient carries the matching 1/ln2 factor.

struct PairDelay {
    double ratio = 0.0;          // fraction of the task offloaded, in [0,1]
    double local_delay_s = 0.0;  // (1-ratio) * C * L / f_i
    double offload_delay_s = 0.0;// ratio * L / r + ratio * C * L / f_j
    double total_s = 0.0;        // max of the two branches
    double rate_bps = 0.0;
};

// B * log2(1 + p |h~|^2 / sigma^2). A dead channel gives rate 0.
inline double rate_bps(double tx_power_w, std::complex<double> effective, double noise_w,
                       double bandwidth_hz) {
    double snr = tx_power_w * std::norm(effective) / noise_w;
    return bandwidth_hz * std::log2(1.0 + snr);
}

// Delay-equalizing ratio: C f_j r / (C (f_i + f_j) r + f_i f_j).
// A blank helper (f_j = 0) or a dead link (r = 0) forces fully local work.
inline double optimal_ratio(double cycles_per_bit, double local_cpu_hz, double helper_cpu_hz,
                            double rate) {
    if (helper_cpu_hz <= 0.0 || rate <= 0.0) return 0.0;
    double num = cycles_per_bit * helper_cpu_hz * rate;
    double den = cycles_per_bit * (local_cpu_hz + helper_cpu_hz) * rate + local_cpu_hz * helper_cpu_hz;
    return num / den;
}

// Delays of both branches at an arbitrary split. The offload branch needs a
// live link and a computing helper whenever any work is sent.
inline PairDelay pair_delay(double task_bits, double cycles_per_bit, double local_cpu_hz,
                            double helper_cpu_hz, double rate, double ratio) {
    if (ratio < 0.0 || ratio > 1.0) throw std::invalid_argument("pair_delay: ratio outside [0,1]");
    PairDelay d;
    d.ratio = ratio;
    d.rate_bps = rate;
    d.local_delay_s = (1.0 - ratio) * cycles_per_bit * task_bits / local_cpu_hz;
    if (ratio > 0.0) {
        if (rate <= 0.0) throw std::invalid_argument("pair_delay: ratio > 0 requires rate > 0");
        if (helper_cpu_hz <= 0.0)
            throw std::invalid_argument("pair_delay: ratio > 0 requires helper cpu > 0");
        d.offload_delay_s = ratio * task_bits / rate + ratio * cycles_per_bit * task_bits / helper_cpu_hz;
    }
    d.total_s = std::max(d.local_delay_s, d.offload_delay_s);
    return d;
}

// Pair delay at the delay-equalizing ratio:
//   C L / (f_i + f_j) + C L f_j^2 / (f_i f_j (f_i + f_j) + C r (f_i + f_j)^2).
// Equals pair_delay at optimal_ratio; collapses to the local delay C L / f_i
// when the helper is blank.
inline double reduced_delay(double task_bits, double cycles_per_bit, double local_cpu_hz,
                            double helper_cpu_hz, double rate) {
    if (helper_cpu_hz <= 0.0) return cycles_per_bit * task_bits / local_cpu_hz;
    double fsum = local_cpu_hz + helper_cpu_hz;
    double head = cycles_per_bit * task_bits / fsum;
    double den = local_cpu_hz * helper_cpu_hz * fsum + cycles_per_bit * rate * fsum * fsum;
    return head + cycles_per_bit * task_bits * helper_cpu_hz * helper_cpu_hz / den;
}

}  // namespace irsoff
