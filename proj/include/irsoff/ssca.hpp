#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "irsoff/channel.hpp"
#include "irsoff/scenario.hpp"

namespace irsoff {

// Diminishing step sequences rho^t = (1+t)^-a (gradient averaging) and
// gamma^t = (1+t)^-b (iterate averaging). Valid exponents lie in (0.5, 1]
// with b > a, which gives: both sequences -> 0, their sums diverge, their
// squared sums converge, and gamma^t / rho^t -> 0.
struct StepSchedules {
    double rho_exponent = 0.7;
    double gamma_exponent = 0.9;

    double rho(int t) const;
    double gamma(int t) const;
};

// Throws std::invalid_argument when the exponent pair violates the
// conditions above.
StepSchedules make_step_schedules(double rho_exponent, double gamma_exponent);

// Everything the phase gradient needs about one matched pair: the task
// user's profile, the matched helper's capacity and noise, and the pair's
// CSI sample (direct coefficient + cascaded vector).
struct GradientTerm {
    double weight = 1.0;
    double task_bits = 0.0;
    double cycles_per_bit = 0.0;
    double local_cpu_hz = 0.0;
    double helper_cpu_hz = 0.0;  // 0 for a blank match; contributes nothing
    double tx_power_w = 0.0;
    double noise_power_w = 0.0;
    cplx direct;                       // h_{i,pi_i}
    std::span<const cplx> cascaded;    // g_{i,pi_i}, length M
};

// Weighted sum of reduced pair delays over the matched pairs, as a function
// of the phase angles. This is the objective the sample gradient
// differentiates; tests pit the gradient against finite differences of it.
double matched_objective(std::span<const double> theta, std::span<const GradientTerm> terms,
                         double bandwidth_hz);

// d(matched_objective)/d(theta), length M, via the chain rule through the
// reduced delay, the log2 rate, and |h + g^H e^{j theta}|^2. Blank-matched
// pairs contribute zero. Throws on non-finite intermediates.
std::vector<double> sample_gradient(std::span<const double> theta,
                                    std::span<const GradientTerm> terms, double bandwidth_hz);

// Recursive gradient averaging: f^t = (1 - rho) f^{t-1} + rho * grad.
std::vector<double> update_surrogate(std::span<const double> f_prev, std::span<const double> grad,
                                     double rho);

// Minimizer of the quadratic surrogate: theta - f / (2 varpi).
std::vector<double> minimize_surrogate(std::span<const double> theta, std::span<const double> f,
                                       double varpi);

// Iterate averaging: (1 - gamma) theta + gamma theta_bar.
std::vector<double> update_theta(std::span<const double> theta, std::span<const double> theta_bar,
                                 double gamma);

// Long-term state of the phase design. theta is kept unwrapped: consumers
// only ever see e^{j theta}, and wrapping would put kinks into the convex
// combination update.
class BeamformerState {
public:
    BeamformerState(int num_elements, const SscaParams& params);

    // One frame-boundary step: averages the sample gradient into the
    // surrogate, minimizes the surrogate, moves theta, advances the frame
    // counter. With auto_varpi enabled, varpi is pinned on the first call
    // so the first move has max-norm auto_varpi_step_rad, then never
    // changes again.
    void advance(std::span<const double> sample_grad, const StepSchedules& schedules);

    std::span<const double> theta() const { return theta_; }
    std::span<const double> surrogate() const { return surrogate_; }
    std::vector<cplx> phase_vector() const;
    int frame() const { return frame_; }
    double varpi() const { return varpi_; }

    // Snapshot round-trip for checkpoint/resume and debugging.
    std::string to_json() const;
    static BeamformerState from_json(const std::string& text);
    void save(const std::string& path) const;
    static BeamformerState load(const std::string& path);

private:
    std::vector<double> theta_;
    std::vector<double> surrogate_;
    int frame_ = 0;
    double varpi_;
    bool auto_varpi_pending_;
    double auto_step_rad_;
};

}  // namespace irsoff
