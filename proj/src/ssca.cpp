#include "irsoff/ssca.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "irsoff/offload.hpp"
#include "json.hpp"

namespace irsoff {

namespace {

constexpr double kInvLn2 = 1.4426950408889634074;  // 1/ln 2

void check_same_length(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": length mismatch");
    }
}

// Effective coefficient for one pair: h + sum_m conj(g_m) e^{j theta_m}.
cplx effective_coeff(const GradientTerm& term, std::span<const cplx> phi) {
    cplx acc = term.direct;
    for (std::size_t m = 0; m < phi.size(); ++m) {
        acc += std::conj(term.cascaded[m]) * phi[m];
    }
    return acc;
}

}  // namespace

double StepSchedules::rho(int t) const { return std::pow(1.0 + t, -rho_exponent); }

double StepSchedules::gamma(int t) const { return std::pow(1.0 + t, -gamma_exponent); }

StepSchedules make_step_schedules(double rho_exponent, double gamma_exponent) {
    if (!(rho_exponent > 0.5 && rho_exponent <= 1.0)) {
        throw std::invalid_argument("rho_exponent must lie in (0.5, 1]");
    }
    if (!(gamma_exponent > 0.5 && gamma_exponent <= 1.0)) {
        throw std::invalid_argument("gamma_exponent must lie in (0.5, 1]");
    }
    if (!(gamma_exponent > rho_exponent)) {
        throw std::invalid_argument("gamma_exponent must exceed rho_exponent");
    }
    return StepSchedules{rho_exponent, gamma_exponent};
}

double matched_objective(std::span<const double> theta, std::span<const GradientTerm> terms,
                         double bandwidth_hz) {
    std::vector<cplx> phi = phases_to_vector(theta);
    double total = 0.0;
    for (const GradientTerm& term : terms) {
        check_same_length(term.cascaded.size(), theta.size(), "matched_objective");
        const cplx h_eff = effective_coeff(term, phi);
        const double r = rate_bps(term.tx_power_w, h_eff, term.noise_power_w, bandwidth_hz);
        total += term.weight * reduced_delay(term.task_bits, term.cycles_per_bit,
                                             term.local_cpu_hz, term.helper_cpu_hz, r);
    }
    return total;
}

std::vector<double> sample_gradient(std::span<const double> theta,
                                    std::span<const GradientTerm> terms, double bandwidth_hz) {
    const std::size_t num_elements = theta.size();
    std::vector<cplx> phi = phases_to_vector(theta);
    std::vector<double> grad(num_elements, 0.0);

    for (const GradientTerm& term : terms) {
        check_same_length(term.cascaded.size(), num_elements, "sample_gradient");
        if (term.helper_cpu_hz <= 0.0) {
            continue;  // blank match: delay is C L / f_i, independent of theta
        }
        const cplx h_eff = effective_coeff(term, phi);
        const double s = std::norm(h_eff);
        const double snr_den = term.noise_power_w + term.tx_power_w * s;
        const double r = rate_bps(term.tx_power_w, h_eff, term.noise_power_w, bandwidth_hz);

        // dT/dr for the reduced delay: -w C^2 L f_j^2 / (f_i f_j + C r (f_i+f_j))^2
        const double fsum = term.local_cpu_hz + term.helper_cpu_hz;
        const double den = term.local_cpu_hz * term.helper_cpu_hz +
                           term.cycles_per_bit * r * fsum;
        const double dT_dr = -term.weight * term.cycles_per_bit * term.cycles_per_bit *
                             term.task_bits * term.helper_cpu_hz * term.helper_cpu_hz /
                             (den * den);
        // dr/ds for the log2 rate at channel gain s = |h_eff|^2
        const double dr_ds = bandwidth_hz * kInvLn2 * term.tx_power_w / snr_den;
        const double scale = dT_dr * dr_ds;
        if (!std::isfinite(scale)) {
            throw std::runtime_error("sample_gradient: non-finite pair factor");
        }

        // ds/dtheta_m = -2 Im{ conj(h_eff) conj(g_m) e^{j theta_m} }
        for (std::size_t m = 0; m < num_elements; ++m) {
            const cplx inner = std::conj(h_eff) * std::conj(term.cascaded[m]) * phi[m];
            grad[m] += scale * (-2.0 * inner.imag());
        }
    }

    for (double g : grad) {
        if (!std::isfinite(g)) {
            throw std::runtime_error("sample_gradient: non-finite component");
        }
    }
    return grad;
}

std::vector<double> update_surrogate(std::span<const double> f_prev, std::span<const double> grad,
                                     double rho) {
    check_same_length(f_prev.size(), grad.size(), "update_surrogate");
    std::vector<double> out(f_prev.size());
    for (std::size_t m = 0; m < out.size(); ++m) {
        out[m] = (1.0 - rho) * f_prev[m] + rho * grad[m];
    }
    return out;
}

std::vector<double> minimize_surrogate(std::span<const double> theta, std::span<const double> f,
                                       double varpi) {
    check_same_length(theta.size(), f.size(), "minimize_surrogate");
    if (!(varpi > 0.0)) {
        throw std::invalid_argument("minimize_surrogate: varpi must be positive");
    }
    std::vector<double> out(theta.size());
    for (std::size_t m = 0; m < out.size(); ++m) {
        out[m] = theta[m] - f[m] / (2.0 * varpi);
    }
    return out;
}

std::vector<double> update_theta(std::span<const double> theta, std::span<const double> theta_bar,
                                 double gamma) {
    check_same_length(theta.size(), theta_bar.size(), "update_theta");
    std::vector<double> out(theta.size());
    for (std::size_t m = 0; m < out.size(); ++m) {
        out[m] = (1.0 - gamma) * theta[m] + gamma * theta_bar[m];
    }
    return out;
}

BeamformerState::BeamformerState(int num_elements, const SscaParams& params)
    : theta_(static_cast<std::size_t>(std::max(num_elements, 0)), 0.0),
      surrogate_(theta_.size(), 0.0),
      varpi_(params.varpi),
      auto_varpi_pending_(params.auto_varpi),
      auto_step_rad_(params.auto_varpi_step_rad) {
    if (num_elements < 0) {
        throw std::invalid_argument("BeamformerState: num_elements must be >= 0");
    }
    if (!(params.varpi > 0.0)) {
        throw std::invalid_argument("BeamformerState: varpi must be positive");
    }
    if (params.auto_varpi && !(params.auto_varpi_step_rad > 0.0)) {
        throw std::invalid_argument("BeamformerState: auto_varpi_step_rad must be positive");
    }
}

void BeamformerState::advance(std::span<const double> sample_grad,
                              const StepSchedules& schedules) {
    check_same_length(sample_grad.size(), theta_.size(), "BeamformerState::advance");
    if (auto_varpi_pending_) {
        // Scale varpi so the first surrogate move has max-norm
        // auto_varpi_step_rad. Locked once: the SSCA step conditions assume
        // a constant curvature parameter across frames.
        double gmax = 0.0;
        for (double g : sample_grad) {
            gmax = std::max(gmax, std::abs(g));
        }
        if (gmax > 0.0) {
            varpi_ = gmax / (2.0 * auto_step_rad_);
        }
        auto_varpi_pending_ = false;
    }
    const double rho = schedules.rho(frame_);
    const double gamma = schedules.gamma(frame_);
    surrogate_ = update_surrogate(surrogate_, sample_grad, rho);
    const std::vector<double> theta_bar = minimize_surrogate(theta_, surrogate_, varpi_);
    theta_ = update_theta(theta_, theta_bar, gamma);
    ++frame_;
}

std::vector<cplx> BeamformerState::phase_vector() const { return phases_to_vector(theta_); }

std::string BeamformerState::to_json() const {
    nlohmann::json j;
    j["theta"] = theta_;
    j["surrogate"] = surrogate_;
    j["frame"] = frame_;
    j["varpi"] = varpi_;
    j["auto_varpi_pending"] = auto_varpi_pending_;
    j["auto_step_rad"] = auto_step_rad_;
    return j.dump(2);
}

BeamformerState BeamformerState::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    const std::vector<double> theta = j.at("theta").get<std::vector<double>>();
    const std::vector<double> surrogate = j.at("surrogate").get<std::vector<double>>();
    if (theta.size() != surrogate.size()) {
        throw std::invalid_argument("beamformer snapshot: theta/surrogate length mismatch");
    }
    SscaParams params;
    params.varpi = j.at("varpi").get<double>();
    params.auto_varpi = false;
    BeamformerState state(static_cast<int>(theta.size()), params);
    state.theta_ = theta;
    state.surrogate_ = surrogate;
    state.frame_ = j.at("frame").get<int>();
    state.auto_varpi_pending_ = j.at("auto_varpi_pending").get<bool>();
    state.auto_step_rad_ = j.at("auto_step_rad").get<double>();
    return state;
}

void BeamformerState::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open beamformer snapshot for writing: " + path);
    }
    out << to_json() << '\n';
    if (!out) {
        throw std::runtime_error("failed writing beamformer snapshot: " + path);
    }
}

BeamformerState BeamformerState::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open beamformer snapshot: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

}  // namespace irsoff
