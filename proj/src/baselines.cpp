#include "irsoff/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "irsoff/offload.hpp"

namespace irsoff {

std::string to_string(SchemeId scheme) {
    switch (scheme) {
        case SchemeId::ProposedTts: return "proposed-tts";
        case SchemeId::Sts: return "sts";
        case SchemeId::MaxToMaxTts: return "max-to-max-tts";
        case SchemeId::RandomIrs: return "random-irs";
        case SchemeId::NoIrs: return "no-irs";
    }
    throw std::invalid_argument("to_string: unknown scheme");
}

SchemeId scheme_from_string(const std::string& name) {
    if (name == "proposed-tts") return SchemeId::ProposedTts;
    if (name == "sts") return SchemeId::Sts;
    if (name == "max-to-max-tts") return SchemeId::MaxToMaxTts;
    if (name == "random-irs") return SchemeId::RandomIrs;
    if (name == "no-irs") return SchemeId::NoIrs;
    throw std::invalid_argument("unknown scheme: " + name);
}

std::vector<SchemeId> all_schemes() {
    return {SchemeId::ProposedTts, SchemeId::Sts, SchemeId::MaxToMaxTts, SchemeId::RandomIrs,
            SchemeId::NoIrs};
}

std::vector<int> max_to_max_matching(std::span<const TaskUserProfile> users,
                                     std::span<const HelperProfile> helpers) {
    const int num_users = static_cast<int>(users.size());
    const int num_helpers = static_cast<int>(helpers.size());
    if (num_users > num_helpers) {
        throw std::invalid_argument("max_to_max_matching: more users than helpers");
    }

    std::vector<int> user_order(users.size());
    std::iota(user_order.begin(), user_order.end(), 0);
    std::stable_sort(user_order.begin(), user_order.end(),
                     [&](int a, int b) { return users[a].task_bits > users[b].task_bits; });

    std::vector<int> helper_order(helpers.size());
    std::iota(helper_order.begin(), helper_order.end(), 0);
    std::stable_sort(helper_order.begin(), helper_order.end(), [&](int a, int b) {
        return helpers[a].helper_cpu_hz > helpers[b].helper_cpu_hz;
    });

    std::vector<int> assignment(users.size(), -1);
    for (std::size_t k = 0; k < user_order.size(); ++k) {
        assignment[user_order[k]] = helper_order[k];
    }
    return assignment;
}

std::vector<double> random_irs_phases(std::uint64_t trial_seed, int num_elements) {
    if (num_elements < 0) {
        throw std::invalid_argument("random_irs_phases: num_elements must be >= 0");
    }
    Substream stream{trial_seed, static_cast<std::uint64_t>(StreamClass::IrsPhases)};
    std::vector<double> theta(static_cast<std::size_t>(num_elements));
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    for (double& t : theta) {
        t = stream.uniform(0.0, kTwoPi);
    }
    return theta;
}

std::vector<double> reduced_delay_costs(std::span<const TaskUserProfile> users,
                                        std::span<const HelperProfile> helpers,
                                        const EffectiveChannel& eff, double bandwidth_hz) {
    const std::size_t num_users = users.size();
    const std::size_t num_helpers = helpers.size();
    if (eff.num_users != static_cast<int>(num_users) ||
        eff.num_helpers != static_cast<int>(num_helpers)) {
        throw std::invalid_argument("reduced_delay_costs: channel table shape mismatch");
    }
    std::vector<double> costs(num_users * num_helpers);
    for (std::size_t i = 0; i < num_users; ++i) {
        const TaskUserProfile& u = users[i];
        for (std::size_t j = 0; j < num_helpers; ++j) {
            const HelperProfile& h = helpers[j];
            double delay;
            if (h.is_blank || h.helper_cpu_hz <= 0.0) {
                delay = u.cycles_per_bit * u.task_bits / u.local_cpu_hz;
            } else {
                const double r = rate_bps(u.tx_power_w, eff.at(static_cast<int>(i),
                                                              static_cast<int>(j)),
                                          h.noise_power_w, bandwidth_hz);
                delay = reduced_delay(u.task_bits, u.cycles_per_bit, u.local_cpu_hz,
                                      h.helper_cpu_hz, r);
            }
            costs[i * num_helpers + j] = u.weight * delay;
        }
    }
    return costs;
}

std::vector<GradientTerm> matched_terms(std::span<const TaskUserProfile> users,
                                        std::span<const HelperProfile> helpers,
                                        const ChannelSample& sample,
                                        std::span<const int> assignment) {
    if (assignment.size() != users.size()) {
        throw std::invalid_argument("matched_terms: assignment length mismatch");
    }
    std::vector<GradientTerm> terms;
    terms.reserve(users.size());
    for (std::size_t i = 0; i < users.size(); ++i) {
        const int j = assignment[i];
        if (j < 0 || j >= static_cast<int>(helpers.size())) {
            throw std::invalid_argument("matched_terms: assignment index out of range");
        }
        const TaskUserProfile& u = users[i];
        const HelperProfile& h = helpers[static_cast<std::size_t>(j)];
        GradientTerm term;
        term.weight = u.weight;
        term.task_bits = u.task_bits;
        term.cycles_per_bit = u.cycles_per_bit;
        term.local_cpu_hz = u.local_cpu_hz;
        term.helper_cpu_hz = h.is_blank ? 0.0 : h.helper_cpu_hz;
        term.tx_power_w = u.tx_power_w;
        term.noise_power_w = h.noise_power_w;
        term.direct = sample.direct_at(static_cast<int>(i), j);
        term.cascaded = sample.cascaded_at(static_cast<int>(i), j);
        terms.push_back(term);
    }
    return terms;
}

namespace {

// Matched objective for a candidate theta after re-deriving the assignment
// from scratch; returns both so the caller can keep the better state.
struct EvaluatedPoint {
    MatchingOutcome matching;
    double objective;
};

EvaluatedPoint evaluate_with_rematch(std::span<const double> theta,
                                     std::span<const TaskUserProfile> users,
                                     std::span<const HelperProfile> helpers,
                                     const ChannelSample& sample, double bandwidth_hz) {
    const std::vector<cplx> phi = phases_to_vector(theta);
    const EffectiveChannel eff = effective_channels_serial(sample, phi);
    const std::vector<double> costs = reduced_delay_costs(users, helpers, eff, bandwidth_hz);
    MatchingOutcome matching = solve_assignment(costs, static_cast<int>(users.size()),
                                                static_cast<int>(helpers.size()));
    const std::vector<GradientTerm> terms =
        matched_terms(users, helpers, sample, matching.assignment);
    const double objective = matched_objective(theta, terms, bandwidth_hz);
    return {std::move(matching), objective};
}

}  // namespace

StsSlotResult sts_slot(std::span<const double> theta_init,
                       std::span<const TaskUserProfile> users,
                       std::span<const HelperProfile> helpers, const ChannelSample& sample,
                       double bandwidth_hz, const StsParams& params) {
    if (params.max_iters < 1) {
        throw std::invalid_argument("sts_slot: max_iters must be >= 1");
    }
    if (!(params.init_step_rad > 0.0)) {
        throw std::invalid_argument("sts_slot: init_step_rad must be positive");
    }

    StsSlotResult best;
    best.theta.assign(theta_init.begin(), theta_init.end());
    {
        EvaluatedPoint start = evaluate_with_rematch(best.theta, users, helpers, sample,
                                                     bandwidth_hz);
        best.matching = std::move(start.matching);
        best.objective = start.objective;
    }
    if (best.theta.empty()) {
        return best;  // no surface: matching alone decides the slot
    }

    double step_scale = 1.0;
    for (int iter = 0; iter < params.max_iters; ++iter) {
        best.iterations = iter + 1;
        const std::vector<GradientTerm> terms =
            matched_terms(users, helpers, sample, best.matching.assignment);
        const std::vector<double> grad = sample_gradient(best.theta, terms, bandwidth_hz);
        double gmax = 0.0;
        for (double g : grad) {
            gmax = std::max(gmax, std::abs(g));
        }
        if (gmax <= 0.0) {
            break;
        }

        // Backtracking from a max-norm step of step_scale * init_step_rad;
        // the scale remembers how far the previous iteration had to shrink.
        double step = step_scale * params.init_step_rad / gmax;
        bool improved = false;
        std::vector<double> trial(best.theta.size());
        for (int halving = 0; halving <= 30; ++halving) {
            for (std::size_t m = 0; m < trial.size(); ++m) {
                trial[m] = best.theta[m] - step * grad[m];
            }
            EvaluatedPoint cand = evaluate_with_rematch(trial, users, helpers, sample,
                                                        bandwidth_hz);
            if (cand.objective < best.objective) {
                const double gain = best.objective - cand.objective;
                best.theta = trial;
                best.matching = std::move(cand.matching);
                best.objective = cand.objective;
                improved = true;
                step_scale = std::min(std::ldexp(step_scale, 1 - halving), 1.0);
                if (gain <= params.tol * std::abs(best.objective)) {
                    return best;  // converged: improvement below tolerance
                }
                break;
            }
            step *= 0.5;
        }
        if (!improved) {
            break;
        }
    }
    return best;
}

}  // namespace irsoff
