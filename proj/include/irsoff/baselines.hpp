#pragma once

#include <string>
#include <vector>

#include "irsoff/channel.hpp"
#include "irsoff/matching.hpp"
#include "irsoff/rng.hpp"
#include "irsoff/scenario.hpp"
#include "irsoff/ssca.hpp"

namespace irsoff {

enum class SchemeId {
    ProposedTts,  // SSCA phase design + assignment matching per slot
    Sts,          // per-slot alternating phase optimization + rematching
    MaxToMaxTts,  // SSCA phase design + greedy task-size/CPU matching
    RandomIrs,    // phases drawn once uniformly, matching per slot
    NoIrs,        // direct links only, matching per slot
};

std::string to_string(SchemeId scheme);
SchemeId scheme_from_string(const std::string& name);
std::vector<SchemeId> all_schemes();

// Greedy pairing: largest task goes to the fastest helper, next largest to
// the next fastest, ties broken toward the lower index. Blank helpers rank
// last. Returns assignment[user] = helper, every user matched.
std::vector<int> max_to_max_matching(std::span<const TaskUserProfile> users,
                                     std::span<const HelperProfile> helpers);

// One phase draw, uniform on [0, 2 pi) per element, fixed for a whole run.
std::vector<double> random_irs_phases(std::uint64_t trial_seed, int num_elements);

// Result of the per-slot alternating optimizer: tuned phases plus the
// matching and objective they end at.
struct StsSlotResult {
    std::vector<double> theta;
    MatchingOutcome matching;
    double objective = 0.0;  // weighted sum of reduced delays at theta
    int iterations = 0;
};

// Short-timescale baseline for one slot: alternate projected gradient steps
// on the matched objective (backtracking line search, improvements only)
// with assignment rematching, starting from theta_init. The returned
// objective never exceeds the starting one.
StsSlotResult sts_slot(std::span<const double> theta_init,
                       std::span<const TaskUserProfile> users,
                       std::span<const HelperProfile> helpers, const ChannelSample& sample,
                       double bandwidth_hz, const StsParams& params);

// Weighted reduced-delay cost matrix used by assignment matching; entry
// (i, j) is user i's reduced delay when offloading to helper j under the
// given phases. Blank helpers cost the pure-local delay.
std::vector<double> reduced_delay_costs(std::span<const TaskUserProfile> users,
                                        std::span<const HelperProfile> helpers,
                                        const EffectiveChannel& eff, double bandwidth_hz);

// Gradient terms for the matched pairs under `assignment` (user -> helper),
// borrowing cascaded spans from `sample`; feeds matched_objective and
// sample_gradient.
std::vector<GradientTerm> matched_terms(std::span<const TaskUserProfile> users,
                                        std::span<const HelperProfile> helpers,
                                        const ChannelSample& sample,
                                        std::span<const int> assignment);

}  // namespace irsoff
