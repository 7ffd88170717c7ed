#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fedspec/policy.hpp"
#include "fedspec/rng.hpp"

// Server side of the federated loop: uniform partial participation, equal-
// weight parameter averaging, and redistribution to participants only.
namespace fedspec::federation {

struct RoundPlan {
    int round_index = 0;
    std::vector<std::size_t> participants;  // distinct, ascending
};

struct GlobalModel {
    policy::PolicyParams params;
    int round_index = 0;
};

/// `u` distinct agents drawn uniformly without replacement.
RoundPlan select_participants(std::size_t n_agents, std::size_t u, Rng& rng, int round_index = 0);

/// Elementwise arithmetic mean.
policy::PolicyParams aggregate(std::span<const policy::PolicyParams> models);

/// Averages the participants' models and overwrites each participant's local
/// model with the result. Non-participants are left untouched.
GlobalModel fl_round(std::vector<policy::PolicyParams>& agents, const RoundPlan& plan);

/// Distributed-learning baseline: every agent starts from the server's model
/// and never synchronizes again.
std::vector<policy::PolicyParams> dl_baseline_init(const policy::PolicyParams& global, std::size_t n_agents);

}  // namespace fedspec::federation
