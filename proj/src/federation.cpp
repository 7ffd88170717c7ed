#include "fedspec/federation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "fedspec/error.hpp"

namespace fedspec::federation {

RoundPlan select_participants(std::size_t n_agents, std::size_t u, Rng& rng, int round_index) {
    if (u < 1 || u > n_agents) {
        throw ConfigError("participants_u: must lie in [1, " + std::to_string(n_agents) + "], got " +
                              std::to_string(u),
                          "participants_u");
    }
    // Partial Fisher-Yates: the first u slots are a uniform u-subset.
    std::vector<std::size_t> pool(n_agents);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t k = 0; k < u; ++k) {
        const std::size_t pick = k + static_cast<std::size_t>(uniform_index(rng, n_agents - k));
        std::swap(pool[k], pool[pick]);
    }
    RoundPlan plan;
    plan.round_index = round_index;
    plan.participants.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(u));
    std::ranges::sort(plan.participants);
    return plan;
}

policy::PolicyParams aggregate(std::span<const policy::PolicyParams> models) {
    if (models.empty()) {
        throw InvalidInput("aggregate: no models");
    }
    const policy::PolicyDims dims = models.front().dims;
    std::vector<std::vector<double>> flats;
    flats.reserve(models.size());
    for (const auto& m : models) {
        if (!(m.dims == dims) || m.size() != models.front().size()) {
            throw InvalidInput("aggregate: parameter shapes differ");
        }
        flats.push_back(m.flatten());
    }
    // Each coordinate is summed in sorted order, so the mean does not depend
    // on the order in which models arrive.
    const double count = static_cast<double>(models.size());
    std::vector<double> mean(flats.front().size());
    std::vector<double> column(models.size());
    for (std::size_t k = 0; k < mean.size(); ++k) {
        for (std::size_t m = 0; m < flats.size(); ++m) column[m] = flats[m][k];
        std::ranges::sort(column);
        double sum = 0.0;
        for (const double x : column) sum += x;
        mean[k] = sum / count;
    }
    return policy::PolicyParams::unflatten(dims, mean);
}

GlobalModel fl_round(std::vector<policy::PolicyParams>& agents, const RoundPlan& plan) {
    if (plan.participants.empty()) {
        throw InvalidInput("fl_round: round has no participants");
    }
    std::vector<policy::PolicyParams> selected;
    selected.reserve(plan.participants.size());
    for (const std::size_t idx : plan.participants) {
        if (idx >= agents.size()) {
            throw InvalidInput("fl_round: participant " + std::to_string(idx) + " out of range");
        }
        selected.push_back(agents[idx]);
    }
    GlobalModel global{aggregate(selected), plan.round_index};
    for (const std::size_t idx : plan.participants) {
        agents[idx] = global.params;
    }
    return global;
}

std::vector<policy::PolicyParams> dl_baseline_init(const policy::PolicyParams& global, std::size_t n_agents) {
    if (n_agents < 1) {
        throw ConfigError("n_agents: must be at least 1", "n_agents");
    }
    return std::vector<policy::PolicyParams>(n_agents, global);
}

}  // namespace fedspec::federation
