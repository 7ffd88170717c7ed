#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fedspec/config.hpp"
#include "fedspec/federation.hpp"

namespace fedspec {

/// One agent's result for one episode.
struct MetricsRecord {
    Mode mode = Mode::fl;
    std::uint64_t seed = 0;
    int episode = 0;
    int agent_id = 0;
    double episode_reward = 0.0;   // sum of per-step normalized rewards
    double avg_user_reward = 0.0;  // mean episode_reward over agents
    double joint_reward = 0.0;     // sum of episode_reward over agents

    friend bool operator==(const MetricsRecord&, const MetricsRecord&) = default;
};

using RecordSink = std::function<void(const MetricsRecord&)>;

/// Optional instrumentation. Hooks observe the run without drawing from any
/// random stream, so attaching them never changes the results.
struct ExperimentHooks {
    /// Called after every aggregation round with the plan and new global model.
    std::function<void(const federation::RoundPlan&, const federation::GlobalModel&)> on_round;
    /// Called at the end of each episode with every agent's current model.
    std::function<void(int episode, const std::vector<policy::PolicyParams>&)> on_episode_end;
};

/// Runs the full training loop. Each episode resets the throughput history,
/// rolls `steps_per_episode` joint steps, applies one policy-gradient update
/// per agent, and in FL mode aggregates every `aggregation_period_episodes`.
/// Emits `n_agents` records per episode in agent order. Deterministic in the
/// config (seed included).
void run_experiment(const ScenarioConfig& config, const RecordSink& sink, const ExperimentHooks& hooks = {});

std::vector<MetricsRecord> run_experiment(const ScenarioConfig& config);

/// Mean avg_user_reward over the last `window` episodes present in `records`.
double trailing_mean_reward(const std::vector<MetricsRecord>& records, int window);

}  // namespace fedspec
