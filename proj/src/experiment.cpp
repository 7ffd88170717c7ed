#include "fedspec/experiment.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "fedspec/error.hpp"
#include "fedspec/spectrum_env.hpp"

namespace fedspec {

void run_experiment(const ScenarioConfig& config, const RecordSink& sink, const ExperimentHooks& hooks) {
    validate(config);

    const auto n = static_cast<std::size_t>(config.n_agents);
    const policy::PolicyDims dims{static_cast<std::size_t>(config.observation_dim()),
                                  static_cast<std::size_t>(config.hidden_width),
                                  static_cast<std::size_t>(config.action_count())};

    Rng topology_rng = rng_fork(config.seed, "topology");
    Rng pu_rng = rng_fork(config.seed, "pu");
    Rng fading_rng = rng_fork(config.seed, "fading");
    Rng init_rng = rng_fork(config.seed, "init");
    Rng selection_rng = rng_fork(config.seed, "selection");
    std::vector<Rng> action_rngs;
    action_rngs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        action_rngs.push_back(rng_fork(config.seed, "action:" + std::to_string(i)));
    }

    const env::LinkModel links(config, env::generate_topology(config, topology_rng));
    env::PuState pu = env::initial_pu_state(config, pu_rng);
    env::EpisodeHistory history(n, static_cast<std::size_t>(config.n_channels));

    // Both modes start every agent from the same server-issued model.
    const policy::PolicyParams initial = policy::init_params(dims, init_rng);
    std::vector<policy::PolicyParams> agents = federation::dl_baseline_init(initial, n);

    const std::vector<double> zero_obs(dims.input, 0.0);
    std::vector<policy::Trajectory> trajectories(n);
    std::vector<std::vector<double>> observations(n);
    std::vector<env::ActionCode> actions(n);
    std::vector<double> episode_reward(n);
    int round_index = 0;

    for (int episode = 0; episode < config.episodes; ++episode) {
        history.reset();
        for (std::size_t i = 0; i < n; ++i) {
            observations[i] = zero_obs;
            trajectories[i].steps.clear();
            trajectories[i].steps.reserve(static_cast<std::size_t>(config.steps_per_episode));
        }

        for (int t = 0; t < config.steps_per_episode; ++t) {
            for (std::size_t i = 0; i < n; ++i) {
                const auto probs = policy::forward(agents[i], observations[i]);
                actions[i] = policy::sample_action(probs, action_rngs[i]);
            }
            env::StepOutcome out = env::step(links, pu, actions, history, fading_rng, pu_rng);
            for (std::size_t i = 0; i < n; ++i) {
                trajectories[i].steps.push_back({std::move(observations[i]), actions[i], out.rewards[i]});
                observations[i] = out.observations[i].flatten();
            }
            pu = std::move(out.pu_state_next);
        }

        double joint = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto grad =
                policy::policy_gradient(agents[i], trajectories[i], config.gamma, config.baseline_enabled);
            agents[i] = policy::sgd_update(agents[i], grad, config.learning_rate);
            double total = 0.0;
            for (const auto& s : trajectories[i].steps) total += s.reward;
            episode_reward[i] = total;
            joint += total;
        }

        if (config.mode == Mode::fl && (episode + 1) % config.aggregation_period_episodes == 0) {
            const auto plan = federation::select_participants(n, static_cast<std::size_t>(config.participants_u),
                                                              selection_rng, round_index++);
            const auto global = federation::fl_round(agents, plan);
            if (hooks.on_round) hooks.on_round(plan, global);
        }
        if (hooks.on_episode_end) hooks.on_episode_end(episode, agents);

        const double avg = joint / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            sink(MetricsRecord{config.mode, config.seed, episode, static_cast<int>(i), episode_reward[i], avg, joint});
        }
    }
}

std::vector<MetricsRecord> run_experiment(const ScenarioConfig& config) {
    std::vector<MetricsRecord> records;
    records.reserve(static_cast<std::size_t>(config.episodes) * static_cast<std::size_t>(config.n_agents));
    run_experiment(config, [&records](const MetricsRecord& r) { records.push_back(r); });
    return records;
}

double trailing_mean_reward(const std::vector<MetricsRecord>& records, int window) {
    if (window < 1) {
        throw InvalidInput("trailing_mean_reward: window must be at least 1");
    }
    std::map<int, double> per_episode;
    for (const auto& r : records) per_episode[r.episode] = r.avg_user_reward;
    if (per_episode.empty()) {
        throw InvalidInput("trailing_mean_reward: no records");
    }
    const int last = per_episode.rbegin()->first;
    double sum = 0.0;
    int count = 0;
    for (auto it = per_episode.lower_bound(last - window + 1); it != per_episode.end(); ++it) {
        sum += it->second;
        ++count;
    }
    return sum / count;
}

}  // namespace fedspec
