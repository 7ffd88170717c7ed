#include "fedspec/spectrum_env.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fedspec/error.hpp"

namespace fedspec::env {

ScenarioTopology generate_topology(const ScenarioConfig& config, Rng& rng) {
    if (config.n_agents < 1) {
        throw ConfigError("n_agents: must be at least 1", "n_agents");
    }
    if (!(config.area_side > 0.0)) {
        throw ConfigError("area_side: must be positive", "area_side");
    }
    if (!(config.pairing_radius_m > 0.0) ||
        !(config.pairing_radius_m < config.area_side * std::sqrt(2.0))) {
        throw ConfigError("pairing_radius_m: must lie in (0, area diagonal)", "pairing_radius_m");
    }

    const double side = config.area_side;
    const double radius = config.pairing_radius_m;
    ScenarioTopology topo;
    topo.su_tx.reserve(config.n_agents);
    topo.su_rx.reserve(config.n_agents);
    for (int i = 0; i < config.n_agents; ++i) {
        const channel::NodePosition tx{side * uniform01(rng), side * uniform01(rng)};
        channel::NodePosition rx;
        do {
            // Uniform over the disk: sqrt on the radial coordinate.
            const double r = radius * std::sqrt(uniform01(rng));
            const double phi = 2.0 * std::numbers::pi * uniform01(rng);
            rx = {tx.x + r * std::cos(phi), tx.y + r * std::sin(phi)};
        } while (rx.x < 0.0 || rx.x > side || rx.y < 0.0 || rx.y > side ||
                 channel::distance_m(tx, rx) <= 0.0);
        topo.su_tx.push_back(tx);
        topo.su_rx.push_back(rx);
    }
    return topo;
}

double PuState::stationary_occupancy() const {
    const double total = p_off_to_on + p_on_to_off;
    return total > 0.0 ? p_off_to_on / total : 0.0;
}

PuState initial_pu_state(const ScenarioConfig& config, Rng& rng) {
    PuState state;
    state.p_on_to_off = config.pu_p_on_to_off;
    state.p_off_to_on = config.pu_p_off_to_on;
    const double occupancy = state.stationary_occupancy();
    state.occupied.resize(config.n_channels);
    for (std::size_t c = 0; c < state.occupied.size(); ++c) {
        state.occupied[c] = uniform01(rng) < occupancy;
    }
    return state;
}

PuState pu_transition(const PuState& state, Rng& rng) {
    PuState next = state;
    for (std::size_t c = 0; c < state.occupied.size(); ++c) {
        const double u = uniform01(rng);
        if (state.occupied[c]) {
            next.occupied[c] = !(u < state.p_on_to_off);
        } else {
            next.occupied[c] = u < state.p_off_to_on;
        }
    }
    return next;
}

EpisodeHistory::EpisodeHistory(std::size_t n_agents, std::size_t n_channels)
    : n_agents_(n_agents),
      n_channels_(n_channels),
      sum_(n_agents * n_channels, 0.0),
      count_(n_agents * n_channels, 0),
      last_(n_agents * n_channels, 0.0) {}

void EpisodeHistory::reset() {
    std::ranges::fill(sum_, 0.0);
    std::ranges::fill(count_, 0);
    std::ranges::fill(last_, 0.0);
}

void EpisodeHistory::begin_step() { std::ranges::fill(last_, 0.0); }

void EpisodeHistory::record(std::size_t agent, std::size_t channel, double normalized_throughput) {
    if (agent >= n_agents_ || channel >= n_channels_) {
        throw InvalidInput("EpisodeHistory::record: index out of range");
    }
    const std::size_t k = at(agent, channel);
    sum_[k] += normalized_throughput;
    count_[k] += 1;
    last_[k] = normalized_throughput;
}

double EpisodeHistory::average(std::size_t agent, std::size_t channel) const {
    const std::size_t k = at(agent, channel);
    return count_[k] > 0 ? sum_[k] / count_[k] : 0.0;
}

double EpisodeHistory::last(std::size_t agent, std::size_t channel) const { return last_[at(agent, channel)]; }

std::vector<double> Observation::flatten() const {
    std::vector<double> flat;
    flat.reserve(avg_hist_throughput.size() + prev_throughput.size());
    flat.insert(flat.end(), avg_hist_throughput.begin(), avg_hist_throughput.end());
    flat.insert(flat.end(), prev_throughput.begin(), prev_throughput.end());
    return flat;
}

Observation build_observation(std::size_t agent, const EpisodeHistory& history) {
    if (agent >= history.agents()) {
        throw InvalidInput("build_observation: agent index out of range");
    }
    Observation obs;
    obs.avg_hist_throughput.resize(history.channels());
    obs.prev_throughput.resize(history.channels());
    for (std::size_t c = 0; c < history.channels(); ++c) {
        obs.avg_hist_throughput[c] = history.average(agent, c);
        obs.prev_throughput[c] = history.last(agent, c);
    }
    return obs;
}

double normalize_throughput(double raw_bps, const ScenarioConfig& config) {
    const double scaled = raw_bps / (config.bandwidth_hz * config.spectral_efficiency_cap);
    return std::clamp(scaled, 0.0, 1.0);
}

LinkModel::LinkModel(const ScenarioConfig& config, ScenarioTopology topology)
    : config_(config), topology_(std::move(topology)) {
    if (topology_.su_rx.size() != topology_.su_tx.size()) {
        throw InvalidInput("LinkModel: tx/rx position lists differ in length");
    }
    const channel::PathLossModel pl{config.pathloss_a, config.pathloss_b};
    const std::size_t n = topology_.size();
    mean_rx_.resize(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            mean_rx_[j * n + i] =
                channel::mean_received_power_mw(config.tx_power_dbm, topology_.su_tx[j], topology_.su_rx[i], pl);
        }
    }
    noise_mw_ = channel::noise_power_mw(config.noise_density_dbm_hz, config.bandwidth_hz);
}

FadingDraw::FadingDraw(std::size_t n_agents, double gain) : n_(n_agents), gains_(n_agents * n_agents, gain) {}

FadingDraw FadingDraw::sample(std::size_t n_agents, double k_factor, Rng& rng) {
    FadingDraw draw(n_agents);
    for (double& g : draw.gains_) {
        g = channel::sample_rician_power_gain(k_factor, rng);
    }
    return draw;
}

StepOutcome step(const LinkModel& links, const PuState& pu, std::span<const ActionCode> actions,
                 EpisodeHistory& history, const FadingDraw& fading, Rng& pu_rng) {
    const std::size_t n = links.agents();
    const std::size_t m = pu.channels();
    if (actions.size() != n) {
        throw InvalidInput("step: expected " + std::to_string(n) + " actions, got " + std::to_string(actions.size()));
    }
    if (history.agents() != n || history.channels() != m) {
        throw InvalidInput("step: history shape does not match the scenario");
    }
    for (const ActionCode a : actions) {
        if (a.value < 0 || static_cast<std::size_t>(a.value) > m) {
            throw InvalidInput("step: action " + std::to_string(a.value) + " outside [0, " + std::to_string(m) + "]");
        }
    }

    StepOutcome out;
    out.rewards.assign(n, 0.0);
    out.throughput_bps.assign(n, 0.0);
    out.blocked.assign(n, false);

    std::vector<bool> transmitting(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (actions[i].idle()) continue;
        if (pu.occupied[actions[i].channel_index()]) {
            out.blocked[i] = true;
        } else {
            transmitting[i] = true;
        }
    }

    const ScenarioConfig& config = links.config();
    std::vector<double> interference;
    interference.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!transmitting[i]) continue;
        const int ch = actions[i].value;
        interference.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i && transmitting[j] && actions[j].value == ch) {
                interference.push_back(links.mean_rx_mw(j, i) * fading.gain(j, i));
            }
        }
        const double signal = links.mean_rx_mw(i, i) * fading.gain(i, i);
        const double s = channel::sinr(signal, interference, links.noise_mw());
        out.throughput_bps[i] = channel::throughput_bps(s, config.bandwidth_hz);
        out.rewards[i] = normalize_throughput(out.throughput_bps[i], config);
    }

    history.begin_step();
    for (std::size_t i = 0; i < n; ++i) {
        if (!actions[i].idle()) {
            history.record(i, actions[i].channel_index(), out.rewards[i]);
        }
    }

    out.pu_state_next = pu_transition(pu, pu_rng);

    out.observations.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.observations.push_back(build_observation(i, history));
    }
    return out;
}

StepOutcome step(const LinkModel& links, const PuState& pu, std::span<const ActionCode> actions,
                 EpisodeHistory& history, Rng& fading_rng, Rng& pu_rng) {
    const FadingDraw fading = FadingDraw::sample(links.agents(), links.config().rician_k, fading_rng);
    return step(links, pu, actions, history, fading, pu_rng);
}

}  // namespace fedspec::env
