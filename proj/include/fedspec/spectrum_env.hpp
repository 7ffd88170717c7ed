#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fedspec/channel.hpp"
#include "fedspec/config.hpp"
#include "fedspec/rng.hpp"

// Multi-agent dynamic spectrum access environment. N secondary pairs share
// M channels with primary users whose occupancy follows a two-state Markov
// chain per channel. SUs may not transmit on a PU-occupied channel; SUs on
// the same free channel interfere with each other at their receivers.
namespace fedspec::env {

/// 0 = stay idle, c in [1, M] = transmit on channel c.
struct ActionCode {
    int value = 0;

    bool idle() const { return value == 0; }
    std::size_t channel_index() const { return static_cast<std::size_t>(value - 1); }
    friend bool operator==(ActionCode, ActionCode) = default;
};

struct ScenarioTopology {
    std::vector<channel::NodePosition> su_tx;
    std::vector<channel::NodePosition> su_rx;

    std::size_t size() const { return su_tx.size(); }
};

/// Transmitters uniform over the square; each receiver uniform in a disk of
/// `pairing_radius_m` around its transmitter, redrawn until inside the area.
ScenarioTopology generate_topology(const ScenarioConfig& config, Rng& rng);

struct PuState {
    std::vector<bool> occupied;
    double p_on_to_off = 0.0;
    double p_off_to_on = 0.0;

    std::size_t channels() const { return occupied.size(); }
    double stationary_occupancy() const;
};

/// Initial state drawn from the chain's stationary law.
PuState initial_pu_state(const ScenarioConfig& config, Rng& rng);

/// One Markov step, channels independent.
PuState pu_transition(const PuState& state, Rng& rng);

/// Per-agent running throughput statistics over the current episode.
class EpisodeHistory {
public:
    EpisodeHistory(std::size_t n_agents, std::size_t n_channels);

    void reset();

    /// Records that `agent` accessed `channel` this step and measured
    /// `normalized_throughput` (0 when blocked). Call `begin_step` first.
    void record(std::size_t agent, std::size_t channel, double normalized_throughput);
    void begin_step();

    double average(std::size_t agent, std::size_t channel) const;
    double last(std::size_t agent, std::size_t channel) const;

    std::size_t agents() const { return n_agents_; }
    std::size_t channels() const { return n_channels_; }

private:
    std::size_t at(std::size_t agent, std::size_t channel) const { return agent * n_channels_ + channel; }

    std::size_t n_agents_;
    std::size_t n_channels_;
    std::vector<double> sum_;
    std::vector<int> count_;
    std::vector<double> last_;
};

struct Observation {
    std::vector<double> avg_hist_throughput;
    std::vector<double> prev_throughput;

    /// [avg_hist..., prev...], length 2M.
    std::vector<double> flatten() const;
};

Observation build_observation(std::size_t agent, const EpisodeHistory& history);

double normalize_throughput(double raw_bps, const ScenarioConfig& config);

/// Path-loss-only link powers plus the constants the step needs, computed once
/// per topology. mean_rx_mw(j, i) is the power from tx j at rx i.
class LinkModel {
public:
    LinkModel(const ScenarioConfig& config, ScenarioTopology topology);

    std::size_t agents() const { return topology_.size(); }
    double mean_rx_mw(std::size_t tx, std::size_t rx) const { return mean_rx_[tx * agents() + rx]; }
    double noise_mw() const { return noise_mw_; }
    const ScenarioConfig& config() const { return config_; }
    const ScenarioTopology& topology() const { return topology_; }

private:
    ScenarioConfig config_;
    ScenarioTopology topology_;
    std::vector<double> mean_rx_;
    double noise_mw_;
};

/// Small-scale power gains for one time step, gain(j, i) on link tx j -> rx i.
/// A transmitter uses one channel per step, so one draw per link covers the
/// only channel on which that link can carry energy.
class FadingDraw {
public:
    explicit FadingDraw(std::size_t n_agents, double gain = 1.0);

    static FadingDraw sample(std::size_t n_agents, double k_factor, Rng& rng);

    double gain(std::size_t tx, std::size_t rx) const { return gains_[tx * n_ + rx]; }
    void set(std::size_t tx, std::size_t rx, double g) { gains_[tx * n_ + rx] = g; }

private:
    std::size_t n_;
    std::vector<double> gains_;
};

struct StepOutcome {
    std::vector<double> rewards;         // normalized, in [0, 1]
    std::vector<double> throughput_bps;  // raw Shannon rate
    std::vector<bool> blocked;           // selected channel was PU-occupied
    std::vector<Observation> observations;
    PuState pu_state_next;
};

/// Resolves the joint action against the current PU state and a fixed fading
/// draw, updates `history`, advances the PU chain and builds next observations.
StepOutcome step(const LinkModel& links, const PuState& pu, std::span<const ActionCode> actions,
                 EpisodeHistory& history, const FadingDraw& fading, Rng& pu_rng);

/// Same as above with fading drawn fresh from `fading_rng`.
StepOutcome step(const LinkModel& links, const PuState& pu, std::span<const ActionCode> actions,
                 EpisodeHistory& history, Rng& fading_rng, Rng& pu_rng);

}  // namespace fedspec::env
