#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace fedspec {

enum class Mode { fl, dl };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

/// Every knob of a run. Defaults reproduce the reference scenario: 8 SU pairs,
/// 4 channels, 10 MHz, 41 + 22.7 log10(d) path loss, Rician K = 5,
/// -174 dBm/Hz noise, 50-step episodes, lr 0.01, discount 0.9.
struct ScenarioConfig {
    int n_agents = 8;
    int n_channels = 4;
    double area_side = 400.0;
    double bandwidth_hz = 10e6;
    double pu_occupancy = 0.2;
    double pu_p_off_to_on = 0.05;
    double pu_p_on_to_off = 0.2;
    double pathloss_a = 41.0;
    double pathloss_b = 22.7;
    double rician_k = 5.0;
    double noise_density_dbm_hz = -174.0;
    double tx_power_dbm = 23.0;
    double pairing_radius_m = 100.0;
    int episodes = 50000;
    int steps_per_episode = 50;
    double learning_rate = 0.01;
    double gamma = 0.9;
    int hidden_width = 32;
    int aggregation_period_episodes = 4;
    int participants_u = 8;
    Mode mode = Mode::fl;
    std::uint64_t seed = 0;
    bool baseline_enabled = true;
    double spectral_efficiency_cap = 10.0;

    int observation_dim() const { return 2 * n_channels; }
    int action_count() const { return n_channels + 1; }
};

/// Throws ConfigError naming the first field that breaks an invariant.
void validate(const ScenarioConfig& config);

/// Flat JSON object with ScenarioConfig field names. Absent keys keep their
/// defaults (participants_u defaults to n_agents); unknown keys are rejected.
ScenarioConfig parse_config(std::string_view json_text);
ScenarioConfig load_config(const std::filesystem::path& path);

}  // namespace fedspec
