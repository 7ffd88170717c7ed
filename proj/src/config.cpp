#include "fedspec/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "fedspec/error.hpp"

namespace fedspec {

using json = nlohmann::json;

std::string_view to_string(Mode mode) { return mode == Mode::fl ? "fl" : "dl"; }

Mode parse_mode(std::string_view text) {
    if (text == "fl") return Mode::fl;
    if (text == "dl") return Mode::dl;
    throw ConfigError("mode must be \"fl\" or \"dl\", got \"" + std::string(text) + "\"", "mode");
}

namespace {

void require(bool ok, const char* key, const std::string& what) {
    if (!ok) {
        throw ConfigError(std::string(key) + ": " + what, key);
    }
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

template <typename T>
T get_as(const json& value, const std::string& key) {
    try {
        if constexpr (std::is_same_v<T, bool>) {
            if (!value.is_boolean()) throw ConfigError(key + ": expected a boolean", key);
        } else if constexpr (std::is_integral_v<T>) {
            if (!value.is_number_integer()) throw ConfigError(key + ": expected an integer", key);
        } else {
            if (!value.is_number()) throw ConfigError(key + ": expected a number", key);
        }
        return value.get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(key + ": " + e.what(), key);
    }
}

using Setter = std::function<void(ScenarioConfig&, const json&, const std::string&)>;

template <typename T>
Setter field(T ScenarioConfig::*member) {
    return [member](ScenarioConfig& c, const json& v, const std::string& key) {
        c.*member = get_as<T>(v, key);
    };
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"n_agents", field(&ScenarioConfig::n_agents)},
        {"n_channels", field(&ScenarioConfig::n_channels)},
        {"area_side", field(&ScenarioConfig::area_side)},
        {"bandwidth_hz", field(&ScenarioConfig::bandwidth_hz)},
        {"pu_occupancy", field(&ScenarioConfig::pu_occupancy)},
        {"pu_p_off_to_on", field(&ScenarioConfig::pu_p_off_to_on)},
        {"pu_p_on_to_off", field(&ScenarioConfig::pu_p_on_to_off)},
        {"pathloss_a", field(&ScenarioConfig::pathloss_a)},
        {"pathloss_b", field(&ScenarioConfig::pathloss_b)},
        {"rician_k", field(&ScenarioConfig::rician_k)},
        {"noise_density_dbm_hz", field(&ScenarioConfig::noise_density_dbm_hz)},
        {"tx_power_dbm", field(&ScenarioConfig::tx_power_dbm)},
        {"pairing_radius_m", field(&ScenarioConfig::pairing_radius_m)},
        {"episodes", field(&ScenarioConfig::episodes)},
        {"steps_per_episode", field(&ScenarioConfig::steps_per_episode)},
        {"learning_rate", field(&ScenarioConfig::learning_rate)},
        {"gamma", field(&ScenarioConfig::gamma)},
        {"hidden_width", field(&ScenarioConfig::hidden_width)},
        {"aggregation_period_episodes", field(&ScenarioConfig::aggregation_period_episodes)},
        {"participants_u", field(&ScenarioConfig::participants_u)},
        {"mode",
         [](ScenarioConfig& c, const json& v, const std::string& key) {
             if (!v.is_string()) throw ConfigError(key + ": expected \"fl\" or \"dl\"", key);
             c.mode = parse_mode(v.get<std::string>());
         }},
        {"seed", field(&ScenarioConfig::seed)},
        {"baseline_enabled", field(&ScenarioConfig::baseline_enabled)},
        {"spectral_efficiency_cap", field(&ScenarioConfig::spectral_efficiency_cap)},
    };
    return table;
}

}  // namespace

void validate(const ScenarioConfig& c) {
    require(c.n_agents >= 1, "n_agents", "must be at least 1");
    require(c.n_channels >= 1, "n_channels", "must be at least 1");
    require(c.area_side > 0.0, "area_side", "must be positive");
    require(c.bandwidth_hz > 0.0, "bandwidth_hz", "must be positive");
    require(is_probability(c.pu_occupancy), "pu_occupancy", "must lie in [0, 1]");
    require(is_probability(c.pu_p_off_to_on), "pu_p_off_to_on", "must lie in [0, 1]");
    require(is_probability(c.pu_p_on_to_off), "pu_p_on_to_off", "must lie in [0, 1]");
    const double rate_sum = c.pu_p_off_to_on + c.pu_p_on_to_off;
    // A frozen chain (both rates zero) has no stationary law to check against.
    if (rate_sum > 0.0) {
        const double stationary = c.pu_p_off_to_on / rate_sum;
        require(std::abs(stationary - c.pu_occupancy) <= 1e-9, "pu_occupancy",
                "transition probabilities imply stationary occupancy " + std::to_string(stationary));
    }
    require(std::isfinite(c.pathloss_a), "pathloss_a", "must be finite");
    require(std::isfinite(c.pathloss_b) && c.pathloss_b > 0.0, "pathloss_b", "must be positive");
    require(c.rician_k >= 0.0, "rician_k", "must be non-negative");
    require(std::isfinite(c.noise_density_dbm_hz), "noise_density_dbm_hz", "must be finite");
    require(std::isfinite(c.tx_power_dbm), "tx_power_dbm", "must be finite");
    require(c.pairing_radius_m > 0.0, "pairing_radius_m", "must be positive");
    require(c.pairing_radius_m < c.area_side * std::sqrt(2.0), "pairing_radius_m",
            "must be smaller than the area diagonal");
    require(c.episodes >= 0, "episodes", "must be non-negative");
    require(c.steps_per_episode >= 1, "steps_per_episode", "must be at least 1");
    require(c.learning_rate > 0.0, "learning_rate", "must be positive");
    require(c.gamma >= 0.0 && c.gamma <= 1.0, "gamma", "must lie in [0, 1]");
    require(c.hidden_width >= 1, "hidden_width", "must be at least 1");
    require(c.aggregation_period_episodes >= 1, "aggregation_period_episodes", "must be at least 1");
    require(c.participants_u >= 1 && c.participants_u <= c.n_agents, "participants_u",
            "must lie in [1, n_agents]");
    require(c.spectral_efficiency_cap > 0.0, "spectral_efficiency_cap", "must be positive");
}

ScenarioConfig parse_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config must be a flat JSON object");
    }
    ScenarioConfig config;
    for (const auto& [key, value] : doc.items()) {
        const auto it = setters().find(key);
        if (it == setters().end()) {
            throw ConfigError("unknown key " + key, key);
        }
        it->second(config, value, key);
    }
    if (!doc.contains("participants_u")) {
        config.participants_u = config.n_agents;
    }
    validate(config);
    return config;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace fedspec
