#include "fedspec/channel.hpp"

#include <cmath>
#include <numbers>

#include "fedspec/error.hpp"

namespace fedspec::channel {

double distance_m(const NodePosition& a, const NodePosition& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

double path_loss_db(double distance_m, const PathLossModel& model) {
    if (!(distance_m > 0.0)) {
        throw InvalidInput("path_loss_db: distance must be positive");
    }
    return model.intercept_db + model.slope_db_per_decade * std::log10(distance_m);
}

double sample_rician_power_gain(double k_factor, Rng& rng) {
    if (!(k_factor >= 0.0)) {
        throw InvalidInput("sample_rician_power_gain: K-factor must be non-negative");
    }
    if (std::isinf(k_factor)) {
        return 1.0;
    }
    const double los_amp = std::sqrt(k_factor / (k_factor + 1.0));
    const double scatter_amp = std::sqrt(1.0 / (k_factor + 1.0));

    const double los_phase = 2.0 * std::numbers::pi * uniform01(rng);

    // CN(0,1) via Box-Muller: |g|^2 ~ Exp(1), arg g uniform.
    const double u = 1.0 - uniform01(rng);  // (0, 1]
    const double radius = std::sqrt(-std::log(u));
    const double phase = 2.0 * std::numbers::pi * uniform01(rng);

    const double re = los_amp * std::cos(los_phase) + scatter_amp * radius * std::cos(phase);
    const double im = los_amp * std::sin(los_phase) + scatter_amp * radius * std::sin(phase);
    return re * re + im * im;
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double mean_received_power_mw(double tx_power_dbm, const NodePosition& tx, const NodePosition& rx,
                              const PathLossModel& model) {
    const double d = distance_m(tx, rx);
    if (!(d > 0.0)) {
        throw InvalidInput("received_power_mw: transmitter and receiver coincide");
    }
    return dbm_to_mw(tx_power_dbm - path_loss_db(d, model));
}

double received_power_mw(double tx_power_dbm, const NodePosition& tx, const NodePosition& rx,
                         double fading_power_gain, const PathLossModel& model) {
    if (!(fading_power_gain >= 0.0)) {
        throw InvalidInput("received_power_mw: fading gain must be non-negative");
    }
    return mean_received_power_mw(tx_power_dbm, tx, rx, model) * fading_power_gain;
}

double sinr(double signal_mw, std::span<const double> interference_mw, double noise_mw) {
    if (!(noise_mw > 0.0)) {
        throw InvalidInput("sinr: noise power must be positive");
    }
    if (!(signal_mw >= 0.0)) {
        throw InvalidInput("sinr: signal power must be non-negative");
    }
    double denom = noise_mw;
    for (const double p : interference_mw) {
        if (!(p >= 0.0)) {
            throw InvalidInput("sinr: interference power must be non-negative");
        }
        denom += p;
    }
    return signal_mw / denom;
}

double throughput_bps(double sinr, double bandwidth_hz) {
    if (!(sinr >= 0.0)) {
        throw InvalidInput("throughput_bps: SINR must be non-negative");
    }
    if (!(bandwidth_hz > 0.0)) {
        throw InvalidInput("throughput_bps: bandwidth must be positive");
    }
    return bandwidth_hz * std::log2(1.0 + sinr);
}

double noise_power_mw(double noise_density_dbm_hz, double bandwidth_hz) {
    if (!(bandwidth_hz > 0.0)) {
        throw InvalidInput("noise_power_mw: bandwidth must be positive");
    }
    return dbm_to_mw(noise_density_dbm_hz) * bandwidth_hz;
}

}  // namespace fedspec::channel
