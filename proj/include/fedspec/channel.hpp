#pragma once

#include <span>

#include "fedspec/rng.hpp"

// Radio-layer math for the downlink secondary links. Powers are linear
// milliwatts everywhere; dB appears only at the parameter boundary.
namespace fedspec::channel {

struct NodePosition {
    double x = 0.0;  // meters
    double y = 0.0;  // meters
};

double distance_m(const NodePosition& a, const NodePosition& b);

/// Log-distance model PL(d) = a + b log10(d). Defaults are the urban
/// micro-cell coefficients used throughout the scenario.
struct PathLossModel {
    double intercept_db = 41.0;
    double slope_db_per_decade = 22.7;
};

double path_loss_db(double distance_m, const PathLossModel& model = {});

/// Draws |h|^2 for h = sqrt(K/(K+1)) e^{j phi} + sqrt(1/(K+1)) g with g ~ CN(0,1).
/// E[|h|^2] = 1 for every K >= 0; K = +inf returns exactly 1.
double sample_rician_power_gain(double k_factor, Rng& rng);

double dbm_to_mw(double dbm);

/// Mean (unfaded) received power through the path-loss model.
double mean_received_power_mw(double tx_power_dbm, const NodePosition& tx, const NodePosition& rx,
                              const PathLossModel& model = {});

double received_power_mw(double tx_power_dbm, const NodePosition& tx, const NodePosition& rx,
                         double fading_power_gain, const PathLossModel& model = {});

double sinr(double signal_mw, std::span<const double> interference_mw, double noise_mw);

/// Shannon rate B log2(1 + sinr).
double throughput_bps(double sinr, double bandwidth_hz);

double noise_power_mw(double noise_density_dbm_hz, double bandwidth_hz);

}  // namespace fedspec::channel
