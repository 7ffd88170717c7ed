#pragma once

// Test-only reference for the REINFORCE surrogate loss. It re-derives the
// network forward pass from the flat parameter layout (w1, b1, w2, b2) so the
// finite-difference oracle shares no code with the library's backprop.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "fedspec/policy.hpp"

namespace fedspec::testing {

inline double reference_loss(const std::vector<double>& theta, const policy::PolicyDims& d,
                             const policy::Trajectory& traj, double gamma, bool baseline) {
    const double* w1 = theta.data();
    const double* b1 = w1 + d.hidden * d.input;
    const double* w2 = b1 + d.hidden;
    const double* b2 = w2 + d.actions * d.hidden;

    std::vector<double> g(traj.size());
    double acc = 0.0;
    for (std::size_t t = traj.size(); t-- > 0;) {
        acc = traj.steps[t].reward + gamma * acc;
        g[t] = acc;
    }
    if (baseline) {
        const double mean = std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
        for (double& x : g) x -= mean;
    }

    double loss = 0.0;
    for (std::size_t t = 0; t < traj.size(); ++t) {
        const auto& x = traj.steps[t].observation;
        std::vector<double> h(d.hidden);
        for (std::size_t j = 0; j < d.hidden; ++j) {
            double z = b1[j];
            for (std::size_t i = 0; i < d.input; ++i) z += w1[j * d.input + i] * x[i];
            h[j] = std::tanh(z);
        }
        std::vector<double> logits(d.actions);
        for (std::size_t a = 0; a < d.actions; ++a) {
            double z = b2[a];
            for (std::size_t j = 0; j < d.hidden; ++j) z += w2[a * d.hidden + j] * h[j];
            logits[a] = z;
        }
        const double mx = *std::max_element(logits.begin(), logits.end());
        double lse = 0.0;
        for (double z : logits) lse += std::exp(z - mx);
        lse = mx + std::log(lse);
        loss -= (logits[static_cast<std::size_t>(traj.steps[t].action.value)] - lse) * g[t];
    }
    return loss;
}

inline policy::Trajectory random_trajectory(const policy::PolicyDims& d, std::size_t length, Rng& rng) {
    policy::Trajectory traj;
    for (std::size_t t = 0; t < length; ++t) {
        policy::TrajectoryStep s;
        for (std::size_t i = 0; i < d.input; ++i) s.observation.push_back(uniform01(rng));
        s.action.value = static_cast<int>(uniform_index(rng, d.actions));
        s.reward = uniform01(rng);
        traj.steps.push_back(std::move(s));
    }
    return traj;
}

inline policy::PolicyParams random_params(const policy::PolicyDims& d, Rng& rng, double scale = 1.0) {
    auto flat = policy::PolicyParams::zeros(d).flatten();
    for (double& x : flat) x = scale * (2.0 * uniform01(rng) - 1.0);
    return policy::PolicyParams::unflatten(d, flat);
}

/// Worst relative error between backprop and central differences (step 1e-5)
/// over `coords` random coordinates. Relative error uses a 1e-6 floor on the
/// denominator so coordinates with vanishing gradient compare absolutely.
inline double worst_fd_error(const policy::PolicyParams& params, const policy::Trajectory& traj, double gamma,
                             bool baseline, int coords, Rng& rng) {
    const double h = 1e-5;
    const auto grad = policy::policy_gradient(params, traj, gamma, baseline).flatten();
    const auto theta = params.flatten();
    double worst = 0.0;
    for (int k = 0; k < coords; ++k) {
        const std::size_t idx = uniform_index(rng, theta.size());
        auto plus = theta;
        auto minus = theta;
        plus[idx] += h;
        minus[idx] -= h;
        const double fd = (reference_loss(plus, params.dims, traj, gamma, baseline) -
                           reference_loss(minus, params.dims, traj, gamma, baseline)) /
                          (2.0 * h);
        const double rel = std::abs(grad[idx] - fd) / std::max({std::abs(grad[idx]), std::abs(fd), 1e-6});
        worst = std::max(worst, rel);
    }
    return worst;
}

}  // namespace fedspec::testing
