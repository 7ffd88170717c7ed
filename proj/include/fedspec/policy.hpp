#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fedspec/rng.hpp"
#include "fedspec/spectrum_env.hpp"

// Per-agent REINFORCE learner over a two-layer tanh/softmax policy network.
namespace fedspec::policy {

struct PolicyDims {
    std::size_t input = 0;   // 2M
    std::size_t hidden = 0;
    std::size_t actions = 0; // M + 1

    friend bool operator==(const PolicyDims&, const PolicyDims&) = default;
};

/// Network weights. Matrices are row-major: w1 is hidden x input, w2 is
/// actions x hidden. The same type carries gradients (a GradientVector is a
/// PolicyParams holding d(loss)/d(theta)).
struct PolicyParams {
    PolicyDims dims;
    std::vector<double> w1;
    std::vector<double> b1;
    std::vector<double> w2;
    std::vector<double> b2;

    static PolicyParams zeros(const PolicyDims& dims);

    double& w1_at(std::size_t h, std::size_t d) { return w1[h * dims.input + d]; }
    double w1_at(std::size_t h, std::size_t d) const { return w1[h * dims.input + d]; }
    double& w2_at(std::size_t a, std::size_t h) { return w2[a * dims.hidden + h]; }
    double w2_at(std::size_t a, std::size_t h) const { return w2[a * dims.hidden + h]; }

    std::size_t size() const { return w1.size() + b1.size() + w2.size() + b2.size(); }

    /// w1, b1, w2, b2 concatenated.
    std::vector<double> flatten() const;
    static PolicyParams unflatten(const PolicyDims& dims, std::span<const double> flat);

    bool is_finite() const;

    friend bool operator==(const PolicyParams&, const PolicyParams&) = default;
};

using GradientVector = PolicyParams;

/// Weights ~ U(-1/sqrt(fan_in), 1/sqrt(fan_in)), biases zero.
PolicyParams init_params(const PolicyDims& dims, Rng& rng);

/// Hidden activations and action probabilities of one forward pass.
struct ForwardPass {
    std::vector<double> hidden;
    std::vector<double> probs;
};

ForwardPass forward_pass(const PolicyParams& params, std::span<const double> obs);

/// softmax(w2 tanh(w1 obs + b1) + b2).
std::vector<double> forward(const PolicyParams& params, std::span<const double> obs);

env::ActionCode sample_action(std::span<const double> probs, Rng& rng);

std::vector<double> discounted_returns(std::span<const double> rewards, double gamma);

struct TrajectoryStep {
    std::vector<double> observation;
    env::ActionCode action;
    double reward = 0.0;
};

struct Trajectory {
    std::vector<TrajectoryStep> steps;

    std::size_t size() const { return steps.size(); }
    std::vector<double> rewards() const;
};

/// Gradient of the REINFORCE surrogate loss
///   L(theta) = -sum_t log pi(a_t | s_t) (G_t - b),
/// with b the mean of the G_t when `use_baseline`, else 0. Descending L
/// ascends expected return.
GradientVector policy_gradient(const PolicyParams& params, const Trajectory& traj, double gamma,
                               bool use_baseline = true);

/// The surrogate loss itself; returns are treated as constants.
double surrogate_loss(const PolicyParams& params, const Trajectory& traj, double gamma, bool use_baseline = true);

/// params - lr * grad.
PolicyParams sgd_update(const PolicyParams& params, const GradientVector& grad, double lr);

}  // namespace fedspec::policy
