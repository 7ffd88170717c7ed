#include "fedspec/policy.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <string>

#include "fedspec/error.hpp"

namespace fedspec::policy {
namespace {

void require_dims(const PolicyDims& dims) {
    if (dims.input == 0 || dims.hidden == 0 || dims.actions == 0) {
        throw ConfigError("policy dimensions must all be at least 1");
    }
}

void require_congruent(const PolicyParams& a, const PolicyParams& b, const char* where) {
    if (!(a.dims == b.dims) || a.w1.size() != b.w1.size() || a.b1.size() != b.b1.size() ||
        a.w2.size() != b.w2.size() || a.b2.size() != b.b2.size()) {
        throw InvalidInput(std::string(where) + ": parameter shapes differ");
    }
}

bool valid_distribution(std::span<const double> probs) {
    double total = 0.0;
    for (const double p : probs) {
        if (!std::isfinite(p) || p < 0.0) return false;
        total += p;
    }
    return std::abs(total - 1.0) <= 1e-9;
}

}  // namespace

PolicyParams PolicyParams::zeros(const PolicyDims& dims) {
    PolicyParams p;
    p.dims = dims;
    p.w1.assign(dims.hidden * dims.input, 0.0);
    p.b1.assign(dims.hidden, 0.0);
    p.w2.assign(dims.actions * dims.hidden, 0.0);
    p.b2.assign(dims.actions, 0.0);
    return p;
}

std::vector<double> PolicyParams::flatten() const {
    std::vector<double> flat;
    flat.reserve(size());
    for (const auto* block : {&w1, &b1, &w2, &b2}) {
        flat.insert(flat.end(), block->begin(), block->end());
    }
    return flat;
}

PolicyParams PolicyParams::unflatten(const PolicyDims& dims, std::span<const double> flat) {
    PolicyParams p = zeros(dims);
    if (flat.size() != p.size()) {
        throw InvalidInput("unflatten: expected " + std::to_string(p.size()) + " values, got " +
                           std::to_string(flat.size()));
    }
    auto it = flat.begin();
    for (auto* block : {&p.w1, &p.b1, &p.w2, &p.b2}) {
        std::copy_n(it, block->size(), block->begin());
        it += static_cast<std::ptrdiff_t>(block->size());
    }
    return p;
}

bool PolicyParams::is_finite() const {
    const auto finite = [](const std::vector<double>& v) {
        return std::ranges::all_of(v, [](double x) { return std::isfinite(x); });
    };
    return finite(w1) && finite(b1) && finite(w2) && finite(b2);
}

PolicyParams init_params(const PolicyDims& dims, Rng& rng) {
    require_dims(dims);
    PolicyParams p = PolicyParams::zeros(dims);
    const auto fill = [&rng](std::vector<double>& w, std::size_t fan_in) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
        for (double& x : w) {
            x = bound * (2.0 * uniform01(rng) - 1.0);
        }
    };
    fill(p.w1, dims.input);
    fill(p.w2, dims.hidden);
    return p;
}

ForwardPass forward_pass(const PolicyParams& params, std::span<const double> obs) {
    const PolicyDims& d = params.dims;
    if (obs.size() != d.input) {
        throw InvalidInput("forward: observation has dimension " + std::to_string(obs.size()) + ", expected " +
                           std::to_string(d.input));
    }
    ForwardPass pass;
    pass.hidden.resize(d.hidden);
    for (std::size_t h = 0; h < d.hidden; ++h) {
        double z = params.b1[h];
        for (std::size_t i = 0; i < d.input; ++i) {
            z += params.w1_at(h, i) * obs[i];
        }
        pass.hidden[h] = std::tanh(z);
    }

    pass.probs.resize(d.actions);
    for (std::size_t a = 0; a < d.actions; ++a) {
        double z = params.b2[a];
        for (std::size_t h = 0; h < d.hidden; ++h) {
            z += params.w2_at(a, h) * pass.hidden[h];
        }
        pass.probs[a] = z;
    }
    // Stable softmax: subtract the max logit.
    const double max_logit = *std::ranges::max_element(pass.probs);
    double total = 0.0;
    for (double& p : pass.probs) {
        p = std::exp(p - max_logit);
        total += p;
    }
    for (double& p : pass.probs) {
        p /= total;
    }
    assert(valid_distribution(pass.probs));
    return pass;
}

std::vector<double> forward(const PolicyParams& params, std::span<const double> obs) {
    return forward_pass(params, obs).probs;
}

env::ActionCode sample_action(std::span<const double> probs, Rng& rng) {
    if (probs.empty() || !valid_distribution(probs)) {
        throw InvalidInput("sample_action: probabilities must be non-negative and sum to 1");
    }
    const double u = uniform01(rng);
    double cumulative = 0.0;
    for (std::size_t a = 0; a < probs.size(); ++a) {
        cumulative += probs[a];
        if (u < cumulative) {
            return env::ActionCode{static_cast<int>(a)};
        }
    }
    // Rounding left u above the running sum: fall back to the last action with mass.
    for (std::size_t a = probs.size(); a-- > 0;) {
        if (probs[a] > 0.0) return env::ActionCode{static_cast<int>(a)};
    }
    return env::ActionCode{static_cast<int>(probs.size() - 1)};
}

std::vector<double> discounted_returns(std::span<const double> rewards, double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw InvalidInput("discounted_returns: gamma must lie in [0, 1]");
    }
    std::vector<double> returns(rewards.size());
    double running = 0.0;
    for (std::size_t t = rewards.size(); t-- > 0;) {
        running = rewards[t] + gamma * running;
        returns[t] = running;
    }
    return returns;
}

std::vector<double> Trajectory::rewards() const {
    std::vector<double> r;
    r.reserve(steps.size());
    for (const auto& s : steps) r.push_back(s.reward);
    return r;
}

namespace {

std::vector<double> advantages(const Trajectory& traj, double gamma, bool use_baseline) {
    std::vector<double> adv = discounted_returns(traj.rewards(), gamma);
    if (use_baseline) {
        const double mean = std::accumulate(adv.begin(), adv.end(), 0.0) / static_cast<double>(adv.size());
        for (double& g : adv) g -= mean;
    }
    return adv;
}

void require_trajectory(const PolicyParams& params, const Trajectory& traj, const char* where) {
    if (traj.steps.empty()) {
        throw InvalidInput(std::string(where) + ": empty trajectory");
    }
    for (const auto& s : traj.steps) {
        if (s.action.value < 0 || static_cast<std::size_t>(s.action.value) >= params.dims.actions) {
            throw InvalidInput(std::string(where) + ": action outside the policy's action set");
        }
    }
}

}  // namespace

GradientVector policy_gradient(const PolicyParams& params, const Trajectory& traj, double gamma,
                               bool use_baseline) {
    require_trajectory(params, traj, "policy_gradient");
    const PolicyDims& d = params.dims;
    const std::vector<double> adv = advantages(traj, gamma, use_baseline);

    GradientVector grad = PolicyParams::zeros(d);
    std::vector<double> delta_out(d.actions);
    std::vector<double> delta_hidden(d.hidden);
    for (std::size_t t = 0; t < traj.size(); ++t) {
        if (adv[t] == 0.0) continue;
        const auto& s = traj.steps[t];
        const ForwardPass pass = forward_pass(params, s.observation);

        // d(-adv * log softmax_a)/d(logits) = -adv * (onehot(a) - p)
        for (std::size_t a = 0; a < d.actions; ++a) {
            const double onehot = static_cast<std::size_t>(s.action.value) == a ? 1.0 : 0.0;
            delta_out[a] = -adv[t] * (onehot - pass.probs[a]);
        }
        for (std::size_t a = 0; a < d.actions; ++a) {
            grad.b2[a] += delta_out[a];
            for (std::size_t h = 0; h < d.hidden; ++h) {
                grad.w2_at(a, h) += delta_out[a] * pass.hidden[h];
            }
        }
        for (std::size_t h = 0; h < d.hidden; ++h) {
            double back = 0.0;
            for (std::size_t a = 0; a < d.actions; ++a) {
                back += params.w2_at(a, h) * delta_out[a];
            }
            delta_hidden[h] = back * (1.0 - pass.hidden[h] * pass.hidden[h]);
        }
        for (std::size_t h = 0; h < d.hidden; ++h) {
            grad.b1[h] += delta_hidden[h];
            for (std::size_t i = 0; i < d.input; ++i) {
                grad.w1_at(h, i) += delta_hidden[h] * s.observation[i];
            }
        }
    }
    return grad;
}

double surrogate_loss(const PolicyParams& params, const Trajectory& traj, double gamma, bool use_baseline) {
    require_trajectory(params, traj, "surrogate_loss");
    const std::vector<double> adv = advantages(traj, gamma, use_baseline);
    double loss = 0.0;
    for (std::size_t t = 0; t < traj.size(); ++t) {
        const auto probs = forward(params, traj.steps[t].observation);
        loss -= std::log(probs[static_cast<std::size_t>(traj.steps[t].action.value)]) * adv[t];
    }
    return loss;
}

PolicyParams sgd_update(const PolicyParams& params, const GradientVector& grad, double lr) {
    require_congruent(params, grad, "sgd_update");
    if (!(lr > 0.0)) {
        throw InvalidInput("sgd_update: learning rate must be positive");
    }
    PolicyParams next = params;
    const auto step = [lr](std::vector<double>& p, const std::vector<double>& g) {
        for (std::size_t k = 0; k < p.size(); ++k) p[k] -= lr * g[k];
    };
    step(next.w1, grad.w1);
    step(next.b1, grad.b1);
    step(next.w2, grad.w2);
    step(next.b2, grad.b2);
    return next;
}

}  // namespace fedspec::policy
