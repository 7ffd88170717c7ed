#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "fedspec/error.hpp"
#include "fedspec/federation.hpp"

using namespace fedspec;
using namespace fedspec::federation;
using policy::PolicyDims;
using policy::PolicyParams;

namespace {

const PolicyDims kDims{8, 6, 5};

PolicyParams random_params(Rng& rng) {
    auto flat = PolicyParams::zeros(kDims).flatten();
    for (double& x : flat) x = 4.0 * uniform01(rng) - 2.0;
    return PolicyParams::unflatten(kDims, flat);
}

PolicyParams scaled(const PolicyParams& p, double s) {
    auto flat = p.flatten();
    for (double& x : flat) x *= s;
    return PolicyParams::unflatten(p.dims, flat);
}

}  // namespace

TEST_CASE("select_participants") {
    auto rng = rng_fork(1, "selection");
    const auto all = select_participants(8, 8, rng);
    CHECK(all.participants == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7});
    CHECK(select_participants(8, 1, rng).participants.size() == 1);
    CHECK_THROWS_AS(select_participants(8, 9, rng), ConfigError);
    CHECK_THROWS_AS(select_participants(8, 0, rng), ConfigError);

    for (int i = 0; i < 1000; ++i) {
        const auto plan = select_participants(8, 3, rng, i);
        CHECK(plan.round_index == i);
        const std::set<std::size_t> unique(plan.participants.begin(), plan.participants.end());
        REQUIRE(unique.size() == 3);
        REQUIRE(*unique.rbegin() < 8);
    }
}

TEST_CASE("selection is uniform over agents") {
    auto rng = rng_fork(2, "selection");
    std::vector<int> hits(8, 0);
    const int rounds = 100'000;
    for (int r = 0; r < rounds; ++r) {
        for (const auto i : select_participants(8, 4, rng).participants) hits[i]++;
    }
    for (const int h : hits) CHECK(std::abs(static_cast<double>(h) / rounds - 0.5) < 0.01);
}

TEST_CASE("aggregate algebra") {
    auto rng = rng_fork(3, "agg");
    const auto theta = random_params(rng);
    CHECK(aggregate(std::vector<PolicyParams>{theta}) == theta);
    CHECK(aggregate(std::vector<PolicyParams>{theta, theta}) == theta);
    CHECK(aggregate(std::vector<PolicyParams>{PolicyParams::zeros(kDims), scaled(theta, 2.0)}) == theta);

    CHECK_THROWS_AS(aggregate(std::vector<PolicyParams>{}), InvalidInput);
    CHECK_THROWS_AS(aggregate(std::vector<PolicyParams>{theta, PolicyParams::zeros({8, 5, 5})}), InvalidInput);
}

TEST_CASE("property: aggregate is permutation invariant and commutes with flatten") {
    auto rng = rng_fork(4, "agg");
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<PolicyParams> models;
        const std::size_t count = 1 + uniform_index(rng, 8);
        for (std::size_t k = 0; k < count; ++k) models.push_back(random_params(rng));
        const auto mean = aggregate(models);

        auto shuffled = models;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        REQUIRE(aggregate(shuffled) == mean);

        const auto flat = mean.flatten();
        for (std::size_t i = 0; i < flat.size(); ++i) {
            double s = 0.0;
            for (const auto& m : models) s += m.flatten()[i];
            REQUIRE(flat[i] == doctest::Approx(s / static_cast<double>(count)).epsilon(1e-14));
        }
    }
}

TEST_CASE("fl_round with full participation synchronizes everyone") {
    auto rng = rng_fork(5, "round");
    std::vector<PolicyParams> agents;
    for (int i = 0; i < 8; ++i) agents.push_back(random_params(rng));
    const auto expected = aggregate(agents);
    const auto global = fl_round(agents, select_participants(8, 8, rng, 3));
    CHECK(global.round_index == 3);
    CHECK(global.params == expected);
    for (const auto& a : agents) CHECK(a == expected);
}

TEST_CASE("fl_round leaves non-participants untouched") {
    auto rng = rng_fork(6, "round");
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<PolicyParams> agents;
        for (int i = 0; i < 8; ++i) agents.push_back(random_params(rng));
        const auto before = agents;
        const auto plan = select_participants(8, 1 + uniform_index(rng, 8), rng);
        const auto global = fl_round(agents, plan);
        for (std::size_t i = 0; i < 8; ++i) {
            const bool in = std::ranges::find(plan.participants, i) != plan.participants.end();
            if (in) {
                REQUIRE(agents[i] == global.params);
            } else {
                REQUIRE(agents[i] == before[i]);
            }
        }
    }
}

TEST_CASE("fl_round fixed points and small cases") {
    auto rng = rng_fork(7, "round");
    std::vector<PolicyParams> agents{random_params(rng), random_params(rng), random_params(rng)};
    const auto before = agents;
    fl_round(agents, RoundPlan{0, {1}});
    CHECK(agents == before);

    const auto a = random_params(rng);
    const auto b = random_params(rng);
    std::vector<PolicyParams> pair{a, b};
    fl_round(pair, RoundPlan{0, {0, 1}});
    const auto af = a.flatten();
    const auto bf = b.flatten();
    const auto mf = pair[0].flatten();
    CHECK(pair[0] == pair[1]);
    for (std::size_t k = 0; k < af.size(); ++k) CHECK(mf[k] == (af[k] + bf[k]) / 2.0);

    CHECK_THROWS_AS(fl_round(pair, RoundPlan{0, {0, 2}}), InvalidInput);
    CHECK_THROWS_AS(fl_round(pair, RoundPlan{0, {}}), InvalidInput);
}

TEST_CASE("dl_baseline_init copies the server model") {
    auto rng = rng_fork(8, "dl");
    const auto global = random_params(rng);
    const auto one = dl_baseline_init(global, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == global);
    const auto eight = dl_baseline_init(global, 8);
    CHECK(std::ranges::all_of(eight, [&](const PolicyParams& p) { return p == global; }));
    CHECK_THROWS_AS(dl_baseline_init(global, 0), ConfigError);
}
