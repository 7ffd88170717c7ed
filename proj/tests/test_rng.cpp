#include <doctest.h>

#include <vector>

#include "fedspec/rng.hpp"

using fedspec::rng_fork;

namespace {

std::vector<std::uint64_t> first_draws(fedspec::Rng rng, int n = 100) {
    std::vector<std::uint64_t> out;
    for (int i = 0; i < n; ++i) out.push_back(rng());
    return out;
}

}  // namespace

TEST_CASE("same seed and label reproduce the stream") {
    CHECK(first_draws(rng_fork(42, "fading")) == first_draws(rng_fork(42, "fading")));
}

TEST_CASE("distinct labels and seeds give distinct streams") {
    const auto base = first_draws(rng_fork(42, "fading"));
    for (const char* label : {"topology", "pu", "init", "selection", "action:0", "action:1"}) {
        const auto other = first_draws(rng_fork(42, label));
        int equal = 0;
        for (std::size_t i = 0; i < base.size(); ++i) equal += base[i] == other[i];
        CHECK(equal == 0);
    }
    CHECK(first_draws(rng_fork(1, "pu")) != first_draws(rng_fork(2, "pu")));
}

TEST_CASE("fork order does not matter") {
    const auto a1 = first_draws(rng_fork(7, "a"));
    const auto b1 = first_draws(rng_fork(7, "b"));
    const auto b2 = first_draws(rng_fork(7, "b"));
    const auto a2 = first_draws(rng_fork(7, "a"));
    CHECK(a1 == a2);
    CHECK(b1 == b2);
}

TEST_CASE("uniform01 stays in [0,1) and uniform_index in range") {
    auto rng = rng_fork(3, "u");
    for (int i = 0; i < 10000; ++i) {
        const double u = fedspec::uniform01(rng);
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        REQUIRE(fedspec::uniform_index(rng, 7) < 7);
    }
    CHECK_THROWS(fedspec::uniform_index(rng, 0));
}
