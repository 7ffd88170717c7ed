#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fedspec {

using Rng = std::mt19937_64;

/// Derives an independent generator for `stream_label` from `master_seed`.
/// The derivation is stateless: the same (seed, label) pair always yields the
/// same stream, no matter which other streams were forked before it.
Rng rng_fork(std::uint64_t master_seed, std::string_view stream_label);

/// Uniform double on [0, 1) built from the top 53 bits of one draw.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer on [0, n). Rejection sampling, so unbiased for every n.
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

}  // namespace fedspec
