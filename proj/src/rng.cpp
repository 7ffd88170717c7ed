#include "fedspec/rng.hpp"

#include <limits>

#include "fedspec/error.hpp"

namespace fedspec {
namespace {

constexpr std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const char c : text) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

Rng rng_fork(std::uint64_t master_seed, std::string_view stream_label) {
    const std::uint64_t a = splitmix64(master_seed);
    const std::uint64_t b = splitmix64(a ^ fnv1a(stream_label));
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return Rng(seq);
}

std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
    if (n == 0) {
        throw InvalidInput("uniform_index: empty range");
    }
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t draw = rng();
    while (draw >= limit) {
        draw = rng();
    }
    return draw % n;
}

}  // namespace fedspec
