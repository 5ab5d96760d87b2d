#ifndef MCRP_RANDOM_HPP
#define MCRP_RANDOM_HPP

#include "mcrp/rational.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace mcrp {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed of replicate `index` under `master`: mix64(master ^ mix64(index + 1)).
std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t index);

/// Deterministic random stream seeded by a 64-bit value.
///
/// Bounded draws use mask-and-reject over raw 64-bit words, so a given seed
/// yields the same values on every platform and every draw is exactly uniform.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound). bound must be positive.
    std::uint64_t uniform_below(std::uint64_t bound);

    /// Uniform in [0, bound) for an arbitrary-precision positive bound.
    BigInt uniform_below(const BigInt& bound);

    /// Bernoulli(num/den), exact. Requires 0 <= num <= den, den > 0.
    bool bernoulli(std::uint64_t num, std::uint64_t den) { return uniform_below(den) < num; }

    /// Uniformly random m-subset of {0, ..., n-1}, sorted ascending (Floyd's algorithm).
    std::vector<std::uint64_t> sorted_subset(std::uint64_t n, std::uint64_t m);

private:
    std::mt19937_64 engine_;
};

}  // namespace mcrp

#endif  // MCRP_RANDOM_HPP
