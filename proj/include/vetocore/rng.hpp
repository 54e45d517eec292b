#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace vetocore {

// mt19937_64's output sequence is fixed by the standard, so everything built
// on these helpers is reproducible across platforms. std::shuffle and the
// std:: distributions are not, which is why the sampling code lives here.
using Rng = std::mt19937_64;

// Unbiased integer in [0, bound) via rejection sampling. bound > 0.
std::uint64_t rand_below(Rng& rng, std::uint64_t bound);

// In-place Fisher-Yates.
void shuffle(std::vector<int>& values, Rng& rng);

// k distinct values from {0, ..., n-1}, returned in ascending order.
std::vector<int> sample_without_replacement(int n, int k, Rng& rng);

// Stable seed derivation for per-task RNG streams (splitmix64 chain).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b);

}  // namespace vetocore
