#include "vetocore/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace vetocore {

std::uint64_t rand_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("rand_below: bound must be positive");
  // Rejection below the largest multiple of bound.
  const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
  for (;;) {
    std::uint64_t r = rng();
    if (r >= limit) return r % bound;
  }
}

void shuffle(std::vector<int>& values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::size_t j = rand_below(rng, i);
    std::swap(values[i - 1], values[j]);
  }
}

std::vector<int> sample_without_replacement(int n, int k, Rng& rng) {
  if (k < 0 || k > n) throw std::invalid_argument("sample_without_replacement: k out of range");
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  for (int i = 0; i < k; ++i) {
    std::size_t j = i + rand_below(rng, static_cast<std::uint64_t>(n - i));
    std::swap(pool[i], pool[j]);
  }
  std::vector<int> picked(pool.begin(), pool.begin() + k);
  std::sort(picked.begin(), picked.end());
  return picked;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ (a + 0x9e3779b97f4a7c15ULL));
  h = splitmix64(h ^ (b + 0x7f4a7c159e3779b9ULL));
  return h;
}

}  // namespace vetocore
