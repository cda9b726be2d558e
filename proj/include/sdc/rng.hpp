#pragma once

// Deterministic sampling helpers: mt19937_64 plus hand-rolled bounded draws,
// so a given seed produces the same draws on every platform and stdlib.

#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace sdc::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream seed for sub-experiment (a, b) of a base seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(base) ^ a) ^ b);
}

// Uniform in [0, n), rejection sampled so there is no modulo bias.
inline std::uint64_t bounded(std::mt19937_64& g, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("bounded draw from an empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / n * n;
  std::uint64_t r;
  do {
    r = g();
  } while (r >= limit);
  return r % n;
}

// Uniform double in [0, 1) with 53 random bits.
inline double unit_real(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// k distinct elements of pool, uniform, by partial Fisher-Yates.
inline std::vector<std::size_t> sample_without_replacement(std::vector<std::size_t> pool,
                                                           std::size_t k, std::mt19937_64& g) {
  if (k > pool.size()) throw std::invalid_argument("sample larger than population");
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(bounded(g, pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

inline std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::mt19937_64& g) {
  std::vector<std::size_t> ix(n);
  std::iota(ix.begin(), ix.end(), std::size_t{0});
  return sample_without_replacement(std::move(ix), k, g);
}

}  // namespace sdc::rng
