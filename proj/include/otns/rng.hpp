#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "otns/bits.hpp"

namespace otns {

// splitmix64 finalizer; used to decorrelate per-stream seeds derived from one
// master seed so that stream k of seed s and stream 0 of seed s+k differ.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(splitmix64(master) ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
}

// Deterministic random stream.  All randomness in the toolkit flows through
// this class; bit/uniform extraction is spelled out explicitly (rather than
// via std distributions) so that output is reproducible across platforms and
// standard-library versions for a given seed.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : eng_(seed) {}
  RngStream(std::uint64_t master, std::uint64_t stream) : eng_(derive_stream_seed(master, stream)) {}

  std::uint64_t next_u64() { return eng_(); }

  int bit() { return int(next_u64() >> 63); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) {
    if (p <= 0.0) { next_u64(); return false; }  // consume for stable draw counts
    if (p >= 1.0) { next_u64(); return true; }
    return uniform() < p;
  }

  // Uniform integer in [0, bound) via rejection sampling (unbiased).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("RngStream::below: bound must be positive");
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
    std::uint64_t v;
    do { v = next_u64(); } while (v >= limit);
    return v % bound;
  }

  Bits random_bits(std::size_t n) {
    Bits out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = std::uint8_t(bit());
    return out;
  }

  // Uniform k-subset of {0,...,n-1} via partial Fisher-Yates; returned sorted.
  std::vector<std::size_t> random_subset(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 eng_;
};

inline std::vector<std::size_t> RngStream::random_subset(std::size_t n, std::size_t k) {
  if (k > n) throw std::invalid_argument("RngStream::random_subset: k > n");
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + std::size_t(below(n - i));
    std::swap(pool[i], pool[j]);
  }
  std::vector<std::size_t> out(pool.begin(), pool.begin() + std::ptrdiff_t(k));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace otns
