#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace stlcorpus {

/// Seeded random source with portable draws: the helpers below only use the
/// raw 64-bit engine output, so results agree across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for draw `index` of a run seeded with `seed`; lets
  /// workers produce the same records no matter how indices are partitioned.
  static Rng for_stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform integer in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  bool bernoulli(double p) { return uniform() < p; }
  /// Index drawn proportionally to non-negative weights with a positive sum.
  std::size_t weighted(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; a cheap, well-mixed 64-bit hash.
std::uint64_t mix64(std::uint64_t x);

}  // namespace stlcorpus
