#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ahprank {

/// SplitMix64 finalizer, used to derive independent per-trial seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Folds a path of integers (cell, trial, ...) into a child seed of `base`.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) noexcept;

/**
 * Portable random source.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the C++
 * standard. The standard distributions are not, so uniform and normal draws
 * are implemented here: 53-bit uniforms and the Marsaglia polar method.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer on [0, bound), rejection sampled.
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal.
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ahprank
