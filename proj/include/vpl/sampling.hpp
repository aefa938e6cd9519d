#pragma once

#include <cstdint>
#include <span>

#include "vpl/graph.hpp"
#include "vpl/io.hpp"
#include "vpl/labels.hpp"

namespace vpl {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Counter-based generator: the i-th draw of stream s under seed k is a pure
/// function of (k, s, i), using only fixed-width integer arithmetic.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(splitmix64(splitmix64(seed) ^ splitmix64(~stream))) {}

  std::uint64_t next() noexcept { return splitmix64(key_ + 0xD1B54A32D192ED69ULL * counter_++); }

  /// Uniform integer in [0, bound) by rejection; bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller (not bit-reproducible across libm builds).
  double normal() noexcept;

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Seed for trial `index` under `base`; independent of execution order.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(base) + splitmix64(index ^ 0xA0761D6478BD642FULL));
}

/// Exactly m nodes per class, drawn without replacement by a partial
/// Fisher-Yates shuffle of each class's members (ascending node order) using
/// CounterRng(seed, class).
LabelSet sample_label_set(std::span<const Index> true_labels, Index num_classes,
                          Index labels_per_class, std::uint64_t seed);
LabelSet sample_label_set(const Dataset& ds, Index labels_per_class, std::uint64_t seed);

}  // namespace vpl
