#include "vpl/sampling.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "vpl/error.hpp"

namespace vpl {

std::uint64_t CounterRng::below(std::uint64_t bound) noexcept {
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

double CounterRng::normal() noexcept {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

LabelSet sample_label_set(std::span<const Index> true_labels, Index num_classes,
                          Index labels_per_class, std::uint64_t seed) {
  if (labels_per_class < 1) {
    throw Error(Errc::invalid_parameter, "labels per class must be >= 1");
  }
  std::vector<std::vector<Index>> members(static_cast<std::size_t>(num_classes));
  for (std::size_t i = 0; i < true_labels.size(); ++i) {
    const Index c = true_labels[i];
    if (c < 0 || c >= num_classes) {
      throw Error(Errc::invalid_input, "true label " + std::to_string(c) + " outside [0, " +
                                           std::to_string(num_classes) + ")");
    }
    members[c].push_back(static_cast<Index>(i));
  }

  std::vector<LabelEntry> entries;
  entries.reserve(static_cast<std::size_t>(num_classes * labels_per_class));
  for (Index c = 0; c < num_classes; ++c) {
    auto& pool = members[c];
    const auto available = static_cast<Index>(pool.size());
    if (available < labels_per_class) {
      throw Error(Errc::insufficient_labels,
                  "class " + std::to_string(c) + " has " + std::to_string(available) +
                      " members, fewer than the " + std::to_string(labels_per_class) + " requested");
    }
    CounterRng rng(seed, static_cast<std::uint64_t>(c));
    for (Index r = 0; r < labels_per_class; ++r) {
      const auto pick = r + static_cast<Index>(rng.below(static_cast<std::uint64_t>(available - r)));
      std::swap(pool[r], pool[pick]);
      entries.push_back(LabelEntry{pool[r], c});
    }
  }
  return LabelSet(num_classes, std::move(entries));
}

LabelSet sample_label_set(const Dataset& ds, Index labels_per_class, std::uint64_t seed) {
  return sample_label_set(ds.true_labels, ds.num_classes, labels_per_class, seed);
}

}  // namespace vpl
