#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "vpl/graph.hpp"

namespace vpl {

inline constexpr Index kGarmentSide = 28;
inline constexpr Index kGarmentClasses = 10;

struct SyntheticImages {
  /// One flattened 28x28 image per row, pixel values in [0, 255].
  Eigen::MatrixXd pixels;
  std::vector<Index> labels;
};

/// Procedural stand-in for a clothing-image benchmark: ten silhouette classes
/// (t-shirt, trouser, pullover, dress, coat, sandal, shirt, sneaker, bag,
/// ankle boot) with random placement, scale, rotation, texture, contrast and
/// pixel noise. Sample i belongs to class i % 10.
SyntheticImages make_garment_images(Index count, std::uint64_t seed);

}  // namespace vpl
