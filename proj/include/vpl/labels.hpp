#pragma once

#include <vector>

#include <Eigen/Dense>

#include "vpl/graph.hpp"

namespace vpl {

struct LabelEntry {
  Index node = 0;
  Index cls = 0;

  friend bool operator==(const LabelEntry&, const LabelEntry&) = default;
};

/// Labeled nodes with their classes, one-hot encoded on demand.
class LabelSet {
 public:
  /// Entries are sorted by node index. Throws on duplicates, out-of-range
  /// classes, or an empty list.
  LabelSet(Index num_classes, std::vector<LabelEntry> entries);

  Index num_classes() const noexcept { return num_classes_; }
  Index size() const noexcept { return static_cast<Index>(entries_.size()); }
  const std::vector<LabelEntry>& entries() const noexcept { return entries_; }

  /// Throws invalid-input when a node index is >= n.
  void check_nodes(Index n) const;

  Eigen::RowVectorXd one_hot(Index entry) const;
  /// l x k matrix of one-hot rows in entry order.
  Eigen::MatrixXd one_hot_matrix() const;
  std::vector<bool> labeled_mask(Index n) const;

  friend bool operator==(const LabelSet&, const LabelSet&) = default;

 private:
  Index num_classes_;
  std::vector<LabelEntry> entries_;
};

}  // namespace vpl
