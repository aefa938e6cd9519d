#include "vpl/labels.hpp"

#include <algorithm>
#include <string>

#include "vpl/error.hpp"

namespace vpl {

LabelSet::LabelSet(Index num_classes, std::vector<LabelEntry> entries)
    : num_classes_(num_classes), entries_(std::move(entries)) {
  if (num_classes_ < 1) throw Error(Errc::invalid_input, "label set needs at least one class");
  if (entries_.empty()) throw Error(Errc::invalid_input, "label set needs at least one label");
  std::sort(entries_.begin(), entries_.end(),
            [](const LabelEntry& a, const LabelEntry& b) { return a.node < b.node; });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.node < 0) throw Error(Errc::invalid_input, "negative node index in label set");
    if (e.cls < 0 || e.cls >= num_classes_) {
      throw Error(Errc::invalid_input, "class " + std::to_string(e.cls) + " of node " +
                                           std::to_string(e.node) + " outside [0, " +
                                           std::to_string(num_classes_) + ")");
    }
    if (i > 0 && entries_[i - 1].node == e.node) {
      throw Error(Errc::invalid_input, "node " + std::to_string(e.node) + " labeled twice");
    }
  }
}

void LabelSet::check_nodes(Index n) const {
  if (entries_.back().node >= n) {
    throw Error(Errc::invalid_input, "labeled node " + std::to_string(entries_.back().node) +
                                         " outside graph of " + std::to_string(n) + " nodes");
  }
}

Eigen::RowVectorXd LabelSet::one_hot(Index entry) const {
  Eigen::RowVectorXd y = Eigen::RowVectorXd::Zero(num_classes_);
  y[entries_.at(static_cast<std::size_t>(entry)).cls] = 1.0;
  return y;
}

Eigen::MatrixXd LabelSet::one_hot_matrix() const {
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(size(), num_classes_);
  for (Index r = 0; r < size(); ++r) y(r, entries_[static_cast<std::size_t>(r)].cls) = 1.0;
  return y;
}

std::vector<bool> LabelSet::labeled_mask(Index n) const {
  check_nodes(n);
  std::vector<bool> mask(static_cast<std::size_t>(n), false);
  for (const auto& e : entries_) mask[static_cast<std::size_t>(e.node)] = true;
  return mask;
}

}  // namespace vpl
