#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "maxent/linalg.hpp"

namespace maxent {

// N feature vectors (one per row) with integer class labels in
// [0, class_count) and a per-sample flag marking corrupted labels.
class LabeledDataset {
 public:
  LabeledDataset() = default;
  LabeledDataset(RowMatrix features, std::vector<int> labels, int class_count);
  LabeledDataset(RowMatrix features, std::vector<int> labels, std::vector<bool> noise_mask,
                 int class_count);

  const RowMatrix& features() const { return features_; }
  const std::vector<int>& labels() const { return labels_; }
  std::vector<int>& mutable_labels() { return labels_; }
  const std::vector<bool>& noise_mask() const { return noise_mask_; }
  std::vector<bool>& mutable_noise_mask() { return noise_mask_; }

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  Index dim() const { return features_.cols(); }
  int class_count() const { return class_count_; }

  // Rows in the given order; duplicates allowed.
  LabeledDataset subset(std::span<const std::size_t> indices) const;
  // The first `count` rows.
  LabeledDataset head(std::size_t count) const;

  // CSV with header `label,f0,...,f{n-1}`; doubles printed round-trip exact.
  void write_csv(std::ostream& out) const;

  friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;

 private:
  void check() const;

  RowMatrix features_;
  std::vector<int> labels_;
  std::vector<bool> noise_mask_;
  int class_count_ = 0;
};

}  // namespace maxent
