#include "maxent/dataset.hpp"

#include <ostream>
#include <string>

#include "maxent/error.hpp"
#include "maxent/format.hpp"

namespace maxent {

LabeledDataset::LabeledDataset(RowMatrix features, std::vector<int> labels, int class_count)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      noise_mask_(labels_.size(), false),
      class_count_(class_count) {
  check();
}

LabeledDataset::LabeledDataset(RowMatrix features, std::vector<int> labels,
                               std::vector<bool> noise_mask, int class_count)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      noise_mask_(std::move(noise_mask)),
      class_count_(class_count) {
  check();
}

void LabeledDataset::check() const {
  if (static_cast<std::size_t>(features_.rows()) != labels_.size()) {
    throw ShapeError("dataset has " + std::to_string(features_.rows()) + " feature rows but " +
                     std::to_string(labels_.size()) + " labels");
  }
  if (noise_mask_.size() != labels_.size()) {
    throw ShapeError("noise mask length does not match label count");
  }
  if (class_count_ < 1) throw ShapeError("class count must be positive");
  for (int label : labels_) {
    if (label < 0 || label >= class_count_) {
      throw ShapeError("label " + std::to_string(label) + " outside [0, " +
                       std::to_string(class_count_) + ")");
    }
  }
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
  RowMatrix rows(static_cast<Index>(indices.size()), features_.cols());
  std::vector<int> labels(indices.size());
  std::vector<bool> mask(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const std::size_t src = indices[i];
    if (src >= size()) throw ShapeError("subset index out of range");
    rows.row(static_cast<Index>(i)) = features_.row(static_cast<Index>(src));
    labels[i] = labels_[src];
    mask[i] = noise_mask_[src];
  }
  return LabeledDataset(std::move(rows), std::move(labels), std::move(mask), class_count_);
}

LabeledDataset LabeledDataset::head(std::size_t count) const {
  if (count > size()) throw ShapeError("head count exceeds dataset size");
  RowMatrix rows = features_.topRows(static_cast<Index>(count));
  std::vector<int> labels(labels_.begin(), labels_.begin() + static_cast<std::ptrdiff_t>(count));
  std::vector<bool> mask(noise_mask_.begin(),
                         noise_mask_.begin() + static_cast<std::ptrdiff_t>(count));
  return LabeledDataset(std::move(rows), std::move(labels), std::move(mask), class_count_);
}

void LabeledDataset::write_csv(std::ostream& out) const {
  out << "label";
  for (Index j = 0; j < features_.cols(); ++j) out << ",f" << j;
  out << '\n';
  for (std::size_t i = 0; i < size(); ++i) {
    out << labels_[i];
    for (Index j = 0; j < features_.cols(); ++j) {
      out << ',' << format_double(features_(static_cast<Index>(i), j));
    }
    out << '\n';
  }
}

}  // namespace maxent
