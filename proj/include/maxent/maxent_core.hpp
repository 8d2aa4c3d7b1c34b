#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "maxent/dataset.hpp"
#include "maxent/linalg.hpp"
#include "maxent/mixture_model.hpp"

namespace maxent {

// Bias-free linear softmax classifier: logits z = W (A x).
//
// W is C x n. The feature map A is n x n_raw; when absent it is the identity
// and n == n_raw.
class LinearSoftmaxModel {
 public:
  explicit LinearSoftmaxModel(Matrix classifier);
  LinearSoftmaxModel(Matrix classifier, Matrix feature_map);

  const Matrix& classifier() const { return classifier_; }
  Matrix& classifier() { return classifier_; }
  bool has_feature_map() const { return feature_map_.has_value(); }
  const Matrix& feature_map() const;
  Matrix& feature_map();

  Index class_count() const { return classifier_.rows(); }
  Index feature_dim() const { return classifier_.cols(); }
  Index input_dim() const { return feature_map_ ? feature_map_->cols() : classifier_.cols(); }

  // Phi(x) for one input, or for every row of a sample matrix.
  Vector features(const Eigen::Ref<const Vector>& x) const;
  Vector features(const Vector& x) const { return features(Eigen::Ref<const Vector>(x)); }
  RowMatrix features(const RowMatrix& inputs) const;
  Vector logits(const Eigen::Ref<const Vector>& x) const;
  Vector logits(const Vector& x) const { return logits(Eigen::Ref<const Vector>(x)); }
  RowMatrix logits(const RowMatrix& inputs) const;

  // sqrt(sum_i ||w_i||^2)
  double l2_norm() const { return classifier_.norm(); }
  // max_i ||w_i||
  double inf_norm() const;

  bool all_finite() const;

  friend bool operator==(const LinearSoftmaxModel& a, const LinearSoftmaxModel& b);

 private:
  Matrix classifier_;
  std::optional<Matrix> feature_map_;
};

// A point of the probability simplex: entries in [0, 1] summing to 1.
class ProbVector {
 public:
  // Checks the simplex invariant (sum within 1e-12).
  explicit ProbVector(Vector probabilities);

  const Vector& values() const { return values_; }
  double operator[](Index i) const { return values_[i]; }
  Index size() const { return values_.size(); }

 private:
  struct Unchecked {};
  ProbVector(Vector probabilities, Unchecked) : values_(std::move(probabilities)) {}
  Vector values_;

  friend ProbVector softmax(const Eigen::Ref<const Vector>& logits);
};

// Max-logit-shifted softmax.
ProbVector softmax(const Eigen::Ref<const Vector>& logits);

// Everything the objectives need from one logit vector, computed in log space:
//   log_probs_j = (z_j - max z) - ln sum_k exp(z_k - max z)
//   entropy     = ln s - sum_j p_j (z_j - max z), clamped to [0, ln C]
struct LogitSummary {
  Vector probs;
  Vector log_probs;
  double entropy = 0.0;
};

LogitSummary summarize_logits(const Eigen::Ref<const Vector>& logits);

ProbVector predict_proba(const LinearSoftmaxModel& model, const Eigen::Ref<const Vector>& x);

// -sum p ln p in nats with 0 ln 0 = 0; probabilities floored at 1e-300 inside ln.
double entropy(const ProbVector& p);

// (1/N) sum_i H[p(.|x_i)]
double empirical_mean_entropy(const LinearSoftmaxModel& model, const LabeledDataset& dataset);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t draws = 0;
};

// Mean prediction entropy over `draws` fresh samples from `mixture`, with the
// standard error of that mean. draws >= 100.
MonteCarloEstimate expected_entropy_mc(const LinearSoftmaxModel& model,
                                       const GaussianMixture& mixture, std::size_t draws,
                                       std::uint64_t seed);

// Same estimate over an already drawn pool of inputs (one per row).
MonteCarloEstimate mean_entropy_estimate(const LinearSoftmaxModel& model, const RowMatrix& inputs);

struct Objective {
  enum class Kind { cross_entropy, maxent, label_smoothing };

  Kind kind = Kind::maxent;
  double gamma = 1.0;    // maxent only
  double epsilon = 0.0;  // label_smoothing only

  static Objective cross_entropy() { return {Kind::cross_entropy, 0.0, 0.0}; }
  static Objective maxent(double gamma) { return {Kind::maxent, gamma, 0.0}; }
  static Objective label_smoothing(double epsilon) { return {Kind::label_smoothing, 0.0, epsilon}; }
};

// mean over the batch of -ln p_y(x) - gamma H(p(x))
double maxent_loss(const LinearSoftmaxModel& model, const LabeledDataset& batch, double gamma);
// mean over the batch of -sum_j t_j ln p_j(x), t = (1 - eps) onehot(y) + eps / C
double label_smoothing_loss(const LinearSoftmaxModel& model, const LabeledDataset& batch,
                            double epsilon);
double objective_loss(const LinearSoftmaxModel& model, const LabeledDataset& batch,
                      const Objective& objective);

struct Gradient {
  Matrix classifier;
  std::optional<Matrix> feature_map;
};

struct ObjectiveEvaluation {
  double loss = 0.0;
  double mean_cross_entropy = 0.0;
  double mean_entropy = 0.0;
  Gradient gradient;
};

// Loss, telemetry and batch-mean gradient in one pass. Per-sample logit
// gradient:
//   cross_entropy    p - y
//   maxent           (p - y) + gamma p_j (ln p_j + H)
//   label_smoothing  p - t
// The feature map gradient W^T g x^T is produced only when requested and the
// model has a feature map.
ObjectiveEvaluation evaluate_objective(const LinearSoftmaxModel& model,
                                       const LabeledDataset& batch, const Objective& objective,
                                       bool feature_map_gradient);

Gradient maxent_gradient(const LinearSoftmaxModel& model, const LabeledDataset& batch,
                         double gamma);

}  // namespace maxent
