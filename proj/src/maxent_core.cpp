#include "maxent/maxent_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maxent/error.hpp"

namespace maxent {
namespace {

constexpr double kProbFloor = 1e-300;
constexpr double kSimplexTolerance = 1e-12;

void require_nonempty(const LabeledDataset& batch) {
  if (batch.empty()) throw ShapeError("batch is empty");
}

void require_input_dim(const LinearSoftmaxModel& model, Index dim) {
  if (dim != model.input_dim()) {
    throw ShapeError("input has dimension " + std::to_string(dim) + ", model expects " +
                     std::to_string(model.input_dim()));
  }
}

void require_classes(const LinearSoftmaxModel& model, const LabeledDataset& batch) {
  if (batch.class_count() > model.class_count()) {
    throw ShapeError("dataset has " + std::to_string(batch.class_count()) +
                     " classes, model only " + std::to_string(model.class_count()));
  }
}

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) throw NonFiniteError(std::string(what) + " is not finite");
}

}  // namespace

LinearSoftmaxModel::LinearSoftmaxModel(Matrix classifier) : classifier_(std::move(classifier)) {
  if (classifier_.rows() < 1 || classifier_.cols() < 1) {
    throw ShapeError("classifier must have at least one row and one column");
  }
  if (!classifier_.allFinite()) throw NonFiniteError("classifier has non-finite entries");
}

LinearSoftmaxModel::LinearSoftmaxModel(Matrix classifier, Matrix feature_map)
    : LinearSoftmaxModel(std::move(classifier)) {
  if (feature_map.rows() != classifier_.cols() || feature_map.cols() < 1) {
    throw ShapeError("feature map is " + std::to_string(feature_map.rows()) + "x" +
                     std::to_string(feature_map.cols()) + ", classifier expects " +
                     std::to_string(classifier_.cols()) + " rows");
  }
  if (!feature_map.allFinite()) throw NonFiniteError("feature map has non-finite entries");
  feature_map_ = std::move(feature_map);
}

const Matrix& LinearSoftmaxModel::feature_map() const {
  if (!feature_map_) throw ShapeError("model uses the identity feature map");
  return *feature_map_;
}

Matrix& LinearSoftmaxModel::feature_map() {
  if (!feature_map_) throw ShapeError("model uses the identity feature map");
  return *feature_map_;
}

Vector LinearSoftmaxModel::features(const Eigen::Ref<const Vector>& x) const {
  require_input_dim(*this, x.size());
  if (feature_map_) return *feature_map_ * x;
  return x;
}

RowMatrix LinearSoftmaxModel::features(const RowMatrix& inputs) const {
  require_input_dim(*this, inputs.cols());
  if (feature_map_) return inputs * feature_map_->transpose();
  return inputs;
}

Vector LinearSoftmaxModel::logits(const Eigen::Ref<const Vector>& x) const {
  return classifier_ * features(x);
}

RowMatrix LinearSoftmaxModel::logits(const RowMatrix& inputs) const {
  return features(inputs) * classifier_.transpose();
}

double LinearSoftmaxModel::inf_norm() const { return classifier_.rowwise().norm().maxCoeff(); }

bool LinearSoftmaxModel::all_finite() const {
  return classifier_.allFinite() && (!feature_map_ || feature_map_->allFinite());
}

bool operator==(const LinearSoftmaxModel& a, const LinearSoftmaxModel& b) {
  if (a.classifier_.rows() != b.classifier_.rows() ||
      a.classifier_.cols() != b.classifier_.cols() ||
      a.feature_map_.has_value() != b.feature_map_.has_value()) {
    return false;
  }
  if (a.classifier_ != b.classifier_) return false;
  if (a.feature_map_) {
    if (a.feature_map_->rows() != b.feature_map_->rows() ||
        a.feature_map_->cols() != b.feature_map_->cols()) {
      return false;
    }
    return *a.feature_map_ == *b.feature_map_;
  }
  return true;
}

ProbVector::ProbVector(Vector probabilities) : values_(std::move(probabilities)) {
  if (values_.size() < 1) throw ShapeError("probability vector is empty");
  double total = 0.0;
  for (Index i = 0; i < values_.size(); ++i) {
    const double p = values_[i];
    if (!(p >= 0.0 && p <= 1.0)) {
      throw DomainError("probability " + std::to_string(p) + " outside [0, 1]");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kSimplexTolerance) {
    throw DomainError("probabilities sum to " + std::to_string(total));
  }
}

LogitSummary summarize_logits(const Eigen::Ref<const Vector>& logits) {
  const Index count = logits.size();
  const double top = logits.maxCoeff();
  LogitSummary out;
  out.probs.resize(count);
  out.log_probs.resize(count);
  double total = 0.0;
  for (Index j = 0; j < count; ++j) {
    const double e = std::exp(logits[j] - top);
    out.probs[j] = e;
    total += e;
  }
  const double log_total = std::log(total);
  double expected_shift = 0.0;
  for (Index j = 0; j < count; ++j) {
    const double shifted = logits[j] - top;
    out.probs[j] /= total;
    out.log_probs[j] = shifted - log_total;
    expected_shift += out.probs[j] * shifted;
  }
  out.entropy = std::clamp(log_total - expected_shift, 0.0, std::log(static_cast<double>(count)));
  return out;
}

ProbVector softmax(const Eigen::Ref<const Vector>& logits) {
  if (logits.size() < 1) throw ShapeError("no logits");
  if (!logits.allFinite()) throw NonFiniteError("logits are not finite");
  return ProbVector(summarize_logits(logits).probs, ProbVector::Unchecked{});
}

ProbVector predict_proba(const LinearSoftmaxModel& model, const Eigen::Ref<const Vector>& x) {
  require_input_dim(model, x.size());
  if (!x.allFinite()) throw NonFiniteError("input is not finite");
  return softmax(model.logits(x));
}

double entropy(const ProbVector& p) {
  double total = 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    const double pi = p[i];
    if (pi > 0.0) total -= pi * std::log(std::max(pi, kProbFloor));
  }
  return std::clamp(total, 0.0, std::log(static_cast<double>(p.size())));
}

double empirical_mean_entropy(const LinearSoftmaxModel& model, const LabeledDataset& dataset) {
  require_nonempty(dataset);
  require_input_dim(model, dataset.dim());
  const RowMatrix logits = model.logits(dataset.features());
  double total = 0.0;
  for (Index i = 0; i < logits.rows(); ++i) {
    total += summarize_logits(logits.row(i).transpose()).entropy;
  }
  return total / static_cast<double>(dataset.size());
}

MonteCarloEstimate mean_entropy_estimate(const LinearSoftmaxModel& model, const RowMatrix& inputs) {
  if (inputs.rows() < 2) throw ShapeError("need at least two draws for a standard error");
  require_input_dim(model, inputs.cols());
  // Chunked so the logit buffer stays small for large pools.
  constexpr Index kChunk = 4096;
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t seen = 0;
  for (Index start = 0; start < inputs.rows(); start += kChunk) {
    const Index rows = std::min(kChunk, inputs.rows() - start);
    const RowMatrix logits = model.logits(RowMatrix(inputs.middleRows(start, rows)));
    for (Index i = 0; i < rows; ++i) {
      const double h = summarize_logits(logits.row(i).transpose()).entropy;
      ++seen;
      const double delta = h - mean;
      mean += delta / static_cast<double>(seen);
      m2 += delta * (h - mean);
    }
  }
  const double variance = m2 / static_cast<double>(seen - 1);
  return {mean, std::sqrt(std::max(variance, 0.0) / static_cast<double>(seen)), seen};
}

MonteCarloEstimate expected_entropy_mc(const LinearSoftmaxModel& model,
                                       const GaussianMixture& mixture, std::size_t draws,
                                       std::uint64_t seed) {
  if (draws < 100) throw DomainError("expected_entropy_mc needs at least 100 draws");
  require_input_dim(model, mixture.dim());
  MixtureSampler sampler(mixture, seed);
  return mean_entropy_estimate(model, sampler.draw_many(draws));
}

double maxent_loss(const LinearSoftmaxModel& model, const LabeledDataset& batch, double gamma) {
  return objective_loss(model, batch, Objective::maxent(gamma));
}

double label_smoothing_loss(const LinearSoftmaxModel& model, const LabeledDataset& batch,
                            double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in [0, 1)");
  return objective_loss(model, batch, Objective::label_smoothing(epsilon));
}

double objective_loss(const LinearSoftmaxModel& model, const LabeledDataset& batch,
                      const Objective& objective) {
  return evaluate_objective(model, batch, objective, false).loss;
}

ObjectiveEvaluation evaluate_objective(const LinearSoftmaxModel& model,
                                       const LabeledDataset& batch, const Objective& objective,
                                       bool feature_map_gradient) {
  require_nonempty(batch);
  require_input_dim(model, batch.dim());
  require_classes(model, batch);
  if (objective.kind == Objective::Kind::maxent && !(objective.gamma >= 0.0)) {
    throw DomainError("gamma must be non-negative");
  }
  if (objective.kind == Objective::Kind::label_smoothing &&
      !(objective.epsilon >= 0.0 && objective.epsilon < 1.0)) {
    throw DomainError("epsilon must lie in [0, 1)");
  }

  const Index classes = model.class_count();
  const auto batch_size = static_cast<Index>(batch.size());
  const RowMatrix phi = model.features(batch.features());
  const RowMatrix logits = phi * model.classifier().transpose();
  RowMatrix logit_grad(batch_size, classes);

  double loss_sum = 0.0;
  double ce_sum = 0.0;
  double entropy_sum = 0.0;
  for (Index i = 0; i < batch_size; ++i) {
    const LogitSummary s = summarize_logits(logits.row(i).transpose());
    const int label = batch.labels()[static_cast<std::size_t>(i)];
    const double ce = -s.log_probs[label];
    ce_sum += ce;
    entropy_sum += s.entropy;
    auto g = logit_grad.row(i);
    switch (objective.kind) {
      case Objective::Kind::cross_entropy:
        loss_sum += ce;
        g = s.probs.transpose();
        g[label] -= 1.0;
        break;
      case Objective::Kind::maxent:
        g = s.probs.transpose();
        g[label] -= 1.0;
        if (objective.gamma != 0.0) {
          loss_sum += ce - objective.gamma * s.entropy;
          for (Index j = 0; j < classes; ++j) {
            g[j] += objective.gamma * s.probs[j] * (s.log_probs[j] + s.entropy);
          }
        } else {
          loss_sum += ce;
        }
        break;
      case Objective::Kind::label_smoothing: {
        const double off = objective.epsilon / static_cast<double>(classes);
        double smoothed = 0.0;
        for (Index j = 0; j < classes; ++j) {
          const double target = (j == label ? 1.0 - objective.epsilon : 0.0) + off;
          smoothed += target * s.log_probs[j];
          g[j] = s.probs[j] - target;
        }
        loss_sum -= smoothed;
        break;
      }
    }
  }

  const double inv = 1.0 / static_cast<double>(batch_size);
  ObjectiveEvaluation out;
  out.loss = loss_sum * inv;
  out.mean_cross_entropy = ce_sum * inv;
  out.mean_entropy = entropy_sum * inv;
  require_finite(out.loss, "loss");
  out.gradient.classifier = (logit_grad.transpose() * phi) * inv;
  if (feature_map_gradient && model.has_feature_map()) {
    const RowMatrix back = logit_grad * model.classifier();  // B x n
    out.gradient.feature_map = (back.transpose() * batch.features()) * inv;
    if (!out.gradient.feature_map->allFinite()) {
      throw NonFiniteError("feature map gradient is not finite");
    }
  }
  if (!out.gradient.classifier.allFinite()) throw NonFiniteError("classifier gradient is not finite");
  return out;
}

Gradient maxent_gradient(const LinearSoftmaxModel& model, const LabeledDataset& batch,
                         double gamma) {
  return evaluate_objective(model, batch, Objective::maxent(gamma), true).gradient;
}

}  // namespace maxent
