#include "maxent/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "maxent/error.hpp"
#include "maxent/format.hpp"
#include "maxent/rng.hpp"

namespace maxent {
namespace {

constexpr std::uint64_t kClassifierStream = 0;
constexpr std::uint64_t kFeatureMapStream = 1;
constexpr std::uint64_t kShuffleStream = 2;

Matrix uniform_matrix(Index rows, Index cols, double scale, Rng& rng) {
  Matrix m(rows, cols);
  // Row-major fill order so the draw sequence does not depend on storage order.
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) m(r, c) = rng.uniform(-scale, scale);
  }
  return m;
}

void shuffle(std::vector<std::size_t>& order, Rng& rng) {
  for (std::size_t i = order.size(); i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(order[i - 1], order[j]);
  }
}

void require_finite_field(double value, const char* field) {
  if (!std::isfinite(value)) throw ValidationError(field, "must be finite");
}

EpochRecord snapshot(const LinearSoftmaxModel& model, const LabeledDataset& val_set, int epoch,
                     double train_ce, double train_entropy, double lr) {
  EpochRecord record;
  record.epoch = epoch;
  record.train_ce = train_ce;
  record.train_entropy = train_entropy;
  if (!val_set.empty()) {
    const EvaluationResult val = evaluate(model, val_set);
    record.val_ce = val.mean_ce;
    record.val_accuracy = val.accuracy;
  }
  record.w_l2 = model.l2_norm();
  record.w_inf = model.inf_norm();
  record.lr = lr;
  return record;
}

}  // namespace

double LrSchedule::at(int epoch) const {
  switch (kind) {
    case Kind::constant:
      return base;
    case Kind::step:
      return base * std::pow(factor, static_cast<double>(epoch / std::max(interval, 1)));
    case Kind::linear: {
      const double remaining = 1.0 - static_cast<double>(epoch) / std::max(decay_epochs, 1);
      return base * std::max(remaining, 0.0);
    }
  }
  return base;
}

Objective TrainConfig::resolved_objective() const {
  switch (objective) {
    case ObjectiveKind::maxent:
      return Objective::maxent(gamma);
    case ObjectiveKind::lsr:
      return Objective::label_smoothing(lsr_epsilon);
    case ObjectiveKind::ce:
      return Objective::cross_entropy();
  }
  return Objective::cross_entropy();
}

void TrainConfig::validate() const {
  require_finite_field(gamma, "gamma");
  require_finite_field(lsr_epsilon, "lsr_epsilon");
  require_finite_field(lr.base, "lr");
  require_finite_field(lr.factor, "lr_factor");
  require_finite_field(weight_decay, "weight_decay");
  require_finite_field(init_scale, "init_scale");
  if (gamma < 0.0) throw ValidationError("gamma", "must be >= 0");
  if (lsr_epsilon < 0.0 || lsr_epsilon >= 1.0) {
    throw ValidationError("lsr_epsilon", "must lie in [0, 1)");
  }
  if (lr.base < 0.0) throw ValidationError("lr", "must be >= 0");
  if (lr.kind == LrSchedule::Kind::step && lr.interval < 1) {
    throw ValidationError("lr_interval", "must be >= 1");
  }
  if (lr.kind == LrSchedule::Kind::linear && lr.decay_epochs < 1) {
    throw ValidationError("lr_decay_epochs", "must be >= 1");
  }
  if (weight_decay < 0.0) throw ValidationError("weight_decay", "must be >= 0");
  if (batch_size < 1) throw ValidationError("batch_size", "must be >= 1");
  if (epochs < 0) throw ValidationError("epochs", "must be >= 0");
  if (init_scale < 0.0) throw ValidationError("init_scale", "must be >= 0");
}

void TrainHistory::write_csv(std::ostream& out) const {
  out << "epoch,train_ce,train_entropy,val_ce,val_acc,w_l2,w_inf,lr\n";
  for (const auto& r : records) {
    out << r.epoch << ',' << format_double(r.train_ce) << ',' << format_double(r.train_entropy)
        << ',' << (r.val_ce ? format_double(*r.val_ce) : "") << ','
        << (r.val_accuracy ? format_double(*r.val_accuracy) : "") << ',' << format_double(r.w_l2)
        << ',' << format_double(r.w_inf) << ',' << format_double(r.lr) << '\n';
  }
}

LinearSoftmaxModel init_model(Index classes, Index n, Index n_raw, double init_scale,
                              std::uint64_t seed, bool materialize_feature_map) {
  if (classes < 1 || n < 1 || n_raw < 1) throw ShapeError("model dimensions must be positive");
  if (!(init_scale >= 0.0) || !std::isfinite(init_scale)) {
    throw DomainError("init_scale must be finite and non-negative");
  }
  Rng w_rng = Rng::stream(seed, kClassifierStream);
  Matrix w = uniform_matrix(classes, n, init_scale, w_rng);
  if (n != n_raw) {
    Rng a_rng = Rng::stream(seed, kFeatureMapStream);
    return LinearSoftmaxModel(std::move(w), uniform_matrix(n, n_raw, init_scale, a_rng));
  }
  if (materialize_feature_map) return LinearSoftmaxModel(std::move(w), Matrix::Identity(n, n));
  return LinearSoftmaxModel(std::move(w));
}

LabeledDataset inject_label_noise(const LabeledDataset& dataset, double fraction,
                                  std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw DomainError("noise fraction must lie in [0, 1]");
  LabeledDataset out = dataset;
  const std::size_t total = dataset.size();
  const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(total)));
  if (count == 0) return out;

  Rng rng(seed);
  std::vector<std::size_t> pool(total);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  // Partial Fisher-Yates: pool[0..count) is a uniform ordered selection.
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + rng.below(total - i);
    std::swap(pool[i], pool[j]);
  }
  const std::size_t shift = count > 1 ? 1 + rng.below(count - 1) : 0;
  auto& labels = out.mutable_labels();
  auto& mask = out.mutable_noise_mask();
  for (std::size_t i = 0; i < count; ++i) {
    labels[pool[i]] = dataset.labels()[pool[(i + shift) % count]];
    mask[pool[i]] = true;
  }
  return out;
}

EvaluationResult evaluate(const LinearSoftmaxModel& model, const LabeledDataset& dataset) {
  if (dataset.empty()) throw ShapeError("cannot evaluate on an empty dataset");
  if (dataset.dim() != model.input_dim()) throw ShapeError("dataset dimension does not match model");
  const RowMatrix logits = model.logits(dataset.features());
  EvaluationResult result;
  std::size_t correct = 0;
  double ce_sum = 0.0;
  double entropy_sum = 0.0;
  double top_sum = 0.0;
  for (Index i = 0; i < logits.rows(); ++i) {
    const LogitSummary s = summarize_logits(logits.row(i).transpose());
    Index best = 0;
    for (Index j = 1; j < s.probs.size(); ++j) {
      if (s.probs[j] > s.probs[best]) best = j;
    }
    const int label = dataset.labels()[static_cast<std::size_t>(i)];
    if (best == label) ++correct;
    ce_sum += -s.log_probs[label];
    entropy_sum += s.entropy;
    const double top = s.probs[best];
    top_sum += top;
    auto bin = static_cast<std::size_t>(top * EvaluationResult::kHistogramBins);
    bin = std::min(bin, EvaluationResult::kHistogramBins - 1);
    ++result.top_prob_histogram[bin];
  }
  const auto n = static_cast<double>(dataset.size());
  result.accuracy = static_cast<double>(correct) / n;
  result.mean_ce = ce_sum / n;
  result.mean_entropy = entropy_sum / n;
  result.top_prob_mean = top_sum / n;
  return result;
}

TrainResult train(LinearSoftmaxModel model, const LabeledDataset& train_set,
                  const LabeledDataset& val_set, const TrainConfig& config) {
  config.validate();
  if (train_set.empty()) throw ShapeError("training set is empty");
  if (train_set.dim() != model.input_dim()) {
    throw ShapeError("training set dimension does not match model input");
  }
  if (!val_set.empty() && val_set.dim() != model.input_dim()) {
    throw ShapeError("validation set dimension does not match model input");
  }
  if (config.train_feature_map && !model.has_feature_map()) {
    model = LinearSoftmaxModel(model.classifier(), Matrix::Identity(model.feature_dim(),
                                                                    model.input_dim()));
  }
  const bool update_map = config.train_feature_map;
  const Objective objective = config.resolved_objective();

  TrainHistory history;
  history.records.reserve(static_cast<std::size_t>(config.epochs) + 1);
  {
    const EvaluationResult start = evaluate(model, train_set);
    history.records.push_back(snapshot(model, val_set, 0, start.mean_ce, start.mean_entropy, 0.0));
  }

  std::vector<std::size_t> order(train_set.size());
  std::vector<std::size_t> batch_indices;
  batch_indices.reserve(config.batch_size);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const double lr = config.lr.at(epoch);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng = Rng::stream(derive_seed(config.seed, kShuffleStream), static_cast<std::uint64_t>(epoch));
    shuffle(order, rng);

    double ce_weighted = 0.0;
    double entropy_weighted = 0.0;
    std::size_t batch_number = 0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size, ++batch_number) {
      const std::size_t stop = std::min(start + config.batch_size, order.size());
      batch_indices.assign(order.begin() + static_cast<std::ptrdiff_t>(start),
                           order.begin() + static_cast<std::ptrdiff_t>(stop));
      const LabeledDataset batch = train_set.subset(batch_indices);
      ObjectiveEvaluation eval;
      try {
        eval = evaluate_objective(model, batch, objective, update_map);
      } catch (const NonFiniteError& e) {
        throw DivergenceError(epoch + 1, batch_number, e.what());
      }
      const auto weight = static_cast<double>(stop - start);
      ce_weighted += weight * eval.mean_cross_entropy;
      entropy_weighted += weight * eval.mean_entropy;

      Matrix& w = model.classifier();
      w -= lr * (eval.gradient.classifier + config.weight_decay * w);
      if (update_map) {
        Matrix& a = model.feature_map();
        a -= lr * (*eval.gradient.feature_map + config.weight_decay * a);
      }
      if (!model.all_finite()) {
        throw DivergenceError(epoch + 1, batch_number, "parameters became non-finite");
      }
    }
    const auto n = static_cast<double>(train_set.size());
    history.records.push_back(
        snapshot(model, val_set, epoch + 1, ce_weighted / n, entropy_weighted / n, lr));
  }
  return {std::move(model), std::move(history)};
}

std::vector<SweepRow> gamma_sweep(const LabeledDataset& train_set, const LabeledDataset& val_set,
                                  const TrainConfig& base_config, std::span<const double> gammas) {
  if (gammas.empty()) throw DomainError("gamma list is empty");
  if (val_set.empty()) throw ShapeError("gamma sweep needs a validation set");
  const int classes = std::max(train_set.class_count(), val_set.class_count());
  const LinearSoftmaxModel initial =
      init_model(classes, train_set.dim(), train_set.dim(), base_config.init_scale,
                 base_config.seed, base_config.train_feature_map);
  std::vector<SweepRow> rows;
  rows.reserve(gammas.size());
  for (const double gamma : gammas) {
    TrainConfig config = base_config;
    config.gamma = gamma;
    config.objective = TrainConfig::ObjectiveKind::maxent;
    try {
      const TrainResult result = train(initial, train_set, val_set, config);
      const EvaluationResult val = evaluate(result.model, val_set);
      rows.push_back({gamma, val.accuracy, val.mean_entropy, result.model.l2_norm()});
    } catch (const DivergenceError& e) {
      throw DivergenceError(e.epoch(), e.batch(), "gamma " + format_double(gamma) + ": " + e.what());
    } catch (const Error& e) {
      throw Error("gamma " + format_double(gamma) + ": " + e.what());
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "gamma,val_acc,val_entropy,w_l2\n";
  for (const auto& r : rows) {
    out << format_double(r.gamma) << ',' << format_double(r.val_accuracy) << ','
        << format_double(r.val_mean_entropy) << ',' << format_double(r.w_l2) << '\n';
  }
}

}  // namespace maxent
