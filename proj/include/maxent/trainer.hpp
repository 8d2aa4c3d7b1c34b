#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "maxent/dataset.hpp"
#include "maxent/maxent_core.hpp"

namespace maxent {

struct LrSchedule {
  enum class Kind { constant, step, linear };

  Kind kind = Kind::constant;
  double base = 0.1;
  double factor = 1.0;      // step: multiplier applied every `interval` epochs
  int interval = 1;         // step
  int decay_epochs = 1;     // linear: reaches zero after this many epochs

  static LrSchedule constant(double lr) { return {Kind::constant, lr, 1.0, 1, 1}; }
  static LrSchedule step(double lr, double factor, int interval) {
    return {Kind::step, lr, factor, interval, 1};
  }
  static LrSchedule linear(double lr, int epochs) { return {Kind::linear, lr, 1.0, 1, epochs}; }

  // Learning rate used throughout epoch `epoch` (0-based).
  double at(int epoch) const;

  friend bool operator==(const LrSchedule&, const LrSchedule&) = default;
};

struct TrainConfig {
  enum class ObjectiveKind { maxent, lsr, ce };

  double gamma = 1.0;
  ObjectiveKind objective = ObjectiveKind::maxent;
  double lsr_epsilon = 0.1;
  LrSchedule lr = LrSchedule::constant(0.1);
  double weight_decay = 0.0;
  std::size_t batch_size = 32;
  int epochs = 100;
  std::uint64_t seed = 1;
  bool train_feature_map = false;
  double init_scale = 0.01;

  Objective resolved_objective() const;
  // Throws ValidationError naming the offending field.
  void validate() const;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

struct EpochRecord {
  int epoch = 0;
  double train_ce = 0.0;
  double train_entropy = 0.0;
  std::optional<double> val_ce;
  std::optional<double> val_accuracy;
  double w_l2 = 0.0;
  double w_inf = 0.0;
  double lr = 0.0;  // rate used during this epoch; 0 for the pre-training record
};

struct TrainHistory {
  std::vector<EpochRecord> records;  // epochs + 1 entries, record 0 = before training

  // `epoch,train_ce,train_entropy,val_ce,val_acc,w_l2,w_inf,lr`; absent
  // validation values are written as empty fields.
  void write_csv(std::ostream& out) const;
};

// W entries uniform on [-init_scale, init_scale]. The feature map is the
// implicit identity when n == n_raw and `materialize_feature_map` is false,
// an explicit identity when square and materialized, and uniform like W when
// n != n_raw. Streams: W from (seed, 0), A from (seed, 1).
LinearSoftmaxModel init_model(Index classes, Index n, Index n_raw, double init_scale,
                              std::uint64_t seed, bool materialize_feature_map = false);

// Picks floor(fraction * N) indices uniformly without replacement, then
// rotates their labels by a random shift in [1, k-1] along the selection
// order, so every selected position receives another position's label.
LabeledDataset inject_label_noise(const LabeledDataset& dataset, double fraction,
                                  std::uint64_t seed);

struct EvaluationResult {
  static constexpr std::size_t kHistogramBins = 20;

  double accuracy = 0.0;
  double mean_ce = 0.0;
  double mean_entropy = 0.0;
  double top_prob_mean = 0.0;
  // Max-probability counts over 20 equal bins of [0, 1]; 1.0 lands in the last bin.
  std::array<std::size_t, kHistogramBins> top_prob_histogram{};
};

// argmax ties go to the lowest class index.
EvaluationResult evaluate(const LinearSoftmaxModel& model, const LabeledDataset& dataset);

struct TrainResult {
  LinearSoftmaxModel model;
  TrainHistory history;
};

// Plain mini-batch SGD. Each epoch shuffles with a stream derived from
// (seed, epoch); the trailing short batch is kept. Per batch:
//   W <- W - lr (grad_W + weight_decay W), likewise A when train_feature_map.
// Throws DivergenceError on a non-finite loss or parameter.
TrainResult train(LinearSoftmaxModel model, const LabeledDataset& train_set,
                  const LabeledDataset& val_set, const TrainConfig& config);

struct SweepRow {
  double gamma = 0.0;
  double val_accuracy = 0.0;
  double val_mean_entropy = 0.0;
  double w_l2 = 0.0;
};

// One training run per gamma from the same seeded initial model. Errors are
// rethrown with the offending gamma in the message.
std::vector<SweepRow> gamma_sweep(const LabeledDataset& train_set, const LabeledDataset& val_set,
                                  const TrainConfig& base_config, std::span<const double> gammas);

// `gamma,val_acc,val_entropy,w_l2`
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace maxent
