#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "maxent/error.hpp"
#include "maxent/trainer.hpp"
#include "support.hpp"

namespace maxent {
namespace {

LabeledDataset separable(std::size_t count, std::uint64_t seed) {
  Vector mu(2);
  mu << 2.0, 0.0;
  const auto m = GaussianMixture::validate({{0.5, mu, 0.3 * Matrix::Identity(2, 2)},
                                            {0.5, -mu, 0.3 * Matrix::Identity(2, 2)}});
  return sample(m, count, seed);
}

TEST(LrSchedule, Shapes) {
  EXPECT_EQ(LrSchedule::constant(0.3).at(0), 0.3);
  EXPECT_EQ(LrSchedule::constant(0.3).at(99), 0.3);
  const auto s = LrSchedule::step(1.0, 0.5, 10);
  EXPECT_EQ(s.at(9), 1.0);
  EXPECT_EQ(s.at(10), 0.5);
  EXPECT_EQ(s.at(25), 0.25);
  const auto l = LrSchedule::linear(1.0, 4);
  EXPECT_EQ(l.at(0), 1.0);
  EXPECT_EQ(l.at(1), 0.75);
  EXPECT_EQ(l.at(4), 0.0);
  EXPECT_EQ(l.at(10), 0.0);
}

TEST(TrainConfig, ValidationNamesField) {
  TrainConfig c;
  c.gamma = -1;
  try {
    c.validate();
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "gamma");
  }
  c = TrainConfig{};
  c.batch_size = 0;
  EXPECT_THROW(c.validate(), ValidationError);
  c = TrainConfig{};
  c.lsr_epsilon = 1.0;
  EXPECT_THROW(c.validate(), ValidationError);
  EXPECT_NO_THROW(TrainConfig{}.validate());
}

TEST(InitModel, StreamsAndShapes) {
  const auto a = init_model(3, 4, 4, 0.5, 9);
  EXPECT_FALSE(a.has_feature_map());
  EXPECT_LE(a.classifier().cwiseAbs().maxCoeff(), 0.5);
  EXPECT_TRUE(a == init_model(3, 4, 4, 0.5, 9));
  EXPECT_FALSE(a == init_model(3, 4, 4, 0.5, 10));
  const auto b = init_model(3, 4, 4, 0.5, 9, true);
  EXPECT_EQ(b.feature_map(), Matrix::Identity(4, 4));
  EXPECT_EQ(b.classifier(), a.classifier());
  const auto c = init_model(3, 2, 5, 0.5, 9);
  EXPECT_EQ(c.feature_map().rows(), 2);
  EXPECT_EQ(c.feature_map().cols(), 5);
  EXPECT_EQ(init_model(3, 4, 4, 0.0, 1).classifier(), Matrix::Zero(3, 4));
}

TEST(LabelNoise, ExactCountAndEveryFlaggedLabelChanges) {
  Rng rng(1);
  auto d = testing::random_dataset(1000, 2, 10, rng);
  // Distinct labels per position make "changed" well defined for the rotation.
  for (std::size_t i = 0; i < d.size(); ++i) d.mutable_labels()[i] = static_cast<int>(i % 10);
  const auto noisy = inject_label_noise(d, 0.3, 7);
  std::size_t flagged = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (noisy.noise_mask()[i]) ++flagged;
    else EXPECT_EQ(noisy.labels()[i], d.labels()[i]);
  }
  EXPECT_EQ(flagged, 300u);
  // The rotation permutes the selected labels, so the label histogram is kept.
  std::vector<int> before(10), after(10);
  for (std::size_t i = 0; i < d.size(); ++i) {
    ++before[d.labels()[i]];
    ++after[noisy.labels()[i]];
  }
  EXPECT_EQ(before, after);
  EXPECT_EQ(noisy.features(), d.features());
  EXPECT_TRUE(inject_label_noise(d, 0.3, 7) == noisy);
  EXPECT_TRUE(inject_label_noise(d, 0.0, 7) == d);
  EXPECT_THROW(inject_label_noise(d, 1.5, 7), DomainError);
}

TEST(Evaluate, KnownModel) {
  RowMatrix x(3, 2);
  x << 1, 0, 0, 1, -1, 0;
  LabeledDataset d(x, {0, 1, 0}, 2);
  LinearSoftmaxModel m(Matrix::Identity(2, 2) * 100);
  const auto r = evaluate(m, d);
  EXPECT_NEAR(r.accuracy, 2.0 / 3.0, 1e-15);
  EXPECT_EQ(r.top_prob_histogram[19], 3u);
  // Ties go to class 0: a zero model predicts 0 with probability 1/2.
  const auto z = evaluate(LinearSoftmaxModel(Matrix::Zero(2, 2)), d);
  EXPECT_NEAR(z.accuracy, 2.0 / 3.0, 1e-15);
  EXPECT_EQ(z.top_prob_histogram[10], 3u);
  EXPECT_NEAR(z.mean_entropy, std::log(2.0), 1e-15);
  EXPECT_NEAR(z.mean_ce, std::log(2.0), 1e-15);
}

TEST(Train, LearnsSeparableData) {
  const auto tr = separable(200, 1), va = separable(500, 2);
  TrainConfig c;
  c.epochs = 30;
  c.gamma = 0.5;
  const auto r = train(init_model(2, 2, 2, 0.01, 3), tr, va, c);
  ASSERT_EQ(r.history.records.size(), 31u);
  EXPECT_EQ(r.history.records[0].lr, 0.0);
  EXPECT_EQ(r.history.records[1].lr, 0.1);
  EXPECT_GT(*r.history.records.back().val_accuracy, 0.95);
  EXPECT_LT(r.history.records.back().train_ce, r.history.records[0].train_ce);
}

TEST(Train, ZeroEpochsReturnsInitialModel) {
  const auto tr = separable(20, 1);
  TrainConfig c;
  c.epochs = 0;
  const auto m0 = init_model(2, 2, 2, 0.1, 4);
  const auto r = train(m0, tr, LabeledDataset{}, c);
  EXPECT_TRUE(r.model == m0);
  EXPECT_EQ(r.history.records.size(), 1u);
  EXPECT_FALSE(r.history.records[0].val_ce);
}

TEST(Train, BitReproducible) {
  const auto tr = separable(100, 1);
  TrainConfig c;
  c.epochs = 5;
  c.batch_size = 7;
  c.train_feature_map = true;
  c.weight_decay = 0.01;
  const auto a = train(init_model(2, 2, 2, 0.1, 4, true), tr, tr, c);
  const auto b = train(init_model(2, 2, 2, 0.1, 4, true), tr, tr, c);
  EXPECT_TRUE(a.model == b.model);
  std::ostringstream ha, hb;
  a.history.write_csv(ha);
  b.history.write_csv(hb);
  EXPECT_EQ(ha.str(), hb.str());
  c.seed = 2;
  EXPECT_FALSE(train(init_model(2, 2, 2, 0.1, 4, true), tr, tr, c).model == a.model);
}

TEST(Train, OneFullBatchStepMatchesManualUpdate) {
  const auto tr = separable(10, 5);
  TrainConfig c;
  c.epochs = 1;
  c.batch_size = 10;
  c.gamma = 2.0;
  c.weight_decay = 0.1;
  c.lr = LrSchedule::constant(0.5);
  const auto m0 = init_model(2, 2, 2, 0.3, 6);
  const auto g = maxent_gradient(m0, tr, 2.0);
  const Matrix expected = m0.classifier() - 0.5 * (g.classifier + 0.1 * m0.classifier());
  const auto r = train(m0, tr, LabeledDataset{}, c);
  EXPECT_LE((r.model.classifier() - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Train, DivergenceIsReported) {
  auto tr = separable(50, 1);
  TrainConfig c;
  c.epochs = 50;
  c.lr = LrSchedule::constant(1e300);
  c.weight_decay = 1e300;
  try {
    train(init_model(2, 2, 2, 1.0, 1), tr, tr, c);
    FAIL() << "expected divergence";
  } catch (const DivergenceError& e) {
    EXPECT_GE(e.epoch(), 1);
  }
}

TEST(Train, MaxEntRaisesEntropyOverCe) {
  const auto tr = separable(200, 1);
  TrainConfig c;
  c.epochs = 40;
  c.objective = TrainConfig::ObjectiveKind::ce;
  const auto ce = train(init_model(2, 2, 2, 0.01, 3), tr, tr, c);
  c.objective = TrainConfig::ObjectiveKind::maxent;
  c.gamma = 1.0;
  const auto me = train(init_model(2, 2, 2, 0.01, 3), tr, tr, c);
  EXPECT_GT(me.history.records.back().train_entropy, ce.history.records.back().train_entropy);
  EXPECT_LT(me.model.l2_norm(), ce.model.l2_norm());
}

TEST(GammaSweep, RowsPerGamma) {
  const auto tr = separable(60, 1), va = separable(60, 2);
  TrainConfig c;
  c.epochs = 5;
  const std::vector<double> gammas{0.0, 1.0};
  const auto rows = gamma_sweep(tr, va, c, gammas);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].gamma, 0.0);
  EXPECT_GT(rows[1].val_mean_entropy, rows[0].val_mean_entropy);
  std::ostringstream out;
  write_sweep_csv(out, rows);
  EXPECT_EQ(out.str().substr(0, 31), "gamma,val_acc,val_entropy,w_l2\n");
  EXPECT_THROW(gamma_sweep(tr, va, c, std::vector<double>{}), DomainError);
}

TEST(History, CsvHasEmptyValidationFields) {
  TrainHistory h;
  h.records.push_back({0, 0.5, 0.25, std::nullopt, std::nullopt, 1.0, 1.0, 0.0});
  std::ostringstream out;
  h.write_csv(out);
  EXPECT_EQ(out.str(), "epoch,train_ce,train_entropy,val_ce,val_acc,w_l2,w_inf,lr\n0,0.5,0.25,,,1,1,0\n");
}

}  // namespace
}  // namespace maxent
