#include <gtest/gtest.h>

#include <cmath>

#include "maxent/error.hpp"
#include "maxent/mixture_model.hpp"
#include "support.hpp"

namespace maxent {
namespace {

using testing::random_covariance;
using testing::random_mixture;

GaussianMixture two_bumps() {
  // a = (0.5, 0.5), mu = +-(1, 0), Sigma_i = 0.25 I
  Vector mu(2);
  mu << 1.0, 0.0;
  return GaussianMixture::validate({{0.5, mu, 0.25 * Matrix::Identity(2, 2)},
                                    {0.5, -mu, 0.25 * Matrix::Identity(2, 2)}});
}

TEST(MixtureValidate, IdentityComponentIsValid) {
  const auto m = GaussianMixture::validate({{1.0, Vector::Zero(2), Matrix::Identity(2, 2)}});
  EXPECT_EQ(m.count(), 1u);
  EXPECT_EQ(m.dim(), 2);
}

TEST(MixtureValidate, RejectsWeightsAboveOne) {
  EXPECT_THROW(GaussianMixture::validate({{0.5, Vector::Zero(2), Matrix::Identity(2, 2)},
                                          {0.6, Vector::Zero(2), Matrix::Identity(2, 2)}}),
               WeightError);
}

TEST(MixtureValidate, RejectsNonPositiveWeight) {
  EXPECT_THROW(GaussianMixture::validate({{1.0, Vector::Zero(1), Matrix::Identity(1, 1)},
                                          {0.0, Vector::Zero(1), Matrix::Identity(1, 1)}}),
               WeightError);
}

TEST(MixtureValidate, RejectsNegativeEigenvalue) {
  Matrix s(2, 2);
  s << 1.0, 0.0, 0.0, -0.1;
  EXPECT_THROW(GaussianMixture::validate({{1.0, Vector::Zero(2), s}}), CovarianceError);
}

TEST(MixtureValidate, RejectsAsymmetricCovariance) {
  Matrix s(2, 2);
  s << 1.0, 0.5, 0.4, 1.0;
  EXPECT_THROW(GaussianMixture::validate({{1.0, Vector::Zero(2), s}}), CovarianceError);
}

TEST(MixtureValidate, RejectsDimensionMismatch) {
  EXPECT_THROW(GaussianMixture::validate({{0.5, Vector::Zero(2), Matrix::Identity(2, 2)},
                                          {0.5, Vector::Zero(3), Matrix::Identity(3, 3)}}),
               ShapeError);
  EXPECT_THROW(GaussianMixture::validate({{1.0, Vector::Zero(2), Matrix::Identity(3, 3)}}),
               ShapeError);
}

TEST(MixtureValidate, AcceptsZeroCovariance) {
  EXPECT_NO_THROW(GaussianMixture::validate({{1.0, Vector::Ones(3), Matrix::Zero(3, 3)}}));
}

TEST(Recenter, ZeroMeanMixtureUnchanged) {
  const auto m = two_bumps();
  const auto r = recenter_zero_mean(m);
  for (std::size_t i = 0; i < m.count(); ++i) {
    EXPECT_EQ(r.component(i).mean, m.component(i).mean);
    EXPECT_EQ(r.component(i).covariance, m.component(i).covariance);
    EXPECT_EQ(r.component(i).weight, m.component(i).weight);
  }
}

TEST(Recenter, SingleComponentMovesToOrigin) {
  Vector mu(2);
  mu << 3.0, -1.0;
  const auto r = recenter_zero_mean(GaussianMixture::validate({{1.0, mu, Matrix::Identity(2, 2)}}));
  EXPECT_EQ(r.component(0).mean, Vector::Zero(2));
}

TEST(Recenter, SymmetricPair) {
  Vector a(2), b(2);
  a << 2.0, 0.0;
  b << 0.0, 0.0;
  const auto r = recenter_zero_mean(GaussianMixture::validate(
      {{0.5, a, Matrix::Identity(2, 2)}, {0.5, b, Matrix::Identity(2, 2)}}));
  EXPECT_DOUBLE_EQ(r.component(0).mean[0], 1.0);
  EXPECT_DOUBLE_EQ(r.component(1).mean[0], -1.0);
  EXPECT_EQ(r.component(0).mean[1], 0.0);
}

TEST(Recenter, RandomMixturesEndCentered) {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto m = random_mixture(1 + rng.below(6), 1 + rng.below(4), rng, false);
    EXPECT_LE(recenter_zero_mean(m).mean().norm(), 1e-10);
  }
}

TEST(Sample, PointMassRepeatsMean) {
  Vector mu(2);
  mu << 1.0, 2.0;
  const auto d = sample(GaussianMixture::validate({{1.0, mu, Matrix::Zero(2, 2)}}), 5, 3);
  ASSERT_EQ(d.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(d.features()(i, 0), 1.0);
    EXPECT_EQ(d.features()(i, 1), 2.0);
    EXPECT_EQ(d.labels()[i], 0);
  }
}

TEST(Sample, LabelsAreComponentIndices) {
  const auto d = sample(two_bumps(), 2000, 5);
  std::size_t ones = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    ASSERT_TRUE(d.labels()[i] == 0 || d.labels()[i] == 1);
    ones += d.labels()[i];
    // Component 0 sits at +1 on the first axis; its draws are mostly positive.
  }
  EXPECT_NEAR(static_cast<double>(ones) / d.size(), 0.5, 0.05);
  EXPECT_EQ(d.class_count(), 2);
}

TEST(Sample, StandardNormalMeanNearZero) {
  const auto d = sample(GaussianMixture::validate({{1.0, Vector::Zero(2), Matrix::Identity(2, 2)}}),
                        100000, 17);
  const Vector mean = d.features().colwise().mean().transpose();
  EXPECT_NEAR(mean[0], 0.0, 0.02);
  EXPECT_NEAR(mean[1], 0.0, 0.02);
}

TEST(Sample, BitReproducible) {
  Rng rng(2);
  const auto m = random_mixture(4, 3, rng);
  EXPECT_EQ(sample(m, 500, 99), sample(m, 500, 99));
  EXPECT_FALSE(sample(m, 500, 99) == sample(m, 500, 100));
}

TEST(Sample, DegenerateCovarianceStaysInSupport) {
  // Rank-one covariance along (1, 1): every draw satisfies x0 == x1 up to round-off.
  Matrix s(2, 2);
  s << 1.0, 1.0, 1.0, 1.0;
  const auto d = sample(GaussianMixture::validate({{1.0, Vector::Zero(2), s}}), 1000, 4);
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_NEAR(d.features()(i, 0), d.features()(i, 1), 1e-12);
  }
}

TEST(OverallCovariance, IdentityCase) {
  const auto m = GaussianMixture::validate({{1.0, Vector::Zero(3), Matrix::Identity(3, 3)}});
  EXPECT_EQ(overall_covariance(m), Matrix::Identity(3, 3));
}

TEST(OverallCovariance, TwoBumps) {
  const Matrix s = overall_covariance(two_bumps());
  EXPECT_NEAR(s(0, 0), 1.25, 1e-15);
  EXPECT_NEAR(s(1, 1), 0.25, 1e-15);
  EXPECT_NEAR(s(0, 1), 0.0, 1e-15);
}

TEST(OverallCovariance, TwoBumpsMatchesSampleCovariance) {
  const auto d = sample(two_bumps(), 1000000, 23);
  const RowMatrix& x = d.features();
  const Vector mean = x.colwise().mean().transpose();
  const Matrix centred = x.rowwise() - mean.transpose();
  const Matrix cov = centred.transpose() * centred / static_cast<double>(x.rows());
  // Standard errors are about 1.3e-3 (var of x0^2-ish terms / sqrt(N)); 5 sigma.
  EXPECT_NEAR(cov(0, 0), 1.25, 0.0065);
  EXPECT_NEAR(cov(1, 1), 0.25, 0.0025);
  EXPECT_NEAR(cov(0, 1), 0.0, 0.0035);
}

TEST(OverallCovariance, SymmetricPointMasses) {
  const auto m = GaussianMixture::validate(
      {{0.5, Vector::Ones(1), Matrix::Zero(1, 1)}, {0.5, -Vector::Ones(1), Matrix::Zero(1, 1)}});
  EXPECT_EQ(overall_covariance(m)(0, 0), 1.0);
}

TEST(OverallCovariance, RequiresCenteredMixture) {
  const auto m = GaussianMixture::validate({{1.0, Vector::Ones(2), Matrix::Identity(2, 2)}});
  EXPECT_THROW(overall_covariance(m), NotCenteredError);
}

TEST(ExpectedSqnorm, StandardNormalGivesDimension) {
  for (Index n = 1; n <= 6; ++n) {
    const auto m = GaussianMixture::validate({{1.0, Vector::Zero(n), Matrix::Identity(n, n)}});
    EXPECT_DOUBLE_EQ(expected_sqnorm(m), static_cast<double>(n));
  }
}

TEST(ExpectedSqnorm, PointMass) {
  Vector mu(3);
  mu << 1.0, -2.0, 2.0;
  EXPECT_DOUBLE_EQ(expected_sqnorm(GaussianMixture::validate({{1.0, mu, Matrix::Zero(3, 3)}})), 9.0);
}

TEST(ExpectedSqnorm, TwoBumpsMatchesMonteCarlo) {
  EXPECT_DOUBLE_EQ(expected_sqnorm(two_bumps()), 1.5);
  const auto d = sample(two_bumps(), 1000000, 31);
  const double mc = d.features().rowwise().squaredNorm().mean();
  EXPECT_NEAR(mc, 1.5, 0.015);
}

TEST(FourthMoment, PointMassHasNoVariance) {
  Vector mu(2);
  mu << 0.3, 4.0;
  const auto f = fourth_moment_and_variance(GaussianMixture::validate({{1.0, mu, Matrix::Zero(2, 2)}}));
  EXPECT_NEAR(f.var_sqnorm, 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(f.expected_fourth, std::pow(mu.squaredNorm(), 2));
}

double mc_var_sqnorm(const GaussianMixture& m, std::size_t draws, std::uint64_t seed) {
  MixtureSampler sampler(m, seed);
  Vector x(m.dim());
  double mean = 0.0, m2 = 0.0;
  for (std::size_t i = 1; i <= draws; ++i) {
    sampler.draw(x);
    const double v = x.squaredNorm();
    const double d = v - mean;
    mean += d / static_cast<double>(i);
    m2 += d * (v - mean);
  }
  return m2 / static_cast<double>(draws);
}

TEST(FourthMoment, StandardNormalOneDim) {
  const auto m = GaussianMixture::validate({{1.0, Vector::Zero(1), Matrix::Identity(1, 1)}});
  EXPECT_DOUBLE_EQ(fourth_moment_and_variance(m).var_sqnorm, 2.0);
  EXPECT_NEAR(mc_var_sqnorm(m, 10000000, 41), 2.0, 0.04);
}

TEST(FourthMoment, StandardNormalThreeDim) {
  const auto m = GaussianMixture::validate({{1.0, Vector::Zero(3), Matrix::Identity(3, 3)}});
  EXPECT_DOUBLE_EQ(fourth_moment_and_variance(m).var_sqnorm, 6.0);
  EXPECT_NEAR(mc_var_sqnorm(m, 2000000, 43), 6.0, 0.12);
}

TEST(FourthMoment, ZeroMeanComponentReducesToTraceForm) {
  // (tr S)^2 + 2 ||S||_F^2 for a single zero-mean component.
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const Index n = 1 + rng.below(6);
    const Matrix s = random_covariance(n, rng);
    const auto f = fourth_moment_and_variance(GaussianMixture::validate({{1.0, Vector::Zero(n), s}}));
    const double expected = s.trace() * s.trace() + 2.0 * s.squaredNorm();
    EXPECT_NEAR(f.expected_fourth, expected, 1e-12 * expected);
  }
}

TEST(MomentSummary, TraceEqualsExpectedSqnorm) {
  Rng rng(7);
  for (int t = 0; t < 100; ++t) {
    const auto m = random_mixture(1 + rng.below(8), 1 + rng.below(4), rng);
    const auto s = moment_summary(m);
    EXPECT_NEAR(s.overall_covariance.trace(), s.expected_sqnorm, 1e-10 * s.expected_sqnorm);
    EXPECT_GE(s.var_sqnorm, -1e-10);
    EXPECT_NEAR(s.var_sqnorm, s.expected_fourth - s.expected_sqnorm * s.expected_sqnorm,
                1e-9 * s.expected_fourth);
    EXPECT_LE((s.overall_covariance - s.overall_covariance.transpose()).norm(), 1e-12);
  }
}

TEST(LinearTransform, MatchesTransformedSamples) {
  Rng rng(13);
  const auto m = random_mixture(3, 2, rng);
  Matrix a(2, 3);
  a << 1.0, 0.5, 0.0, -0.3, 0.2, 2.0;
  const auto t = linear_transform(m, a);
  EXPECT_EQ(t.dim(), 2);
  // Same seed, same draw sequence: the transformed sample is A times the raw one.
  const auto raw = sample(m, 20000, 3);
  const RowMatrix mapped = raw.features() * a.transpose();
  const double mc = mapped.rowwise().squaredNorm().mean();
  const double exact = expected_sqnorm(t);
  EXPECT_NEAR(mc, exact, 0.05 * exact);
  EXPECT_THROW(linear_transform(m, Matrix::Identity(2, 2)), ShapeError);
}

// Convex combinations and sums of inner products obey the Cauchy-Schwarz
// envelopes used in the concentration arguments.
TEST(VectorSums, CauchySchwarzEnvelopes) {
  Rng rng(19);
  for (int t = 0; t < 10000; ++t) {
    const Index n = 1 + rng.below(6);
    const std::size_t count = 1 + rng.below(8);
    std::vector<Vector> xs;
    std::vector<double> alpha(count);
    double total = 0.0;
    double max_norm = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      Vector x(n);
      for (Index j = 0; j < n; ++j) x[j] = rng.normal() * (1 + rng.below(3));
      max_norm = std::max(max_norm, x.norm());
      xs.push_back(x);
      total += (alpha[i] = rng.uniform() + 1e-3);
    }
    Vector y(n);
    for (Index j = 0; j < n; ++j) y[j] = rng.normal();
    double convex = 0.0, plain = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      convex += alpha[i] / total * xs[i].dot(y);
      plain += xs[i].dot(y);
    }
    const double envelope = max_norm * y.norm();
    EXPECT_LE(convex, envelope * (1 + 1e-12));
    EXPECT_GE(plain, -static_cast<double>(count) * envelope * (1 + 1e-12));
  }
}

}  // namespace
}  // namespace maxent
