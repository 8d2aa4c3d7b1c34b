#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "maxent/diversity.hpp"
#include "maxent/error.hpp"
#include "support.hpp"

namespace maxent {
namespace {

TEST(AnalyticDiversity, DiagonalCovariance) {
  Matrix s = Matrix::Zero(3, 3);
  s.diagonal() << 1.0, 4.0, 2.0;
  const auto r = analytic_diversity(GaussianMixture::validate({{1.0, Vector::Zero(3), s}}));
  EXPECT_DOUBLE_EQ(r.nu, 7.0);
  ASSERT_EQ(r.eigenvalues.size(), 3u);
  EXPECT_NEAR(r.eigenvalues[0], 4.0, 1e-14);
  EXPECT_NEAR(r.eigenvalues[1], 2.0, 1e-14);
  EXPECT_NEAR(r.eigenvalues[2], 1.0, 1e-14);
  EXPECT_EQ(r.source, DiversitySource::analytic);
  EXPECT_FALSE(r.sample_count);
}

TEST(AnalyticDiversity, NuIsEigenvalueSum) {
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const auto m = testing::random_mixture(1 + rng.below(8), 1 + rng.below(4), rng);
    const auto r = analytic_diversity(m);
    double sum = 0.0;
    for (double v : r.raw_eigenvalues) sum += v;
    EXPECT_NEAR(sum, r.nu, 1e-10 * r.nu);
    for (std::size_t i = 1; i < r.eigenvalues.size(); ++i) {
      EXPECT_GE(r.eigenvalues[i - 1], r.eigenvalues[i]);
    }
  }
}

TEST(AnalyticDiversity, RequiresCenteredMixture) {
  EXPECT_THROW(analytic_diversity(GaussianMixture::validate(
                   {{1.0, Vector::Ones(2), Matrix::Identity(2, 2)}})),
               NotCenteredError);
}

TEST(EmpiricalDiversity, KnownPopulationCovariance) {
  RowMatrix x(4, 2);
  x << 1, 0, -1, 0, 0, 2, 0, -2;
  const auto r = empirical_diversity(x);
  EXPECT_DOUBLE_EQ(r.nu, 0.5 + 2.0);
  EXPECT_NEAR(r.eigenvalues[0], 2.0, 1e-15);
  EXPECT_NEAR(r.eigenvalues[1], 0.5, 1e-15);
  EXPECT_EQ(r.sample_count, 4u);
}

TEST(EmpiricalDiversity, ShiftInvariant) {
  RowMatrix x(3, 2);
  x << 1, 2, 3, 5, -1, 0;
  RowMatrix y = x.rowwise() + Eigen::RowVector2d(100, -7);
  EXPECT_NEAR(empirical_diversity(x).nu, empirical_diversity(y).nu, 1e-10);
}

TEST(EmpiricalDiversity, ConstantRowsGiveZero) {
  RowMatrix x = RowMatrix::Constant(5, 3, 2.5);
  const auto r = empirical_diversity(x);
  EXPECT_EQ(r.nu, 0.0);
  EXPECT_EQ(spectrum_tail_mass(r, 1), 0.0);
}

TEST(EmpiricalDiversity, NeedsTwoRows) {
  EXPECT_THROW(empirical_diversity(RowMatrix::Zero(1, 2)), ShapeError);
}

TEST(EmpiricalDiversity, ConvergesToAnalytic) {
  Rng rng(2);
  const auto m = testing::random_mixture(4, 3, rng);
  const double nu = analytic_diversity(m).nu;
  const auto d = sample(m, 200000, 9);
  EXPECT_NEAR(empirical_diversity(d.features()).nu, nu, 0.02 * nu);
}

TEST(TailMass, KnownFractions) {
  DiversityReport r;
  r.eigenvalues = {4.0, 3.0, 2.0, 1.0};
  EXPECT_DOUBLE_EQ(spectrum_tail_mass(r, 0), 1.0);
  EXPECT_DOUBLE_EQ(spectrum_tail_mass(r, 1), 0.6);
  EXPECT_DOUBLE_EQ(spectrum_tail_mass(r, 3), 0.1);
  EXPECT_DOUBLE_EQ(spectrum_tail_mass(r, 4), 0.0);
  EXPECT_THROW(spectrum_tail_mass(r, 5), DomainError);
}

TEST(TailMass, MonotoneInK) {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto r = analytic_diversity(testing::random_mixture(6, 3, rng));
    for (std::size_t k = 1; k <= 6; ++k) {
      EXPECT_LE(spectrum_tail_mass(r, k), spectrum_tail_mass(r, k - 1) + 1e-15);
    }
  }
}

TEST(Pca, AxesAreOrientedAndOrthonormal) {
  Rng rng(4);
  const auto d = sample(testing::random_mixture(5, 3, rng), 3000, 1);
  const auto pcs = top_principal_components(d.features(), 3);
  const Matrix gram = pcs.axes.transpose() * pcs.axes;
  EXPECT_LE((gram - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-12);
  for (Index j = 0; j < 3; ++j) {
    Index first = 0;
    while (std::abs(pcs.axes(first, j)) <= 1e-12) ++first;
    EXPECT_GT(pcs.axes(first, j), 0.0);
  }
  EXPECT_EQ(pcs.projected.rows(), 3000);
  // Scores have zero mean and variances equal to the leading eigenvalues.
  const auto r = empirical_diversity(d.features());
  for (Index j = 0; j < 3; ++j) {
    EXPECT_NEAR(pcs.projected.col(j).mean(), 0.0, 1e-10);
    EXPECT_NEAR(pcs.projected.col(j).squaredNorm() / 3000, r.eigenvalues[j], 1e-9);
    EXPECT_NEAR(pcs.explained_variance_ratios[j], r.eigenvalues[j] / r.nu, 1e-12);
  }
  EXPECT_THROW(top_principal_components(d.features(), 6), ShapeError);
}

TEST(Csv, SpectrumAndPcFormats) {
  DiversityReport r;
  r.eigenvalues = {2.0, 0.0};
  std::ostringstream s;
  write_spectrum_csv(s, r);
  EXPECT_EQ(s.str(), "rank,eigenvalue,log_eigenvalue\n1,2,0.6931471805599453\n2,0,-inf\n");

  RowMatrix p(2, 2);
  p << 0.5, -1, 2, 0.25;
  std::vector<int> labels{1, 0};
  std::ostringstream q;
  write_pc_csv(q, p, labels);
  EXPECT_EQ(q.str(), "pc1,pc2,label\n0.5,-1,1\n2,0.25,0\n");
}

}  // namespace
}  // namespace maxent
