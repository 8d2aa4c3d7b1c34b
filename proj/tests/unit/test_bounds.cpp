#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "maxent/bounds_lab.hpp"
#include "maxent/diversity.hpp"
#include "maxent/error.hpp"
#include "support.hpp"

namespace maxent {
namespace {

// Independent long double evaluations of the closed forms.
long double oracle_theorem2(long double w, long double nu, long double var, long double n,
                            long double delta) {
  const long double l = std::log(4.0L / delta);
  return w * (std::sqrt(2.0L * nu * l / n) +
              std::pow(4.0L * var * (2.0L / delta - 1.0L) / (n * n * n), 0.25L) * l);
}

long double oracle_corollary1(int c, long double h, long double nu, long double var, long double n,
                              long double delta) {
  // 2 sqrt(nu) [1 - (1/2) sqrt((2/N) ln(2/delta)) sqrt(1 + sqrt(var (2/delta - 1) / N) / nu)]
  const long double inner = std::sqrt(1.0L + std::sqrt(var * (2.0L / delta - 1.0L) / n) / nu);
  const long double denom =
      2.0L * std::sqrt(nu) * (1.0L - 0.5L * std::sqrt(2.0L / n * std::log(2.0L / delta)) * inner);
  return (std::log(static_cast<long double>(c)) - h) / denom;
}

TEST(Theorem1, ValuesAndScaling) {
  EXPECT_EQ(theorem1_bound(10, std::log(10.0), 3.0), 0.0);
  EXPECT_NEAR(theorem1_bound(10, 1.0, 4.0), (std::log(10.0L) - 1.0L) / 4.0L, 1e-15);
  EXPECT_NEAR(theorem1_bound(10, 1.0, 4.0), 0.325646, 1e-6);
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    const int c = 2 + static_cast<int>(rng.below(9));
    const double h = rng.uniform() * std::log(c);
    const double nu = rng.uniform(0.01, 50);
    const double k = rng.uniform(0.1, 10);
    EXPECT_NEAR(theorem1_bound(c, h, k * nu), theorem1_bound(c, h, nu) / std::sqrt(k),
                1e-14 * theorem1_bound(c, h, nu) + 1e-300);
  }
  EXPECT_THROW(theorem1_bound(10, 1.0, 0.0), DomainError);
  EXPECT_THROW(theorem1_bound(10, 3.0, 1.0), DomainError);
}

TEST(Theorem2, MatchesOracle) {
  EXPECT_EQ(theorem2_bound(0.0, 2, 8, 1000, 0.1), 0.0);
  EXPECT_NEAR(theorem2_bound(1, 2, 8, 1000, 0.1), 0.2245, 5e-5);
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    const double w = rng.uniform(0, 5), nu = rng.uniform(0, 20), var = rng.uniform(0, 100),
                 delta = rng.uniform(0.01, 0.49);
    const auto n = static_cast<std::size_t>(1 + rng.below(100000));
    const double ref = static_cast<double>(oracle_theorem2(w, nu, var, n, delta));
    EXPECT_NEAR(theorem2_bound(w, nu, var, n, delta), ref, 1e-13 * std::max(ref, 1.0));
  }
}

TEST(Theorem2, FirstTermHalvesWhenNQuadruples) {
  // With var = 0 only the sqrt(1/N) term remains.
  EXPECT_NEAR(theorem2_bound(1.5, 3, 0, 4000, 0.1), 0.5 * theorem2_bound(1.5, 3, 0, 1000, 0.1),
              1e-16);
  EXPECT_THROW(theorem2_bound(1, 1, 1, 0, 0.1), DomainError);
  EXPECT_THROW(theorem2_bound(1, 1, 1, 10, 0.5), DomainError);
}

TEST(Corollary1, MatchesProofDisplay) {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const int c = 2 + static_cast<int>(rng.below(9));
    const double h = rng.uniform() * std::log(c);
    const double nu = rng.uniform(0.1, 20), var = rng.uniform(0, 100), delta = rng.uniform(0.01, 0.49);
    const auto n = static_cast<std::size_t>(100 + rng.below(100000));
    double value = 0.0;
    try {
      value = corollary1_bound(c, h, nu, var, n, delta);
    } catch (const DomainError&) {
      continue;
    }
    const double ref = static_cast<double>(oracle_corollary1(c, h, nu, var, n, delta));
    EXPECT_NEAR(value, ref, 1e-12 * std::max(ref, 1.0));
  }
}

TEST(Corollary1, SandwichAndLimit) {
  const double t1 = theorem1_bound(10, 1.0, 4.0);
  const double c1 = corollary1_bound(10, 1.0, 4.0, 32.0, 10000, 0.1);
  EXPECT_GE(c1, t1);
  EXPECT_LE(c1, 2 * t1);
  const double far = corollary1_bound(10, 1.0, 4.0, 32.0, 100000000, 0.1);
  EXPECT_NEAR(far, t1, 0.01 * t1);
  EXPECT_EQ(corollary1_bound(10, std::log(10.0), 4.0, 32.0, 1000, 0.1), 0.0);
  // Leading form also tends to theorem 1 and sits below the exact form.
  const double lead = corollary1_leading_bound(10, 1.0, 4.0, 10000, 0.1);
  EXPECT_GE(lead, t1);
  EXPECT_LE(lead, c1);
}

TEST(Corollary1, InapplicableWhenDenominatorVanishes) {
  EXPECT_THROW(corollary1_bound(10, 1.0, 1e-6, 1e6, 2, 0.1), DomainError);
}

TEST(EntropyFloor, Cases) {
  EXPECT_EQ(entropy_floor(0.0, 5.0, 7), std::log(7.0));
  EXPECT_EQ(entropy_floor(3.0, 0.0, 7), std::log(7.0));
  EXPECT_NEAR(entropy_floor(1, 2, 3), std::log(3.0) - 4, 1e-15);
  EXPECT_NEAR(entropy_floor(1, 2, 3), -2.901, 1e-3);
}

TEST(TailBounds, HoeffdingAndCantelli) {
  std::vector<Range> unit(100, Range{0.0, 1.0});
  EXPECT_NEAR(hoeffding_tail(unit, 0.1), std::exp(-2.0), 1e-15);
  EXPECT_NEAR(hoeffding_tail(unit, 0.1), 0.1353, 1e-4);
  EXPECT_EQ(hoeffding_tail(unit, 1e-12), 1.0);
  EXPECT_EQ(cantelli_tail(4.0, 2.0), 0.5);
  EXPECT_NEAR(cantelli_tail(1.0, 3.0), 0.1, 1e-16);
  EXPECT_THROW(cantelli_tail(1.0, 0.0), DomainError);
  EXPECT_THROW(hoeffding_tail(std::vector<Range>{}, 0.1), DomainError);
}

TEST(BoundQuery, ValidationAndChecks) {
  BoundQuery q;
  q.classes = 10;
  q.sample_count = 1000;
  q.nu = 4;
  q.var_sqnorm = 32;
  q.w_l2 = 1.0;
  q.w_inf = 0.8;
  q.mean_entropy = 1.0;
  const auto r1 = check_theorem1(q);
  EXPECT_EQ(r1.kind, BoundKind::theorem1);
  EXPECT_NEAR(r1.margin, 1.0 - theorem1_bound(10, 1.0, 4), 1e-15);
  EXPECT_TRUE(r1.satisfied);
  const auto r2 = check_theorem2(q, 10.0);
  EXPECT_FALSE(r2.satisfied);
  EXPECT_EQ(r2.satisfied, r2.margin >= 0);
  q.w_inf = 2.0;
  EXPECT_THROW(q.validate(), DomainError);
  q.w_inf = 0.5;
  q.delta = 0.6;
  EXPECT_THROW(check_theorem1(q), DomainError);
}

GaussianMixture small_fixture() {
  Rng rng(4);
  return testing::random_mixture(3, 3, rng);
}

TEST(McVerify, ZeroClassifierNeverViolatesTheorem1) {
  VerifyOptions o;
  o.trials = 100;
  o.reference_draws = 1000;
  const auto r = mc_verify(small_fixture(), [](std::size_t, Rng&) {
    return LinearSoftmaxModel(Matrix::Zero(4, 3));
  }, o);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_TRUE(r.passed());
  for (const auto& t : r.trials) {
    EXPECT_NEAR(t.bound, 0.0, 1e-12);
  }
}

TEST(McVerify, Theorem1AndTheorem2Pass) {
  const auto mix = small_fixture();
  VerifyOptions o;
  o.trials = 150;
  o.reference_draws = 20000;
  o.sample_count = 200;
  const auto r1 = mc_verify(mix, stratified_uniform_sampler(4, 3), o);
  EXPECT_EQ(r1.violations, 0u) << r1.summary_line();
  EXPECT_NEAR(r1.nu, analytic_diversity(mix).nu, 1e-12);
  o.theorem = BoundKind::theorem2;
  const auto r2 = mc_verify(mix, stratified_uniform_sampler(4, 3), o);
  EXPECT_LE(r2.violation_rate, 0.1) << r2.summary_line();
  o.theorem = BoundKind::corollary1;
  const auto r3 = mc_verify(mix, stratified_uniform_sampler(4, 3), o);
  EXPECT_LE(r3.violation_rate, 0.1) << r3.summary_line();
}

TEST(McVerify, ThreadCountDoesNotChangeResults) {
  VerifyOptions o;
  o.trials = 100;
  o.reference_draws = 2000;
  o.theorem = BoundKind::theorem2;
  o.sample_count = 50;
  std::ostringstream a, b;
  o.threads = 1;
  mc_verify(small_fixture(), stratified_uniform_sampler(3, 3), o).write_csv(a);
  o.threads = 3;
  mc_verify(small_fixture(), stratified_uniform_sampler(3, 3), o).write_csv(b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, 39), "trial,theorem,observed,bound,margin,vio");
}

TEST(McVerify, FeatureMapModelsUseTransformedMixture) {
  VerifyOptions o;
  o.trials = 100;
  o.reference_draws = 5000;
  const auto r = mc_verify(small_fixture(), [](std::size_t, Rng& rng) {
    return LinearSoftmaxModel(testing::random_matrix(3, 2, 2, rng), testing::random_matrix(2, 3, 1, rng));
  }, o);
  EXPECT_EQ(r.violations, 0u);
}

TEST(McVerify, RejectsBadOptions) {
  VerifyOptions o;
  o.trials = 0;
  EXPECT_THROW(mc_verify(small_fixture(), stratified_uniform_sampler(2, 3), o), DomainError);
  o.trials = 10;
  EXPECT_THROW(mc_verify(GaussianMixture::validate({{1.0, Vector::Ones(3), Matrix::Identity(3, 3)}}),
                         stratified_uniform_sampler(2, 3), o),
               NotCenteredError);
}

}  // namespace
}  // namespace maxent
