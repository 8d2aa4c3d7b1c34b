#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "maxent/maxent_core.hpp"
#include "maxent/mixture_model.hpp"

namespace maxent {

// Inputs shared by the norm and entropy bounds.
struct BoundQuery {
  int classes = 2;
  std::size_t sample_count = 1;
  double delta = 0.1;
  double nu = 0.0;
  double var_sqnorm = 0.0;
  double w_l2 = 0.0;
  double w_inf = 0.0;
  double mean_entropy = 0.0;
  bool entropy_is_empirical = false;

  // delta in (0, 1/2), nu >= 0, var_sqnorm >= 0, 0 <= w_inf <= w_l2 (1e-12 slack).
  void validate() const;
};

enum class BoundKind { theorem1, theorem2, corollary1 };
const char* to_string(BoundKind kind);

struct BoundReport {
  BoundKind kind = BoundKind::theorem1;
  double bound_value = 0.0;
  double observed = 0.0;
  // Positive when the inequality holds: observed - bound for lower bounds on
  // ||w||, bound - observed for the entropy deviation bound.
  double margin = 0.0;
  bool satisfied = true;
  BoundQuery query;
};

// (ln C - E H) / (2 sqrt(nu)), the lower bound on ||w||_2.
double theorem1_bound(int classes, double mean_entropy, double nu);

// Deviation bound on |empirical mean entropy - expected entropy|:
//   w [ sqrt(2 nu ln(4/delta) / N) + (4 var (2/delta - 1) / N^3)^(1/4) ln(4/delta) ]
// `w_norm` is ||w||_inf in the stated form; passing ||w||_2 gives the weaker
// variant.
double theorem2_bound(double w_norm, double nu, double var_sqnorm, std::size_t n,
                      double delta);

// Lower bound on ||w||_2 from the empirical mean entropy:
//   (ln C - H_hat) / (2 sqrt(nu) - S),
//   S = sqrt( (2/N) (nu + sqrt(var (2/delta - 1) / N)) ln(2/delta) ).
// Throws DomainError (bound inapplicable) when the denominator is <= 0.
double corollary1_bound(int classes, double empirical_mean_entropy, double nu,
                        double var_sqnorm, std::size_t n, double delta);
// Leading-order form with the remainder dropped:
//   (ln C - H_hat) / ((2 - sqrt((2/N) ln(2/delta))) sqrt(nu)).
double corollary1_leading_bound(int classes, double empirical_mean_entropy, double nu,
                                std::size_t n, double delta);

// ln C - 2 ||w||_inf ||Phi(x)||_2; negative values are vacuous.
double entropy_floor(double w_inf, double phi_norm, int classes);

// P(S >= t) <= exp(-2 n^2 t^2 / sum (b_i - a_i)^2), capped at 1.
struct Range {
  double lo = 0.0;
  double hi = 1.0;
};
double hoeffding_tail(std::span<const Range> ranges, double t);
// P(X - mu >= lambda) <= sigma^2 / (sigma^2 + lambda^2), lambda > 0.
double cantelli_tail(double variance, double lambda);

BoundReport check_theorem1(const BoundQuery& query);
BoundReport check_theorem2(const BoundQuery& query, double observed_deviation);
BoundReport check_corollary1(const BoundQuery& query);

// Produces the random classifier for one trial.
using ModelSampler = std::function<LinearSoftmaxModel(std::size_t trial, Rng& rng)>;

// Entries uniform on [-s, s] with s cycling through {0.1, 1, 10} by trial.
ModelSampler stratified_uniform_sampler(Index classes, Index feature_dim);

struct VerifyOptions {
  BoundKind theorem = BoundKind::theorem1;
  std::size_t sample_count = 1000;      // N, the dataset size per trial
  double delta = 0.1;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::size_t reference_draws = 100000;  // pool for the expected entropy
  double se_guard = 3.0;                // theorem 1 widening, in standard errors
  unsigned threads = 1;
};

struct TrialRecord {
  std::size_t trial = 0;
  double observed = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  bool violated = false;
  bool applicable = true;
  // theorem 2: bound with ||w||_inf; corollary 1: leading-order form.
  double alternate_bound = 0.0;
  bool alternate_violated = false;
  double entropy_std_error = 0.0;
};

struct VerificationReport {
  BoundKind theorem = BoundKind::theorem1;
  std::size_t sample_count = 0;
  double delta = 0.0;
  double nu = 0.0;
  double var_sqnorm = 0.0;
  std::vector<TrialRecord> trials;
  std::size_t violations = 0;
  std::size_t alternate_violations = 0;
  std::size_t inapplicable = 0;
  double violation_rate = 0.0;
  double worst_margin = 0.0;
  double max_entropy_std_error = 0.0;

  // Theorem 1 must never be violated; the probabilistic bounds need rate <= delta.
  bool passed() const;

  // `trial,theorem,observed,bound,margin,violated`
  void write_csv(std::ostream& out) const;
  std::string summary_line() const;
};

// Monte-Carlo check of one bound over `trials` random classifiers.
//
// The expected entropy of each classifier comes from a reference pool of
// `reference_draws` inputs drawn once per call. Theorem 1 compares ||w||_2
// plus se_guard standard errors (scaled by 1 / (2 sqrt(nu))) against the
// bound. Theorem 2 compares |H_hat - E H| on a fresh N-sample dataset against
// the ||w||_2 form and records the ||w||_inf form alongside. Corollary 1
// compares ||w||_2 against the exact form and records the leading-order one.
// Models with a feature map are checked against the transformed mixture.
// Per-trial streams derive from (seed, trial), so results do not depend on
// the thread count.
VerificationReport mc_verify(const GaussianMixture& mixture, const ModelSampler& sampler,
                             const VerifyOptions& options);

}  // namespace maxent
