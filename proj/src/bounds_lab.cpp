#include "maxent/bounds_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "maxent/diversity.hpp"
#include "maxent/error.hpp"
#include "maxent/format.hpp"
#include "maxent/rng.hpp"

namespace maxent {
namespace {

constexpr std::uint64_t kPoolStream = 11;
constexpr std::uint64_t kModelStream = 12;
constexpr std::uint64_t kDatasetStream = 13;

void require_delta(double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw DomainError("delta must lie in (0, 1/2)");
}

void require_nonnegative(double value, const char* name) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be finite and non-negative");
  }
}

double log_classes(int classes) {
  if (classes < 1) throw DomainError("class count must be positive");
  return std::log(static_cast<double>(classes));
}

void require_entropy(double entropy, int classes) {
  const double top = log_classes(classes);
  if (!(entropy >= -1e-12 && entropy <= top + 1e-12)) {
    throw DomainError("mean entropy " + format_double(entropy) + " outside [0, ln C]");
  }
}

struct PreparedModel {
  double nu = 0.0;
  double var_sqnorm = 0.0;
};

PreparedModel feature_moments(const GaussianMixture& mixture, const LinearSoftmaxModel& model) {
  if (!model.has_feature_map()) {
    return {analytic_diversity(mixture).nu, fourth_moment_and_variance(mixture).var_sqnorm};
  }
  const GaussianMixture mapped = linear_transform(mixture, model.feature_map());
  return {analytic_diversity(mapped).nu, fourth_moment_and_variance(mapped).var_sqnorm};
}

}  // namespace

void BoundQuery::validate() const {
  if (classes < 1) throw DomainError("class count must be positive");
  if (sample_count < 1) throw DomainError("sample count must be positive");
  require_delta(delta);
  require_nonnegative(nu, "nu");
  require_nonnegative(var_sqnorm, "var_sqnorm");
  require_nonnegative(w_l2, "w_l2");
  require_nonnegative(w_inf, "w_inf");
  if (w_inf > w_l2 * (1.0 + 1e-12) + 1e-300) throw DomainError("w_inf exceeds w_l2");
  require_entropy(mean_entropy, classes);
}

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::theorem1:
      return "theorem1";
    case BoundKind::theorem2:
      return "theorem2";
    case BoundKind::corollary1:
      return "corollary1";
  }
  return "unknown";
}

double theorem1_bound(int classes, double mean_entropy, double nu) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError("theorem 1 needs nu > 0");
  require_entropy(mean_entropy, classes);
  return (log_classes(classes) - mean_entropy) / (2.0 * std::sqrt(nu));
}

double theorem2_bound(double w_norm, double nu, double var_sqnorm, std::size_t n, double delta) {
  if (n < 1) throw DomainError("N must be positive");
  require_delta(delta);
  require_nonnegative(w_norm, "w_norm");
  require_nonnegative(nu, "nu");
  require_nonnegative(var_sqnorm, "var_sqnorm");
  const auto count = static_cast<double>(n);
  const double log_term = std::log(4.0 / delta);
  const double leading = std::sqrt(2.0 * nu * log_term / count);
  const double remainder =
      std::pow(4.0 * var_sqnorm * (2.0 / delta - 1.0) / (count * count * count), 0.25) * log_term;
  return w_norm * (leading + remainder);
}

double corollary1_bound(int classes, double empirical_mean_entropy, double nu, double var_sqnorm,
                        std::size_t n, double delta) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError("corollary 1 needs nu > 0");
  if (n < 1) throw DomainError("N must be positive");
  require_delta(delta);
  require_nonnegative(var_sqnorm, "var_sqnorm");
  require_entropy(empirical_mean_entropy, classes);
  const auto count = static_cast<double>(n);
  const double inflated_nu = nu + std::sqrt(var_sqnorm * (2.0 / delta - 1.0) / count);
  const double slack = std::sqrt(2.0 / count * inflated_nu * std::log(2.0 / delta));
  const double denominator = 2.0 * std::sqrt(nu) - slack;
  if (!(denominator > 0.0)) {
    throw DomainError("corollary 1 inapplicable: denominator " + format_double(denominator) +
                      " <= 0 at N = " + std::to_string(n));
  }
  return (log_classes(classes) - empirical_mean_entropy) / denominator;
}

double corollary1_leading_bound(int classes, double empirical_mean_entropy, double nu,
                                std::size_t n, double delta) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError("corollary 1 needs nu > 0");
  if (n < 1) throw DomainError("N must be positive");
  require_delta(delta);
  require_entropy(empirical_mean_entropy, classes);
  const double factor = 2.0 - std::sqrt(2.0 / static_cast<double>(n) * std::log(2.0 / delta));
  if (!(factor > 0.0)) throw DomainError("corollary 1 leading form inapplicable at this N");
  return (log_classes(classes) - empirical_mean_entropy) / (factor * std::sqrt(nu));
}

double entropy_floor(double w_inf, double phi_norm, int classes) {
  require_nonnegative(w_inf, "w_inf");
  require_nonnegative(phi_norm, "phi_norm");
  return log_classes(classes) - 2.0 * w_inf * phi_norm;
}

double hoeffding_tail(std::span<const Range> ranges, double t) {
  if (ranges.empty()) throw DomainError("hoeffding needs at least one variable");
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("hoeffding needs t > 0");
  double spread = 0.0;
  for (const auto& r : ranges) {
    if (!(r.hi >= r.lo) || !std::isfinite(r.lo) || !std::isfinite(r.hi)) {
      throw DomainError("hoeffding range must satisfy lo <= hi");
    }
    spread += (r.hi - r.lo) * (r.hi - r.lo);
  }
  if (spread == 0.0) return 0.0;
  const auto n = static_cast<double>(ranges.size());
  return std::min(1.0, std::exp(-2.0 * n * n * t * t / spread));
}

double cantelli_tail(double variance, double lambda) {
  require_nonnegative(variance, "variance");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("cantelli needs lambda > 0");
  if (variance == 0.0) return 0.0;
  return variance / (variance + lambda * lambda);
}

BoundReport check_theorem1(const BoundQuery& query) {
  query.validate();
  BoundReport r;
  r.kind = BoundKind::theorem1;
  r.query = query;
  r.bound_value = theorem1_bound(query.classes, query.mean_entropy, query.nu);
  r.observed = query.w_l2;
  r.margin = r.observed - r.bound_value;
  r.satisfied = r.margin >= 0.0;
  return r;
}

BoundReport check_theorem2(const BoundQuery& query, double observed_deviation) {
  query.validate();
  require_nonnegative(observed_deviation, "observed deviation");
  BoundReport r;
  r.kind = BoundKind::theorem2;
  r.query = query;
  r.bound_value =
      theorem2_bound(query.w_inf, query.nu, query.var_sqnorm, query.sample_count, query.delta);
  r.observed = observed_deviation;
  r.margin = r.bound_value - r.observed;
  r.satisfied = r.margin >= 0.0;
  return r;
}

BoundReport check_corollary1(const BoundQuery& query) {
  query.validate();
  BoundReport r;
  r.kind = BoundKind::corollary1;
  r.query = query;
  r.bound_value = corollary1_bound(query.classes, query.mean_entropy, query.nu, query.var_sqnorm,
                                   query.sample_count, query.delta);
  r.observed = query.w_l2;
  r.margin = r.observed - r.bound_value;
  r.satisfied = r.margin >= 0.0;
  return r;
}

ModelSampler stratified_uniform_sampler(Index classes, Index feature_dim) {
  return [classes, feature_dim](std::size_t trial, Rng& rng) {
    static constexpr double kScales[] = {0.1, 1.0, 10.0};
    const double scale = kScales[trial % 3];
    Matrix w(classes, feature_dim);
    for (Index r = 0; r < classes; ++r) {
      for (Index c = 0; c < feature_dim; ++c) w(r, c) = rng.uniform(-scale, scale);
    }
    return LinearSoftmaxModel(std::move(w));
  };
}

bool VerificationReport::passed() const {
  if (theorem == BoundKind::theorem1) return violations == 0;
  return violation_rate <= delta;
}

void VerificationReport::write_csv(std::ostream& out) const {
  out << "trial,theorem,observed,bound,margin,violated\n";
  for (const auto& t : trials) {
    out << t.trial << ',' << to_string(theorem) << ',' << format_double(t.observed) << ','
        << (t.applicable ? format_double(t.bound) : "") << ','
        << (t.applicable ? format_double(t.margin) : "") << ',' << (t.violated ? 1 : 0) << '\n';
  }
}

std::string VerificationReport::summary_line() const {
  std::ostringstream s;
  s << to_string(theorem) << " N=" << sample_count << " trials=" << trials.size()
    << " violations=" << violations << " rate=" << format_double(violation_rate)
    << " delta=" << format_double(delta) << " worst_margin=" << format_double(worst_margin);
  if (theorem != BoundKind::theorem1) s << " alternate_violations=" << alternate_violations;
  if (inapplicable > 0) s << " inapplicable=" << inapplicable;
  s << (passed() ? " PASS" : " FAIL");
  return s.str();
}

VerificationReport mc_verify(const GaussianMixture& mixture, const ModelSampler& sampler,
                             const VerifyOptions& options) {
  if (options.trials < 1) throw DomainError("mc_verify needs at least one trial");
  if (options.reference_draws < 100) throw DomainError("reference pool needs >= 100 draws");
  if (options.sample_count < 1) throw DomainError("N must be positive");
  require_delta(options.delta);
  if (!mixture.is_centered()) throw NotCenteredError("mc_verify needs a zero-mean mixture");

  MixtureSampler pool_sampler(mixture, derive_seed(options.seed, kPoolStream));
  const RowMatrix pool = pool_sampler.draw_many(options.reference_draws);
  const PreparedModel base = feature_moments(mixture, LinearSoftmaxModel(Matrix::Zero(1, mixture.dim())));

  VerificationReport report;
  report.theorem = options.theorem;
  report.sample_count = options.sample_count;
  report.delta = options.delta;
  report.nu = base.nu;
  report.var_sqnorm = base.var_sqnorm;
  report.trials.resize(options.trials);

  const auto run_trial = [&](std::size_t trial) {
    Rng model_rng = Rng::stream(derive_seed(options.seed, kModelStream), trial);
    const LinearSoftmaxModel model = sampler(trial, model_rng);
    const PreparedModel moments = model.has_feature_map() ? feature_moments(mixture, model) : base;
    const int classes = static_cast<int>(model.class_count());
    const MonteCarloEstimate expected = mean_entropy_estimate(model, pool);
    const double root_nu = std::sqrt(moments.nu);

    TrialRecord rec;
    rec.trial = trial;
    rec.entropy_std_error = expected.std_error;
    switch (options.theorem) {
      case BoundKind::theorem1: {
        rec.bound = theorem1_bound(classes, expected.estimate, moments.nu);
        rec.observed = model.l2_norm();
        rec.margin = rec.observed + options.se_guard * expected.std_error / (2.0 * root_nu) - rec.bound;
        rec.violated = rec.margin < 0.0;
        break;
      }
      case BoundKind::theorem2:
      case BoundKind::corollary1: {
        const LabeledDataset data = sample(
            mixture, options.sample_count,
            derive_seed(derive_seed(options.seed, kDatasetStream), trial));
        const double empirical = empirical_mean_entropy(model, data);
        if (options.theorem == BoundKind::theorem2) {
          rec.observed = std::abs(empirical - expected.estimate);
          rec.bound = theorem2_bound(model.l2_norm(), moments.nu, moments.var_sqnorm,
                                     options.sample_count, options.delta);
          rec.alternate_bound = theorem2_bound(model.inf_norm(), moments.nu, moments.var_sqnorm,
                                               options.sample_count, options.delta);
          rec.margin = rec.bound - rec.observed;
          rec.violated = rec.margin < 0.0;
          rec.alternate_violated = rec.observed > rec.alternate_bound;
        } else {
          rec.observed = model.l2_norm();
          try {
            rec.bound = corollary1_bound(classes, empirical, moments.nu, moments.var_sqnorm,
                                         options.sample_count, options.delta);
          } catch (const DomainError&) {
            rec.applicable = false;
          }
          if (rec.applicable) {
            rec.margin = rec.observed - rec.bound;
            rec.violated = rec.margin < 0.0;
          }
          try {
            rec.alternate_bound = corollary1_leading_bound(classes, empirical, moments.nu,
                                                           options.sample_count, options.delta);
            rec.alternate_violated = rec.observed < rec.alternate_bound;
          } catch (const DomainError&) {
            rec.alternate_bound = std::numeric_limits<double>::quiet_NaN();
          }
        }
        break;
      }
    }
    report.trials[trial] = rec;
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads,
                                                           static_cast<unsigned>(options.trials)));
  if (threads == 1) {
    for (std::size_t t = 0; t < options.trials; ++t) run_trial(t);
  } else {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t t = w; t < options.trials; t += threads) run_trial(t);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& worker : workers) worker.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  report.worst_margin = std::numeric_limits<double>::infinity();
  std::size_t applicable = 0;
  for (const auto& rec : report.trials) {
    report.max_entropy_std_error = std::max(report.max_entropy_std_error, rec.entropy_std_error);
    if (!rec.applicable) {
      ++report.inapplicable;
      continue;
    }
    ++applicable;
    if (rec.violated) ++report.violations;
    if (rec.alternate_violated) ++report.alternate_violations;
    report.worst_margin = std::min(report.worst_margin, rec.margin);
  }
  report.violation_rate =
      applicable > 0 ? static_cast<double>(report.violations) / static_cast<double>(applicable) : 0.0;
  return report;
}

}  // namespace maxent
