#include "maxent/bench/figures.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "maxent/checkpoint.hpp"
#include "maxent/diversity.hpp"
#include "maxent/error.hpp"
#include "maxent/format.hpp"
#include "maxent/mixture_model.hpp"
#include "maxent/rng.hpp"
#include "maxent/trainer.hpp"

namespace maxent::bench {
namespace {

constexpr std::uint64_t kTrainStream = 100;
constexpr std::uint64_t kValStream = 101;
constexpr std::uint64_t kNoiseStream = 102;
constexpr std::uint64_t kEntropyStream = 103;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Runs fn(i) for i in [0, count) on up to `threads` workers. The first
// exception (by index) is rethrown after all workers finish.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  std::vector<std::exception_ptr> errors(count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& worker : workers) worker.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// An objective arm of a comparison: plain CE, MaxEnt at some gamma, or LSR.
struct Arm {
  std::string name;  // ce | maxent | lsr
  TrainConfig::ObjectiveKind kind;
  double gamma = 0.0;
  double epsilon = 0.0;

  std::optional<double> gamma_column() const {
    if (kind == TrainConfig::ObjectiveKind::lsr) return std::nullopt;
    return gamma;
  }
};

Arm ce_arm() { return {"ce", TrainConfig::ObjectiveKind::ce, 0.0, 0.0}; }
Arm maxent_arm(double gamma) { return {"maxent", TrainConfig::ObjectiveKind::maxent, gamma, 0.0}; }
Arm lsr_arm(double epsilon) { return {"lsr", TrainConfig::ObjectiveKind::lsr, 0.0, epsilon}; }

TrainConfig arm_config(const TrainConfig& base, const Arm& arm, std::uint64_t seed) {
  TrainConfig c = base;
  c.objective = arm.kind;
  c.gamma = arm.kind == TrainConfig::ObjectiveKind::maxent ? arm.gamma : 0.0;
  if (arm.kind == TrainConfig::ObjectiveKind::lsr) c.lsr_epsilon = arm.epsilon;
  c.seed = seed;
  return c;
}

LinearSoftmaxModel initial_model(const GaussianMixture& mixture, const TrainConfig& config,
                                 std::uint64_t seed) {
  const Index n = mixture.dim();
  return init_model(static_cast<Index>(mixture.count()), n, n, config.init_scale, seed,
                    config.train_feature_map);
}

TrainResult train_arm(const GaussianMixture& mixture, const ExperimentConfig& config, const Arm& arm,
                      std::uint64_t seed, const LabeledDataset& train_set,
                      const LabeledDataset& val_set) {
  const TrainConfig c = arm_config(config.train, arm, seed);
  return train(initial_model(mixture, c, seed), train_set, val_set, c);
}

std::string checkpoint_bytes(const LinearSoftmaxModel& model) {
  std::ostringstream out(std::ios::binary);
  write_checkpoint(out, model);
  return out.str();
}

template <typename Fill>
std::string to_text(Fill fill) {
  std::ostringstream out;
  fill(out);
  return out.str();
}

std::string seed_suffix(std::uint64_t seed) { return "_seed" + std::to_string(seed) + ".csv"; }

// Everything one seed produces, held in memory until the write phase.
struct SeedOutput {
  std::vector<std::pair<std::string, std::string>> files;
  std::vector<SummaryRow> summary;
};

class RowSink {
 public:
  RowSink(SeedOutput& out, std::string regime, std::optional<std::uint64_t> seed)
      : out_(out), regime_(std::move(regime)), seed_(seed) {}

  void add(const std::string& objective, std::optional<double> gamma, const std::string& setting,
           const std::string& metric, double value) {
    out_.summary.push_back({regime_, objective, gamma, setting, seed_, metric, value});
  }
  void add(const Arm& arm, const std::string& setting, const std::string& metric, double value) {
    add(arm.name, arm.gamma_column(), setting, metric, value);
  }

 private:
  SeedOutput& out_;
  std::string regime_;
  std::optional<std::uint64_t> seed_;
};

std::string setting(const std::string& key, double value) { return key + "=" + format_double(value); }

std::string regime_label(const ExperimentConfig& config) {
  if (config.mixture_source != MixtureSource::fixture) return "custom";
  return to_string(config.regime);
}

// Seed-parallel compute followed by an ordered write of every file.
RunResult run_seeds(const std::string& command, const ExperimentConfig& config,
                    const RunOptions& options, SeedOutput shared,
                    const std::function<void(std::uint64_t, SeedOutput&)>& per_seed) {
  ArtifactWriter writer(options.out_dir);
  RunResult result;
  result.manifest.command = command;
  result.manifest.config_text = serialize_config(config);

  const auto compute_start = Clock::now();
  std::vector<SeedOutput> outputs(config.seeds.size());
  parallel_for(config.seeds.size(), options.threads,
               [&](std::size_t i) { per_seed(config.seeds[i], outputs[i]); });
  result.manifest.stage_seconds.emplace_back("compute", seconds_since(compute_start));

  const auto write_start = Clock::now();
  outputs.insert(outputs.begin(), std::move(shared));
  for (const auto& out : outputs) {
    for (const auto& [name, bytes] : out.files) writer.write(name, bytes);
    result.summary.insert(result.summary.end(), out.summary.begin(), out.summary.end());
  }
  writer.write(kSummaryName, [&](std::ostream& os) { write_summary_csv(os, result.summary); });
  writer.write("config.cfg", result.manifest.config_text);
  result.manifest.stage_seconds.emplace_back("write", seconds_since(write_start));
  writer.commit(result.manifest);
  result.manifest = read_manifest(options.out_dir / kManifestName);
  return result;
}

void pc_scatter(const GaussianMixture&, const ExperimentConfig& config, std::uint64_t seed,
                const SeedData& data, SeedOutput& out) {
  RowSink rows(out, regime_label(config), seed);
  const std::size_t k = std::min<std::size_t>(2, static_cast<std::size_t>(data.val.dim()));
  const PrincipalComponents pcs = top_principal_components(data.val.features(), k);
  RowMatrix projected = RowMatrix::Zero(pcs.projected.rows(), 2);
  projected.leftCols(pcs.projected.cols()) = pcs.projected;
  out.files.emplace_back("pc_scatter" + seed_suffix(seed), to_text([&](std::ostream& os) {
                           write_pc_csv(os, projected, data.val.labels());
                         }));
  for (std::size_t i = 0; i < pcs.explained_variance_ratios.size(); ++i) {
    rows.add("none", std::nullopt, "", "explained_ratio_" + std::to_string(i + 1),
             pcs.explained_variance_ratios[i]);
  }
  rows.add("none", std::nullopt, "", "nu_empirical", empirical_diversity(data.val.features()).nu);
}

void spectrum(const GaussianMixture& mixture, const ExperimentConfig& config, std::uint64_t seed,
              const SeedData& data, SeedOutput& out) {
  RowSink rows(out, regime_label(config), seed);
  const std::size_t k = static_cast<std::size_t>(mixture.dim()) / 4;
  const std::string tail_setting = "k=" + std::to_string(k);

  auto record = [&](const std::string& name, std::optional<double> gamma, const RowMatrix& features) {
    const DiversityReport report = empirical_diversity(features);
    out.files.emplace_back("spectrum_" + name + seed_suffix(seed),
                           to_text([&](std::ostream& os) { write_spectrum_csv(os, report); }));
    rows.add(name, gamma, tail_setting, "tail_mass", spectrum_tail_mass(report, k));
    rows.add(name, gamma, "", "nu_empirical", report.nu);
  };

  record("none", std::nullopt, data.val.features());
  for (const Arm& arm : {ce_arm(), maxent_arm(config.train.gamma)}) {
    const TrainResult r = train_arm(mixture, config, arm, seed, data.train, data.val);
    out.files.emplace_back("model_" + arm.name + "_seed" + std::to_string(seed) + ".ckpt",
                           checkpoint_bytes(r.model));
    record(arm.name, arm.gamma_column(), r.model.features(data.val.features()));
    rows.add(arm, "", "val_acc", evaluate(r.model, data.val).accuracy);
  }
}

void top_prob_hist(const GaussianMixture& mixture, const ExperimentConfig& config,
                   std::uint64_t seed, const SeedData& data, SeedOutput& out) {
  RowSink rows(out, regime_label(config), seed);
  const Arm arms[] = {ce_arm(), maxent_arm(config.train.gamma)};
  std::vector<EvaluationResult> evals;
  for (const Arm& arm : arms) {
    const TrainResult r = train_arm(mixture, config, arm, seed, data.train, data.val);
    evals.push_back(evaluate(r.model, data.val));
    rows.add(arm, "", "top_prob_mean", evals.back().top_prob_mean);
    rows.add(arm, "", "val_acc", evals.back().accuracy);
  }
  out.files.emplace_back("top_prob_hist" + seed_suffix(seed), to_text([&](std::ostream& os) {
                           os << "bin_lo,bin_hi,ce,maxent\n";
                           const std::size_t bins = EvaluationResult::kHistogramBins;
                           for (std::size_t b = 0; b < bins; ++b) {
                             os << format_double(static_cast<double>(b) / bins) << ','
                                << format_double(static_cast<double>(b + 1) / bins) << ','
                                << evals[0].top_prob_histogram[b] << ','
                                << evals[1].top_prob_histogram[b] << '\n';
                           }
                         }));
}

void gamma_sweep_figure(const GaussianMixture& mixture, const ExperimentConfig& config,
                        std::uint64_t seed, const SeedData& data, SeedOutput& out) {
  RowSink rows(out, regime_label(config), seed);
  TrainConfig base = arm_config(config.train, maxent_arm(config.train.gamma), seed);
  const auto sweep = gamma_sweep(data.train, data.val, base, config.gammas);
  out.files.emplace_back("gamma_sweep" + seed_suffix(seed),
                         to_text([&](std::ostream& os) { write_sweep_csv(os, sweep); }));
  for (const SweepRow& row : sweep) {
    rows.add("maxent", row.gamma, "", "val_acc", row.val_accuracy);
    rows.add("maxent", row.gamma, "", "val_entropy", row.val_mean_entropy);
    rows.add("maxent", row.gamma, "", "w_l2", row.w_l2);
  }
  (void)mixture;
}

void noise_sweep(const GaussianMixture& mixture, const ExperimentConfig& config, std::uint64_t seed,
                 const SeedData& data, SeedOutput& out) {
  RowSink rows(out, regime_label(config), seed);
  std::ostringstream csv;
  csv << "noise_fraction,objective,gamma,val_acc\n";
  for (const Arm& arm : {ce_arm(), maxent_arm(config.train.gamma)}) {
    std::optional<double> clean;
    std::vector<std::pair<double, double>> accs;
    for (double f : config.noise_fractions) {
      const LabeledDataset noisy = inject_label_noise(data.train, f, derive_seed(seed, kNoiseStream));
      const TrainResult r = train_arm(mixture, config, arm, seed, noisy, data.val);
      const double acc = evaluate(r.model, data.val).accuracy;
      accs.emplace_back(f, acc);
      if (f == 0.0) clean = acc;
      csv << format_double(f) << ',' << arm.name << ',' << format_double(arm.gamma) << ','
          << format_double(acc) << '\n';
      rows.add(arm, setting("noise", f), "val_acc", acc);
    }
    if (clean) {
      for (const auto& [f, acc] : accs) rows.add(arm, setting("noise", f), "acc_drop", *clean - acc);
    }
  }
  out.files.emplace_back("noise_sweep" + seed_suffix(seed), csv.str());
}

void ce_vs_val(const GaussianMixture& mixture, const ExperimentConfig& config, std::uint64_t seed,
               const SeedData& data, SeedOutput& out) {
  RowSink rows(out, regime_label(config), seed);
  for (const Arm& arm : {ce_arm(), maxent_arm(config.train.gamma)}) {
    const TrainResult r = train_arm(mixture, config, arm, seed, data.train, data.val);
    out.files.emplace_back("history_" + arm.name + seed_suffix(seed),
                           to_text([&](std::ostream& os) { r.history.write_csv(os); }));
    out.files.emplace_back("model_" + arm.name + "_seed" + std::to_string(seed) + ".ckpt",
                           checkpoint_bytes(r.model));
    const EvaluationResult tr = evaluate(r.model, data.train);
    const EvaluationResult va = evaluate(r.model, data.val);
    rows.add(arm, "", "train_ce", tr.mean_ce);
    rows.add(arm, "", "train_entropy", tr.mean_entropy);
    rows.add(arm, "", "val_ce", va.mean_ce);
    rows.add(arm, "", "val_acc", va.accuracy);
  }
}

void data_fraction_sweep(const GaussianMixture& mixture, const ExperimentConfig& config,
                         std::uint64_t seed, const SeedData& data, SeedOutput& out) {
  RowSink rows(out, regime_label(config), seed);
  std::ostringstream csv;
  csv << "fraction,objective,gamma,train_size,val_acc\n";
  for (const Arm& arm : {ce_arm(), maxent_arm(config.train.gamma)}) {
    for (double f : config.data_fractions) {
      const auto count = std::max<std::size_t>(
          1, static_cast<std::size_t>(std::llround(f * static_cast<double>(data.train.size()))));
      const TrainResult r = train_arm(mixture, config, arm, seed, data.train.head(count), data.val);
      const double acc = evaluate(r.model, data.val).accuracy;
      csv << format_double(f) << ',' << arm.name << ',' << format_double(arm.gamma) << ',' << count
          << ',' << format_double(acc) << '\n';
      rows.add(arm, setting("fraction", f), "val_acc", acc);
    }
  }
  out.files.emplace_back("data_fraction" + seed_suffix(seed), csv.str());
}

void lsr_compare(const GaussianMixture& mixture, const ExperimentConfig& config, std::uint64_t seed,
                 const SeedData& data, SeedOutput& out) {
  RowSink rows(out, regime_label(config), seed);
  std::ostringstream csv;
  csv << "objective,gamma,epsilon,val_acc,val_ce,top_prob_mean\n";
  for (const Arm& arm : {ce_arm(), maxent_arm(config.train.gamma), lsr_arm(config.train.lsr_epsilon)}) {
    const TrainResult r = train_arm(mixture, config, arm, seed, data.train, data.val);
    const EvaluationResult va = evaluate(r.model, data.val);
    csv << arm.name << ',' << format_double(arm.gamma) << ',' << format_double(arm.epsilon) << ','
        << format_double(va.accuracy) << ',' << format_double(va.mean_ce) << ','
        << format_double(va.top_prob_mean) << '\n';
    const std::string s = arm.kind == TrainConfig::ObjectiveKind::lsr ? setting("eps", arm.epsilon) : "";
    rows.add(arm, s, "val_acc", va.accuracy);
    rows.add(arm, s, "top_prob_mean", va.top_prob_mean);
  }
  out.files.emplace_back("lsr_compare" + seed_suffix(seed), csv.str());
}

using FigureFn = void (*)(const GaussianMixture&, const ExperimentConfig&, std::uint64_t,
                          const SeedData&, SeedOutput&);

FigureFn figure_fn(FigureKind kind) {
  switch (kind) {
    case FigureKind::pc_scatter: return pc_scatter;
    case FigureKind::spectrum: return spectrum;
    case FigureKind::top_prob_hist: return top_prob_hist;
    case FigureKind::gamma_sweep: return gamma_sweep_figure;
    case FigureKind::noise_sweep: return noise_sweep;
    case FigureKind::ce_vs_val: return ce_vs_val;
    case FigureKind::data_fraction_sweep: return data_fraction_sweep;
    case FigureKind::lsr_compare: return lsr_compare;
  }
  throw ValidationError("figure", "unknown kind");
}

}  // namespace

const char* to_string(FigureKind kind) {
  switch (kind) {
    case FigureKind::pc_scatter: return "pc_scatter";
    case FigureKind::spectrum: return "spectrum";
    case FigureKind::top_prob_hist: return "top_prob_hist";
    case FigureKind::gamma_sweep: return "gamma_sweep";
    case FigureKind::noise_sweep: return "noise_sweep";
    case FigureKind::ce_vs_val: return "ce_vs_val";
    case FigureKind::data_fraction_sweep: return "data_fraction_sweep";
    case FigureKind::lsr_compare: return "lsr_compare";
  }
  return "unknown";
}

std::vector<FigureKind> all_figure_kinds() {
  return {FigureKind::pc_scatter,  FigureKind::spectrum,  FigureKind::top_prob_hist,
          FigureKind::gamma_sweep, FigureKind::noise_sweep, FigureKind::ce_vs_val,
          FigureKind::data_fraction_sweep, FigureKind::lsr_compare};
}

FigureKind parse_figure_kind(std::string_view name) {
  for (FigureKind kind : all_figure_kinds()) {
    if (name == to_string(kind)) return kind;
  }
  throw ValidationError("figure", "unknown figure kind '" + std::string(name) + "'");
}

SeedData seed_data(const GaussianMixture& mixture, const ExperimentConfig& config,
                   std::uint64_t seed) {
  return {sample(mixture, config.train_size, derive_seed(seed, kTrainStream)),
          sample(mixture, config.val_size, derive_seed(seed, kValStream))};
}

RunResult run_figure(FigureKind kind, const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  if (kind == FigureKind::spectrum && !config.train.train_feature_map) {
    throw ValidationError("train.train_feature_map", "the spectrum figure needs a trainable feature map");
  }
  if (kind == FigureKind::pc_scatter && config.val_size < 2) {
    throw ValidationError("experiment.val_size", "principal components need at least 2 samples");
  }
  const GaussianMixture mixture = resolve_mixture(config);
  const FigureFn fn = figure_fn(kind);
  return run_seeds(std::string("figure ") + to_string(kind), config, options, {},
                   [&](std::uint64_t seed, SeedOutput& out) {
                     fn(mixture, config, seed, seed_data(mixture, config, seed), out);
                   });
}

RunResult run_synth(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  const GaussianMixture mixture = resolve_mixture(config);
  const std::string regime = regime_label(config);

  SeedOutput shared;
  {
    RowSink rows(shared, regime, std::nullopt);
    const DiversityReport analytic = analytic_diversity(mixture);
    const MomentSummary moments = moment_summary(mixture);
    shared.files.emplace_back("spectrum_analytic.csv",
                              to_text([&](std::ostream& os) { write_spectrum_csv(os, analytic); }));
    rows.add("none", std::nullopt, "", "nu_analytic", analytic.nu);
    rows.add("none", std::nullopt, "", "expected_sqnorm", moments.expected_sqnorm);
    rows.add("none", std::nullopt, "", "expected_fourth", moments.expected_fourth);
    rows.add("none", std::nullopt, "", "var_sqnorm", moments.var_sqnorm);
  }
  return run_seeds("synth", config, options, std::move(shared),
                   [&](std::uint64_t seed, SeedOutput& out) {
                     RowSink rows(out, regime, seed);
                     const SeedData data = seed_data(mixture, config, seed);
                     out.files.emplace_back("train" + seed_suffix(seed), to_text([&](std::ostream& os) {
                                              data.train.write_csv(os);
                                            }));
                     out.files.emplace_back("val" + seed_suffix(seed), to_text([&](std::ostream& os) {
                                              data.val.write_csv(os);
                                            }));
                     if (data.train.size() >= 2) {
                       rows.add("none", std::nullopt, "", "nu_empirical",
                                empirical_diversity(data.train.features()).nu);
                     }
                   });
}

RunResult run_train(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  const GaussianMixture mixture = resolve_mixture(config);
  const std::string regime = regime_label(config);
  const double nu = analytic_diversity(mixture).nu;

  Arm arm;
  switch (config.train.objective) {
    case TrainConfig::ObjectiveKind::ce: arm = ce_arm(); break;
    case TrainConfig::ObjectiveKind::maxent: arm = maxent_arm(config.train.gamma); break;
    case TrainConfig::ObjectiveKind::lsr: arm = lsr_arm(config.train.lsr_epsilon); break;
  }

  return run_seeds("train", config, options, {}, [&](std::uint64_t seed, SeedOutput& out) {
    RowSink rows(out, regime, seed);
    const SeedData data = seed_data(mixture, config, seed);
    const TrainResult r = train_arm(mixture, config, arm, seed, data.train, data.val);
    out.files.emplace_back("history" + seed_suffix(seed),
                           to_text([&](std::ostream& os) { r.history.write_csv(os); }));
    out.files.emplace_back("model_seed" + std::to_string(seed) + ".ckpt", checkpoint_bytes(r.model));

    const EvaluationResult tr = evaluate(r.model, data.train);
    const EvaluationResult va = evaluate(r.model, data.val);
    rows.add(arm, "", "train_ce", tr.mean_ce);
    rows.add(arm, "", "train_entropy", tr.mean_entropy);
    rows.add(arm, "", "val_acc", va.accuracy);
    rows.add(arm, "", "val_ce", va.mean_ce);
    rows.add(arm, "", "val_entropy", va.mean_entropy);
    rows.add(arm, "", "top_prob_mean", va.top_prob_mean);
    rows.add(arm, "", "w_l2", r.model.l2_norm());

    // Theorem 1 on the trained model, against the distribution its features follow.
    const GaussianMixture features =
        r.model.has_feature_map() ? linear_transform(mixture, r.model.feature_map()) : mixture;
    const double feature_nu = r.model.has_feature_map() ? analytic_diversity(features).nu : nu;
    if (feature_nu > 0.0) {
      LinearSoftmaxModel classifier(r.model.classifier());
      const MonteCarloEstimate expected = expected_entropy_mc(
          classifier, features, config.bounds.reference_draws, derive_seed(seed, kEntropyStream));
      const double bound = theorem1_bound(static_cast<int>(mixture.count()), expected.estimate, feature_nu);
      const double guard = config.bounds.se_guard * expected.std_error / (2.0 * std::sqrt(feature_nu));
      rows.add(arm, "", "theorem1_margin", r.model.l2_norm() + guard - bound);
    }
  });
}

BoundsRunResult run_bounds_verify(const ExperimentConfig& config, const RunOptions& options,
                                  std::vector<BoundKind> theorems) {
  config.validate();
  if (theorems.empty()) theorems = {BoundKind::theorem1, BoundKind::theorem2, BoundKind::corollary1};
  const GaussianMixture mixture = resolve_mixture(config);
  const std::string regime = regime_label(config);
  const Index classes = static_cast<Index>(mixture.count());
  const ModelSampler sampler = stratified_uniform_sampler(classes, mixture.dim());

  ArtifactWriter writer(options.out_dir);
  BoundsRunResult result;
  result.run.manifest.command = "bounds verify";
  result.run.manifest.config_text = serialize_config(config);
  const std::uint64_t seed = config.seeds.front();

  const auto start = Clock::now();
  for (BoundKind theorem : theorems) {
    // Theorem 1 does not involve N; it runs once.
    std::vector<std::size_t> counts = config.bounds.sample_counts;
    if (theorem == BoundKind::theorem1) counts = {counts.front()};
    for (std::size_t n : counts) {
      VerifyOptions vo;
      vo.theorem = theorem;
      vo.sample_count = n;
      vo.delta = config.bounds.delta;
      vo.trials = config.bounds.trials;
      vo.seed = seed;
      vo.reference_draws = config.bounds.reference_draws;
      vo.se_guard = config.bounds.se_guard;
      vo.threads = options.threads;
      VerificationReport report = mc_verify(mixture, sampler, vo);

      const std::string tag = std::string(to_string(theorem)) +
                              (theorem == BoundKind::theorem1 ? "" : "_N" + std::to_string(n));
      writer.write("bounds_" + tag + ".csv", [&](std::ostream& os) { report.write_csv(os); });
      const std::string s = theorem == BoundKind::theorem1 ? "" : "N=" + std::to_string(n);
      const auto add = [&](const std::string& metric, double value) {
        result.run.summary.push_back({regime, to_string(theorem), std::nullopt, s, seed, metric, value});
      };
      add("violation_rate", report.violation_rate);
      add("violations", static_cast<double>(report.violations));
      add("alternate_violations", static_cast<double>(report.alternate_violations));
      add("inapplicable", static_cast<double>(report.inapplicable));
      add("worst_margin", report.worst_margin);
      add("delta", report.delta);
      result.all_passed = result.all_passed && report.passed();
      result.reports.push_back(std::move(report));
    }
  }
  result.run.manifest.stage_seconds.emplace_back("compute", seconds_since(start));
  writer.write(kSummaryName, [&](std::ostream& os) { write_summary_csv(os, result.run.summary); });
  writer.write("config.cfg", result.run.manifest.config_text);
  writer.commit(result.run.manifest);
  result.run.manifest = read_manifest(options.out_dir / kManifestName);
  return result;
}

}  // namespace maxent::bench
