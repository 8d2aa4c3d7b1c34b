#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maxent/bench/config.hpp"
#include "maxent/bench/csv.hpp"
#include "maxent/bench/manifest.hpp"
#include "maxent/bounds_lab.hpp"
#include "maxent/dataset.hpp"

namespace maxent::bench {

enum class FigureKind {
  pc_scatter,
  spectrum,
  top_prob_hist,
  gamma_sweep,
  noise_sweep,
  ce_vs_val,
  data_fraction_sweep,
  lsr_compare,
};

const char* to_string(FigureKind kind);
// Throws ValidationError("figure", ...) for an unknown name.
FigureKind parse_figure_kind(std::string_view name);
std::vector<FigureKind> all_figure_kinds();

struct RunOptions {
  std::filesystem::path out_dir;
  unsigned threads = 1;
};

struct RunResult {
  RunManifest manifest;
  std::vector<SummaryRow> summary;
};

// Train/validation data for one seed of a config. Streams derive from the
// seed, so every subcommand sees the same samples for the same seed.
struct SeedData {
  LabeledDataset train;
  LabeledDataset val;
};
SeedData seed_data(const GaussianMixture& mixture, const ExperimentConfig& config,
                   std::uint64_t seed);

// Runs one figure pipeline over every seed of the config and writes its
// CSVs, checkpoints, summary.csv and manifest.json into options.out_dir.
// Seeds run in parallel; files are written afterwards in seed order. On
// failure nothing written by the run is left behind.
RunResult run_figure(FigureKind kind, const ExperimentConfig& config, const RunOptions& options);

// Samples train/val sets per seed and exports them with the mixture spectrum.
RunResult run_synth(const ExperimentConfig& config, const RunOptions& options);

// One training run per seed with the configured objective; writes histories
// and checkpoints.
RunResult run_train(const ExperimentConfig& config, const RunOptions& options);

// Monte-Carlo bound verification on the configured mixture for every sample
// count of the [bounds] block. `theorems` empty means all three.
struct BoundsRunResult {
  RunResult run;
  std::vector<VerificationReport> reports;
  bool all_passed = true;
};
BoundsRunResult run_bounds_verify(const ExperimentConfig& config, const RunOptions& options,
                                  std::vector<BoundKind> theorems = {});

}  // namespace maxent::bench
