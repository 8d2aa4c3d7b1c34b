// maxent_cli: experiment driver for the MaxEnt lab.
//
//   maxent_cli synth         --config FILE [--out DIR] [--seeds LIST] [--threads N]
//   maxent_cli train         --config FILE ...
//   maxent_cli figure KIND   --config FILE ...
//   maxent_cli bounds verify --config FILE [--theorem NAME] ...
//   maxent_cli report MANIFEST... [--out DIR]
//
// Without --out, runs go to <root>/<config name>/<command>, where root is
// $MAXENT_OUT_ROOT or ./runs. Exit status: 0 success, 1 error, 2 usage,
// 3 a bound verification that did not pass.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "maxent/bench/config.hpp"
#include "maxent/bench/figures.hpp"
#include "maxent/bench/report.hpp"
#include "maxent/error.hpp"

namespace {

using namespace maxent;
using namespace maxent::bench;

struct CommonArgs {
  std::string config;
  std::string out;
  std::string seeds;
  unsigned threads = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config, "Experiment config file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", args.out, "Output directory");
  cmd->add_option("--seeds", args.seeds, "Seed list overriding the config, e.g. 1-6 or 1,3,5");
  cmd->add_option("--threads", args.threads, "Worker threads")->check(CLI::PositiveNumber);
}

std::filesystem::path output_root() {
  const char* root = std::getenv("MAXENT_OUT_ROOT");
  return root && *root ? std::filesystem::path(root) : std::filesystem::path("runs");
}

ExperimentConfig load(const CommonArgs& args) {
  ExperimentConfig config = load_config(args.config);
  if (!args.seeds.empty()) {
    config.seeds = parse_seed_list(args.seeds);
    config.validate();
  }
  return config;
}

RunOptions options_for(const CommonArgs& args, const ExperimentConfig& config,
                       const std::string& tag) {
  RunOptions options;
  options.threads = args.threads;
  if (!args.out.empty()) options.out_dir = args.out;
  else if (!config.output.empty()) options.out_dir = output_root() / config.output / tag;
  else options.out_dir = output_root() / config.name / tag;
  return options;
}

void print_summary(const RunResult& result, const std::filesystem::path& dir) {
  std::cout << result.manifest.command << ": " << result.manifest.artifacts.size()
            << " artifacts in " << dir.string() << '\n';
  std::cout << format_report_table(summarize(result.summary));
}

BoundKind parse_theorem(const std::string& name) {
  if (name == "theorem1" || name == "1") return BoundKind::theorem1;
  if (name == "theorem2" || name == "2") return BoundKind::theorem2;
  if (name == "corollary1" || name == "cor1") return BoundKind::corollary1;
  throw ValidationError("theorem", "expected theorem1, theorem2, corollary1 or all");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum-entropy softmax lab: synthetic regimes, training, bounds"};
  app.require_subcommand(1);

  CommonArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Sample datasets and export the mixture spectrum");
  add_common(synth, synth_args);

  CommonArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "Train the configured objective on every seed");
  add_common(train_cmd, train_args);

  CommonArgs figure_args;
  std::string figure_kind;
  auto* figure = app.add_subcommand("figure", "Run one figure or table pipeline");
  figure->add_option("kind", figure_kind,
                     "pc_scatter | spectrum | top_prob_hist | gamma_sweep | noise_sweep | "
                     "ce_vs_val | data_fraction_sweep | lsr_compare")
      ->required()
      ->check(CLI::IsMember({"pc_scatter", "spectrum", "top_prob_hist", "gamma_sweep", "noise_sweep",
                             "ce_vs_val", "data_fraction_sweep", "lsr_compare"}));
  add_common(figure, figure_args);

  CommonArgs bounds_args;
  std::string theorem = "all";
  auto* bounds = app.add_subcommand("bounds", "Bound evaluation");
  bounds->require_subcommand(1);
  auto* verify = bounds->add_subcommand("verify", "Monte-Carlo verification of the bounds");
  add_common(verify, bounds_args);
  verify->add_option("--theorem", theorem, "theorem1 | theorem2 | corollary1 | all")
      ->check(CLI::IsMember({"theorem1", "theorem2", "corollary1", "all"}));

  std::vector<std::string> manifests;
  std::string report_out;
  auto* report = app.add_subcommand("report", "Merge run manifests into a summary table");
  report->add_option("manifests", manifests, "manifest.json files")->required()->check(CLI::ExistingFile);
  report->add_option("--out", report_out, "Directory for report.csv and report.txt");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*synth) {
      const auto config = load(synth_args);
      const auto options = options_for(synth_args, config, "synth");
      print_summary(run_synth(config, options), options.out_dir);
    } else if (*train_cmd) {
      const auto config = load(train_args);
      const auto options = options_for(train_args, config, "train");
      print_summary(run_train(config, options), options.out_dir);
    } else if (*figure) {
      const FigureKind kind = parse_figure_kind(figure_kind);
      const auto config = load(figure_args);
      const auto options = options_for(figure_args, config, figure_kind);
      print_summary(run_figure(kind, config, options), options.out_dir);
    } else if (*verify) {
      const auto config = load(bounds_args);
      const auto options = options_for(bounds_args, config, "bounds");
      std::vector<BoundKind> kinds;
      if (theorem != "all") kinds.push_back(parse_theorem(theorem));
      const auto result = run_bounds_verify(config, options, kinds);
      for (const auto& r : result.reports) std::cout << r.summary_line() << '\n';
      std::cout << "artifacts in " << options.out_dir.string() << '\n';
      if (!result.all_passed) return 3;
    } else if (*report) {
      std::vector<std::filesystem::path> paths(manifests.begin(), manifests.end());
      const Report merged = build_report(paths);
      const std::string table = format_report_table(merged);
      std::cout << "merged " << merged.manifests_read << " manifests ("
                << merged.duplicates_skipped << " duplicates skipped)\n"
                << table;
      if (!report_out.empty()) {
        std::filesystem::create_directories(report_out);
        std::ofstream csv(std::filesystem::path(report_out) / "report.csv", std::ios::binary);
        write_report_csv(csv, merged);
        std::ofstream txt(std::filesystem::path(report_out) / "report.txt", std::ios::binary);
        txt << table;
        if (!csv || !txt) throw IoError("cannot write report to " + report_out);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
