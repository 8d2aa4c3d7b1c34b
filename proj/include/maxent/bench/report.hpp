#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "maxent/bench/csv.hpp"

namespace maxent::bench {

// Aggregate of one (regime, objective, gamma, setting, metric) group.
struct ReportRow {
  std::string regime;
  std::string objective;
  std::optional<double> gamma;
  std::string setting;
  std::string metric;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
  // Median minus the baseline's median for the same regime, setting and
  // metric. The baseline is objective "ce", else "maxent" at gamma 0.
  std::optional<double> delta;
};

// Delta of MaxEnt val accuracy per regime, compared across regimes.
struct RegimeComparison {
  std::string setting;
  double delta_fine = 0.0;
  double delta_large = 0.0;
  bool passed = false;  // delta_fine >= delta_large
};

struct Report {
  std::vector<ReportRow> rows;
  std::vector<RegimeComparison> comparisons;
  std::size_t manifests_read = 0;
  std::size_t duplicates_skipped = 0;
};

// Median of a non-empty list; the mean of the middle pair for even sizes.
double median(std::vector<double> values);

// Groups summary rows and computes medians, ranges and deltas.
Report summarize(const std::vector<SummaryRow>& rows);

// Reads each manifest, verifies every digest (ManifestError on mismatch),
// skips runs whose summary.csv digest was already seen, and summarizes the
// merged summaries.
Report build_report(const std::vector<std::filesystem::path>& manifest_paths);

// `regime,objective,gamma,setting,metric,median,min,max,count,delta`
void write_report_csv(std::ostream& out, const Report& report);
std::string format_report_table(const Report& report);

}  // namespace maxent::bench
