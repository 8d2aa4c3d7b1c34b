#include "maxent/bench/report.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include "maxent/bench/manifest.hpp"
#include "maxent/error.hpp"
#include "maxent/format.hpp"

namespace maxent::bench {
namespace {

std::string gamma_text(const std::optional<double>& g) { return g ? format_double(*g) : ""; }

using GroupKey = std::tuple<std::string, std::string, std::string, std::string, std::string>;

GroupKey key_of(const std::string& regime, const std::string& objective,
                const std::optional<double>& gamma, const std::string& setting,
                const std::string& metric) {
  return {regime, objective, gamma_text(gamma), setting, metric};
}

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) throw DomainError("median of an empty list");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

Report summarize(const std::vector<SummaryRow>& rows) {
  // Insertion order of first appearance keeps the output stable and readable.
  std::vector<GroupKey> order;
  std::map<GroupKey, std::vector<double>> values;
  std::map<GroupKey, const SummaryRow*> exemplar;
  for (const auto& r : rows) {
    const GroupKey key = key_of(r.regime, r.objective, r.gamma, r.setting, r.metric);
    if (!values.count(key)) {
      order.push_back(key);
      exemplar[key] = &r;
    }
    values[key].push_back(r.value);
  }

  Report report;
  std::map<GroupKey, double> medians;
  for (const auto& key : order) {
    const auto& v = values[key];
    const SummaryRow& ex = *exemplar[key];
    ReportRow row;
    row.regime = ex.regime;
    row.objective = ex.objective;
    row.gamma = ex.gamma;
    row.setting = ex.setting;
    row.metric = ex.metric;
    row.median = median(v);
    row.min = *std::min_element(v.begin(), v.end());
    row.max = *std::max_element(v.begin(), v.end());
    row.count = v.size();
    medians[key] = row.median;
    report.rows.push_back(row);
  }

  for (auto& row : report.rows) {
    if (row.objective == "none" || row.objective == "ce") continue;
    if (row.objective == "maxent" && row.gamma && *row.gamma == 0.0) continue;
    // Same setting first; settings that only qualify the arm (eps=...) fall
    // back to the unqualified baseline.
    for (const std::string& s : {row.setting, std::string()}) {
      auto it = medians.find(key_of(row.regime, "ce", 0.0, s, row.metric));
      if (it == medians.end()) it = medians.find(key_of(row.regime, "maxent", 0.0, s, row.metric));
      if (it != medians.end()) {
        row.delta = row.median - it->second;
        break;
      }
    }
  }

  // Cross-regime check on the MaxEnt accuracy gain, per setting and gamma.
  for (const auto& fine : report.rows) {
    if (fine.regime != "fine_grained" || fine.objective != "maxent" || fine.metric != "val_acc" ||
        !fine.delta) {
      continue;
    }
    for (const auto& large : report.rows) {
      if (large.regime == "large_scale" && large.objective == "maxent" &&
          large.metric == "val_acc" && large.setting == fine.setting && large.gamma == fine.gamma &&
          large.delta) {
        report.comparisons.push_back(
            {fine.setting, *fine.delta, *large.delta, *fine.delta >= *large.delta});
      }
    }
  }
  return report;
}

Report build_report(const std::vector<std::filesystem::path>& manifest_paths) {
  if (manifest_paths.empty()) throw ManifestError("no manifests given");
  std::set<std::string> seen;
  std::vector<SummaryRow> merged;
  std::size_t read = 0;
  std::size_t skipped = 0;
  for (const auto& path : manifest_paths) {
    const RunManifest manifest = read_manifest(path);
    const auto dir = path.parent_path();
    verify_manifest(manifest, dir);
    ++read;
    const auto summary = std::find_if(manifest.artifacts.begin(), manifest.artifacts.end(),
                                      [](const ArtifactEntry& a) { return a.path == kSummaryName; });
    if (summary == manifest.artifacts.end()) {
      throw ManifestError(path.string() + " lists no " + kSummaryName);
    }
    if (!seen.insert(summary->sha256).second) {
      ++skipped;
      continue;
    }
    std::ifstream in(dir / kSummaryName, std::ios::binary);
    if (!in) throw IoError("cannot open " + (dir / kSummaryName).string());
    const auto rows = read_summary_csv(in);
    merged.insert(merged.end(), rows.begin(), rows.end());
  }
  Report report = summarize(merged);
  report.manifests_read = read;
  report.duplicates_skipped = skipped;
  return report;
}

void write_report_csv(std::ostream& out, const Report& report) {
  out << "regime,objective,gamma,setting,metric,median,min,max,count,delta\n";
  for (const auto& r : report.rows) {
    out << r.regime << ',' << r.objective << ',' << gamma_text(r.gamma) << ',' << r.setting << ','
        << r.metric << ',' << format_double(r.median) << ',' << format_double(r.min) << ','
        << format_double(r.max) << ',' << r.count << ',' << (r.delta ? format_double(*r.delta) : "")
        << '\n';
  }
}

std::string format_report_table(const Report& report) {
  std::ostringstream out;
  out << std::left << std::setw(13) << "regime" << std::setw(8) << "obj" << std::setw(7) << "gamma"
      << std::setw(14) << "setting" << std::setw(18) << "metric" << std::right << std::setw(10)
      << "median" << std::setw(10) << "min" << std::setw(10) << "max" << std::setw(10) << "delta"
      << '\n';
  out << std::fixed << std::setprecision(4);
  for (const auto& r : report.rows) {
    out << std::left << std::setw(13) << r.regime << std::setw(8) << r.objective << std::setw(7)
        << gamma_text(r.gamma) << std::setw(14) << r.setting << std::setw(18) << r.metric
        << std::right << std::setw(10) << r.median << std::setw(10) << r.min << std::setw(10)
        << r.max << std::setw(10);
    if (r.delta) out << *r.delta;
    else out << "";
    out << '\n';
  }
  for (const auto& c : report.comparisons) {
    out << "delta(fine) >= delta(large) [" << (c.setting.empty() ? "base" : c.setting)
        << "]: " << c.delta_fine << " vs " << c.delta_large << ' '
        << (c.passed ? "PASS" : "FAIL") << '\n';
  }
  return out.str();
}

}  // namespace maxent::bench
