#include "maxent/bench/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "maxent/error.hpp"
#include "maxent/format.hpp"

namespace maxent::bench {
namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_value(const std::string& field, std::size_t line) {
  if (field == "inf") return INFINITY;
  if (field == "-inf") return -INFINITY;
  if (field == "nan") return NAN;
  double v = 0.0;
  const auto r = std::from_chars(field.data(), field.data() + field.size(), v);
  if (r.ec != std::errc() || r.ptr != field.data() + field.size()) {
    throw FormatError("csv line " + std::to_string(line) + ": bad number '" + field + "'");
  }
  return v;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw FormatError("csv has no column '" + name + "'");
}

void write_csv(std::ostream& out, const CsvTable& table) {
  auto write_row = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  };
  write_row(table.header);
  for (const auto& row : table.rows) write_row(row);
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (number == 1) {
      table.header = split_fields(line);
      continue;
    }
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != table.header.size()) {
      throw FormatError("csv line " + std::to_string(number) + ": expected " +
                        std::to_string(table.header.size()) + " fields, got " +
                        std::to_string(fields.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  if (number == 0) throw FormatError("csv is empty");
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_csv(in);
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    out << r.regime << ',' << r.objective << ',' << (r.gamma ? format_double(*r.gamma) : "") << ','
        << r.setting << ',' << (r.seed ? std::to_string(*r.seed) : "") << ',' << r.metric << ','
        << format_double(r.value) << '\n';
  }
}

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
  const CsvTable table = read_csv(in);
  std::ostringstream expected;
  for (std::size_t i = 0; i < table.header.size(); ++i) expected << (i ? "," : "") << table.header[i];
  if (expected.str() != kSummaryHeader) throw FormatError("not a summary csv: " + expected.str());

  std::vector<SummaryRow> rows;
  std::size_t line = 1;
  for (const auto& f : table.rows) {
    ++line;
    SummaryRow r;
    r.regime = f[0];
    r.objective = f[1];
    if (!f[2].empty()) r.gamma = parse_value(f[2], line);
    r.setting = f[3];
    if (!f[4].empty()) {
      std::uint64_t seed = 0;
      const auto res = std::from_chars(f[4].data(), f[4].data() + f[4].size(), seed);
      if (res.ec != std::errc() || res.ptr != f[4].data() + f[4].size()) {
        throw FormatError("csv line " + std::to_string(line) + ": bad seed '" + f[4] + "'");
      }
      r.seed = seed;
    }
    r.metric = f[5];
    r.value = parse_value(f[6], line);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace maxent::bench
