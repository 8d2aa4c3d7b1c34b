#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace maxent::bench {

// A header plus rows of unquoted fields. Fields never contain ',' or newlines
// in anything this project writes, so no quoting is implemented.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a header column; throws FormatError if absent.
  std::size_t column(const std::string& name) const;
};

void write_csv(std::ostream& out, const CsvTable& table);
// Strict reader: LF or CRLF line ends, every row as wide as the header.
CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

// One long-format result value: `regime,objective,gamma,setting,seed,metric,value`.
struct SummaryRow {
  std::string regime;
  std::string objective;
  std::optional<double> gamma;
  std::string setting;
  std::optional<std::uint64_t> seed;
  std::string metric;
  double value = 0.0;
};

inline constexpr const char* kSummaryHeader = "regime,objective,gamma,setting,seed,metric,value";

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary_csv(std::istream& in);

}  // namespace maxent::bench
