#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace maxent::bench {

inline constexpr const char* kToolVersion = "maxent-lab 1.0.0";
inline constexpr const char* kManifestName = "manifest.json";
inline constexpr const char* kSummaryName = "summary.csv";

struct ArtifactEntry {
  std::string path;  // relative to the run directory
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct RunManifest {
  std::string tool_version = kToolVersion;
  std::string command;      // e.g. "figure gamma_sweep"
  std::string config_text;  // serialized resolved config
  std::vector<ArtifactEntry> artifacts;
  std::vector<std::pair<std::string, double>> stage_seconds;
};

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& path);

// Throws ManifestError if an artifact is missing or its digest differs.
void verify_manifest(const RunManifest& manifest, const std::filesystem::path& run_dir);

// Writes the artifacts of one run into a directory, one at a time.
//
// Files are recorded as they are written. commit() writes the manifest last;
// if the writer is destroyed before commit(), every file it wrote is removed,
// as is the directory when the writer created it and it is left empty.
class ArtifactWriter {
 public:
  explicit ArtifactWriter(std::filesystem::path dir);
  ~ArtifactWriter();
  ArtifactWriter(const ArtifactWriter&) = delete;
  ArtifactWriter& operator=(const ArtifactWriter&) = delete;

  const std::filesystem::path& dir() const { return dir_; }

  void write(const std::string& name, const std::string& bytes);
  void write(const std::string& name, const std::function<void(std::ostream&)>& fill);

  // Fills in the artifact list and writes manifest.json.
  void commit(RunManifest manifest);

 private:
  std::filesystem::path dir_;
  bool created_dir_ = false;
  bool committed_ = false;
  std::vector<ArtifactEntry> written_;
};

}  // namespace maxent::bench
