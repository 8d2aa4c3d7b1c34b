#include "maxent/bench/manifest.hpp"

#include <array>
#include <fstream>
#include <memory>
#include <sstream>

#include <openssl/evp.h>

#include "json.hpp"
#include "maxent/error.hpp"

namespace maxent::bench {
namespace {

std::string hex(const unsigned char* data, unsigned length) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned i = 0; i < length; ++i) {
    out += kDigits[data[i] >> 4];
    out += kDigits[data[i] & 0xf];
  }
  return out;
}

std::string read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned length = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &length) != 1) {
    throw Error("sha256 failed");
  }
  return hex(digest.data(), length);
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_bytes(path)); }

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
  nlohmann::ordered_json j;
  j["tool_version"] = m.tool_version;
  j["command"] = m.command;
  j["config"] = m.config_text;
  j["artifacts"] = nlohmann::ordered_json::array();
  for (const auto& a : m.artifacts) {
    j["artifacts"].push_back({{"path", a.path}, {"sha256", a.sha256}, {"bytes", a.bytes}});
  }
  j["stage_seconds"] = nlohmann::ordered_json::object();
  for (const auto& [stage, seconds] : m.stage_seconds) j["stage_seconds"][stage] = seconds;

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

RunManifest read_manifest(const std::filesystem::path& path) {
  RunManifest m;
  try {
    const auto j = nlohmann::json::parse(read_bytes(path));
    m.tool_version = j.at("tool_version").get<std::string>();
    m.command = j.at("command").get<std::string>();
    m.config_text = j.at("config").get<std::string>();
    for (const auto& a : j.at("artifacts")) {
      m.artifacts.push_back({a.at("path").get<std::string>(), a.at("sha256").get<std::string>(),
                             a.at("bytes").get<std::uintmax_t>()});
    }
    for (const auto& [stage, seconds] : j.at("stage_seconds").items()) {
      m.stage_seconds.emplace_back(stage, seconds.get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ManifestError(path.string() + ": " + e.what());
  }
  return m;
}

void verify_manifest(const RunManifest& manifest, const std::filesystem::path& run_dir) {
  for (const auto& a : manifest.artifacts) {
    const auto p = run_dir / a.path;
    if (!std::filesystem::is_regular_file(p)) throw ManifestError("missing artifact " + p.string());
    const auto digest = sha256_file(p);
    if (digest != a.sha256) {
      throw ManifestError("digest mismatch for " + p.string() + ": manifest " + a.sha256 +
                          ", file " + digest);
    }
  }
}

ArtifactWriter::ArtifactWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  if (!std::filesystem::exists(dir_, ec)) {
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create " + dir_.string() + ": " + ec.message());
    created_dir_ = true;
  } else if (!std::filesystem::is_directory(dir_, ec)) {
    throw IoError(dir_.string() + " is not a directory");
  }
}

ArtifactWriter::~ArtifactWriter() {
  if (committed_) return;
  std::error_code ec;
  for (const auto& a : written_) std::filesystem::remove(dir_ / a.path, ec);
  if (created_dir_ && std::filesystem::is_empty(dir_, ec)) std::filesystem::remove(dir_, ec);
}

void ArtifactWriter::write(const std::string& name, const std::string& bytes) {
  const auto path = dir_ / name;
  // Recorded before writing so a failed write is cleaned up too.
  written_.push_back({name, sha256_hex(bytes), bytes.size()});
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw IoError("write failed for " + path.string());
}

void ArtifactWriter::write(const std::string& name,
                           const std::function<void(std::ostream&)>& fill) {
  std::ostringstream buffer;
  fill(buffer);
  write(name, buffer.str());
}

void ArtifactWriter::commit(RunManifest manifest) {
  manifest.artifacts = written_;
  write_manifest(dir_ / kManifestName, manifest);
  committed_ = true;
}

}  // namespace maxent::bench
