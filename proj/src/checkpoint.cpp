#include "maxent/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "maxent/error.hpp"

namespace maxent {
namespace {

void put_le(std::ostream& out, double value) {
  const auto bits = std::bit_cast<std::uint64_t>(value);
  std::array<char, 8> bytes{};
  for (int i = 0; i < 8; ++i) bytes[static_cast<std::size_t>(i)] = static_cast<char>((bits >> (8 * i)) & 0xffU);
  out.write(bytes.data(), bytes.size());
}

double get_le(const unsigned char* bytes) {
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = (bits << 8) | bytes[i];
  return std::bit_cast<double>(bits);
}

void put_matrix(std::ostream& out, const Matrix& m) {
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) put_le(out, m(r, c));
  }
}

Matrix take_matrix(const std::vector<unsigned char>& payload, std::size_t& offset, Index rows,
                   Index cols) {
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      m(r, c) = get_le(payload.data() + offset);
      offset += 8;
    }
  }
  return m;
}

bool read_line(std::istream& in, std::string& line) {
  line.clear();
  char ch = 0;
  while (in.get(ch)) {
    if (ch == '\n') return true;
    line.push_back(ch);
    if (line.size() > 256) return false;
  }
  return false;
}

}  // namespace

void write_checkpoint(std::ostream& out, const LinearSoftmaxModel& model) {
  const bool trainable = model.has_feature_map();
  out << kCheckpointMagic << '\n'
      << model.class_count() << ' ' << model.feature_dim() << ' ' << model.input_dim() << ' '
      << (trainable ? 1 : 0) << '\n';
  put_matrix(out, model.classifier());
  if (trainable) put_matrix(out, model.feature_map());
  if (!out) throw IoError("failed writing checkpoint");
}

LinearSoftmaxModel read_checkpoint(std::istream& in) {
  std::string line;
  if (!read_line(in, line)) throw FormatError("missing checkpoint magic line");
  if (line != kCheckpointMagic) {
    if (line.rfind("MAXENT-CKPT ", 0) == 0) {
      throw FormatError("unsupported checkpoint version '" + line.substr(12) + "'");
    }
    throw FormatError("bad checkpoint magic '" + line + "'");
  }
  if (!read_line(in, line)) throw FormatError("missing checkpoint dims line");

  std::istringstream dims(line);
  long long classes = 0, n = 0, n_raw = 0, trainable = -1;
  if (!(dims >> classes >> n >> n_raw >> trainable)) {
    throw FormatError("malformed dims line '" + line + "'");
  }
  std::string extra;
  if (dims >> extra) throw FormatError("trailing tokens on dims line '" + line + "'");
  if (classes < 1 || n < 1 || n_raw < 1) throw FormatError("dims must be positive: '" + line + "'");
  if (trainable != 0 && trainable != 1) throw FormatError("trainable_A must be 0 or 1");
  if (trainable == 0 && n != n_raw) {
    throw FormatError("identity feature map requires n == n_raw, dims line says " +
                      std::to_string(n) + " vs " + std::to_string(n_raw));
  }
  constexpr long long kMaxEntries = 1LL << 32;
  if (classes * n > kMaxEntries || n * n_raw > kMaxEntries) {
    throw FormatError("dims line describes an implausibly large model");
  }

  const std::vector<unsigned char> payload((std::istreambuf_iterator<char>(in)),
                                           std::istreambuf_iterator<char>());
  const long long expected_values = classes * n + (trainable == 1 ? n * n_raw : 0);
  const auto expected_bytes = static_cast<std::size_t>(expected_values) * 8;
  if (payload.size() != expected_bytes) {
    throw FormatError("payload has " + std::to_string(payload.size()) + " bytes, dims line " +
                      std::to_string(classes) + " " + std::to_string(n) + " " +
                      std::to_string(n_raw) + " " + std::to_string(trainable) + " requires " +
                      std::to_string(expected_bytes));
  }

  std::size_t offset = 0;
  Matrix w = take_matrix(payload, offset, classes, n);
  try {
    if (trainable == 1) {
      Matrix a = take_matrix(payload, offset, n, n_raw);
      return LinearSoftmaxModel(std::move(w), std::move(a));
    }
    return LinearSoftmaxModel(std::move(w));
  } catch (const NonFiniteError& e) {
    throw FormatError(std::string("checkpoint holds non-finite weights: ") + e.what());
  }
}

void save_checkpoint(const LinearSoftmaxModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_checkpoint(out, model);
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

LinearSoftmaxModel load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_checkpoint(in);
}

}  // namespace maxent
