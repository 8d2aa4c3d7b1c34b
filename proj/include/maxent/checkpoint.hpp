#pragma once

#include <filesystem>
#include <iosfwd>

#include "maxent/maxent_core.hpp"

namespace maxent {

// Checkpoint layout, version 1:
//
//   MAXENT-CKPT v1\n
//   <C> <n> <n_raw> <trainable_A>\n
//   C*n little-endian IEEE-754 binary64 values of W, row-major
//   n*n_raw values of A, row-major (only when trainable_A is 1)
//
// Nothing may follow the payload. trainable_A = 0 requires n == n_raw.
inline constexpr const char* kCheckpointMagic = "MAXENT-CKPT v1";

void write_checkpoint(std::ostream& out, const LinearSoftmaxModel& model);
LinearSoftmaxModel read_checkpoint(std::istream& in);

void save_checkpoint(const LinearSoftmaxModel& model, const std::filesystem::path& path);
LinearSoftmaxModel load_checkpoint(const std::filesystem::path& path);

}  // namespace maxent
