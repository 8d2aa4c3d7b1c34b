#pragma once

#include <cstdint>
#include <random>

namespace maxent {

// Stateless 64-bit mixer (splitmix64 finalizer). Used to derive independent
// stream seeds from (base seed, stream index) pairs.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// The one generator used everywhere in the project.
//
// Bits come from std::mt19937_64, whose output sequence is fixed by the C++
// standard. Every transform on top of it is implemented here rather than via
// the <random> distributions, whose algorithms are implementation-defined:
//   uniform()   top 53 bits scaled into [0, 1)
//   below(k)    Lemire's multiply-shift with rejection, exact on [0, k)
//   normal()    Box-Muller; the second variate of each pair is cached
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  static Rng stream(std::uint64_t seed, std::uint64_t stream_index) {
    return Rng(derive_seed(seed, stream_index));
  }

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t below(std::uint64_t bound);
  double normal();

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace maxent
