#pragma once

#include <cstdint>
#include <random>

namespace agan {

// Deterministic random source: identical seed implies identical stream.
// Distribution mappings are hand-rolled (53-bit uniform, Box-Muller normal)
// so streams do not depend on the standard library's unspecified algorithms.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double uniform();
  // Uniform in [lo, hi).
  double uniform(double lo, double hi);
  // Standard normal via Box-Muller; the spare half is cached.
  double normal();
  // Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n);

  // Derives an independent deterministic stream from this seed.
  SeededRng fork(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace agan
