#pragma once

#include <cstdint>
#include <vector>

namespace ucpfem {

// SplitMix64 (Steele/Lea/Flood).  Chosen over std::mt19937_64 because the
// whole state is one word and the advance is trivial to re-implement, so
// seeded runs are reproducible bit-for-bit from the documented recurrence:
//   state += 0x9E3779B97F4A7C15
//   z = state; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9
//   z = (z ^ z>>27) * 0x94D049BB133111EB
//   return z ^ z>>31
// Doubles take the top 53 bits of the output.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform in [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

 private:
  std::uint64_t state_;
};

// Per-node direction field in [-1,1]^2, drawn x-then-y in node order.  The
// draw order is part of the reproducibility contract for seeded perturbation
// trials, so every caller goes through this helper.
inline std::vector<std::pair<double, double>> sample_directions(SplitMix64& rng, int n) {
  std::vector<std::pair<double, double>> dirs(static_cast<std::size_t>(n));
  for (auto& d : dirs) {
    d.first = rng.uniform(-1.0, 1.0);
    d.second = rng.uniform(-1.0, 1.0);
  }
  return dirs;
}

}  // namespace ucpfem
