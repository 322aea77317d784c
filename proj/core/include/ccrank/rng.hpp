#pragma once

#include <cstdint>
#include <random>

namespace ccrank {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

// mt19937_64 with modulo reduction: distribution objects differ between
// standard libraries, raw engine output does not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(eng_() % span);
  }

  // [0,1)
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace ccrank
