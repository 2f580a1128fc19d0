#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace spclust {

/// Deterministic random source used by every seeded routine.
///
/// std::mt19937_64 is fully specified by the standard, but the standard
/// distribution classes are not, so the distributions here are written out
/// explicitly. Runs with the same seed therefore reproduce bit-for-bit
/// across compilers and standard libraries.
class Rng {
 public:
  // Recorded in run reports so outputs are attributable to an algorithm.
  static constexpr const char* kAlgorithmId = "mt19937_64+box-muller";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  // Standard normal draw (Box-Muller, two uniforms per call).
  double gaussian() {
    constexpr double two_pi = 6.283185307179586476925286766559005768;
    double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace spclust
