#pragma once

#include <cstdint>
#include <random>

#include "bmt/finite_sequence.hpp"

namespace bmt {

// Default seed for every randomized campaign and CLI run (documented constant,
// never time-based).
inline constexpr std::uint64_t default_seed = 0x5EEDC0DEULL;

// Deterministic RNG.  mt19937_64 has a pinned algorithm, and the Gaussian
// transform is hand-rolled Box-Muller because std::normal_distribution's
// output stream is implementation-defined -- identical seeds must give
// identical trial records everywhere the same binary runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform on (0, 1]; 53-bit resolution, never returns 0 (safe to pass to log).
  double uniform01() {
    return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  long uniform_int(long lo, long hi) { // inclusive
    return lo + static_cast<long>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u = uniform01();
    const double v = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * pi * v);
    has_spare_ = true;
    return r * std::cos(2.0 * pi * v);
  }

  cplx cnormal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  double rademacher() { return (eng_() & 1u) ? 1.0 : -1.0; }

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Stream-splitting mix so that per-trial generators are independent of trial
// execution order (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

enum class CoefficientLaw { GAUSSIAN, SPARSE, RADEMACHER };

// Random sequence supported in [-radius, radius] under the given law.
// SPARSE places sparse_k Gaussian entries at distinct uniform positions.
FiniteSequence draw_sequence(Rng& rng, CoefficientLaw law, long radius, long sparse_k = 4);

} // namespace bmt
