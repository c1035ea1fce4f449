#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numbers>

#include "abal/linalg.hpp"

namespace abal {

/// Counter-based pseudo-random generator.
///
/// Draw i of a stream with key k is splitmix64_mix(k + (i + 1) * 0x9E3779B97F4A7C15).
/// Streams are split by hashing a tuple of identifiers into the key
/// (see `CounterRng::stream`), so (seed, N, K, cell) style coordinates
/// map to independent, reproducible streams on every platform. Normal
/// variates use Box-Muller on two consecutive uniforms, which avoids the
/// implementation-defined algorithms behind std::normal_distribution.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key = 0) : key_(key) {}

  /// Key derived from an ordered list of stream identifiers.
  static CounterRng stream(std::initializer_list<std::uint64_t> ids) {
    std::uint64_t key = 0x243F6A8885A308D3ULL;
    for (std::uint64_t id : ids) {
      key = mix(key ^ mix(id + 0x9E3779B97F4A7C15ULL));
    }
    return CounterRng(key);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    ++counter_;
    return mix(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double phi = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
  }

  /// Circularly-symmetric complex Gaussian with unit variance.
  Complex complex_normal() {
    const double s = std::sqrt(0.5);
    const double re = normal();
    const double im = normal();
    return {s * re, s * im};
  }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline CVector random_complex_vector(CounterRng& rng, Index n) {
  CVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = rng.complex_normal();
  return v;
}

inline CMatrix random_complex_matrix(CounterRng& rng, Index rows, Index cols) {
  CMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = rng.complex_normal();
  return m;
}

inline CMatrix random_hermitian(CounterRng& rng, Index n) {
  return hermitian_part(random_complex_matrix(rng, n, n));
}

}  // namespace abal
