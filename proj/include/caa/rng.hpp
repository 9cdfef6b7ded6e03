#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace caa {

/// Reproducible random stream keyed by (seed, stream index).
///
/// The engine is std::mt19937_64 seeded through std::seed_seq with the four
/// 32-bit halves of seed and stream. Both algorithms are fully specified by
/// the C++ standard, and uniforms are built from the raw 64-bit output rather
/// than std::uniform_real_distribution, so the draws are identical on every
/// conforming platform.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on (0, 1] with 53 bits of resolution.
  double uniform();

  /// Inverse-CDF draw from `pmf` (see sample_categorical).
  std::size_t categorical(std::span<const double> pmf);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

/// Smallest index i with u <= cdf(i), where cdf is the running sum of `pmf`.
/// Each index owns the half-open interval (cdf(i-1), cdf(i)], so a draw that
/// lands exactly on a boundary goes to the lower index and zero-probability
/// entries are never returned for u in (0, 1]. If rounding leaves cdf(last)
/// below u, the last index with positive mass is returned.
std::size_t sample_categorical(std::span<const double> pmf, double u);

}  // namespace caa
