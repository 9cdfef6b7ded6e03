#include "caa/rng.hpp"

#include <array>

namespace caa {

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
  const std::array<std::uint32_t, 4> key{
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::seed_seq seq(key.begin(), key.end());
  engine_.seed(seq);
}

double RngStream::uniform() {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

std::size_t RngStream::categorical(std::span<const double> pmf) {
  return sample_categorical(pmf, uniform());
}

std::size_t sample_categorical(std::span<const double> pmf, double u) {
  double cdf = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    if (pmf[i] <= 0.0) continue;
    cdf += pmf[i];
    last_positive = i;
    if (u <= cdf) return i;
  }
  return last_positive;
}

}  // namespace caa
