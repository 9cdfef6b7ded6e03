#pragma once

// Shared fixtures for the unit, property and acceptance suites: seeded random
// CAA models and trajectories.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "caa/model.hpp"
#include "caa/rng.hpp"

namespace caa::testing {

struct BatteryCase {
  CaaModel model;
  Trajectory trajectory;
  std::uint64_t index = 0;
};

struct BatterySpec {
  std::size_t min_states = 2, max_states = 3;
  std::size_t min_obs = 2, max_obs = 3;
  std::size_t min_actions = 2, max_actions = 3;
  std::size_t min_horizon = 1, max_horizon = 5;
  double zero_probability = 0.15;  // chance that an off-diagonal-ish entry is forced to 0
};

std::size_t uniform_index(RngStream& rng, std::size_t lo, std::size_t hi);  // inclusive
double uniform_real(RngStream& rng, double lo, double hi);

Matrix random_stochastic(RngStream& rng, std::size_t rows, std::size_t cols, double zero_probability);
std::vector<double> random_pmf(RngStream& rng, std::size_t n);
Policy random_threshold_policy(RngStream& rng, std::size_t X, std::size_t A);
Policy random_tabulated_policy(RngStream& rng, std::size_t X, std::size_t A);

CaaModel random_model(RngStream& rng, const BatterySpec& spec = {});

/// Case `index` of the battery under `seed`: a random model and an episode
/// simulated from it.
BatteryCase battery_case(std::uint64_t seed, std::uint64_t index, const BatterySpec& spec = {});

/// Random permutation of 0..n-1.
std::vector<std::size_t> random_permutation(RngStream& rng, std::size_t n);

}  // namespace caa::testing
