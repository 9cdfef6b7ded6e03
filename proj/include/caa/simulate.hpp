#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "caa/model.hpp"
#include "caa/rng.hpp"

namespace caa {

/// The adversary's HMM filter  T(pi, y) = B_y P' pi / (1' B_y P' pi).
/// Throws ImpossibleObservation when the normalizer is zero.
Belief hmm_filter_update(const Matrix& P, const Matrix& B, std::span<const double> pi,
                         ObservationIndex y);

/// x_0 ~ pi0, x_k ~ P(x_{k-1}, .), returns N+1 states.
std::vector<StateIndex> sample_chain(const Matrix& P, std::span<const double> pi0, std::size_t N,
                                     RngStream& rng);

ObservationIndex sample_observation(const Matrix& B, StateIndex x, RngStream& rng);

ActionIndex sample_action(const Policy& G, std::span<const double> pi, RngStream& rng);

/// Plays the game for N steps. Per step k the draws are, in order:
/// x_k, y_k, a_k (x_0 is drawn first). Requires N >= 1.
Trajectory simulate_episode(const CaaModel& model, std::size_t N, RngStream& rng);

}  // namespace caa
