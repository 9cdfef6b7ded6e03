#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "caa/belief_graph.hpp"
#include "caa/inverse_filter.hpp"
#include "caa/model.hpp"

namespace caa {

enum class PosteriorMode { Filter, Smoother };

struct OracleOptions {
  std::uint64_t max_sequences = 10'000'000;
  /// Enumerate observation sequences from last to first (order-invariance checks).
  bool reverse_order = false;
};

/// Ground truth by exhaustive enumeration of the adversary's observations.
///
/// For every y_{1:M} (M = k for Filter, M = N for Smoother) the adversary's
/// beliefs are chained with hmm_filter_update and the sequence is weighted by
/// prod_j B(x_j, y_j) G(pi_j, a_j); the weight is credited to the node of
/// layer k nearest to pi_k. Weights are accumulated with Neumaier summation
/// and normalized at the end. Sequences containing an impossible observation
/// carry zero weight.
///
/// Throws EnumerationTooLarge when Y^M exceeds the cap, InconsistentEvidence
/// when the total weight is zero and std::logic_error when a chained belief is
/// farther than the graph tolerance from every node of its layer.
PosteriorPmf enumerate_posterior(const CaaModel& model, const BeliefGraph& graph,
                                 std::span<const StateIndex> states,
                                 std::span<const ActionIndex> actions, std::size_t k,
                                 PosteriorMode mode, const OracleOptions& options = {});

}  // namespace caa
