#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "caa/belief_graph.hpp"
#include "caa/inverse_filter.hpp"
#include "caa/model.hpp"

namespace caa {

/// Backward variable on the nodes of layer k, stored rescaled:
/// beta_{k|N}(node) = values[node] * 2^scale_exponent.
struct BackwardValues {
  std::size_t layer = 0;
  std::vector<double> values;
  int scale_exponent = 0;
};

/// Backward recursion restricted to the belief sets, for k = N..0:
///
///   beta_{N|N} = 1,
///   beta_{k|N}(pi) = P(x_k, x_{k+1}) * sum_{z in Pi_{k+1}} G(z, a_{k+1}) *
///                    sum_{y: pi -y-> z} B(x_{k+1}, y) * beta_{k+1|N}(z).
///
/// The observation likelihood is taken at x_{k+1}, the state that emitted y.
/// After each step the layer is rescaled by a power of two so that its
/// largest entry lies in [1, 2). The result is indexed by k (element k holds
/// layer k). All-zero layers are allowed; smooth() reports them.
std::vector<BackwardValues> backward_pass(const CaaModel& model, const BeliefGraph& graph,
                                          std::span<const StateIndex> states,
                                          std::span<const ActionIndex> actions);

/// gamma_{k|N}(pi) = beta_{k|N}(pi) alpha_k(pi) / sum_z beta_{k|N}(z) alpha_k(z).
/// Throws InconsistentEvidence (step k) when the denominator vanishes.
std::vector<PosteriorPmf> smooth(std::span<const PosteriorPmf> alpha,
                                 std::span<const BackwardValues> beta, const BeliefGraph& graph);

std::vector<Belief> smoothed_means(std::span<const PosteriorPmf> gamma, const BeliefGraph& graph);

}  // namespace caa
