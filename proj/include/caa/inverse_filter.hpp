#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "caa/belief_graph.hpp"
#include "caa/model.hpp"

namespace caa {

/// Normalized mass over the nodes of one graph layer (aligned with node ids).
struct PosteriorPmf {
  std::size_t layer = 0;
  std::vector<double> mass;
};

/// Optimal inverse filter alpha_k(pi) = p(pi_k = pi | a_{1:k}, x_{0:k}) for
/// k = 0..N, starting from a point mass on pi0:
///
///   alpha_k(pi) ~ G(pi, a_k) * sum_{parent} sum_{y: parent -y-> pi} B(x_k, y) alpha_{k-1}(parent)
///
/// `states` holds x_0..x_N and `actions` a_1..a_N (0-based). The graph must
/// have been built from `model` with horizon >= N.
/// Throws InconsistentAction (step k) if the observed action has zero
/// probability under every reachable belief.
std::vector<PosteriorPmf> forward_pass(const CaaModel& model, const BeliefGraph& graph,
                                       std::span<const StateIndex> states,
                                       std::span<const ActionIndex> actions);

/// Conditional mean sum_pi pi * pmf(pi).
Belief posterior_mean(const PosteriorPmf& pmf, const BeliefGraph& graph);

/// Total-variation distance 0.5 * ||p - q||_1 between two pmfs on one layer.
double total_variation(std::span<const double> p, std::span<const double> q);

void check_inputs(const CaaModel& model, const BeliefGraph& graph, std::span<const StateIndex> states,
                  std::span<const ActionIndex> actions);

}  // namespace caa
