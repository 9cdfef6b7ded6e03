#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "caa/model.hpp"

namespace caa {

inline constexpr double kDefaultDedupTol = 1e-9;

/// Edge from node `parent` of layer k-1 to node `child` of layer k, generated
/// by observation `observation` (0-based).
struct GraphEdge {
  std::uint32_t parent;
  std::uint32_t observation;
  std::uint32_t child;
};

/// One layer Pi_k of reachable beliefs together with the edges that enter it.
///
/// Edges are stored parent-major (all edges of parent 0 first, by increasing
/// observation). A child-major copy of the parent/observation columns is kept
/// for the forward pass so that both directions are plain CSR products.
class BeliefLayer {
 public:
  std::size_t size() const noexcept { return size_; }
  std::size_t dim() const noexcept { return dim_; }

  std::span<const double> belief(std::size_t id) const { return {beliefs_.data() + id * dim_, dim_}; }
  /// All beliefs, row-major size() x dim().
  std::span<const double> beliefs() const noexcept { return beliefs_; }

  /// G(node, action) for every node of the layer.
  std::span<const double> action_probabilities(std::size_t action) const {
    return {action_pmf_.data() + action * size_, size_};
  }

  std::span<const GraphEdge> edges() const noexcept { return edges_; }

  // Parent-major CSR (rows = nodes of the previous layer).
  std::span<const std::uint32_t> parent_offsets() const noexcept { return parent_offsets_; }
  std::span<const std::uint32_t> edge_children() const noexcept { return edge_children_; }
  std::span<const std::uint32_t> edge_observations() const noexcept { return edge_observations_; }

  // Child-major CSR (rows = nodes of this layer).
  std::span<const std::uint32_t> child_offsets() const noexcept { return child_offsets_; }
  std::span<const std::uint32_t> incoming_parents() const noexcept { return incoming_parents_; }
  std::span<const std::uint32_t> incoming_observations() const noexcept { return incoming_observations_; }

 private:
  friend class BeliefGraphBuilder;

  std::size_t size_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> beliefs_;
  std::vector<double> action_pmf_;  // action-major, A x size_
  std::vector<GraphEdge> edges_;
  std::vector<std::uint32_t> parent_offsets_;
  std::vector<std::uint32_t> edge_children_;
  std::vector<std::uint32_t> edge_observations_;
  std::vector<std::uint32_t> child_offsets_;
  std::vector<std::uint32_t> incoming_parents_;
  std::vector<std::uint32_t> incoming_observations_;
};

/// Layered DAG of the belief sets Pi_0..Pi_N reachable from pi0 through the
/// adversary's filter. Immutable once built.
class BeliefGraph {
 public:
  std::size_t horizon() const noexcept { return layers_.size() - 1; }
  std::size_t num_states() const noexcept { return num_states_; }
  std::size_t num_actions() const noexcept { return num_actions_; }
  double tolerance() const noexcept { return tolerance_; }

  const BeliefLayer& layer(std::size_t k) const;
  std::size_t layer_size(std::size_t k) const { return layer(k).size(); }
  std::span<const double> belief(std::size_t k, std::size_t id) const;

  /// Every observation labelling an edge parent (layer k-1) -> child (layer k),
  /// ascending. Empty when the child is not reachable from the parent.
  /// Throws std::out_of_range on a bad layer or id.
  std::vector<ObservationIndex> inverse_observations(std::size_t k, std::size_t parent,
                                                     std::size_t child) const;

 private:
  friend class BeliefGraphBuilder;

  std::size_t num_states_ = 0;
  std::size_t num_actions_ = 0;
  double tolerance_ = kDefaultDedupTol;
  std::vector<BeliefLayer> layers_;
};

/// Builds Pi_0 = {pi0}, Pi_k = {T(pi, y) : y, pi in Pi_{k-1}}. A new belief
/// within `tol` (max-norm) of an existing node of its layer is merged into the
/// lowest-id such node. (pi, y) pairs with zero filter normalizer get no edge.
/// The model is assumed valid; throws std::invalid_argument for tol outside
/// [1e-15, 1).
BeliefGraph expand_belief_graph(const CaaModel& model, std::size_t N, double tol = kDefaultDedupTol);

/// JSON dump: per-layer node beliefs and (parent, y, child) edge triples with
/// 1-based observations.
std::string dump_graph(const BeliefGraph& graph);

}  // namespace caa
