#include "caa/inverse_filter.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "caa/errors.hpp"
#include "caa/kernels.hpp"

namespace caa {

void check_inputs(const CaaModel& model, const BeliefGraph& graph, std::span<const StateIndex> states,
                  std::span<const ActionIndex> actions) {
  const std::size_t N = actions.size();
  if (states.size() != N + 1)
    throw std::invalid_argument("expected " + std::to_string(N + 1) + " states for " +
                                std::to_string(N) + " actions, got " + std::to_string(states.size()));
  if (graph.horizon() < N)
    throw std::invalid_argument("belief graph horizon " + std::to_string(graph.horizon()) +
                                " is shorter than the trajectory (" + std::to_string(N) + ")");
  if (graph.num_states() != model.X || graph.num_actions() != model.A)
    throw std::invalid_argument("belief graph was built for a different model");
  for (auto x : states)
    if (x >= model.X) throw std::out_of_range("state " + std::to_string(x + 1) + " out of range");
  for (auto a : actions)
    if (a >= model.A) throw std::out_of_range("action " + std::to_string(a + 1) + " out of range");
}

std::vector<PosteriorPmf> forward_pass(const CaaModel& model, const BeliefGraph& graph,
                                       std::span<const StateIndex> states,
                                       std::span<const ActionIndex> actions) {
  check_inputs(model, graph, states, actions);
  const std::size_t N = actions.size();
  const auto& kt = kernels::active();

  std::vector<PosteriorPmf> alpha;
  alpha.reserve(N + 1);
  alpha.push_back({0, {1.0}});

  std::vector<double> weights;
  for (std::size_t k = 1; k <= N; ++k) {
    const BeliefLayer& layer = graph.layer(k);
    const std::size_t n = layer.size();
    const auto obs = layer.incoming_observations();

    weights.resize(obs.size());
    kt.gather(model.B.row(states[k]).data(), obs.data(), obs.size(), weights.data());

    PosteriorPmf next{k, std::vector<double>(n)};
    kt.csr_gather_dot(layer.child_offsets().data(), n, layer.incoming_parents().data(), weights.data(),
                      alpha.back().mass.data(), next.mass.data());
    kt.multiply(next.mass.data(), layer.action_probabilities(actions[k - 1]).data(), n,
                next.mass.data());

    double total = kt.sum(next.mass.data(), n);
    if (!(total > 0.0))
      throw InconsistentAction("action " + std::to_string(actions[k - 1] + 1) + " at step " +
                                   std::to_string(k) + " is impossible under the model",
                               k);
    if (total < 1e-300) {
      // Lift the layer by an exact power of two before dividing.
      const int shift = -std::ilogb(total);
      kt.scale(next.mass.data(), n, std::ldexp(1.0, shift));
      total = kt.sum(next.mass.data(), n);
    }
    kt.scale(next.mass.data(), n, 1.0 / total);
    alpha.push_back(std::move(next));
  }
  return alpha;
}

Belief posterior_mean(const PosteriorPmf& pmf, const BeliefGraph& graph) {
  const BeliefLayer& layer = graph.layer(pmf.layer);
  if (pmf.mass.size() != layer.size())
    throw std::invalid_argument("pmf size does not match layer " + std::to_string(pmf.layer));
  Belief mean(layer.dim());
  kernels::active().weighted_row_sum(pmf.mass.data(), layer.beliefs().data(), layer.size(),
                                     layer.dim(), mean.data());
  return mean;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

}  // namespace caa
