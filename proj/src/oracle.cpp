#include "caa/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "caa/errors.hpp"
#include "caa/simulate.hpp"

namespace caa {
namespace {

struct NeumaierSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      carry += (sum - t) + v;
    else
      carry += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

// Linear scan on purpose: the oracle must not share the graph's bucketing.
std::size_t nearest_node(const BeliefGraph& graph, std::size_t k, std::span<const double> b) {
  const BeliefLayer& layer = graph.layer(k);
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t id = 0; id < layer.size(); ++id) {
    const auto node = layer.belief(id);
    double d = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) d = std::max(d, std::abs(node[j] - b[j]));
    if (d < best_dist) {
      best_dist = d;
      best = id;
    }
  }
  if (!(best_dist < graph.tolerance()))
    throw std::logic_error("oracle: belief at step " + std::to_string(k) +
                           " has no graph node within tolerance (distance " +
                           std::to_string(best_dist) + ")");
  return best;
}

}  // namespace

PosteriorPmf enumerate_posterior(const CaaModel& model, const BeliefGraph& graph,
                                 std::span<const StateIndex> states,
                                 std::span<const ActionIndex> actions, std::size_t k,
                                 PosteriorMode mode, const OracleOptions& options) {
  check_inputs(model, graph, states, actions);
  const std::size_t N = actions.size();
  if (k > N) throw std::out_of_range("oracle: query time beyond horizon");
  const std::size_t M = mode == PosteriorMode::Filter ? k : N;
  const std::size_t Y = model.Y;

  std::uint64_t count = 1;
  for (std::size_t j = 0; j < M; ++j) {
    if (count > options.max_sequences / Y)
      throw EnumerationTooLarge("oracle: Y^" + std::to_string(M) + " observation sequences exceed cap " +
                                std::to_string(options.max_sequences));
    count *= Y;
  }

  std::vector<NeumaierSum> acc(graph.layer_size(k));
  std::vector<ObservationIndex> ys(M);
  std::vector<double> action_pmf(model.A);

  for (std::uint64_t s = 0; s < count; ++s) {
    std::uint64_t code = options.reverse_order ? count - 1 - s : s;
    for (std::size_t j = 0; j < M; ++j) {
      ys[j] = static_cast<ObservationIndex>(code % Y);
      code /= Y;
    }

    Belief pi = model.pi0;
    Belief pi_at_k = k == 0 ? pi : Belief{};
    double weight = 1.0;
    for (std::size_t j = 1; j <= M && weight > 0.0; ++j) {
      const ObservationIndex y = ys[j - 1];
      weight *= model.B(states[j], y);
      if (weight == 0.0) break;
      try {
        pi = hmm_filter_update(model.P, model.B, pi, y);
      } catch (const ImpossibleObservation&) {
        weight = 0.0;
        break;
      }
      model.G.pmf(pi, action_pmf);
      weight *= action_pmf[actions[j - 1]];
      if (j == k) pi_at_k = pi;
    }
    if (weight == 0.0) continue;
    acc[nearest_node(graph, k, pi_at_k)].add(weight);
  }

  NeumaierSum total;
  PosteriorPmf out{k, std::vector<double>(acc.size())};
  for (std::size_t i = 0; i < acc.size(); ++i) {
    out.mass[i] = acc[i].value();
    total.add(out.mass[i]);
  }
  const double z = total.value();
  if (!(z > 0.0))
    throw InconsistentEvidence("oracle: every observation sequence has zero weight", M);
  for (double& m : out.mass) m /= z;
  return out;
}

}  // namespace caa
