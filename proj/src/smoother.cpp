#include "caa/smoother.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "caa/errors.hpp"
#include "caa/kernels.hpp"

namespace caa {

std::vector<BackwardValues> backward_pass(const CaaModel& model, const BeliefGraph& graph,
                                          std::span<const StateIndex> states,
                                          std::span<const ActionIndex> actions) {
  check_inputs(model, graph, states, actions);
  const std::size_t N = actions.size();
  const auto& kt = kernels::active();

  std::vector<BackwardValues> beta(N + 1);
  beta[N] = {N, std::vector<double>(graph.layer_size(N), 1.0), 0};

  std::vector<double> weights, scaled;
  for (std::size_t k = N; k-- > 0;) {
    const BeliefLayer& next = graph.layer(k + 1);
    const std::size_t n_next = next.size();
    const std::size_t n = graph.layer_size(k);
    const std::size_t x_next = states[k + 1];

    // G(z, a_{k+1}) * beta_{k+1}(z)
    scaled.resize(n_next);
    kt.multiply(next.action_probabilities(actions[k]).data(), beta[k + 1].values.data(), n_next,
                scaled.data());

    const auto obs = next.edge_observations();
    weights.resize(obs.size());
    kt.gather(model.B.row(x_next).data(), obs.data(), obs.size(), weights.data());

    BackwardValues cur{k, std::vector<double>(n), beta[k + 1].scale_exponent};
    kt.csr_gather_dot(next.parent_offsets().data(), n, next.edge_children().data(), weights.data(),
                      scaled.data(), cur.values.data());
    kt.scale(cur.values.data(), n, model.P(states[k], x_next));

    const double peak = kt.max(cur.values.data(), n);
    if (peak > 0.0) {
      int e = 0;
      std::frexp(peak, &e);  // peak = f * 2^e, f in [0.5, 1)
      const int shift = 1 - e;
      if (shift != 0) {
        kt.scale(cur.values.data(), n, std::ldexp(1.0, shift));
        cur.scale_exponent -= shift;
      }
    }
    beta[k] = std::move(cur);
  }
  return beta;
}

std::vector<PosteriorPmf> smooth(std::span<const PosteriorPmf> alpha,
                                 std::span<const BackwardValues> beta, const BeliefGraph& graph) {
  if (alpha.size() != beta.size())
    throw std::invalid_argument("smooth: forward and backward passes have different lengths");
  const auto& kt = kernels::active();
  std::vector<PosteriorPmf> gamma;
  gamma.reserve(alpha.size());
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    const std::size_t n = graph.layer_size(k);
    if (alpha[k].mass.size() != n || beta[k].values.size() != n)
      throw std::invalid_argument("smooth: layer " + std::to_string(k) + " is misaligned");
    // A constant beta (always the case at k = N) cancels in the ratio; copying
    // alpha keeps filter and smoother bit-identical there.
    const auto& b = beta[k].values;
    if (n > 0 && b[0] > 0.0 && std::all_of(b.begin(), b.end(), [&](double v) { return v == b[0]; })) {
      gamma.push_back({k, alpha[k].mass});
      continue;
    }
    PosteriorPmf g{k, std::vector<double>(n)};
    kt.multiply(alpha[k].mass.data(), beta[k].values.data(), n, g.mass.data());
    const double total = kt.sum(g.mass.data(), n);
    if (!(total > 0.0))
      throw InconsistentEvidence(
          "smoothing weight vanishes at step " + std::to_string(k) + "; data inconsistent with model", k);
    kt.scale(g.mass.data(), n, 1.0 / total);
    gamma.push_back(std::move(g));
  }
  return gamma;
}

std::vector<Belief> smoothed_means(std::span<const PosteriorPmf> gamma, const BeliefGraph& graph) {
  std::vector<Belief> out;
  out.reserve(gamma.size());
  for (const auto& g : gamma) out.push_back(posterior_mean(g, graph));
  return out;
}

}  // namespace caa
