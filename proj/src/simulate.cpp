#include "caa/simulate.hpp"

#include <stdexcept>
#include <string>

#include "caa/errors.hpp"

namespace caa {

Belief hmm_filter_update(const Matrix& P, const Matrix& B, std::span<const double> pi,
                         ObservationIndex y) {
  const std::size_t X = P.rows();
  Belief out(X, 0.0);
  for (std::size_t i = 0; i < X; ++i) {
    const double w = pi[i];
    for (std::size_t j = 0; j < X; ++j) out[j] += w * P(i, j);
  }
  double denom = 0.0;
  for (std::size_t j = 0; j < X; ++j) {
    out[j] *= B(j, y);
    denom += out[j];
  }
  if (!(denom > 0.0))
    throw ImpossibleObservation("observation " + std::to_string(y + 1) +
                                " has zero likelihood under the predicted belief");
  for (double& v : out) v /= denom;
  return out;
}

std::vector<StateIndex> sample_chain(const Matrix& P, std::span<const double> pi0, std::size_t N,
                                     RngStream& rng) {
  std::vector<StateIndex> xs;
  xs.reserve(N + 1);
  xs.push_back(rng.categorical(pi0));
  for (std::size_t k = 1; k <= N; ++k) xs.push_back(rng.categorical(P.row(xs.back())));
  return xs;
}

ObservationIndex sample_observation(const Matrix& B, StateIndex x, RngStream& rng) {
  return rng.categorical(B.row(x));
}

ActionIndex sample_action(const Policy& G, std::span<const double> pi, RngStream& rng) {
  const std::vector<double> pmf = G.pmf(pi);
  return rng.categorical(pmf);
}

Trajectory simulate_episode(const CaaModel& model, std::size_t N, RngStream& rng) {
  if (N == 0) throw std::invalid_argument("simulate_episode: horizon must be >= 1");
  Trajectory t;
  t.N = N;
  t.states.reserve(N + 1);
  t.observations.reserve(N);
  t.actions.reserve(N);
  t.beliefs.reserve(N + 1);

  t.states.push_back(rng.categorical(model.pi0));
  t.beliefs.push_back(model.pi0);
  for (std::size_t k = 1; k <= N; ++k) {
    t.states.push_back(rng.categorical(model.P.row(t.states.back())));
    t.observations.push_back(sample_observation(model.B, t.states.back(), rng));
    t.beliefs.push_back(hmm_filter_update(model.P, model.B, t.beliefs.back(), t.observations.back()));
    t.actions.push_back(sample_action(model.G, t.beliefs.back(), rng));
  }
  return t;
}

}  // namespace caa
