#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "caa/matrix.hpp"
#include "caa/policy.hpp"

namespace caa {

/// Absolute tolerance on every row sum / belief sum.
inline constexpr double kStochasticTol = 1e-12;

/// Probability vector over the X states.
using Belief = std::vector<double>;

/// Indices are 0-based in memory; files and CLI messages use 1-based labels.
using StateIndex = std::size_t;
using ObservationIndex = std::size_t;
using ActionIndex = std::size_t;

/// Discrete counter-adversarial system: our chain P, the adversary's sensor B,
/// its action policy G and its initial belief pi0.
struct CaaModel {
  std::size_t X = 0;
  std::size_t Y = 0;
  std::size_t A = 0;
  Matrix P;  // X x X, P(i, j) = Pr(x_{k+1} = j | x_k = i)
  Matrix B;  // X x Y, B(i, j) = Pr(y_k = j | x_k = i)
  Policy G;
  Belief pi0;
};

/// Realized episode. Only `states` and `actions` are visible to the estimator;
/// `observations` and `beliefs` are optional (adversary-private).
struct Trajectory {
  std::size_t N = 0;
  std::vector<StateIndex> states;              // x_0..x_N
  std::vector<ObservationIndex> observations;  // y_1..y_N (index k-1)
  std::vector<Belief> beliefs;                 // pi_0..pi_N
  std::vector<ActionIndex> actions;            // a_1..a_N (index k-1)
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate_model(const CaaModel& model);

/// Throws ValidationError with the full report when validation fails.
void require_valid(const CaaModel& model);

bool is_probability_vector(std::span<const double> v, double tol = kStochasticTol);

/// Appends violations of row-stochasticity for `m` (named `name` in messages).
void check_stochastic_rows(const Matrix& m, const std::string& name, std::vector<std::string>& out);

/// Checks that states/actions are in range and lengths agree with N.
/// Throws ParseError on mismatch.
void check_trajectory_shape(const CaaModel& model, const Trajectory& traj);

/// The experiment system: three states and observations, two actions,
/// action 1 iff [pi]_1 >= 0.5, adversary certain of state 1 at time 0.
CaaModel experiment_model();

/// Relabels the states of `model` by `perm` (perm[i] = new index of old state i).
CaaModel permute_states(const CaaModel& model, std::span<const std::size_t> perm);

}  // namespace caa
