#include "caa/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "caa/errors.hpp"

namespace caa {
namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string join(const std::vector<std::string>& items) {
  std::string s = "model validation failed";
  for (const auto& v : items) s += "\n  - " + v;
  return s;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(join(violations)), violations_(std::move(violations)) {}

bool is_probability_vector(std::span<const double> v, double tol) {
  double s = 0.0;
  for (double x : v) {
    if (!(x >= 0.0)) return false;
    s += x;
  }
  return std::abs(s - 1.0) <= tol;
}

void check_stochastic_rows(const Matrix& m, const std::string& name, std::vector<std::string>& out) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    bool entries_ok = true;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      const std::string at = name + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      if (std::isnan(v)) {
        out.push_back(at + " is NaN");
        entries_ok = false;
      } else if (v < 0.0) {
        out.push_back(at + " = " + num(v) + " is negative");
        entries_ok = false;
      } else if (v > 1.0) {
        out.push_back(at + " = " + num(v) + " exceeds 1");
        entries_ok = false;
      }
      s += v;
    }
    if (entries_ok && std::abs(s - 1.0) > kStochasticTol)
      out.push_back("row " + std::to_string(i + 1) + " of " + name + " sums to " + num(s));
  }
}

ValidationReport validate_model(const CaaModel& model) {
  ValidationReport report;
  auto& out = report.violations;
  const auto dims = [](const Matrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
  };

  if (model.X == 0) out.push_back("X must be positive");
  if (model.Y == 0) out.push_back("Y must be positive");
  if (model.A == 0) out.push_back("A must be positive");

  if (model.P.rows() != model.X || model.P.cols() != model.X)
    out.push_back("P is " + dims(model.P) + ", expected " + std::to_string(model.X) + "x" +
                  std::to_string(model.X));
  else
    check_stochastic_rows(model.P, "P", out);

  if (model.B.rows() != model.X || model.B.cols() != model.Y)
    out.push_back("B is " + dims(model.B) + ", expected " + std::to_string(model.X) + "x" +
                  std::to_string(model.Y));
  else
    check_stochastic_rows(model.B, "B", out);

  if (model.pi0.size() != model.X) {
    out.push_back("pi0 has " + std::to_string(model.pi0.size()) + " entries, expected " +
                  std::to_string(model.X));
  } else {
    double s = 0.0;
    bool entries_ok = true;
    for (std::size_t i = 0; i < model.pi0.size(); ++i) {
      if (!(model.pi0[i] >= 0.0)) {
        out.push_back("pi0(" + std::to_string(i + 1) + ") = " + num(model.pi0[i]) + " is negative");
        entries_ok = false;
      }
      s += model.pi0[i];
    }
    if (entries_ok && std::abs(s - 1.0) > kStochasticTol)
      out.push_back("pi0 sums to " + num(s));
  }

  if (model.G.num_actions() != model.A)
    out.push_back("policy emits " + std::to_string(model.G.num_actions()) + " actions, expected A = " +
                  std::to_string(model.A));
  model.G.collect_violations(model.X, "policy", out);
  return report;
}

void require_valid(const CaaModel& model) {
  auto report = validate_model(model);
  if (!report.ok()) throw ValidationError(std::move(report.violations));
}

void check_trajectory_shape(const CaaModel& model, const Trajectory& traj) {
  if (traj.states.size() != traj.N + 1)
    throw ParseError("trajectory has " + std::to_string(traj.states.size()) +
                     " states, expected N+1 = " + std::to_string(traj.N + 1));
  if (traj.actions.size() != traj.N)
    throw ParseError("trajectory has " + std::to_string(traj.actions.size()) +
                     " actions, expected N = " + std::to_string(traj.N));
  if (!traj.observations.empty() && traj.observations.size() != traj.N)
    throw ParseError("trajectory has " + std::to_string(traj.observations.size()) +
                     " observations, expected N = " + std::to_string(traj.N));
  if (!traj.beliefs.empty() && traj.beliefs.size() != traj.N + 1)
    throw ParseError("trajectory has " + std::to_string(traj.beliefs.size()) +
                     " beliefs, expected N+1 = " + std::to_string(traj.N + 1));
  for (std::size_t k = 0; k < traj.states.size(); ++k)
    if (traj.states[k] >= model.X)
      throw ParseError("x[" + std::to_string(k) + "] = " + std::to_string(traj.states[k] + 1) +
                       " out of range 1.." + std::to_string(model.X));
  for (std::size_t k = 0; k < traj.actions.size(); ++k)
    if (traj.actions[k] >= model.A)
      throw ParseError("a[" + std::to_string(k + 1) + "] = " + std::to_string(traj.actions[k] + 1) +
                       " out of range 1.." + std::to_string(model.A));
  for (std::size_t k = 0; k < traj.observations.size(); ++k)
    if (traj.observations[k] >= model.Y)
      throw ParseError("y[" + std::to_string(k + 1) + "] = " +
                       std::to_string(traj.observations[k] + 1) + " out of range 1.." +
                       std::to_string(model.Y));
  for (std::size_t k = 0; k < traj.beliefs.size(); ++k)
    if (traj.beliefs[k].size() != model.X)
      throw ParseError("pi[" + std::to_string(k) + "] has " +
                       std::to_string(traj.beliefs[k].size()) + " entries, expected " +
                       std::to_string(model.X));
}

CaaModel experiment_model() {
  CaaModel m;
  m.X = 3;
  m.Y = 3;
  m.A = 2;
  m.P = Matrix{{0.7, 0.2, 0.1}, {0.1, 0.4, 0.5}, {0.1, 0.1, 0.8}};
  m.B = Matrix{{0.3, 0.3, 0.4}, {0.1, 0.8, 0.1}, {0.1, 0.4, 0.5}};
  ThresholdPolicy g;
  g.num_actions = 2;
  g.rules.push_back({LinearRegion{{1.0, 0.0, 0.0}, 0.5}, 0});
  g.fallback_action = 1;
  m.G = std::move(g);
  m.pi0 = {1.0, 0.0, 0.0};
  return m;
}

CaaModel permute_states(const CaaModel& model, std::span<const std::size_t> perm) {
  CaaModel out = model;
  for (std::size_t i = 0; i < model.X; ++i) {
    for (std::size_t j = 0; j < model.X; ++j) out.P(perm[i], perm[j]) = model.P(i, j);
    for (std::size_t y = 0; y < model.Y; ++y) out.B(perm[i], y) = model.B(i, y);
    out.pi0[perm[i]] = model.pi0[i];
  }
  out.G = model.G.permute_states(perm);
  return out;
}

}  // namespace caa
