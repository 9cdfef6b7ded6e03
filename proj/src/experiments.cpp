#include "caa/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "caa/errors.hpp"
#include "caa/rng.hpp"
#include "caa/simulate.hpp"

namespace caa {

InferenceResult run_inference(const CaaModel& model, const Trajectory& traj, double tol) {
  check_trajectory_shape(model, traj);
  InferenceResult r{expand_belief_graph(model, traj.N, tol), {}, {}, {}};
  r.alpha = forward_pass(model, r.graph, traj.states, traj.actions);
  r.beta = backward_pass(model, r.graph, traj.states, traj.actions);
  r.gamma = smooth(r.alpha, r.beta, r.graph);
  return r;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

ErrorCurve monte_carlo_errors(const CaaModel& model, std::size_t N, std::size_t runs,
                              std::uint64_t seed, unsigned threads) {
  if (N == 0 || runs == 0) throw std::invalid_argument("monte_carlo_errors: need N >= 1 and runs >= 1");

  // per_run[r * 2N + (k-1)] = filter error, [.. + N + (k-1)] = smoother error
  std::vector<double> per_run(runs * 2 * N);
  std::vector<std::exception_ptr> failures(runs);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t r = next++; r < runs; r = next++) {
      try {
        RngStream rng(seed, r);
        const Trajectory traj = simulate_episode(model, N, rng);
        const InferenceResult inf = run_inference(model, traj);
        double* row = per_run.data() + r * 2 * N;
        for (std::size_t k = 1; k <= N; ++k) {
          row[k - 1] = euclidean_distance(posterior_mean(inf.alpha[k], inf.graph), traj.beliefs[k]);
          row[N + k - 1] = euclidean_distance(posterior_mean(inf.gamma[k], inf.graph), traj.beliefs[k]);
        }
      } catch (...) {
        failures[r] = std::current_exception();
      }
    }
  };

  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, runs));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  ErrorCurve curve{N, runs, seed, std::vector<double>(N, 0.0), std::vector<double>(N, 0.0)};
  for (std::size_t r = 0; r < runs; ++r) {
    const double* row = per_run.data() + r * 2 * N;
    for (std::size_t k = 0; k < N; ++k) {
      curve.filter_error[k] += row[k];
      curve.smoother_error[k] += row[N + k];
    }
  }
  for (std::size_t k = 0; k < N; ++k) {
    curve.filter_error[k] /= static_cast<double>(runs);
    curve.smoother_error[k] /= static_cast<double>(runs);
  }
  return curve;
}

std::string error_curve_csv(const ErrorCurve& curve) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "k,filter_err,smoother_err\n";
  for (std::size_t k = 0; k < curve.N; ++k)
    os << k + 1 << ',' << curve.filter_error[k] << ',' << curve.smoother_error[k] << '\n';
  return os.str();
}

ErrorCurve parse_error_curve_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "k,filter_err,smoother_err")
    throw ParseError("error curve CSV: missing header \"k,filter_err,smoother_err\"");
  ErrorCurve curve;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::size_t k = 0;
    double f = 0.0, s = 0.0;
    char c1 = 0, c2 = 0;
    if (!(row >> k >> c1 >> f >> c2 >> s) || c1 != ',' || c2 != ',' || k != curve.N + 1)
      throw ParseError("error curve CSV: malformed line " + std::to_string(lineno));
    curve.filter_error.push_back(f);
    curve.smoother_error.push_back(s);
    curve.N = k;
  }
  return curve;
}

std::array<double, 2> barycentric_projection(std::span<const double> p) {
  if (p.size() != 3) throw std::invalid_argument("barycentric projection needs exactly 3 coordinates");
  return {p[1] + 0.5 * p[2], 0.5 * std::sqrt(3.0) * p[2]};
}

SimplexPmfExport export_simplex_pmf(const CaaModel& model, const Trajectory& traj, std::size_t k,
                                    double tol) {
  if (k > traj.N) throw std::out_of_range("export_simplex_pmf: k beyond horizon");
  const InferenceResult inf = run_inference(model, traj, tol);
  const BeliefLayer& layer = inf.graph.layer(k);
  const bool planar = model.X == 3;

  SimplexPmfExport out{k, traj.N, {}};
  const auto make_row = [&](std::span<const double> b) {
    SimplexRow row;
    row.belief.assign(b.begin(), b.end());
    if (planar) row.uv = barycentric_projection(b);
    return row;
  };

  bool true_matched = traj.beliefs.empty();
  for (std::size_t id = 0; id < layer.size(); ++id) {
    SimplexRow row = make_row(layer.belief(id));
    row.filter_mass = inf.alpha[k].mass[id];
    row.smooth_mass = inf.gamma[k].mass[id];
    if (!true_matched) {
      bool close = true;
      for (std::size_t j = 0; j < model.X; ++j)
        close = close && std::abs(row.belief[j] - traj.beliefs[k][j]) < tol;
      if (close) row.is_true_belief = true_matched = true;
    }
    out.rows.push_back(std::move(row));
  }

  SimplexRow fcme = make_row(posterior_mean(inf.alpha[k], inf.graph));
  fcme.is_filter_cme = true;
  out.rows.push_back(std::move(fcme));
  SimplexRow scme = make_row(posterior_mean(inf.gamma[k], inf.graph));
  scme.is_smooth_cme = true;
  out.rows.push_back(std::move(scme));
  if (!true_matched) {
    SimplexRow t = make_row(traj.beliefs[k]);
    t.is_true_belief = true;
    out.rows.push_back(std::move(t));
  }
  return out;
}

std::string simplex_csv(const SimplexPmfExport& exp) {
  std::ostringstream os;
  os << std::setprecision(17);
  const std::size_t X = exp.rows.empty() ? 3 : exp.rows.front().belief.size();
  for (std::size_t j = 0; j < X; ++j) os << 'p' << j + 1 << ',';
  os << "u,v,filter_mass,smooth_mass,flags\n";
  for (const auto& r : exp.rows) {
    for (double p : r.belief) os << p << ',';
    if (r.uv)
      os << (*r.uv)[0] << ',' << (*r.uv)[1] << ',';
    else
      os << ",,";
    os << r.filter_mass << ',' << r.smooth_mass << ',';
    std::string flags;
    const auto add = [&](bool on, const char* name) {
      if (!on) return;
      if (!flags.empty()) flags += '|';
      flags += name;
    };
    add(r.is_true_belief, "true");
    add(r.is_filter_cme, "filter_cme");
    add(r.is_smooth_cme, "smooth_cme");
    os << flags << '\n';
  }
  return os.str();
}

}  // namespace caa
