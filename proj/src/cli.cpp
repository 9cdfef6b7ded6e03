#include "caa/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "caa/errors.hpp"
#include "caa/experiments.hpp"
#include "caa/model_io.hpp"
#include "caa/oracle.hpp"
#include "caa/posterior_io.hpp"
#include "caa/simulate.hpp"

namespace caa {
namespace {

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_text_file(path, text);
}

Trajectory load_checked_trajectory(const std::string& path, const CaaModel& model) {
  TrajectoryFile f = load_trajectory(path);
  const std::string expected = model_hash(model);
  if (!f.model_hash.empty() && f.model_hash != expected)
    throw ParseError(path + ": model_hash " + f.model_hash + " does not match the model (" + expected +
                     ")");
  check_trajectory_shape(model, f.trajectory);
  return std::move(f.trajectory);
}

struct Options {
  std::string model, traj, out, mode = "smooth", dump_graph;
  std::size_t horizon = 0, runs = 1000, k = 0;
  std::uint64_t seed = 0;
  double dedup_tol = kDefaultDedupTol;
  double tv_tol = 1e-10;
  unsigned threads = 0;
  bool public_only = false;
};

int run_simulate(const Options& o, std::ostream& out, std::ostream&) {
  const CaaModel model = load_model(o.model);
  RngStream rng(o.seed, 0);
  const Trajectory t = simulate_episode(model, o.horizon, rng);
  emit(o.out, dump_trajectory(t, model_hash(model), !o.public_only), out);
  return 0;
}

int run_infer(const Options& o, std::ostream& out, std::ostream&) {
  const CaaModel model = load_model(o.model);
  const Trajectory t = load_checked_trajectory(o.traj, model);
  const InferenceResult inf = run_inference(model, t, o.dedup_tol);
  if (!o.dump_graph.empty()) write_text_file(o.dump_graph, dump_graph(inf.graph));
  if (o.mode == "filter")
    emit(o.out, dump_posteriors(inf.alpha, inf.graph, PosteriorMode::Filter), out);
  else
    emit(o.out, dump_posteriors(inf.gamma, inf.graph, PosteriorMode::Smoother), out);
  return 0;
}

int run_evaluate(const Options& o, std::ostream& out, std::ostream&) {
  const CaaModel model = load_model(o.model);
  const ErrorCurve curve = monte_carlo_errors(model, o.horizon, o.runs, o.seed, o.threads);
  emit(o.out, error_curve_csv(curve), out);
  return 0;
}

int run_export(const Options& o, std::ostream& out, std::ostream&) {
  const CaaModel model = load_model(o.model);
  const Trajectory t = load_checked_trajectory(o.traj, model);
  if (o.k > t.N)
    throw ParseError("--k " + std::to_string(o.k) + " exceeds the trajectory horizon " +
                     std::to_string(t.N));
  emit(o.out, simplex_csv(export_simplex_pmf(model, t, o.k, o.dedup_tol)), out);
  return 0;
}

int run_oracle_check(const Options& o, std::ostream& out, std::ostream& err) {
  const CaaModel model = load_model(o.model);
  double worst = 0.0;
  std::size_t failed = 0;
  for (std::size_t r = 0; r < o.runs; ++r) {
    RngStream rng(o.seed, r);
    const Trajectory t = simulate_episode(model, o.horizon, rng);
    const InferenceResult inf = run_inference(model, t, o.dedup_tol);
    double run_worst = 0.0;
    for (std::size_t k = 0; k <= t.N; ++k) {
      const auto f = enumerate_posterior(model, inf.graph, t.states, t.actions, k, PosteriorMode::Filter);
      const auto s = enumerate_posterior(model, inf.graph, t.states, t.actions, k, PosteriorMode::Smoother);
      run_worst = std::max({run_worst, total_variation(inf.alpha[k].mass, f.mass),
                            total_variation(inf.gamma[k].mass, s.mass)});
    }
    if (run_worst > o.tv_tol) {
      ++failed;
      err << "run " << r << ": total variation " << run_worst << " exceeds " << o.tv_tol << '\n';
    }
    worst = std::max(worst, run_worst);
  }
  std::ostringstream report;
  report << std::setprecision(3) << "oracle-check: " << o.runs - failed << "/" << o.runs
         << " runs match (max total variation " << worst << ", tolerance " << o.tv_tol << ")\n";
  emit(o.out, report.str(), out);
  return failed == 0 ? 0 : 1;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inverse filtering and fixed-interval smoothing of an adversary's beliefs", "caa"};
  app.require_subcommand(1);
  Options o;

  const auto add_model = [&](CLI::App* sub) {
    sub->add_option("--model", o.model, "model JSON file")->required()->check(CLI::ExistingFile);
  };
  const auto add_traj = [&](CLI::App* sub) {
    sub->add_option("--traj", o.traj, "trajectory JSON file")->required()->check(CLI::ExistingFile);
  };
  const auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "output file (default: stdout)");
  };
  const auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--dedup-tol", o.dedup_tol, "belief merge tolerance (max-norm)")
        ->check(CLI::Range(1e-15, 0.5));
  };

  auto* sim = app.add_subcommand("simulate", "simulate one episode of the game");
  add_model(sim);
  sim->add_option("--horizon", o.horizon, "number of steps N")->required()->check(CLI::PositiveNumber);
  sim->add_option("--seed", o.seed, "master seed");
  sim->add_flag("--public-only", o.public_only, "omit the adversary's observations and beliefs");
  add_out(sim);

  auto* infer = app.add_subcommand("infer", "filter or smooth the adversary's beliefs");
  add_model(infer);
  add_traj(infer);
  infer->add_option("--mode", o.mode, "filter | smooth")->check(CLI::IsMember({"filter", "smooth"}));
  infer->add_option("--dump-graph", o.dump_graph, "also write the belief graph as JSON");
  add_tol(infer);
  add_out(infer);

  auto* eval = app.add_subcommand("evaluate", "Monte Carlo average CME errors (CSV)");
  add_model(eval);
  eval->add_option("--horizon", o.horizon, "number of steps N")->required()->check(CLI::PositiveNumber);
  eval->add_option("--runs", o.runs, "number of realizations")->check(CLI::PositiveNumber);
  eval->add_option("--seed", o.seed, "master seed");
  eval->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  add_out(eval);

  auto* exp = app.add_subcommand("export-simplex", "filter/smoother pmfs at one time as CSV");
  add_model(exp);
  add_traj(exp);
  exp->add_option("--k", o.k, "time index")->required();
  add_tol(exp);
  add_out(exp);

  auto* oc = app.add_subcommand("oracle-check", "compare filter and smoother against enumeration");
  add_model(oc);
  oc->add_option("--horizon", o.horizon, "number of steps N")->required()->check(CLI::PositiveNumber);
  oc->add_option("--runs", o.runs, "number of simulated episodes")->check(CLI::PositiveNumber);
  oc->add_option("--seed", o.seed, "master seed");
  oc->add_option("--tol", o.tv_tol, "total-variation tolerance")->check(CLI::NonNegativeNumber);
  add_tol(oc);
  add_out(oc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "caa: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*sim) return run_simulate(o, out, err);
    if (*infer) return run_infer(o, out, err);
    if (*eval) return run_evaluate(o, out, err);
    if (*exp) return run_export(o, out, err);
    if (*oc) return run_oracle_check(o, out, err);
  } catch (const ValidationError& e) {
    err << "caa: " << e.what() << '\n';
    return 1;
  } catch (const EvidenceError& e) {
    err << "caa: " << e.what() << " (step " << e.step() << ")\n";
    return 1;
  } catch (const std::exception& e) {
    err << "caa: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace caa
