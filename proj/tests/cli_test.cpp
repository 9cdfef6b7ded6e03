#include <filesystem>
#include <initializer_list>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "caa/cli.hpp"
#include "caa/experiments.hpp"
#include "caa/model_io.hpp"
#include "caa/posterior_io.hpp"

using namespace caa;
namespace fs = std::filesystem;

namespace {

const std::string kExperimentModel = std::string(CAA_MODELS_DIR) + "/experiment.json";

struct Result {
  int code;
  std::string out, err;
};

Result run(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"caa"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path = fs::temp_directory_path() / ("caa_cli_" + std::to_string(std::random_device{}()));
  TempDir() { fs::create_directories(path); }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("help and usage errors") {
  const Result help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("simulate") != std::string::npos);
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"simulate", "--model", kExperimentModel}).code == 2);
  CHECK(run({"simulate", "--model", kExperimentModel, "--horizon", "0"}).code == 2);
  CHECK(run({"simulate", "--model", "/nonexistent/model.json", "--horizon", "3"}).code == 2);
  CHECK(run({"evaluate", "--model", kExperimentModel, "--horizon", "three"}).code == 2);
  CHECK(run({"infer", "--model", kExperimentModel, "--traj", kExperimentModel, "--mode", "both"}).code == 2);
}

TEST_CASE("simulate, infer and export") {
  TempDir dir;
  const std::string traj = dir.file("traj.json");
  const Result sim = run({"simulate", "--model", kExperimentModel, "--horizon", "4", "--seed", "11", "--out", traj});
  REQUIRE(sim.code == 0);
  const TrajectoryFile tf = load_trajectory(traj);
  CHECK(tf.trajectory.N == 4);
  CHECK(tf.model_hash == model_hash(load_model(kExperimentModel)));
  CHECK(tf.trajectory.beliefs.size() == 5);

  // Same seed, same episode; written to stdout without --out.
  const Result again = run({"simulate", "--model", kExperimentModel, "--horizon", "4", "--seed", "11"});
  CHECK(again.code == 0);
  CHECK(again.out == read_text_file(traj));

  const Result pub = run({"simulate", "--model", kExperimentModel, "--horizon", "4", "--seed", "11", "--public-only"});
  CHECK(pub.code == 0);
  const TrajectoryFile pf = parse_trajectory(pub.out);
  CHECK(pf.trajectory.states == tf.trajectory.states);
  CHECK(pf.trajectory.actions == tf.trajectory.actions);
  CHECK(pf.trajectory.beliefs.empty());
  CHECK(pf.trajectory.observations.empty());

  const std::string graph = dir.file("graph.json");
  const Result sm = run({"infer", "--model", kExperimentModel, "--traj", traj, "--dump-graph", graph});
  REQUIRE(sm.code == 0);
  const PosteriorDocument sd = parse_posteriors(sm.out);
  CHECK(sd.mode == PosteriorMode::Smoother);
  CHECK(sd.steps.size() == 5);
  CHECK(fs::exists(graph));

  const std::string filt = dir.file("filter.json");
  REQUIRE(run({"infer", "--mode", "filter", "--model", kExperimentModel, "--traj", traj, "--out", filt}).code == 0);
  const PosteriorDocument fd = parse_posteriors(read_text_file(filt));
  CHECK(fd.mode == PosteriorMode::Filter);
  const InferenceResult r = run_inference(load_model(kExperimentModel), tf.trajectory);
  for (std::size_t k = 0; k <= 4; ++k) {
    CHECK(fd.steps[k].mass == r.alpha[k].mass);
    CHECK(sd.steps[k].mass == r.gamma[k].mass);
  }

  // Inference works from a public-only trajectory too.
  const std::string public_traj = dir.file("public.json");
  write_text_file(public_traj, pub.out);
  CHECK(run({"infer", "--model", kExperimentModel, "--traj", public_traj}).out == sm.out);

  const Result ex = run({"export-simplex", "--model", kExperimentModel, "--traj", traj, "--k", "2"});
  CHECK(ex.code == 0);
  CHECK(ex.out.rfind("p1,p2,p3,u,v,filter_mass,smooth_mass,flags\n", 0) == 0);
  const Result late = run({"export-simplex", "--model", kExperimentModel, "--traj", traj, "--k", "5"});
  CHECK(late.code == 1);
  CHECK(late.err.find("--k") != std::string::npos);
}

TEST_CASE("evaluate") {
  const Result a = run({"evaluate", "--model", kExperimentModel, "--horizon", "3", "--runs", "20", "--seed", "4"});
  REQUIRE(a.code == 0);
  const ErrorCurve c = parse_error_curve_csv(a.out);
  CHECK(c.N == 3);
  const ErrorCurve direct = monte_carlo_errors(load_model(kExperimentModel), 3, 20, 4, 1);
  CHECK(c.filter_error == direct.filter_error);
  CHECK(c.smoother_error == direct.smoother_error);
  const Result b =
      run({"evaluate", "--model", kExperimentModel, "--horizon", "3", "--runs", "20", "--seed", "4", "--threads", "3"});
  CHECK(b.out == a.out);
}

TEST_CASE("oracle check") {
  const Result r = run({"oracle-check", "--model", kExperimentModel, "--horizon", "3", "--runs", "5", "--seed", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("5/5 runs match") != std::string::npos);
}

TEST_CASE("validation and consistency failures exit with 1") {
  TempDir dir;
  const std::string bad = dir.file("bad.json");
  std::string text = read_text_file(kExperimentModel);
  const auto pos = text.find("0.7");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 3, "0.6");
  write_text_file(bad, text);
  const Result v = run({"simulate", "--model", bad, "--horizon", "2"});
  CHECK(v.code == 1);
  CHECK(v.err.find("sums to") != std::string::npos);

  const std::string syntax = dir.file("syntax.json");
  write_text_file(syntax, "{\"X\": 3,\n");
  CHECK(run({"simulate", "--model", syntax, "--horizon", "2"}).code == 1);

  // A trajectory recorded under a different model.
  CaaModel other = load_model(kExperimentModel);
  other.P(0, 0) = 0.6;
  other.P(0, 1) = 0.3;
  const std::string other_model = dir.file("other.json");
  write_text_file(other_model, dump_model(other));
  const std::string traj = dir.file("traj.json");
  REQUIRE(run({"simulate", "--model", other_model, "--horizon", "3", "--out", traj}).code == 0);
  const Result h = run({"infer", "--model", kExperimentModel, "--traj", traj});
  CHECK(h.code == 1);
  CHECK(h.err.find("model_hash") != std::string::npos);

  // An action sequence the policy cannot produce.
  TrajectoryFile tf = load_trajectory(traj);
  tf.trajectory.actions[0] = 1;  // every first-step belief from e1 takes action 1
  tf.trajectory.beliefs.clear();
  tf.trajectory.observations.clear();
  const std::string forged = dir.file("forged.json");
  write_text_file(forged, dump_trajectory(tf.trajectory, "", false));
  const Result e = run({"infer", "--model", kExperimentModel, "--traj", forged});
  CHECK(e.code == 1);
  CHECK(e.err.find("step 1") != std::string::npos);
}
