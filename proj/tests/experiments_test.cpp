#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "battery.hpp"
#include "caa/errors.hpp"
#include "caa/experiments.hpp"
#include "caa/model_io.hpp"
#include "caa/posterior_io.hpp"
#include "caa/simulate.hpp"

using namespace caa;

namespace {

std::size_t support(const PosteriorPmf& p) {
  std::size_t n = 0;
  for (double m : p.mass) n += m > 0.0;
  return n;
}

}  // namespace

TEST_CASE("euclidean distance and barycentric projection") {
  CHECK(euclidean_distance(std::vector{0.0, 0.0}, std::vector{3.0, 4.0}) == 5.0);
  const auto e1 = barycentric_projection(std::vector{1.0, 0.0, 0.0});
  const auto e2 = barycentric_projection(std::vector{0.0, 1.0, 0.0});
  const auto e3 = barycentric_projection(std::vector{0.0, 0.0, 1.0});
  CHECK(e1 == std::array{0.0, 0.0});
  CHECK(e2 == std::array{1.0, 0.0});
  CHECK(e3[0] == 0.5);
  CHECK(std::abs(e3[1] - std::sqrt(3.0) / 2.0) <= 1e-16);
  const auto c = barycentric_projection(std::vector{1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(std::abs(c[0] - 0.5) <= 1e-15);
  CHECK(std::abs(c[1] - std::sqrt(3.0) / 6.0) <= 1e-15);
  CHECK_THROWS_AS(barycentric_projection(std::vector{0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("single run matches a direct computation") {
  const CaaModel m = experiment_model();
  const ErrorCurve curve = monte_carlo_errors(m, 5, 1, 17, 1);
  CHECK(curve.N == 5);
  CHECK(curve.runs == 1);
  CHECK(curve.seed == 17);
  RngStream rng(17, 0);
  const Trajectory t = simulate_episode(m, 5, rng);
  const InferenceResult r = run_inference(m, t);
  for (std::size_t k = 1; k <= 5; ++k) {
    CHECK(curve.filter_error[k - 1] == euclidean_distance(posterior_mean(r.alpha[k], r.graph), t.beliefs[k]));
    CHECK(curve.smoother_error[k - 1] == euclidean_distance(posterior_mean(r.gamma[k], r.graph), t.beliefs[k]));
  }
  CHECK(error_curve_csv(monte_carlo_errors(m, 5, 1, 17, 1)) == error_curve_csv(curve));
}

TEST_CASE("error curves do not depend on the thread count") {
  const CaaModel m = experiment_model();
  const ErrorCurve one = monte_carlo_errors(m, 4, 40, 5, 1);
  const ErrorCurve four = monte_carlo_errors(m, 4, 40, 5, 4);
  CHECK(one.filter_error == four.filter_error);
  CHECK(one.smoother_error == four.smoother_error);
}

TEST_CASE("perfect sensor has zero error") {
  CaaModel m = experiment_model();
  m.B = Matrix::identity(3);
  const ErrorCurve curve = monte_carlo_errors(m, 5, 50, 3, 1);
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(curve.filter_error[k] == 0.0);
    CHECK(curve.smoother_error[k] <= 1e-15);
  }
}

TEST_CASE("filter and smoother errors coincide at the horizon") {
  RngStream rng(501, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const CaaModel m = testing::random_model(rng);
    const ErrorCurve curve = monte_carlo_errors(m, 4, 30, trial, 1);
    CHECK(curve.filter_error[3] == curve.smoother_error[3]);
  }
}

TEST_CASE("error curve CSV round trip") {
  const ErrorCurve curve = monte_carlo_errors(experiment_model(), 4, 20, 9, 1);
  const std::string csv = error_curve_csv(curve);
  CHECK(csv.rfind("k,filter_err,smoother_err\n1,", 0) == 0);
  const ErrorCurve back = parse_error_curve_csv(csv);
  CHECK(back.N == 4);
  CHECK(back.filter_error == curve.filter_error);
  CHECK(back.smoother_error == curve.smoother_error);
  CHECK_THROWS_AS(parse_error_curve_csv("k,f,s\n"), ParseError);
  CHECK_THROWS_AS(parse_error_curve_csv("k,filter_err,smoother_err\n2,0.1,0.1\n"), ParseError);
  CHECK_THROWS_AS(parse_error_curve_csv("k,filter_err,smoother_err\n1;0.1;0.1\n"), ParseError);
}

TEST_CASE("posterior document round trip") {
  for (std::uint64_t i = 0; i < 30; ++i) {
    const auto c = testing::battery_case(502, i);
    const InferenceResult r = run_inference(c.model, c.trajectory);
    for (auto mode : {PosteriorMode::Filter, PosteriorMode::Smoother}) {
      const auto& pmfs = mode == PosteriorMode::Filter ? r.alpha : r.gamma;
      const PosteriorDocument doc = parse_posteriors(dump_posteriors(pmfs, r.graph, mode));
      CHECK(doc.mode == mode);
      CHECK(doc.N == c.trajectory.N);
      REQUIRE(doc.steps.size() == pmfs.size());
      for (std::size_t k = 0; k < pmfs.size(); ++k) {
        const auto& s = doc.steps[k];
        CHECK(s.k == k);
        REQUIRE(s.mass.size() == pmfs[k].mass.size());
        for (std::size_t id = 0; id < s.mass.size(); ++id) {
          CHECK(s.ids[id] == id);
          CHECK(std::abs(s.mass[id] - pmfs[k].mass[id]) <= 1e-14);
          for (std::size_t j = 0; j < c.model.X; ++j)
            CHECK(std::abs(s.beliefs[id][j] - r.graph.belief(k, id)[j]) <= 1e-14);
        }
        const Belief cme = posterior_mean(pmfs[k], r.graph);
        for (std::size_t j = 0; j < c.model.X; ++j) CHECK(std::abs(s.cme[j] - cme[j]) <= 1e-14);
      }
    }
  }
}

TEST_CASE("simplex export") {
  const CaaModel m = experiment_model();
  RngStream rng(1, 2);
  const Trajectory t = simulate_episode(m, 6, rng);
  const SimplexPmfExport exp = export_simplex_pmf(m, t, 3);
  const InferenceResult r = run_inference(m, t);
  CHECK(exp.k == 3);
  CHECK(exp.N == 6);
  const std::size_t n = r.graph.layer_size(3);
  REQUIRE(exp.rows.size() == n + 2);
  std::size_t true_rows = 0;
  for (std::size_t id = 0; id < n; ++id) {
    const auto& row = exp.rows[id];
    REQUIRE(row.uv.has_value());
    CHECK(*row.uv == barycentric_projection(row.belief));
    CHECK(row.filter_mass == r.alpha[3].mass[id]);
    CHECK(row.smooth_mass == r.gamma[3].mass[id]);
    true_rows += row.is_true_belief;
  }
  CHECK(true_rows == 1);
  CHECK(exp.rows[n].is_filter_cme);
  CHECK(exp.rows[n].filter_mass == 0.0);
  CHECK(exp.rows[n + 1].is_smooth_cme);
  CHECK(exp.rows[n + 1].belief == posterior_mean(r.gamma[3], r.graph));

  const std::string csv = simplex_csv(exp);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "p1,p2,p3,u,v,filter_mass,smooth_mass,flags");
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == n + 2);
  CHECK(csv.find(",filter_cme\n") != std::string::npos);
  CHECK(csv.find(",smooth_cme\n") != std::string::npos);
  CHECK(csv.find(",true\n") != std::string::npos);

  // Fewer positive-mass rows after smoothing for this episode.
  std::size_t fpos = 0, spos = 0;
  for (const auto& row : exp.rows) {
    fpos += row.filter_mass > 0.0;
    spos += row.smooth_mass > 0.0;
  }
  CHECK(spos < fpos);
  CHECK_THROWS_AS(export_simplex_pmf(m, t, 7), std::out_of_range);
}

TEST_CASE("simplex export without planar coordinates") {
  testing::BatterySpec spec;
  spec.max_states = 2;
  const auto c = testing::battery_case(503, 0, spec);
  const SimplexPmfExport exp = export_simplex_pmf(c.model, c.trajectory, c.trajectory.N);
  for (const auto& row : exp.rows) CHECK_FALSE(row.uv.has_value());
  const std::string csv = simplex_csv(exp);
  CHECK(csv.rfind("p1,p2,u,v,filter_mass,smooth_mass,flags\n", 0) == 0);
  CHECK(csv.find(",,") != std::string::npos);
}

TEST_CASE("marker row for an unmatched true belief") {
  const CaaModel m = experiment_model();
  RngStream rng(504, 0);
  Trajectory t = simulate_episode(m, 3, rng);
  t.beliefs[3] = {0.2, 0.3, 0.5};
  const SimplexPmfExport exp = export_simplex_pmf(m, t, 3);
  std::size_t true_rows = 0;
  for (const auto& row : exp.rows) true_rows += row.is_true_belief;
  CHECK(true_rows == 1);
  REQUIRE(exp.rows.back().is_true_belief);
  CHECK(exp.rows.back().belief == t.beliefs[3]);
  CHECK(exp.rows.back().filter_mass == 0.0);
  CHECK(exp.rows.back().smooth_mass == 0.0);
}

TEST_CASE("frozen episodes where smoothing sharpens the posterior") {
  // Experiment model, N = 6, k = 3, episodes RngStream(1, r).
  const CaaModel m = experiment_model();
  for (std::uint64_t run : {2, 8}) {
    RngStream rng(1, run);
    const Trajectory t = simulate_episode(m, 6, rng);
    const InferenceResult r = run_inference(m, t);
    CHECK(support(r.gamma[3]) < support(r.alpha[3]));
    const double ef = euclidean_distance(posterior_mean(r.alpha[3], r.graph), t.beliefs[3]);
    const double es = euclidean_distance(posterior_mean(r.gamma[3], r.graph), t.beliefs[3]);
    CHECK(es < ef);
  }
  // A smaller support does not by itself guarantee a closer estimate.
  RngStream rng(1, 51);
  const Trajectory t = simulate_episode(m, 6, rng);
  const InferenceResult r = run_inference(m, t);
  CHECK(support(r.gamma[3]) < support(r.alpha[3]));
  CHECK(euclidean_distance(posterior_mean(r.gamma[3], r.graph), t.beliefs[3]) >
        euclidean_distance(posterior_mean(r.alpha[3], r.graph), t.beliefs[3]));
}
