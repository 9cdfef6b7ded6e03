#include <cmath>
#include <vector>

#include "doctest.h"

#include "battery.hpp"
#include "caa/belief_graph.hpp"
#include "caa/errors.hpp"
#include "caa/oracle.hpp"

using namespace caa;

TEST_CASE("oracle at time zero") {
  const auto c = testing::battery_case(401, 0);
  const BeliefGraph g = expand_belief_graph(c.model, c.trajectory.N);
  const auto p = enumerate_posterior(c.model, g, c.trajectory.states, c.trajectory.actions, 0, PosteriorMode::Filter);
  CHECK(p.layer == 0);
  CHECK(p.mass == std::vector{1.0});
}

TEST_CASE("oracle one step by hand") {
  // Every child of e1 takes action 1, so the weight of y is B(x_1, y).
  const CaaModel m = experiment_model();
  const BeliefGraph g = expand_belief_graph(m, 1);
  const std::vector<StateIndex> xs{0, 2};
  const std::vector<ActionIndex> as{0};
  const auto p = enumerate_posterior(m, g, xs, as, 1, PosteriorMode::Filter);
  CHECK(std::abs(p.mass[0] - 0.1) <= 1e-15);
  CHECK(std::abs(p.mass[1] - 0.4) <= 1e-15);
  CHECK(std::abs(p.mass[2] - 0.5) <= 1e-15);
  CHECK_THROWS_AS(enumerate_posterior(m, g, xs, std::vector<ActionIndex>{1}, 1, PosteriorMode::Filter),
                  InconsistentEvidence);
}

TEST_CASE("oracle posteriors are normalized and agree at the horizon") {
  for (std::uint64_t i = 0; i < 60; ++i) {
    const auto c = testing::battery_case(402, i);
    const auto& t = c.trajectory;
    const BeliefGraph g = expand_belief_graph(c.model, t.N);
    for (std::size_t k = 0; k <= t.N; ++k)
      for (auto mode : {PosteriorMode::Filter, PosteriorMode::Smoother}) {
        const auto p = enumerate_posterior(c.model, g, t.states, t.actions, k, mode);
        double total = 0.0;
        for (double v : p.mass) {
          CHECK(v >= 0.0);
          total += v;
        }
        CHECK(std::abs(total - 1.0) <= 1e-12);
      }
    const auto f = enumerate_posterior(c.model, g, t.states, t.actions, t.N, PosteriorMode::Filter);
    const auto s = enumerate_posterior(c.model, g, t.states, t.actions, t.N, PosteriorMode::Smoother);
    CHECK(total_variation(f.mass, s.mass) <= 1e-15);
  }
}

TEST_CASE("enumeration order does not matter") {
  OracleOptions reversed;
  reversed.reverse_order = true;
  for (std::uint64_t i = 0; i < 40; ++i) {
    const auto c = testing::battery_case(403, i);
    const auto& t = c.trajectory;
    const BeliefGraph g = expand_belief_graph(c.model, t.N);
    for (std::size_t k = 0; k <= t.N; ++k) {
      const auto a = enumerate_posterior(c.model, g, t.states, t.actions, k, PosteriorMode::Smoother);
      const auto b = enumerate_posterior(c.model, g, t.states, t.actions, k, PosteriorMode::Smoother, reversed);
      for (std::size_t id = 0; id < a.mass.size(); ++id) CHECK(std::abs(a.mass[id] - b.mass[id]) <= 1e-14);
    }
  }
}

TEST_CASE("enumeration cap") {
  const CaaModel m = experiment_model();
  const BeliefGraph g = expand_belief_graph(m, 3);
  const std::vector<StateIndex> xs{0, 0, 0, 0};
  const std::vector<ActionIndex> as{0, 0, 0};
  OracleOptions small;
  small.max_sequences = 26;
  CHECK_THROWS_AS(enumerate_posterior(m, g, xs, as, 1, PosteriorMode::Smoother, small), EnumerationTooLarge);
  small.max_sequences = 27;
  CHECK_NOTHROW(enumerate_posterior(m, g, xs, as, 1, PosteriorMode::Smoother, small));
  small.max_sequences = 9;
  CHECK_NOTHROW(enumerate_posterior(m, g, xs, as, 2, PosteriorMode::Filter, small));
  CHECK_THROWS_AS(enumerate_posterior(m, g, xs, as, 4, PosteriorMode::Filter), std::out_of_range);
}
