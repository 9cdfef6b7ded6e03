#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "caa/belief_graph.hpp"
#include "caa/inverse_filter.hpp"
#include "caa/oracle.hpp"

namespace caa {

struct PosteriorStep {
  std::size_t k = 0;
  std::vector<std::size_t> ids;
  std::vector<Belief> beliefs;
  std::vector<double> mass;
  Belief cme;
};

struct PosteriorDocument {
  PosteriorMode mode = PosteriorMode::Filter;
  std::size_t N = 0;
  std::vector<PosteriorStep> steps;
};

/// {"mode": "filter"|"smoothed", "N": N, "steps": [{"k", "nodes": [{"id", "belief", "mass"}], "cme"}]}
std::string dump_posteriors(std::span<const PosteriorPmf> pmfs, const BeliefGraph& graph,
                            PosteriorMode mode);

PosteriorDocument parse_posteriors(std::string_view text);

}  // namespace caa
