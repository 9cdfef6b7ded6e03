#include "caa/posterior_io.hpp"

#include "caa/errors.hpp"
#include "json_util.hpp"

namespace caa {

std::string dump_posteriors(std::span<const PosteriorPmf> pmfs, const BeliefGraph& graph,
                            PosteriorMode mode) {
  using detail::json;
  json steps = json::array();
  for (const auto& pmf : pmfs) {
    const BeliefLayer& layer = graph.layer(pmf.layer);
    json nodes = json::array();
    for (std::size_t id = 0; id < layer.size(); ++id) {
      const auto b = layer.belief(id);
      nodes.push_back(json{{"id", id},
                           {"belief", std::vector<double>(b.begin(), b.end())},
                           {"mass", pmf.mass[id]}});
    }
    steps.push_back(
        json{{"k", pmf.layer}, {"nodes", std::move(nodes)}, {"cme", posterior_mean(pmf, graph)}});
  }
  json doc{{"mode", mode == PosteriorMode::Filter ? "filter" : "smoothed"},
           {"N", pmfs.empty() ? 0 : pmfs.back().layer},
           {"steps", std::move(steps)}};
  return doc.dump(2) + "\n";
}

PosteriorDocument parse_posteriors(std::string_view text) {
  using detail::json;
  const json j = detail::parse_json(text);
  PosteriorDocument doc;
  const json& mode = detail::require_field(j, "mode", "posterior");
  if (mode == "filter")
    doc.mode = PosteriorMode::Filter;
  else if (mode == "smoothed")
    doc.mode = PosteriorMode::Smoother;
  else
    throw ParseError("posterior.mode: expected \"filter\" or \"smoothed\"");
  doc.N = detail::as_count(detail::require_field(j, "N", "posterior"), "posterior.N");
  const json& steps = detail::require_field(j, "steps", "posterior");
  if (!steps.is_array()) throw ParseError("posterior.steps: expected an array");
  for (std::size_t s = 0; s < steps.size(); ++s) {
    const std::string where = "posterior.steps[" + std::to_string(s + 1) + "]";
    PosteriorStep step;
    step.k = detail::as_count(detail::require_field(steps[s], "k", where), where + ".k");
    step.cme = detail::as_real_vector(detail::require_field(steps[s], "cme", where), where + ".cme");
    const json& nodes = detail::require_field(steps[s], "nodes", where);
    if (!nodes.is_array()) throw ParseError(where + ".nodes: expected an array");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const std::string nw = where + ".nodes[" + std::to_string(i + 1) + "]";
      step.ids.push_back(detail::as_count(detail::require_field(nodes[i], "id", nw), nw + ".id"));
      step.beliefs.push_back(
          detail::as_real_vector(detail::require_field(nodes[i], "belief", nw), nw + ".belief"));
      step.mass.push_back(detail::as_real(detail::require_field(nodes[i], "mass", nw), nw + ".mass"));
    }
    doc.steps.push_back(std::move(step));
  }
  return doc;
}

}  // namespace caa
