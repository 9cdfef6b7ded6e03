#include "caa/belief_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "caa/kernels.hpp"
#include "json_util.hpp"

namespace caa {

namespace {

// Buckets beliefs by a fixed positive projection s(b) = sum_j c_j b_j. Two
// beliefs closer than tol in max-norm differ in s by less than tol * sum_j c_j,
// which is the bucket width, so only the neighbouring buckets need a scan.
class DedupIndex {
 public:
  DedupIndex(std::size_t dim, double tol) : coeff_(dim), tol_(tol) {
    double total = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      coeff_[j] = 0.5 + 0.5 * std::fmod(0.6180339887498949 * static_cast<double>(j + 1), 1.0);
      total += coeff_[j];
    }
    width_ = tol * total;
  }

  /// Lowest id within tol of `b`, or -1.
  long long find(std::span<const double> b, std::span<const double> stored) const {
    const long long key = bucket(b);
    long long best = -1;
    for (long long k = key - 1; k <= key + 1; ++k) {
      auto it = buckets_.find(k);
      if (it == buckets_.end()) continue;
      for (std::uint32_t id : it->second) {
        if (best >= 0 && id >= best) continue;
        if (close(b, stored.subspan(id * b.size(), b.size()))) best = id;
      }
    }
    return best;
  }

  void insert(std::span<const double> b, std::uint32_t id) { buckets_[bucket(b)].push_back(id); }

 private:
  long long bucket(std::span<const double> b) const {
    double s = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) s += coeff_[j] * b[j];
    return static_cast<long long>(std::floor(s / width_));
  }

  bool close(std::span<const double> a, std::span<const double> b) const {
    for (std::size_t j = 0; j < a.size(); ++j)
      if (!(std::abs(a[j] - b[j]) < tol_)) return false;
    return true;
  }

  std::vector<double> coeff_;
  double tol_;
  double width_ = 1.0;
  std::unordered_map<long long, std::vector<std::uint32_t>> buckets_;
};

}  // namespace

class BeliefGraphBuilder {
 public:
  BeliefGraphBuilder(const CaaModel& model, double tol) : model_(model), tol_(tol) {}

  BeliefGraph build(std::size_t N) {
    BeliefGraph g;
    g.num_states_ = model_.X;
    g.num_actions_ = model_.A;
    g.tolerance_ = tol_;
    g.layers_.reserve(N + 1);

    BeliefLayer root;
    root.dim_ = model_.X;
    root.size_ = 1;
    root.beliefs_ = model_.pi0;
    root.child_offsets_ = {0, 0};
    finish_actions(root);
    g.layers_.push_back(std::move(root));

    for (std::size_t k = 1; k <= N; ++k) g.layers_.push_back(expand(g.layers_.back()));
    return g;
  }

 private:
  BeliefLayer expand(const BeliefLayer& prev) {
    const std::size_t X = model_.X;
    const std::size_t Y = model_.Y;
    const std::size_t n_prev = prev.size();

    std::vector<double> predicted(n_prev * X);
    kernels::active().rows_times_matrix(prev.beliefs().data(), n_prev, model_.P.data().data(), X,
                                        predicted.data());

    BeliefLayer next;
    next.dim_ = X;
    next.parent_offsets_.reserve(n_prev + 1);
    next.parent_offsets_.push_back(0);
    DedupIndex index(X, tol_);
    std::vector<double> candidate(X);

    for (std::size_t p = 0; p < n_prev; ++p) {
      const double* pred = predicted.data() + p * X;
      for (std::size_t y = 0; y < Y; ++y) {
        double denom = 0.0;
        for (std::size_t j = 0; j < X; ++j) {
          candidate[j] = pred[j] * model_.B(j, y);
          denom += candidate[j];
        }
        if (!(denom > 0.0)) continue;
        for (double& v : candidate) v /= denom;

        long long id = index.find(candidate, next.beliefs_);
        if (id < 0) {
          if (next.size_ >= std::numeric_limits<std::uint32_t>::max())
            throw std::length_error("belief layer exceeds 2^32 nodes");
          id = static_cast<long long>(next.size_++);
          next.beliefs_.insert(next.beliefs_.end(), candidate.begin(), candidate.end());
          index.insert(candidate, static_cast<std::uint32_t>(id));
        }
        next.edges_.push_back({static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(y),
                               static_cast<std::uint32_t>(id)});
      }
      next.parent_offsets_.push_back(static_cast<std::uint32_t>(next.edges_.size()));
    }

    next.edge_children_.reserve(next.edges_.size());
    next.edge_observations_.reserve(next.edges_.size());
    for (const auto& e : next.edges_) {
      next.edge_children_.push_back(e.child);
      next.edge_observations_.push_back(e.observation);
    }

    // Stable counting sort by child keeps parent-major order within a child.
    next.child_offsets_.assign(next.size_ + 1, 0);
    for (const auto& e : next.edges_) ++next.child_offsets_[e.child + 1];
    for (std::size_t c = 0; c < next.size_; ++c) next.child_offsets_[c + 1] += next.child_offsets_[c];
    next.incoming_parents_.resize(next.edges_.size());
    next.incoming_observations_.resize(next.edges_.size());
    std::vector<std::uint32_t> cursor(next.child_offsets_.begin(), next.child_offsets_.end() - 1);
    for (const auto& e : next.edges_) {
      const std::uint32_t slot = cursor[e.child]++;
      next.incoming_parents_[slot] = e.parent;
      next.incoming_observations_[slot] = e.observation;
    }

    finish_actions(next);
    return next;
  }

  void finish_actions(BeliefLayer& layer) const {
    const std::size_t A = model_.A;
    layer.action_pmf_.assign(A * layer.size_, 0.0);
    std::vector<double> pmf(A);
    for (std::size_t id = 0; id < layer.size_; ++id) {
      model_.G.pmf(layer.belief(id), pmf);
      for (std::size_t a = 0; a < A; ++a) layer.action_pmf_[a * layer.size_ + id] = pmf[a];
    }
  }

  const CaaModel& model_;
  double tol_;
};

const BeliefLayer& BeliefGraph::layer(std::size_t k) const {
  if (k >= layers_.size())
    throw std::out_of_range("layer " + std::to_string(k) + " beyond horizon " +
                            std::to_string(horizon()));
  return layers_[k];
}

std::span<const double> BeliefGraph::belief(std::size_t k, std::size_t id) const {
  const BeliefLayer& l = layer(k);
  if (id >= l.size())
    throw std::out_of_range("node " + std::to_string(id) + " not in layer " + std::to_string(k));
  return l.belief(id);
}

std::vector<ObservationIndex> BeliefGraph::inverse_observations(std::size_t k, std::size_t parent,
                                                                std::size_t child) const {
  if (k == 0 || k >= layers_.size())
    throw std::out_of_range("inverse_observations: layer " + std::to_string(k) + " not in 1.." +
                            std::to_string(horizon()));
  if (parent >= layers_[k - 1].size())
    throw std::out_of_range("inverse_observations: parent " + std::to_string(parent) +
                            " not in layer " + std::to_string(k - 1));
  const BeliefLayer& l = layers_[k];
  if (child >= l.size())
    throw std::out_of_range("inverse_observations: child " + std::to_string(child) +
                            " not in layer " + std::to_string(k));
  std::vector<ObservationIndex> out;
  const auto offsets = l.parent_offsets();
  for (std::uint32_t e = offsets[parent]; e < offsets[parent + 1]; ++e)
    if (l.edges()[e].child == child) out.push_back(l.edges()[e].observation);
  return out;
}

BeliefGraph expand_belief_graph(const CaaModel& model, std::size_t N, double tol) {
  if (!(tol >= 1e-15 && tol < 1.0))
    throw std::invalid_argument("dedup tolerance must lie in [1e-15, 1)");
  return BeliefGraphBuilder(model, tol).build(N);
}

std::string dump_graph(const BeliefGraph& graph) {
  using detail::json;
  json layers = json::array();
  for (std::size_t k = 0; k <= graph.horizon(); ++k) {
    const BeliefLayer& l = graph.layer(k);
    json nodes = json::array();
    for (std::size_t id = 0; id < l.size(); ++id) {
      const auto b = l.belief(id);
      nodes.push_back(json{{"id", id}, {"belief", std::vector<double>(b.begin(), b.end())}});
    }
    json edges = json::array();
    for (const auto& e : l.edges()) edges.push_back(json::array({e.parent, e.observation + 1, e.child}));
    layers.push_back(json{{"k", k}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}});
  }
  json doc{{"N", graph.horizon()}, {"tolerance", graph.tolerance()}, {"layers", std::move(layers)}};
  return doc.dump(2) + "\n";
}

}  // namespace caa
