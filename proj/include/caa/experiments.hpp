#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "caa/belief_graph.hpp"
#include "caa/inverse_filter.hpp"
#include "caa/model.hpp"
#include "caa/smoother.hpp"

namespace caa {

/// Filter and smoother posteriors for one trajectory on a shared graph.
struct InferenceResult {
  BeliefGraph graph;
  std::vector<PosteriorPmf> alpha;
  std::vector<BackwardValues> beta;
  std::vector<PosteriorPmf> gamma;
};

/// Graph build + forward pass + backward pass + combine.
InferenceResult run_inference(const CaaModel& model, const Trajectory& traj,
                              double tol = kDefaultDedupTol);

/// Mean Euclidean error of the filter / smoother conditional means against the
/// adversary's actual beliefs. Entry k-1 holds time k (k = 1..N).
struct ErrorCurve {
  std::size_t N = 0;
  std::size_t runs = 0;
  std::uint64_t seed = 0;
  std::vector<double> filter_error;
  std::vector<double> smoother_error;
};

/// Run r simulates with RngStream(seed, r). Runs may execute on `threads`
/// workers (0 = hardware concurrency); per-run errors are reduced in run order
/// so the result does not depend on the thread count.
ErrorCurve monte_carlo_errors(const CaaModel& model, std::size_t N, std::size_t runs,
                              std::uint64_t seed, unsigned threads = 0);

/// CSV with header "k,filter_err,smoother_err".
std::string error_curve_csv(const ErrorCurve& curve);
ErrorCurve parse_error_curve_csv(const std::string& text);

double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// Equilateral-triangle embedding of the 2-simplex: e1 -> (0, 0),
/// e2 -> (1, 0), e3 -> (1/2, sqrt(3)/2).
std::array<double, 2> barycentric_projection(std::span<const double> p);

struct SimplexRow {
  Belief belief;
  std::optional<std::array<double, 2>> uv;  // only for X = 3
  double filter_mass = 0.0;
  double smooth_mass = 0.0;
  bool is_true_belief = false;
  bool is_filter_cme = false;
  bool is_smooth_cme = false;
};

/// One row per node of Pi_k, followed by zero-mass marker rows for the filter
/// and smoother CMEs (and for the true belief if it matches no node).
struct SimplexPmfExport {
  std::size_t k = 0;
  std::size_t N = 0;
  std::vector<SimplexRow> rows;
};

SimplexPmfExport export_simplex_pmf(const CaaModel& model, const Trajectory& traj, std::size_t k,
                                    double tol = kDefaultDedupTol);

/// CSV "p1,..,pX,u,v,filter_mass,smooth_mass,flags"; u, v empty when X != 3;
/// flags joined by '|' from {true, filter_cme, smooth_cme}.
std::string simplex_csv(const SimplexPmfExport& exp);

}  // namespace caa
