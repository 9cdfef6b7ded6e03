#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "caa/matrix.hpp"

namespace caa {

/// Half-space membership test  w . pi >= t.  The comparison is exact (no slack).
struct LinearRegion {
  std::vector<double> normal;
  double threshold = 0.0;

  bool contains(std::span<const double> belief) const;
};

/// Deterministic policy: the first rule whose region contains the belief
/// fires; if none does, `fallback_action` is taken.
struct ThresholdPolicy {
  struct Rule {
    LinearRegion region;
    std::size_t action = 0;  // 0-based
  };
  std::vector<Rule> rules;
  std::size_t fallback_action = 0;
  std::size_t num_actions = 0;
};

/// Randomized policy: first matching region selects its action pmf.
struct TabulatedPolicy {
  struct Rule {
    LinearRegion region;
    std::vector<double> pmf;
  };
  std::vector<Rule> rules;
  std::vector<double> fallback_pmf;
};

class Policy;

/// Inner policy C followed by a noisy action channel D:
///   G(pi, a) = sum_u D(u, a) C(pi, u).
struct ComposedPolicy {
  std::shared_ptr<const Policy> inner;
  Matrix channel;
};

/// Action policy G: maps a belief to a pmf over the A actions.
class Policy {
 public:
  using Variant = std::variant<ThresholdPolicy, TabulatedPolicy, ComposedPolicy>;

  Policy() = default;
  Policy(ThresholdPolicy p) : impl_(std::move(p)) {}
  Policy(TabulatedPolicy p) : impl_(std::move(p)) {}
  Policy(ComposedPolicy p) : impl_(std::move(p)) {}

  const Variant& variant() const noexcept { return impl_; }

  std::size_t num_actions() const;
  bool is_deterministic() const;

  /// Writes G(belief, .) into `out` (length num_actions()).
  void pmf(std::span<const double> belief, std::span<double> out) const;
  std::vector<double> pmf(std::span<const double> belief) const;

  /// Relabels states: the returned policy evaluated at the permuted belief
  /// (perm[i] = new index of old state i) equals this policy at the original.
  Policy permute_states(std::span<const std::size_t> perm) const;

  /// Structural problems (dimension, non-stochastic pmfs / channel, action range).
  /// `where` prefixes every message.
  void collect_violations(std::size_t num_states, const std::string& where,
                          std::vector<std::string>& out) const;

 private:
  Variant impl_;
};

/// G(pi, .) for a single belief.
std::vector<double> policy_pmf(const Policy& policy, std::span<const double> belief);

/// Builds the complete-model policy sum_u D(u, a) C(pi, u).
/// Throws ValidationError when D is not square A x A row-stochastic.
Policy compose_policy(Policy inner, Matrix channel);

}  // namespace caa
