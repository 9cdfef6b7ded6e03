#include "caa/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "caa/errors.hpp"
#include "caa/model.hpp"

namespace caa {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<double> permuted(std::span<const double> v, std::span<const std::size_t> perm) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[perm[i]] = v[i];
  return out;
}

void check_region(const LinearRegion& r, std::size_t num_states, const std::string& where,
                  std::vector<std::string>& out) {
  if (r.normal.size() != num_states) {
    std::ostringstream os;
    os << where << ": normal vector has " << r.normal.size() << " entries, expected " << num_states;
    out.push_back(os.str());
  }
  if (!std::isfinite(r.threshold) ||
      std::any_of(r.normal.begin(), r.normal.end(), [](double w) { return !std::isfinite(w); })) {
    out.push_back(where + ": non-finite rule coefficients");
  }
}

void check_pmf(std::span<const double> pmf, std::size_t num_actions, const std::string& where,
               std::vector<std::string>& out) {
  if (pmf.size() != num_actions) {
    std::ostringstream os;
    os << where << ": pmf has " << pmf.size() << " entries, expected " << num_actions;
    out.push_back(os.str());
    return;
  }
  if (!is_probability_vector(pmf)) out.push_back(where + ": pmf is not a probability vector");
}

}  // namespace

bool LinearRegion::contains(std::span<const double> belief) const {
  double s = 0.0;
  for (std::size_t i = 0; i < normal.size(); ++i) s += normal[i] * belief[i];
  return s >= threshold;
}

std::size_t Policy::num_actions() const {
  return std::visit(Overloaded{
                        [](const ThresholdPolicy& p) { return p.num_actions; },
                        [](const TabulatedPolicy& p) { return p.fallback_pmf.size(); },
                        [](const ComposedPolicy& p) { return p.channel.cols(); },
                    },
                    impl_);
}

bool Policy::is_deterministic() const {
  return std::holds_alternative<ThresholdPolicy>(impl_);
}

void Policy::pmf(std::span<const double> belief, std::span<double> out) const {
  std::visit(Overloaded{
                 [&](const ThresholdPolicy& p) {
                   std::fill(out.begin(), out.end(), 0.0);
                   for (const auto& rule : p.rules) {
                     if (rule.region.contains(belief)) {
                       out[rule.action] = 1.0;
                       return;
                     }
                   }
                   out[p.fallback_action] = 1.0;
                 },
                 [&](const TabulatedPolicy& p) {
                   for (const auto& rule : p.rules) {
                     if (rule.region.contains(belief)) {
                       std::copy(rule.pmf.begin(), rule.pmf.end(), out.begin());
                       return;
                     }
                   }
                   std::copy(p.fallback_pmf.begin(), p.fallback_pmf.end(), out.begin());
                 },
                 [&](const ComposedPolicy& p) {
                   const std::vector<double> inner = p.inner->pmf(belief);
                   for (std::size_t a = 0; a < out.size(); ++a) {
                     double s = 0.0;
                     for (std::size_t u = 0; u < inner.size(); ++u) s += p.channel(u, a) * inner[u];
                     out[a] = s;
                   }
                 },
             },
             impl_);
}

std::vector<double> Policy::pmf(std::span<const double> belief) const {
  std::vector<double> out(num_actions());
  pmf(belief, out);
  return out;
}

Policy Policy::permute_states(std::span<const std::size_t> perm) const {
  return std::visit(Overloaded{
                        [&](const ThresholdPolicy& p) -> Policy {
                          ThresholdPolicy q = p;
                          for (auto& r : q.rules) r.region.normal = permuted(r.region.normal, perm);
                          return q;
                        },
                        [&](const TabulatedPolicy& p) -> Policy {
                          TabulatedPolicy q = p;
                          for (auto& r : q.rules) r.region.normal = permuted(r.region.normal, perm);
                          return q;
                        },
                        [&](const ComposedPolicy& p) -> Policy {
                          return ComposedPolicy{
                              std::make_shared<const Policy>(p.inner->permute_states(perm)),
                              p.channel};
                        },
                    },
                    impl_);
}

void Policy::collect_violations(std::size_t num_states, const std::string& where,
                                std::vector<std::string>& out) const {
  std::visit(
      Overloaded{
          [&](const ThresholdPolicy& p) {
            if (p.num_actions == 0) out.push_back(where + ": threshold policy has no actions");
            for (std::size_t i = 0; i < p.rules.size(); ++i) {
              const std::string rw = where + " rule " + std::to_string(i + 1);
              check_region(p.rules[i].region, num_states, rw, out);
              if (p.rules[i].action >= p.num_actions)
                out.push_back(rw + ": action " + std::to_string(p.rules[i].action + 1) +
                              " out of range 1.." + std::to_string(p.num_actions));
            }
            if (p.fallback_action >= p.num_actions)
              out.push_back(where + " catch-all: action " + std::to_string(p.fallback_action + 1) +
                            " out of range 1.." + std::to_string(p.num_actions));
          },
          [&](const TabulatedPolicy& p) {
            const std::size_t na = p.fallback_pmf.size();
            if (na == 0) out.push_back(where + ": tabulated policy has an empty catch-all pmf");
            for (std::size_t i = 0; i < p.rules.size(); ++i) {
              const std::string rw = where + " rule " + std::to_string(i + 1);
              check_region(p.rules[i].region, num_states, rw, out);
              check_pmf(p.rules[i].pmf, na, rw, out);
            }
            check_pmf(p.fallback_pmf, na, where + " catch-all", out);
          },
          [&](const ComposedPolicy& p) {
            if (!p.inner) {
              out.push_back(where + ": composed policy has no inner policy");
              return;
            }
            p.inner->collect_violations(num_states, where + " inner", out);
            const std::size_t na = p.inner->num_actions();
            if (p.channel.rows() != na || p.channel.cols() != na) {
              std::ostringstream os;
              os << where << ": channel D is " << p.channel.rows() << "x" << p.channel.cols()
                 << ", expected " << na << "x" << na;
              out.push_back(os.str());
              return;
            }
            check_stochastic_rows(p.channel, where + " channel D", out);
          },
      },
      impl_);
}

std::vector<double> policy_pmf(const Policy& policy, std::span<const double> belief) {
  return policy.pmf(belief);
}

Policy compose_policy(Policy inner, Matrix channel) {
  std::vector<std::string> violations;
  const std::size_t na = inner.num_actions();
  if (channel.rows() != na || channel.cols() != na) {
    std::ostringstream os;
    os << "channel D is " << channel.rows() << "x" << channel.cols() << ", expected " << na << "x"
       << na;
    violations.push_back(os.str());
  } else {
    check_stochastic_rows(channel, "D", violations);
  }
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return ComposedPolicy{std::make_shared<const Policy>(std::move(inner)), std::move(channel)};
}

}  // namespace caa
