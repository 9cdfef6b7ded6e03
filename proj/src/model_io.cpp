#include "caa/model_io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>

#include "caa/errors.hpp"
#include "json_util.hpp"

namespace caa {
namespace {

using detail::json;

// Rows that are stochastic up to kStochasticTol are divided by their sum so
// that text round-trips never trip validation. Rows already within summation
// rounding of 1 are kept verbatim, so well-formed files load bit-exactly.
// Anything further off is left for validate_model to report.
void renormalize(std::span<double> v) {
  double s = 0.0;
  for (double x : v) {
    if (x < 0.0) return;
    s += x;
  }
  const double rounding = 4.0 * static_cast<double>(v.size()) * std::numeric_limits<double>::epsilon();
  const double dev = std::abs(s - 1.0);
  if (s > 0.0 && dev > rounding && dev <= kStochasticTol)
    for (double& x : v) x /= s;
}

void renormalize_rows(Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) renormalize(m.row(i));
}

LinearRegion parse_region(const json& rule, const std::string& where) {
  LinearRegion r;
  r.normal = detail::as_real_vector(detail::require_field(rule, "w", where), where + ".w");
  r.threshold = detail::as_real(detail::require_field(rule, "t", where), where + ".t");
  return r;
}

bool is_catch_all(const json& rule) { return rule.is_object() && !rule.contains("w"); }

Policy parse_policy(const json& j, std::size_t num_actions, const std::string& where) {
  const json& kind_j = detail::require_field(j, "kind", where);
  if (!kind_j.is_string()) throw ParseError(where + ".kind: expected a string");
  const std::string kind = kind_j.get<std::string>();

  if (kind == "threshold" || kind == "tabulated") {
    const json& rules = detail::require_field(j, "rules", where);
    if (!rules.is_array() || rules.empty())
      throw ParseError(where + ".rules: expected a non-empty array");
    if (!is_catch_all(rules.back()))
      throw ParseError(where + ".rules: the last rule must be a catch-all without \"w\"");

    if (kind == "threshold") {
      ThresholdPolicy p;
      p.num_actions = num_actions;
      for (std::size_t i = 0; i < rules.size(); ++i) {
        const std::string rw = where + ".rules[" + std::to_string(i + 1) + "]";
        const std::size_t action =
            detail::as_label(detail::require_field(rules[i], "action", rw), num_actions, rw + ".action");
        if (i + 1 == rules.size()) {
          p.fallback_action = action;
        } else {
          if (is_catch_all(rules[i])) throw ParseError(rw + ": catch-all rule must be last");
          p.rules.push_back({parse_region(rules[i], rw), action});
        }
      }
      return p;
    }

    TabulatedPolicy p;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      const std::string rw = where + ".rules[" + std::to_string(i + 1) + "]";
      auto pmf = detail::as_real_vector(detail::require_field(rules[i], "pmf", rw), rw + ".pmf");
      renormalize(pmf);
      if (i + 1 == rules.size()) {
        p.fallback_pmf = std::move(pmf);
      } else {
        if (is_catch_all(rules[i])) throw ParseError(rw + ": catch-all rule must be last");
        p.rules.push_back({parse_region(rules[i], rw), std::move(pmf)});
      }
    }
    return p;
  }

  if (kind == "composed") {
    Policy inner = parse_policy(detail::require_field(j, "inner", where), num_actions, where + ".inner");
    Matrix d = detail::as_matrix(detail::require_field(j, "D", where), where + ".D");
    renormalize_rows(d);
    return ComposedPolicy{std::make_shared<const Policy>(std::move(inner)), std::move(d)};
  }

  throw ParseError(where + ".kind: unknown policy kind \"" + kind +
                   "\" (expected threshold, tabulated or composed)");
}

json region_json(const LinearRegion& r) { return json{{"w", r.normal}, {"t", r.threshold}}; }

json policy_json(const Policy& policy) {
  return std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ThresholdPolicy>) {
          json rules = json::array();
          for (const auto& r : p.rules) {
            json rj = region_json(r.region);
            rj["action"] = r.action + 1;
            rules.push_back(std::move(rj));
          }
          rules.push_back(json{{"action", p.fallback_action + 1}});
          return json{{"kind", "threshold"}, {"rules", std::move(rules)}};
        } else if constexpr (std::is_same_v<T, TabulatedPolicy>) {
          json rules = json::array();
          for (const auto& r : p.rules) {
            json rj = region_json(r.region);
            rj["pmf"] = r.pmf;
            rules.push_back(std::move(rj));
          }
          rules.push_back(json{{"pmf", p.fallback_pmf}});
          return json{{"kind", "tabulated"}, {"rules", std::move(rules)}};
        } else {
          return json{{"kind", "composed"}, {"inner", policy_json(*p.inner)}, {"D", detail::to_json(p.channel)}};
        }
      },
      policy.variant());
}

json model_json(const CaaModel& m) {
  return json{{"X", m.X},   {"Y", m.Y},     {"A", m.A},
              {"P", detail::to_json(m.P)}, {"B", detail::to_json(m.B)}, {"pi0", m.pi0},
              {"policy", policy_json(m.G)}};
}

}  // namespace

CaaModel parse_model(std::string_view text) {
  const json j = detail::parse_json(text);
  const std::string where = "model";
  if (!j.is_object()) throw ParseError("model: top-level value must be an object");

  CaaModel m;
  m.X = detail::as_count(detail::require_field(j, "X", where), "model.X");
  m.Y = detail::as_count(detail::require_field(j, "Y", where), "model.Y");
  m.A = detail::as_count(detail::require_field(j, "A", where), "model.A");
  m.P = detail::as_matrix(detail::require_field(j, "P", where), "model.P");
  m.B = detail::as_matrix(detail::require_field(j, "B", where), "model.B");
  m.pi0 = detail::as_real_vector(detail::require_field(j, "pi0", where), "model.pi0");
  m.G = parse_policy(detail::require_field(j, "policy", where), m.A, "model.policy");

  renormalize_rows(m.P);
  renormalize_rows(m.B);
  renormalize(m.pi0);
  require_valid(m);
  return m;
}

CaaModel load_model(const std::filesystem::path& path) { return parse_model(read_text_file(path)); }

std::string dump_model(const CaaModel& model) { return model_json(model).dump(2) + "\n"; }

std::string model_hash(const CaaModel& model) {
  const std::string canonical = model_json(model).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

std::string dump_trajectory(const Trajectory& traj, const std::string& hash, bool include_private) {
  json j;
  j["N"] = traj.N;
  j["model_hash"] = hash;
  json xs = json::array();
  for (auto x : traj.states) xs.push_back(x + 1);
  j["x"] = std::move(xs);
  json as = json::array();
  for (auto a : traj.actions) as.push_back(a + 1);
  j["a"] = std::move(as);
  if (include_private) {
    if (!traj.observations.empty()) {
      json ys = json::array();
      for (auto y : traj.observations) ys.push_back(y + 1);
      j["y"] = std::move(ys);
    }
    if (!traj.beliefs.empty()) j["pi"] = traj.beliefs;
  }
  return j.dump(2) + "\n";
}

TrajectoryFile parse_trajectory(std::string_view text) {
  const json j = detail::parse_json(text);
  const std::string where = "trajectory";
  if (!j.is_object()) throw ParseError("trajectory: top-level value must be an object");

  TrajectoryFile f;
  auto& t = f.trajectory;
  t.N = detail::as_count(detail::require_field(j, "N", where), "trajectory.N");

  // Labels are range-checked against the model later; here only >= 1.
  const auto labels = [&](const char* field) {
    const json& arr = detail::require_field(j, field, where);
    if (!arr.is_array()) throw ParseError(where + "." + field + ": expected an array");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < arr.size(); ++i)
      out.push_back(detail::as_label(arr[i], static_cast<std::size_t>(-1) / 2,
                                     where + "." + field + "[" + std::to_string(i + 1) + "]"));
    return out;
  };
  t.states = labels("x");
  t.actions = labels("a");
  if (j.contains("y")) t.observations = labels("y");
  if (j.contains("pi")) {
    const json& pis = j["pi"];
    if (!pis.is_array()) throw ParseError("trajectory.pi: expected an array of beliefs");
    for (std::size_t k = 0; k < pis.size(); ++k)
      t.beliefs.push_back(detail::as_real_vector(pis[k], "trajectory.pi[" + std::to_string(k) + "]"));
  }
  if (j.contains("model_hash")) {
    if (!j["model_hash"].is_string()) throw ParseError("trajectory.model_hash: expected a string");
    f.model_hash = j["model_hash"].get<std::string>();
  }
  if (t.states.size() != t.N + 1)
    throw ParseError("trajectory.x: has " + std::to_string(t.states.size()) +
                     " entries, expected N+1 = " + std::to_string(t.N + 1));
  if (t.actions.size() != t.N)
    throw ParseError("trajectory.a: has " + std::to_string(t.actions.size()) +
                     " entries, expected N = " + std::to_string(t.N));
  return f;
}

TrajectoryFile load_trajectory(const std::filesystem::path& path) {
  return parse_trajectory(read_text_file(path));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace caa
