#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spanroute/cost_model.hpp"
#include "spanroute/error.hpp"
#include "spanroute/graph.hpp"

namespace spanroute {

struct PolicySpec {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;  // insertion order

  bool has(const std::string& key) const {
    for (const auto& [k, v] : params)
      if (k == key) return true;
    return false;
  }
  std::optional<std::string> raw(const std::string& key) const {
    for (const auto& [k, v] : params)
      if (k == key) return v;
    return std::nullopt;
  }
};

/// One experiment: a network with per-edge cost distributions, a horizon, the
/// policies to compare (on common random numbers), seeds, and output prefix.
struct Scenario {
  NetworkSpec network;
  std::vector<EdgeDistribution> dists;  // aligned with network.edges records
  std::int64_t horizon = 0;
  std::vector<std::uint64_t> seeds;
  std::string output_prefix = "results";
  std::vector<PolicySpec> policies;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] inline void parse_fail(int line, const std::string& what) {
  fail(Errc::parse_error, "line " + std::to_string(line) + ": " + what);
}

inline double parse_double(const std::string& s, int line, const std::string& field) {
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    parse_fail(line, field + ": expected a number, got '" + s + "'");
  return v;
}

inline std::int64_t parse_int(const std::string& s, int line, const std::string& field) {
  std::int64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    parse_fail(line, field + ": expected an integer, got '" + s + "'");
  return v;
}

inline std::uint64_t parse_u64(const std::string& s, int line, const std::string& field) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    parse_fail(line, field + ": expected an unsigned integer, got '" + s + "'");
  return v;
}

inline EdgeDistribution parse_dist(const std::vector<std::string>& toks, std::size_t from,
                                   int line) {
  if (from >= toks.size()) parse_fail(line, "dist: missing distribution family");
  const std::string& family = toks[from];
  const std::size_t argc = toks.size() - from - 1;
  auto arg = [&](std::size_t i, const char* what) {
    return parse_double(toks[from + 1 + i], line, std::string("dist ") + family + " " + what);
  };
  EdgeDistribution dist;
  if (family == "bernoulli") {
    if (argc != 2) parse_fail(line, "dist bernoulli takes 2 parameters: p scale");
    dist = BernoulliDist{arg(0, "p"), arg(1, "scale")};
  } else if (family == "uniform") {
    if (argc != 2) parse_fail(line, "dist uniform takes 2 parameters: lo hi");
    dist = UniformDist{arg(0, "lo"), arg(1, "hi")};
  } else if (family == "exponential") {
    if (argc != 1) parse_fail(line, "dist exponential takes 1 parameter: rate");
    dist = ExponentialDist{arg(0, "rate")};
  } else if (family == "pareto") {
    if (argc != 2) parse_fail(line, "dist pareto takes 2 parameters: alpha scale");
    dist = ParetoDist{arg(0, "alpha"), arg(1, "scale")};
  } else {
    parse_fail(line, "dist: unknown family '" + family + "'");
  }
  validate_distribution(dist, "line " + std::to_string(line) + " dist");
  return dist;
}

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline const std::set<std::string>& known_policies() {
  static const std::set<std::string> names{"dsee-star",  "dsee-prime", "dsee-heavy",
                                           "solo-epoch", "naive-dsee", "naive-ucb",
                                           "oracle"};
  return names;
}

inline void check_policy_params(const PolicySpec& p) {
  static const std::set<std::string> numeric{"b", "c", "w", "v", "q", "t0"};
  auto allowed = [&]() -> std::set<std::string> {
    if (p.name == "dsee-star") return {"w", "b", "c"};
    if (p.name == "dsee-prime") return {"f"};
    if (p.name == "dsee-heavy") return {"v", "q"};
    if (p.name == "solo-epoch") return {"t0", "b"};
    if (p.name == "naive-dsee") return {"w"};
    return {};
  }();
  for (const auto& [k, v] : p.params) {
    if (!allowed.count(k))
      fail(Errc::invalid_param, "policy " + p.name + ": parameter '" + k + "' not accepted");
    if (numeric.count(k)) {
      double val = 0.0;
      const auto res = std::from_chars(v.data(), v.data() + v.size(), val);
      if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        fail(Errc::invalid_param, "policy " + p.name + ": parameter '" + k +
                                      "' must be numeric, got '" + v + "'");
    }
  }
  auto number = [&](const char* k) -> std::optional<double> {
    const auto r = p.raw(k);
    if (!r) return std::nullopt;
    return std::strtod(r->c_str(), nullptr);
  };
  if (p.name == "dsee-star") {
    const bool direct = p.has("w");
    const bool derived = p.has("b") && p.has("c");
    if (!direct && !derived)
      fail(Errc::missing_field, "policy dsee-star requires w or the (b, c) pair");
    if (direct && (p.has("b") || p.has("c")))
      fail(Errc::invalid_param, "policy dsee-star: give either w or (b, c), not both");
    if (direct && !(*number("w") > 0.0))
      fail(Errc::invalid_param, "policy dsee-star: w must be positive");
  } else if (p.name == "dsee-prime") {
    if (const auto f = p.raw("f"); f && *f != "loglog")
      fail(Errc::invalid_param, "policy dsee-prime: f must be 'loglog'");
  } else if (p.name == "dsee-heavy") {
    if (!p.has("v") || !p.has("q"))
      fail(Errc::missing_field, "policy dsee-heavy requires v and q");
    if (!(*number("v") > 0.0)) fail(Errc::invalid_param, "policy dsee-heavy: v must be positive");
    if (!(*number("q") > 1.0)) fail(Errc::invalid_param, "policy dsee-heavy: q must exceed 1");
  } else if (p.name == "solo-epoch") {
    if (const auto t0 = number("t0")) {
      if (!(*t0 >= 1.0) || *t0 != std::floor(*t0))
        fail(Errc::invalid_param, "policy solo-epoch: t0 must be a positive integer");
    }
    if (const auto b = number("b"); b && !(*b > 0.0))
      fail(Errc::invalid_param, "policy solo-epoch: b must be positive");
  } else if (p.name == "naive-dsee") {
    if (!p.has("w")) fail(Errc::missing_field, "policy naive-dsee requires w");
    if (!(*number("w") > 0.0)) fail(Errc::invalid_param, "policy naive-dsee: w must be positive");
  }
}

}  // namespace detail

/// Parses the line-oriented scenario format. Field names: vertices, edges
/// (records with id, tail, head, dist), source, destination, horizon, seeds,
/// output, policy, policy_params. '#' starts a comment. Defaults: 50 seeds
/// from base 1, output prefix "results".
inline Scenario parse_scenario(std::istream& in) {
  using namespace detail;
  Scenario sc;
  sc.output_prefix.clear();

  bool in_edges = false;
  bool saw_vertices = false, saw_edges = false, saw_source = false, saw_destination = false,
       saw_horizon = false, saw_seeds = false, saw_output = false;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '-') {
      if (!in_edges) parse_fail(line_no, "edge record outside an edges block");
      const auto toks = tokens(line.substr(1));
      if (toks.size() < 8 || toks[0] != "id:" || toks[2] != "tail:" || toks[4] != "head:" ||
          toks[6] != "dist:")
        parse_fail(line_no, "edge records look like '- id: 0 tail: s head: a dist: ...'");
      EdgeSpec e;
      e.id = static_cast<int>(parse_int(toks[1], line_no, "id"));
      e.tail = toks[3];
      e.head = toks[5];
      sc.network.edges.push_back(std::move(e));
      sc.dists.push_back(parse_dist(toks, 7, line_no));
      continue;
    }

    const auto colon = line.find(':');
    if (colon == std::string::npos) parse_fail(line_no, "expected 'key: value'");
    const std::string key = trim(line.substr(0, colon));
    const std::string value = trim(line.substr(colon + 1));
    in_edges = false;

    if (key == "vertices") {
      if (saw_vertices) parse_fail(line_no, "duplicate field 'vertices'");
      saw_vertices = true;
      sc.network.vertices = tokens(value);
      if (sc.network.vertices.empty()) parse_fail(line_no, "vertices: empty list");
    } else if (key == "edges") {
      if (saw_edges) parse_fail(line_no, "duplicate field 'edges'");
      saw_edges = true;
      if (!value.empty()) parse_fail(line_no, "edges: records go on following '- ...' lines");
      in_edges = true;
    } else if (key == "source") {
      if (saw_source) parse_fail(line_no, "duplicate field 'source'");
      saw_source = true;
      const auto toks = tokens(value);
      if (toks.size() != 1) parse_fail(line_no, "source: expected one vertex name");
      sc.network.source = toks[0];
    } else if (key == "destination") {
      if (saw_destination) parse_fail(line_no, "duplicate field 'destination'");
      saw_destination = true;
      const auto toks = tokens(value);
      if (toks.size() != 1) parse_fail(line_no, "destination: expected one vertex name");
      sc.network.destination = toks[0];
    } else if (key == "horizon") {
      if (saw_horizon) parse_fail(line_no, "duplicate field 'horizon'");
      saw_horizon = true;
      sc.horizon = parse_int(value, line_no, "horizon");
      if (sc.horizon < 1) fail(Errc::invalid_param, "horizon must be >= 1");
    } else if (key == "seeds") {
      if (saw_seeds) parse_fail(line_no, "duplicate field 'seeds'");
      saw_seeds = true;
      const auto toks = tokens(value);
      if (toks.size() == 4 && toks[0] == "base" && toks[2] == "count") {
        const std::uint64_t base = parse_u64(toks[1], line_no, "seeds base");
        const std::int64_t count = parse_int(toks[3], line_no, "seeds count");
        if (count < 1 || count > 1'000'000)
          fail(Errc::invalid_param, "seeds count must be in [1, 1000000]");
        for (std::int64_t i = 0; i < count; ++i)
          sc.seeds.push_back(base + static_cast<std::uint64_t>(i));
      } else if (toks.size() >= 2 && toks[0] == "list") {
        for (std::size_t i = 1; i < toks.size(); ++i)
          sc.seeds.push_back(parse_u64(toks[i], line_no, "seeds list"));
      } else {
        parse_fail(line_no, "seeds: expected 'base <seed> count <n>' or 'list <seed>...'");
      }
    } else if (key == "output") {
      if (saw_output) parse_fail(line_no, "duplicate field 'output'");
      saw_output = true;
      if (value.empty()) parse_fail(line_no, "output: empty prefix");
      sc.output_prefix = value;
    } else if (key == "policy") {
      const auto toks = tokens(value);
      if (toks.size() != 1) parse_fail(line_no, "policy: expected one policy name");
      if (!detail::known_policies().count(toks[0]))
        fail(Errc::unknown_policy, "line " + std::to_string(line_no) + ": unknown policy '" +
                                       toks[0] + "'");
      sc.policies.push_back(PolicySpec{toks[0], {}});
    } else if (key == "policy_params") {
      if (sc.policies.empty()) parse_fail(line_no, "policy_params before any policy");
      const auto toks = tokens(value);
      if (toks.empty() || toks.size() % 2 != 0)
        parse_fail(line_no, "policy_params: expected 'name value' pairs");
      auto& pol = sc.policies.back();
      for (std::size_t i = 0; i < toks.size(); i += 2) {
        if (pol.has(toks[i])) parse_fail(line_no, "duplicate parameter '" + toks[i] + "'");
        pol.params.emplace_back(toks[i], toks[i + 1]);
      }
    } else {
      parse_fail(line_no, "unknown field '" + key + "'");
    }
  }

  if (!saw_vertices) fail(Errc::missing_field, "vertices");
  if (!saw_edges || sc.network.edges.empty()) fail(Errc::missing_field, "edges");
  if (!saw_source) fail(Errc::missing_field, "source");
  if (!saw_destination) fail(Errc::missing_field, "destination");
  if (!saw_horizon) fail(Errc::missing_field, "horizon");
  if (sc.policies.empty()) fail(Errc::missing_field, "policy");
  if (sc.seeds.empty()) {
    for (std::uint64_t i = 0; i < 50; ++i) sc.seeds.push_back(1 + i);
  }
  if (sc.output_prefix.empty()) sc.output_prefix = "results";
  for (auto& p : sc.policies) detail::check_policy_params(p);
  return sc;
}

inline Scenario parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, "cannot open scenario file '" + path + "'");
  return parse_scenario(in);
}

/// Canonical scenario text; parsing it back yields an equivalent Scenario.
inline std::string print_scenario(const Scenario& sc) {
  using detail::format_number;
  std::ostringstream out;
  out << "vertices:";
  for (const auto& v : sc.network.vertices) out << ' ' << v;
  out << "\nedges:\n";
  for (std::size_t i = 0; i < sc.network.edges.size(); ++i) {
    const auto& e = sc.network.edges[i];
    out << "  - id: " << e.id << " tail: " << e.tail << " head: " << e.head << " dist: ";
    std::visit(
        [&](const auto& d) {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, BernoulliDist>)
            out << "bernoulli " << format_number(d.p) << ' ' << format_number(d.scale);
          else if constexpr (std::is_same_v<T, UniformDist>)
            out << "uniform " << format_number(d.lo) << ' ' << format_number(d.hi);
          else if constexpr (std::is_same_v<T, ExponentialDist>)
            out << "exponential " << format_number(d.rate);
          else
            out << "pareto " << format_number(d.alpha) << ' ' << format_number(d.scale);
        },
        sc.dists[i]);
    out << '\n';
  }
  out << "source: " << sc.network.source << '\n';
  out << "destination: " << sc.network.destination << '\n';
  out << "horizon: " << sc.horizon << '\n';
  out << "seeds: list";
  for (const auto s : sc.seeds) out << ' ' << s;
  out << '\n';
  out << "output: " << sc.output_prefix << '\n';
  for (const auto& p : sc.policies) {
    out << "policy: " << p.name << '\n';
    if (!p.params.empty()) {
      out << "policy_params:";
      for (const auto& [k, v] : p.params) out << ' ' << k << ' ' << v;
      out << '\n';
    }
  }
  return out.str();
}

/// SPANROUTE_SEED support: rebases the seed list at the given value, keeping
/// the replication count.
inline void apply_seed_override(Scenario& sc, const std::string& value) {
  std::uint64_t base = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), base);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
    fail(Errc::invalid_param, "SPANROUTE_SEED must be an unsigned integer, got '" + value + "'");
  const std::size_t n = sc.seeds.size();
  sc.seeds.clear();
  for (std::size_t i = 0; i < n; ++i) sc.seeds.push_back(base + i);
}

}  // namespace spanroute
