#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "spanroute/error.hpp"
#include "spanroute/linalg.hpp"

namespace spanroute {

inline constexpr std::size_t kDefaultPathCap = 1'000'000;

struct EdgeSpec {
  int id = 0;
  std::string tail;
  std::string head;
};

struct NetworkSpec {
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
  std::string source;
  std::string destination;
};

struct Edge {
  int id = 0;
  int tail = 0;
  int head = 0;
};

namespace detail {

enum class WalkResult { done, stopped, cap_exceeded };

/// Depth-first enumeration of simple source->destination paths, trying edges
/// in ascending id order, which yields paths in lexicographic edge-sequence
/// order. The visitor gets each complete edge sequence and returns false to
/// stop the walk.
template <typename Visit>
WalkResult walk_simple_paths(const std::vector<std::vector<std::pair<int, int>>>& out, int src,
                             int dst, std::size_t cap, Visit&& visit) {
  std::vector<char> visited(out.size(), 0);
  std::vector<int> edge_seq;
  std::size_t found = 0;
  WalkResult result = WalkResult::done;

  auto dfs = [&](auto&& self, int v) -> bool {
    if (v == dst) {
      if (found == cap) {
        result = WalkResult::cap_exceeded;
        return false;
      }
      ++found;
      if (!visit(static_cast<const std::vector<int>&>(edge_seq))) {
        result = WalkResult::stopped;
        return false;
      }
      return true;
    }
    visited[v] = 1;
    for (const auto& [eid, head] : out[v]) {
      if (visited[head]) continue;
      edge_seq.push_back(eid);
      const bool keep_going = self(self, head);
      edge_seq.pop_back();
      if (!keep_going) {
        visited[v] = 0;
        return false;
      }
    }
    visited[v] = 0;
    return true;
  };
  dfs(dfs, src);
  return result;
}

}  // namespace detail

/// A validated routing network: every edge lies on at least one simple
/// source->destination path, and vertices on no such path have been dropped.
/// Immutable after construction.
class NetworkInstance {
 public:
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
  int source() const { return source_; }
  int destination() const { return destination_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& vertex_name(int v) const { return vertex_names_[v]; }
  const std::vector<std::vector<std::pair<int, int>>>& adjacency() const { return out_; }

  friend NetworkInstance load_network(const NetworkSpec& spec, std::size_t path_cap);

 private:
  std::vector<std::string> vertex_names_;
  std::vector<Edge> edges_;  // indexed by edge id
  std::vector<std::vector<std::pair<int, int>>> out_;
  int source_ = 0;
  int destination_ = 0;
};

inline NetworkInstance load_network(const NetworkSpec& spec,
                                    std::size_t path_cap = kDefaultPathCap) {
  std::unordered_map<std::string, int> index;
  for (const auto& name : spec.vertices) {
    if (name.empty()) fail(Errc::invalid_param, "vertices: empty vertex name");
    if (!index.emplace(name, static_cast<int>(index.size())).second)
      fail(Errc::invalid_param, "vertices: duplicate vertex '" + name + "'");
  }
  auto vertex = [&](const std::string& name, const char* field) {
    auto it = index.find(name);
    if (it == index.end())
      fail(Errc::unknown_vertex, std::string(field) + ": unknown vertex '" + name + "'");
    return it->second;
  };
  const int src = vertex(spec.source, "source");
  const int dst = vertex(spec.destination, "destination");
  if (src == dst) fail(Errc::invalid_param, "source and destination must differ");

  const std::size_t m = spec.edges.size();
  std::vector<char> seen(m, 0);
  std::vector<Edge> edges(m);
  for (const auto& e : spec.edges) {
    if (e.id < 0 || static_cast<std::size_t>(e.id) >= m)
      fail(Errc::invalid_param,
           "edges: edge ids must be consecutive 0..m-1, got id " + std::to_string(e.id));
    if (seen[e.id])
      fail(Errc::duplicate_edge_id, "edges: duplicate edge id " + std::to_string(e.id));
    seen[e.id] = 1;
    edges[e.id] = Edge{e.id, vertex(e.tail, "edges.tail"), vertex(e.head, "edges.head")};
  }

  const int nv = static_cast<int>(index.size());
  std::vector<std::vector<int>> fwd_adj(nv), bwd_adj(nv);
  for (const auto& e : edges) {
    fwd_adj[e.tail].push_back(e.head);
    bwd_adj[e.head].push_back(e.tail);
  }
  auto reach = [nv](const std::vector<std::vector<int>>& adj, int start) {
    std::vector<char> mark(nv, 0);
    std::deque<int> queue{start};
    mark[start] = 1;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int w : adj[v]) {
        if (!mark[w]) {
          mark[w] = 1;
          queue.push_back(w);
        }
      }
    }
    return mark;
  };
  const auto fwd = reach(fwd_adj, src);
  const auto bwd = reach(bwd_adj, dst);
  if (!fwd[dst])
    fail(Errc::no_path_exists, "destination '" + spec.destination + "' unreachable from source");

  for (const auto& e : edges) {
    if (!fwd[e.tail] || !bwd[e.head])
      fail(Errc::edge_off_all_paths,
           "edge " + std::to_string(e.id) + " lies on no source->destination path");
  }

  // Vertices on some source->destination walk; the coverage check below
  // certifies every edge (hence every kept vertex) is on a simple path.
  std::vector<int> remap(nv, -1);
  NetworkInstance net;
  for (int v = 0; v < nv; ++v) {
    if (fwd[v] && bwd[v]) {
      remap[v] = static_cast<int>(net.vertex_names_.size());
      net.vertex_names_.push_back(spec.vertices[v]);
    }
  }
  net.source_ = remap[src];
  net.destination_ = remap[dst];
  net.edges_.reserve(m);
  for (const auto& e : edges) net.edges_.push_back(Edge{e.id, remap[e.tail], remap[e.head]});
  net.out_.resize(net.vertex_names_.size());
  for (const auto& e : net.edges_) net.out_[e.tail].emplace_back(e.id, e.head);
  for (auto& lst : net.out_) std::sort(lst.begin(), lst.end());

  std::vector<char> covered(m, 0);
  std::size_t remaining = m;
  const auto res = detail::walk_simple_paths(
      net.out_, net.source_, net.destination_, path_cap, [&](const std::vector<int>& seq) {
        for (int e : seq) {
          if (!covered[e]) {
            covered[e] = 1;
            --remaining;
          }
        }
        return remaining > 0;
      });
  if (res == detail::WalkResult::cap_exceeded)
    fail(Errc::path_explosion, "path cap " + std::to_string(path_cap) +
                                   " exceeded while validating edge coverage");
  if (remaining > 0) {
    for (std::size_t e = 0; e < m; ++e) {
      if (!covered[e])
        fail(Errc::edge_off_all_paths,
             "edge " + std::to_string(e) + " lies on no simple source->destination path");
    }
  }
  return net;
}

/// A simple path embedded as a 0/1 incidence vector over edge ids.
struct PathVector {
  int id = 0;
  std::vector<std::uint8_t> bits;
  std::vector<int> edges;  // edge ids in source->destination order
};

struct PathSet {
  std::vector<PathVector> paths;
  int dimension = 0;
};

/// All simple source->destination paths in lexicographic edge-sequence order,
/// with the exact rank of their incidence vectors.
inline PathSet enumerate_paths(const NetworkInstance& net, std::size_t cap = kDefaultPathCap) {
  PathSet set;
  const std::size_t m = static_cast<std::size_t>(net.edge_count());
  const auto res = detail::walk_simple_paths(
      net.adjacency(), net.source(), net.destination(), cap, [&](const std::vector<int>& seq) {
        PathVector p;
        p.id = static_cast<int>(set.paths.size());
        p.edges = seq;
        p.bits.assign(m, 0);
        for (int e : seq) p.bits[e] = 1;
        set.paths.push_back(std::move(p));
        return true;
      });
  if (res == detail::WalkResult::cap_exceeded)
    fail(Errc::path_explosion, "more than " + std::to_string(cap) + " simple paths");

  ExactRank rank(m);
  for (const auto& p : set.paths) rank.add_row(p.bits);
  set.dimension = rank.rank();
  return set;
}

/// Total cost of a path under the given per-edge cost vector.
inline double path_cost(const PathVector& path, std::span<const double> edge_costs) {
  if (edge_costs.size() != path.bits.size())
    fail(Errc::dimension_mismatch, "edge cost vector has length " +
                                       std::to_string(edge_costs.size()) + ", expected " +
                                       std::to_string(path.bits.size()));
  double total = 0.0;
  for (int e : path.edges) total += edge_costs[e];
  return total;
}

}  // namespace spanroute
