#pragma once

// Weighted directed graphs, exact single-target shortest distances, and
// trajectories. Vertex ids are dense 0..n-1; adjacency lists are kept
// sorted by target id so that every argmin downstream breaks ties in the
// same (lexicographic) order.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "dpp/errors.hpp"
#include "dpp/rational.hpp"

namespace dpp {

using VertexId = std::int32_t;

template <class W>
struct EdgeSpec {
  VertexId from;
  VertexId to;
  W weight;
};

template <class W>
class WeightedGraph {
 public:
  struct Arc {
    VertexId to;
    W weight;
  };

  WeightedGraph() = default;

  WeightedGraph(VertexId num_vertices, std::span<const EdgeSpec<W>> edges) {
    if (num_vertices < 0) throw input_error("negative vertex count");
    out_.resize(static_cast<std::size_t>(num_vertices));
    in_.resize(static_cast<std::size_t>(num_vertices));
    for (const auto& e : edges) {
      check_vertex(e.from);
      check_vertex(e.to);
      if (e.from == e.to) throw input_error("self-loop at vertex " + std::to_string(e.from));
      if (!(e.weight > W(0))) throw input_error("non-positive edge weight");
      out_[static_cast<std::size_t>(e.from)].push_back({e.to, e.weight});
      in_[static_cast<std::size_t>(e.to)].push_back({e.from, e.weight});
      ++num_edges_;
    }
    for (auto& arcs : out_) sort_arcs(arcs);
    for (auto& arcs : in_) sort_arcs(arcs);
  }

  VertexId num_vertices() const { return static_cast<VertexId>(out_.size()); }
  std::size_t num_edges() const { return num_edges_; }

  const std::vector<Arc>& out(VertexId v) const { return out_[check_vertex(v)]; }
  const std::vector<Arc>& in(VertexId v) const { return in_[check_vertex(v)]; }

  std::optional<W> edge_weight(VertexId u, VertexId v) const {
    for (const auto& a : out(u))
      if (a.to == v) return a.weight;
    return std::nullopt;
  }

  std::vector<EdgeSpec<W>> edge_list() const {
    std::vector<EdgeSpec<W>> edges;
    edges.reserve(num_edges_);
    for (VertexId u = 0; u < num_vertices(); ++u)
      for (const auto& a : out_[static_cast<std::size_t>(u)]) edges.push_back({u, a.to, a.weight});
    return edges;
  }

 private:
  std::size_t check_vertex(VertexId v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= out_.size())
      throw input_error("vertex id " + std::to_string(v) + " out of range");
    return static_cast<std::size_t>(v);
  }

  static void sort_arcs(std::vector<Arc>& arcs) {
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.to < b.to; });
    for (std::size_t i = 1; i < arcs.size(); ++i)
      if (arcs[i].to == arcs[i - 1].to) throw input_error("duplicate edge");
  }

  std::vector<std::vector<Arc>> out_;
  std::vector<std::vector<Arc>> in_;
  std::size_t num_edges_ = 0;
};

/// d(v, target) for every vertex; nullopt where target is unreachable.
/// Dijkstra over reversed arcs so distances follow edge directions.
template <class W>
std::vector<std::optional<W>> shortest_distances(const WeightedGraph<W>& g, VertexId target) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  if (target < 0 || static_cast<std::size_t>(target) >= n)
    throw input_error("unknown target vertex " + std::to_string(target));
  std::vector<std::optional<W>> dist(n);
  using Item = std::pair<W, VertexId>;
  auto cmp = [](const Item& a, const Item& b) { return b.first < a.first; };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> heap(cmp);
  dist[static_cast<std::size_t>(target)] = W(0);
  heap.push({W(0), target});
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (!(d == *dist[static_cast<std::size_t>(v)])) continue;  // stale entry
    for (const auto& arc : g.in(v)) {
      W cand = d + arc.weight;
      auto& slot = dist[static_cast<std::size_t>(arc.to)];
      if (!slot || cand < *slot) {
        slot = cand;
        heap.push({cand, arc.to});
      }
    }
  }
  return dist;
}

/// Vertices reachable from `source` along edge directions.
template <class W>
std::vector<bool> reachable_from(const WeightedGraph<W>& g, VertexId source) {
  std::vector<bool> seen(static_cast<std::size_t>(g.num_vertices()), false);
  std::vector<VertexId> stack{source};
  seen[static_cast<std::size_t>(source)] = true;
  while (!stack.empty()) {
    VertexId u = stack.back();
    stack.pop_back();
    for (const auto& a : g.out(u)) {
      if (!seen[static_cast<std::size_t>(a.to)]) {
        seen[static_cast<std::size_t>(a.to)] = true;
        stack.push_back(a.to);
      }
    }
  }
  return seen;
}

/// One shortest path from -> target, lexicographically smallest among
/// shortest paths: at every vertex take the smallest-id neighbor that stays
/// on a shortest path. `dist` must be shortest_distances(g, target).
template <class W>
std::vector<VertexId> lex_shortest_path(const WeightedGraph<W>& g, VertexId from, VertexId target,
                                        const std::vector<std::optional<W>>& dist) {
  if (!dist[static_cast<std::size_t>(from)])
    throw input_error("target unreachable from vertex " + std::to_string(from));
  std::vector<VertexId> nodes{from};
  VertexId u = from;
  while (u != target) {
    const W du = *dist[static_cast<std::size_t>(u)];
    bool advanced = false;
    for (const auto& a : g.out(u)) {  // ascending a.to
      const auto& dv = dist[static_cast<std::size_t>(a.to)];
      if (dv && weight_traits<W>::eq(du, a.weight + *dv)) {
        nodes.push_back(a.to);
        u = a.to;
        advanced = true;
        break;
      }
    }
    if (!advanced) throw contract_error("shortest-path extraction stalled");
  }
  return nodes;
}

/// A node/edge sequence through a graph with running cumulative weight.
template <class W>
class Trajectory {
 public:
  static Trajectory from_nodes(const WeightedGraph<W>& g, std::vector<VertexId> nodes) {
    if (nodes.empty()) throw input_error("empty trajectory");
    Trajectory t;
    t.nodes_ = std::move(nodes);
    t.cumulative_.reserve(t.nodes_.size());
    t.cumulative_.push_back(W(0));
    for (std::size_t i = 1; i < t.nodes_.size(); ++i) {
      auto w = g.edge_weight(t.nodes_[i - 1], t.nodes_[i]);
      if (!w)
        throw input_error("trajectory uses missing edge " + std::to_string(t.nodes_[i - 1]) +
                          "->" + std::to_string(t.nodes_[i]));
      t.cumulative_.push_back(t.cumulative_.back() + *w);
    }
    return t;
  }

  const std::vector<VertexId>& nodes() const { return nodes_; }
  VertexId node(std::size_t t) const { return nodes_[t]; }
  VertexId start() const { return nodes_.front(); }
  VertexId end() const { return nodes_.back(); }

  /// Number of edges (the terminal time T).
  std::size_t steps() const { return nodes_.size() - 1; }

  /// Weight of edge t (1-based step index, matching cumulative_weight).
  W step_weight(std::size_t t) const { return cumulative_[t] - cumulative_[t - 1]; }

  /// Cumulative weight after step t; cumulative_weight(0) == 0.
  W cumulative_weight(std::size_t t) const { return cumulative_[t]; }
  W total_weight() const { return cumulative_.back(); }

  bool operator==(const Trajectory& other) const { return nodes_ == other.nodes_; }

 private:
  std::vector<VertexId> nodes_;
  std::vector<W> cumulative_;
};

/// True iff no vertex repeats.
template <class W>
bool validate_simple(const Trajectory<W>& traj) {
  std::vector<VertexId> seen(traj.nodes());
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

}  // namespace dpp
