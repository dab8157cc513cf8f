#pragma once

// Reproducible 4-connected grid worlds with randomly placed obstacles.
// Cells are vertex ids in row-major order; obstructed cells stay in the
// vertex set but carry no edges. Obstacle layouts are rejection-sampled
// whole-map until the start can reach each goal without crossing the other.

#include <cstdint>
#include <string>
#include <vector>

#include "dpp/errors.hpp"
#include "dpp/graph.hpp"
#include "dpp/rng.hpp"

namespace dpp {

struct Cell {
  int row = 0;
  int col = 0;
  bool operator==(const Cell&) const = default;
};

struct GridSpec {
  int rows = 0;
  int cols = 0;
  double obstacle_density = 0.0;  // fraction of all cells, in [0, 0.5]
  Cell start;
  Cell goal1;
  Cell goal2;
  std::uint64_t seed = 0;
  int max_attempts = 1000;
};

struct GridWorld {
  WeightedGraph<long long> graph;  // unit weights
  int rows = 0;
  int cols = 0;
  std::vector<VertexId> obstacles;  // sorted cell ids
  VertexId start = 0;
  VertexId goal1 = 0;
  VertexId goal2 = 0;
};

inline VertexId cell_id(const GridSpec& spec, const Cell& c) {
  return static_cast<VertexId>(c.row * spec.cols + c.col);
}

namespace detail {

inline bool grid_path_exists(int rows, int cols, const std::vector<bool>& blocked, VertexId from,
                             VertexId to, VertexId avoid) {
  if (from == to) return true;
  std::vector<bool> seen(static_cast<std::size_t>(rows * cols), false);
  std::vector<VertexId> stack{from};
  seen[static_cast<std::size_t>(from)] = true;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    const int r = v / cols;
    const int c = v % cols;
    const int dr[4] = {-1, 1, 0, 0};
    const int dc[4] = {0, 0, -1, 1};
    for (int k = 0; k < 4; ++k) {
      const int nr = r + dr[k];
      const int nc = c + dc[k];
      if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
      const VertexId u = static_cast<VertexId>(nr * cols + nc);
      if (u == avoid || blocked[static_cast<std::size_t>(u)] || seen[static_cast<std::size_t>(u)])
        continue;
      if (u == to) return true;
      seen[static_cast<std::size_t>(u)] = true;
      stack.push_back(u);
    }
  }
  return false;
}

}  // namespace detail

/// Generates the grid world for `spec`. Pure function of the spec: equal
/// specs produce identical graphs. Throws generation_error when no layout
/// satisfying the reachability constraint is found within max_attempts.
inline GridWorld gen_grid(const GridSpec& spec) {
  if (spec.rows <= 0 || spec.cols <= 0) throw input_error("grid dimensions must be positive");
  if (spec.obstacle_density < 0.0 || spec.obstacle_density > 0.5)
    throw input_error("obstacle density must lie in [0, 0.5]");
  auto in_range = [&](const Cell& c) {
    return c.row >= 0 && c.row < spec.rows && c.col >= 0 && c.col < spec.cols;
  };
  if (!in_range(spec.start) || !in_range(spec.goal1) || !in_range(spec.goal2))
    throw input_error("start/goal cell out of range");
  const VertexId start = cell_id(spec, spec.start);
  const VertexId g1 = cell_id(spec, spec.goal1);
  const VertexId g2 = cell_id(spec, spec.goal2);
  if (start == g1 || start == g2 || g1 == g2)
    throw input_error("start and goals must be distinct cells");

  const int total = spec.rows * spec.cols;
  const auto n_obstacles = static_cast<std::size_t>(spec.obstacle_density * total);
  std::vector<VertexId> candidates;
  candidates.reserve(static_cast<std::size_t>(total));
  for (VertexId v = 0; v < total; ++v)
    if (v != start && v != g1 && v != g2) candidates.push_back(v);
  if (n_obstacles > candidates.size())
    throw input_error("obstacle count exceeds available cells");

  SplitMix64 rng(derive_seed(spec.seed, {0x6d61705fULL}));
  for (int attempt = 0; attempt < spec.max_attempts; ++attempt) {
    std::vector<VertexId> pool = candidates;
    rng.shuffle_prefix(pool, n_obstacles);
    std::vector<bool> blocked(static_cast<std::size_t>(total), false);
    for (std::size_t i = 0; i < n_obstacles; ++i) blocked[static_cast<std::size_t>(pool[i])] = true;

    if (!detail::grid_path_exists(spec.rows, spec.cols, blocked, start, g1, g2)) continue;
    if (!detail::grid_path_exists(spec.rows, spec.cols, blocked, start, g2, g1)) continue;

    std::vector<EdgeSpec<long long>> edges;
    for (int r = 0; r < spec.rows; ++r) {
      for (int c = 0; c < spec.cols; ++c) {
        const VertexId v = static_cast<VertexId>(r * spec.cols + c);
        if (blocked[static_cast<std::size_t>(v)]) continue;
        if (c + 1 < spec.cols) {
          const VertexId u = v + 1;
          if (!blocked[static_cast<std::size_t>(u)]) {
            edges.push_back({v, u, 1});
            edges.push_back({u, v, 1});
          }
        }
        if (r + 1 < spec.rows) {
          const VertexId u = v + spec.cols;
          if (!blocked[static_cast<std::size_t>(u)]) {
            edges.push_back({v, u, 1});
            edges.push_back({u, v, 1});
          }
        }
      }
    }
    GridWorld world;
    world.graph = WeightedGraph<long long>(static_cast<VertexId>(total), edges);
    world.rows = spec.rows;
    world.cols = spec.cols;
    world.obstacles.reserve(n_obstacles);
    pool.resize(n_obstacles);
    std::sort(pool.begin(), pool.end());
    world.obstacles = std::move(pool);
    world.start = start;
    world.goal1 = g1;
    world.goal2 = g2;
    return world;
  }
  throw generation_error("no obstacle layout with start->goal paths avoiding the other goal after " +
                         std::to_string(spec.max_attempts) + " attempts");
}

}  // namespace dpp
