#pragma once

// Deliberately naive reference implementations for small instances.
// Depth-first enumeration of all simple start-to-goal paths (goals absorb)
// and exhaustive best-response search over them. Ground truth for the
// solvers; not built for more than ~12 vertices.

#include <cstddef>
#include <utility>
#include <vector>

#include "dpp/errors.hpp"
#include "dpp/evaluate.hpp"
#include "dpp/scenario.hpp"

namespace dpp {

struct EnumerationBudget {
  VertexId max_vertices = 12;
  std::size_t max_paths = 2000000;
};

/// Every simple path from start that terminates at either goal without
/// passing through the other one en route. Neighbors are explored in
/// ascending id order, so the output order (and any argmin over it) is
/// deterministic and lexicographic.
template <class W>
std::vector<Trajectory<W>> enumerate_simple_paths(const Scenario<W>& s,
                                                  const EnumerationBudget& budget = {}) {
  if (s.graph.num_vertices() > budget.max_vertices)
    throw budget_error("graph exceeds enumeration vertex budget");
  std::vector<Trajectory<W>> out;
  std::vector<VertexId> stack{s.start};
  std::vector<bool> on_path(static_cast<std::size_t>(s.graph.num_vertices()), false);
  on_path[static_cast<std::size_t>(s.start)] = true;

  auto dfs = [&](auto&& self, VertexId v) -> void {
    for (const auto& arc : s.graph.out(v)) {
      if (on_path[static_cast<std::size_t>(arc.to)]) continue;
      stack.push_back(arc.to);
      if (s.is_goal(arc.to)) {
        if (out.size() >= budget.max_paths)
          throw budget_error("simple-path enumeration exceeded max_paths");
        out.push_back(Trajectory<W>::from_nodes(s.graph, stack));
      } else {
        on_path[static_cast<std::size_t>(arc.to)] = true;
        self(self, arc.to);
        on_path[static_cast<std::size_t>(arc.to)] = false;
      }
      stack.pop_back();
    }
  };
  if (!s.is_goal(s.start)) dfs(dfs, s.start);
  return out;
}

/// Exhaustive best response of one mover type to a defender policy:
/// the enumerated path with minimum exact cost (first hit wins ties, which
/// is the lexicographically smallest one).
template <class W>
std::pair<Trajectory<W>, field_of<W>> brute_best_response(const Scenario<W>& s,
                                                          const DefenderPolicy<W>& policy,
                                                          int type,
                                                          const EnumerationBudget& budget = {}) {
  auto paths = enumerate_simple_paths(s, budget);
  if (paths.empty()) throw input_error("no feasible path to a goal");
  const Trajectory<W>* best = nullptr;
  field_of<W> best_cost{};
  for (const auto& p : paths) {
    auto cost = path_cost(s, policy, p, type);
    if (!best || cost < best_cost) {
      best = &p;
      best_cost = cost;
    }
  }
  return {*best, best_cost};
}

}  // namespace dpp
