#pragma once

// One-sided deceptive path planners used as comparison attackers:
// exaggeration (minimize the observer's summed belief in the true goal)
// and ambiguity (minimize the summed absolute belief gap), both under the
// goal-recognition posterior in defender.hpp.
//
// The posterior depends on the observed prefix only through its cost and
// endpoint, so the objectives decompose over states (vertex, accumulated
// cost). Those states form a DAG (cost strictly increases), and a forward
// reachability pass plus a backward sweep in decreasing accumulated cost
// solves the horizon-bounded problem exactly whenever the accumulated-cost
// values stay enumerable; otherwise costs are binned and the result is
// flagged approximate.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "dpp/defender.hpp"
#include "dpp/errors.hpp"
#include "dpp/graph.hpp"
#include "dpp/scenario.hpp"

namespace dpp {

enum class DeceptionObjective { exaggeration, ambiguity };

inline const char* to_string(DeceptionObjective o) {
  return o == DeceptionObjective::exaggeration ? "exaggeration" : "ambiguity";
}

template <class W>
struct DeceptiveQuery {
  int attacker_type = 2;
  W horizon{};  // maximum total path weight; must be >= d(start, true goal)
  DeceptionObjective objective = DeceptionObjective::exaggeration;
};

template <class W>
struct DeceptiveSolution {
  Trajectory<W> path;
  double objective_value = 0;
  bool simple = true;   // minimizer may be a walk; reported, not repaired
  bool binned = false;  // accumulated costs were quantized (non-integer weights)
};

/// Default horizon: three times the larger start-to-goal distance.
template <class W>
W default_horizon(const Scenario<W>& s, double mult = 3.0) {
  const W dmax = std::max(s.d1(s.start), s.d2(s.start));
  if constexpr (std::is_same_v<W, long long>) {
    return static_cast<long long>(std::floor(mult * static_cast<double>(dmax) + 1e-9));
  } else if constexpr (std::is_same_v<W, Rat>) {
    return rat_from_double(mult) * dmax;
  } else {
    return mult * dmax;
  }
}

template <class W>
DeceptiveSolution<W> solve_deceptive(const Scenario<W>& s, const DeceptiveQuery<W>& query,
                                     std::size_t state_cap = 2000000) {
  if (query.attacker_type != 1 && query.attacker_type != 2)
    throw input_error("attacker type must be 1 or 2");
  const VertexId goal = s.goal(query.attacker_type);
  const W need = s.d(query.attacker_type, s.start);
  if (query.horizon < need)
    throw input_error("infeasible query: horizon smaller than the distance to the true goal");

  struct State {
    VertexId v;
    W acc;
  };
  std::map<std::pair<VertexId, W>, std::size_t> index;
  std::vector<State> states;
  bool binned = false;
  W quantum{};

  auto quantize = [&](const W& a) -> W {
    if (!binned) return a;
    if constexpr (std::is_same_v<W, long long>) {
      return a;  // integer costs are already discrete
    } else {
      const double steps = std::floor(to_double(a) / to_double(quantum));
      return quantum * W(static_cast<long long>(steps));
    }
  };

  // Forward discovery of reachable (vertex, accumulated cost) states.
  auto discover = [&]() -> bool {
    index.clear();
    states.clear();
    std::queue<std::size_t> frontier;
    auto add = [&](VertexId v, const W& acc) -> bool {
      auto key = std::make_pair(v, acc);
      if (index.count(key)) return true;
      if (states.size() >= state_cap) return false;
      index.emplace(key, states.size());
      states.push_back({v, acc});
      frontier.push(states.size() - 1);
      return true;
    };
    if (!add(s.start, W(0))) return false;
    while (!frontier.empty()) {
      const State st = states[frontier.front()];
      frontier.pop();
      if (st.v == goal) continue;  // walks end on first arrival at the true goal
      for (const auto& arc : s.graph.out(st.v)) {
        W acc = st.acc + arc.weight;
        if (acc > query.horizon) continue;
        if (binned) acc = quantize(acc);
        if (acc == st.acc) acc = st.acc + quantum;  // keep the layering strict
        if (!add(arc.to, acc)) return false;
      }
    }
    return true;
  };

  if (!discover()) {
    if constexpr (std::is_same_v<W, long long>) {
      throw input_error("horizon too large: accumulated-cost state space exceeds cap");
    } else {
      binned = true;
      quantum = query.horizon / W(4096);
      if (!(quantum > W(0))) throw input_error("horizon too small to bin");
      if (!discover()) throw input_error("state space exceeds cap even after binning");
    }
  }

  // Stage cost of arriving at (v, acc): the belief term at that prefix.
  auto stage = [&](const State& st) {
    const auto belief = dragan_belief(to_double(st.acc), st.v, s.prior, s);
    const double own = belief[static_cast<std::size_t>(query.attacker_type - 1)];
    const double other = belief[static_cast<std::size_t>(2 - query.attacker_type)];
    return query.objective == DeceptionObjective::exaggeration ? own : std::abs(own - other);
  };

  // Backward sweep in decreasing accumulated cost.
  std::vector<std::size_t> order(states.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (!(states[a].acc == states[b].acc)) return states[b].acc < states[a].acc;
    return states[a].v < states[b].v;
  });
  constexpr double inf = std::numeric_limits<double>::infinity();
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<double> best(states.size(), inf);
  std::vector<std::size_t> succ(states.size(), none);
  for (std::size_t id : order) {
    const State& st = states[id];
    if (st.v == goal) {
      best[id] = stage(st);
      continue;
    }
    double tail = inf;
    std::size_t pick = none;
    for (const auto& arc : s.graph.out(st.v)) {  // ascending arc.to
      W acc = st.acc + arc.weight;
      if (acc > query.horizon) continue;
      if (binned) {
        acc = quantize(acc);
        if (acc == st.acc) acc = st.acc + quantum;
      }
      auto it = index.find(std::make_pair(arc.to, acc));
      if (it == index.end()) continue;
      const std::size_t nxt = it->second;
      if (best[nxt] < tail) {
        tail = best[nxt];
        pick = nxt;
      }
    }
    if (pick != none) {
      best[id] = stage(st) + tail;
      succ[id] = pick;
    }
  }

  const std::size_t start_id = index.at(std::make_pair(s.start, W(0)));
  if (!(best[start_id] < inf)) throw contract_error("deceptive planner found no feasible walk");

  std::vector<VertexId> nodes;
  for (std::size_t id = start_id; id != none; id = succ[id]) {
    nodes.push_back(states[id].v);
    if (states[id].v == goal) break;
  }
  DeceptiveSolution<W> sol{Trajectory<W>::from_nodes(s.graph, std::move(nodes)), best[start_id],
                           true, binned};
  sol.simple = validate_simple(sol.path);
  return sol;
}

}  // namespace dpp
