#pragma once

// Defender-side strategies. The equilibrium strategy allocates to the
// primary goal in proportion to the new progress the mover just made toward
// it, where progress is the minimum distance to the primary goal reached so
// far. The alternative strategy forms a goal-recognition posterior from the
// observed path cost and allocates greedily.

#include <array>
#include <cmath>
#include <string>
#include <variant>

#include "dpp/errors.hpp"
#include "dpp/scenario.hpp"

namespace dpp {

/// c' = min(c_prev, d(node, goal1)). Non-increasing along any trajectory.
template <class W>
W update_progress(const W& c_prev, VertexId node, const std::vector<std::optional<W>>& dist1) {
  if (node < 0 || static_cast<std::size_t>(node) >= dist1.size())
    throw input_error("vertex id " + std::to_string(node) + " out of range");
  const auto& d = dist1[static_cast<std::size_t>(node)];
  if (!d) throw input_error("vertex " + std::to_string(node) + " missing from distance map");
  return *d < c_prev ? *d : c_prev;
}

/// One-step allocation distribution over {goal1, goal2}.
template <class W>
struct Allocation {
  field_of<W> p1;
  field_of<W> p2;
};

/// Equilibrium allocation for a step of weight w that moves the progress
/// value from c_prev to c_new: P(goal1) = (c_prev - c_new) / w. Markovian in
/// (c_prev, edge); the probability mass on goal1 times w equals exactly the
/// progress decrement.
template <class W>
Allocation<W> sigma_star(const W& c_prev, const W& c_new, const W& weight) {
  if (!(weight > W(0))) throw input_error("edge weight must be positive");
  using F = field_of<W>;
  F p1 = (to_field(c_prev) - to_field(c_new)) / to_field(weight);
  if (p1 < F(0) || p1 > F(1)) throw contract_error("progress decrement outside [0, w]");
  return Allocation<W>{p1, F(1) - p1};
}

/// Goal-recognition posterior from the observed prefix cost and current
/// node: b_i proportional to exp(-(prefix_cost + d(node,g_i) - d(start,g_i)))
/// times the prior. Computed in log space with max subtraction; long
/// detours drive the exponents far negative.
template <class W>
std::array<double, 2> dragan_belief(double prefix_cost, VertexId node, const Belief& prior,
                                    const Scenario<W>& s) {
  const double e1 = -(prefix_cost + to_double(s.d1(node)) - to_double(s.d1(s.start)));
  const double e2 = -(prefix_cost + to_double(s.d2(node)) - to_double(s.d2(s.start)));
  const double l1 = e1 + std::log(to_double(prior.b1));
  const double l2 = e2 + std::log(to_double(prior.b2));
  const double m = std::max(l1, l2);
  const double w1 = std::exp(l1 - m);
  const double w2 = std::exp(l2 - m);
  return {w1 / (w1 + w2), w2 / (w1 + w2)};
}

/// Greedy allocation: all mass on the strictly larger belief; an exact tie
/// goes to goal1 deterministically.
inline int greedy_goal(double b1, double b2, double tol = 1e-9) {
  if (b1 + tol >= b2) return 1;
  return 2;
}
inline int greedy_goal(const Rat& b1, const Rat& b2) { return b1 >= b2 ? 1 : 2; }

// ---------------------------------------------------------------------------
// Step policies. A policy walks a trajectory one edge at a time and yields
// the allocation distribution for each step, as a deterministic function of
// the observed prefix. That is all the payoff evaluator needs.

template <class W>
struct SigmaStarPolicy {
  const Scenario<W>* scenario;

  struct State {
    W progress;
  };
  State init() const { return State{scenario->d1(scenario->start)}; }

  Allocation<W> step(State& st, VertexId to, const W& weight) const {
    const W c_new = update_progress(st.progress, to, scenario->dist1);
    auto alloc = sigma_star(st.progress, c_new, weight);
    st.progress = c_new;
    return alloc;
  }
};

template <class W>
struct GreedyDraganPolicy {
  const Scenario<W>* scenario;

  struct State {
    double prefix_cost;
  };
  State init() const { return State{0.0}; }

  Allocation<W> step(State& st, VertexId to, const W& weight) const {
    st.prefix_cost += to_double(weight);
    const auto belief = dragan_belief(st.prefix_cost, to, scenario->prior, *scenario);
    using F = field_of<W>;
    const bool primary = greedy_goal(belief[0], belief[1]) == 1;
    return Allocation<W>{F(primary ? 1 : 0), F(primary ? 0 : 1)};
  }
};

/// Degenerate policy that always allocates to one goal; test aid.
template <class W>
struct FixedGoalPolicy {
  int goal = 1;

  struct State {};
  State init() const { return {}; }
  Allocation<W> step(State&, VertexId, const W&) const {
    using F = field_of<W>;
    return Allocation<W>{F(goal == 1 ? 1 : 0), F(goal == 1 ? 0 : 1)};
  }
};

template <class W>
using DefenderPolicy = std::variant<SigmaStarPolicy<W>, GreedyDraganPolicy<W>, FixedGoalPolicy<W>>;

/// Resolves the policy identifiers used in experiment configs.
template <class W>
DefenderPolicy<W> make_defender(const std::string& name, const Scenario<W>& s) {
  if (name == "sigma_star") return SigmaStarPolicy<W>{&s};
  if (name == "greedy_dragan") return GreedyDraganPolicy<W>{&s};
  throw input_error("unknown defender policy '" + name + "'");
}

}  // namespace dpp
