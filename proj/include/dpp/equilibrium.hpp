#pragma once

// Equilibrium construction.
//
// The secondary mover's best response to the equilibrium defender is found
// by least-cost search over states (vertex, progress value): the progress
// value can only take the finitely many distance-to-primary-goal values at
// or below its initial level, and a step of weight w that moves progress
// from c to c' costs the mover exactly w - (c - c'), the expected
// allocation to its goal on that step. Goals are absorbing; the terminal
// charge is the remaining distance to the secondary goal. Transition costs
// are nonnegative because distances are 1-Lipschitz along edges.
//
// The resulting path splits into three phases by how the defender reacts
// along it (all mass on the primary goal / mixed / all mass on the
// secondary goal). The primary mover rides the path through phase I or
// phase II and then branches off on a shortest path to its goal; mixing
// between the two branch points with odds secondary-prior : rest makes the
// defender's reactions greedy against the induced posterior at every
// on-support history.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dpp/defender.hpp"
#include "dpp/errors.hpp"
#include "dpp/graph.hpp"
#include "dpp/scenario.hpp"

namespace dpp {

template <class W>
struct EquilibriumPath {
  Trajectory<W> path;
  W secondary_cost;  // expected allocation to goal2 along the path + terminal distance
};

/// Step indices closing phases I and II along the secondary path:
/// steps 1..phase1_end are fully allocated to goal1, steps in
/// (phase1_end, phase2_end] are contested, later steps go to goal2.
/// Empty phases have zero duration.
struct PhaseBoundaries {
  std::size_t phase1_end = 0;
  std::size_t phase2_end = 0;
  std::size_t total_steps = 0;
};

template <class W>
struct SupportPath {
  Trajectory<W> path;
  Rat prob;
};

/// Distribution over supported trajectories per mover type.
template <class W>
struct MixedStrategy {
  std::vector<SupportPath<W>> primary;
  std::vector<SupportPath<W>> secondary;

  const std::vector<SupportPath<W>>& support(int type) const {
    return type == 1 ? primary : secondary;
  }
};

template <class W>
struct StrategyProfile {
  std::string defender_id;  // "sigma_star" is the equilibrium defender
  MixedStrategy<W> attacker;
};

namespace detail {

template <class W>
class ProgressStateSpace {
 public:
  explicit ProgressStateSpace(const Scenario<W>& s) : scenario_(s) {
    const auto n = static_cast<std::size_t>(s.graph.num_vertices());
    reach_ = reachable_from(s.graph, s.start);
    c0_ = s.d1(s.start);
    for (std::size_t v = 0; v < n; ++v) {
      if (!reach_[v] || !s.dist1[v]) continue;
      if (*s.dist1[v] <= c0_) cvals_.push_back(*s.dist1[v]);
    }
    cvals_.push_back(c0_);
    std::sort(cvals_.begin(), cvals_.end());
    cvals_.erase(std::unique(cvals_.begin(), cvals_.end()), cvals_.end());
    n_ = n;
  }

  std::size_t rank(const W& c) const {
    auto it = std::lower_bound(cvals_.begin(), cvals_.end(), c);
    if (it == cvals_.end() || !(*it == c)) throw contract_error("unknown progress value");
    return static_cast<std::size_t>(it - cvals_.begin());
  }

  std::size_t id(VertexId v, std::size_t rank) const {
    return static_cast<std::size_t>(v) * cvals_.size() + rank;
  }
  std::size_t size() const { return n_ * cvals_.size(); }
  std::size_t ranks() const { return cvals_.size(); }
  const W& cval(std::size_t r) const { return cvals_[r]; }
  bool reachable(VertexId v) const { return reach_[static_cast<std::size_t>(v)]; }
  const W& c0() const { return c0_; }

  /// Progress after arriving at u with prior progress c, and the search
  /// cost of that transition.
  std::pair<W, W> advance(const W& c, VertexId u, const W& weight) const {
    W cu = update_progress(c, u, scenario_.dist1);
    W trans = weight - (c - cu);
    if (trans < W(0)) throw contract_error("negative augmented transition cost");
    return {std::move(cu), std::move(trans)};
  }

 private:
  const Scenario<W>& scenario_;
  std::vector<bool> reach_;
  std::vector<W> cvals_;
  W c0_;
  std::size_t n_ = 0;
};

}  // namespace detail

/// Best-response path for the secondary mover against the equilibrium
/// defender: minimizes expected allocation to goal2 plus the terminal
/// distance, over paths from start that end at either goal without passing
/// through the other. Ties resolved by fewer steps, then lexicographic
/// node order.
template <class W>
EquilibriumPath<W> solve_secondary(const Scenario<W>& s) {
  if (s.is_goal(s.start)) throw input_error("start coincides with a goal");
  detail::ProgressStateSpace<W> space(s);
  const std::size_t nstates = space.size();

  std::vector<std::optional<W>> value(nstates);
  std::vector<long long> steps(nstates, 0);

  struct Rev {
    std::size_t from;
    W cost;
  };
  std::vector<std::vector<Rev>> radj(nstates);
  for (VertexId v = 0; v < s.graph.num_vertices(); ++v) {
    if (!space.reachable(v) || s.is_goal(v)) continue;
    const auto& dv = s.dist1[static_cast<std::size_t>(v)];
    if (!dv) continue;
    for (std::size_t r = 0; r < space.ranks(); ++r) {
      if (space.cval(r) > *dv) break;  // ranks ascend; invalid beyond d(v, goal1)
      const std::size_t from = space.id(v, r);
      for (const auto& arc : s.graph.out(v)) {
        auto [cu, trans] = space.advance(space.cval(r), arc.to, arc.weight);
        radj[space.id(arc.to, space.rank(cu))].push_back({from, std::move(trans)});
      }
    }
  }

  using Key = std::pair<W, long long>;
  using Item = std::pair<Key, std::size_t>;
  auto cmp = [](const Item& a, const Item& b) { return b.first < a.first; };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> heap(cmp);

  auto seed_goal = [&](VertexId g, const W& terminal) {
    const auto& dg = s.dist1[static_cast<std::size_t>(g)];
    if (!space.reachable(g) || !dg) return;
    for (std::size_t r = 0; r < space.ranks(); ++r) {
      if (space.cval(r) > *dg) break;
      const std::size_t id = space.id(g, r);
      value[id] = terminal;
      heap.push({{terminal, 0}, id});
    }
  };
  seed_goal(s.goal2, W(0));
  seed_goal(s.goal1, s.d2(s.goal1));

  while (!heap.empty()) {
    auto [key, id] = heap.top();
    heap.pop();
    if (!value[id] || !(key.first == *value[id]) || key.second != steps[id]) continue;
    for (const auto& rev : radj[id]) {
      Key cand{key.first + rev.cost, key.second + 1};
      auto& slot = value[rev.from];
      if (!slot || cand < Key{*slot, steps[rev.from]}) {
        slot = cand.first;
        steps[rev.from] = cand.second;
        heap.push({cand, rev.from});
      }
    }
  }

  const std::size_t start_state = space.id(s.start, space.rank(space.c0()));
  if (!value[start_state]) throw input_error("no goal reachable from start");

  // Forward extraction: repeatedly take the smallest next vertex that
  // preserves optimality of (cost, steps).
  std::vector<VertexId> nodes{s.start};
  W c = space.c0();
  std::size_t cur = start_state;
  while (!s.is_goal(nodes.back())) {
    bool advanced = false;
    for (const auto& arc : s.graph.out(nodes.back())) {  // ascending ids
      auto [cu, trans] = space.advance(c, arc.to, arc.weight);
      const std::size_t tgt = space.id(arc.to, space.rank(cu));
      if (!value[tgt]) continue;
      if (*value[cur] == trans + *value[tgt] && steps[cur] == steps[tgt] + 1) {
        nodes.push_back(arc.to);
        c = cu;
        cur = tgt;
        advanced = true;
        break;
      }
    }
    if (!advanced) throw contract_error("secondary path extraction stalled");
  }

  EquilibriumPath<W> result{Trajectory<W>::from_nodes(s.graph, std::move(nodes)),
                            *value[start_state]};
  if (!validate_simple(result.path)) throw contract_error("secondary path is not simple");
  return result;
}

/// Splits the secondary path into phases by the defender's reaction.
template <class W>
PhaseBoundaries segment_phases(const Trajectory<W>& xi2, const Scenario<W>& s) {
  const std::size_t total = xi2.steps();
  std::vector<bool> full(total + 1, false), zero(total + 1, false);
  W c = s.d1(xi2.start());
  for (std::size_t t = 1; t <= total; ++t) {
    const W c_new = update_progress(c, xi2.node(t), s.dist1);
    const W w = xi2.step_weight(t);
    full[t] = weight_traits<W>::eq(c - c_new, w);
    zero[t] = weight_traits<W>::eq(c_new, c);
    c = c_new;
  }
  PhaseBoundaries pb;
  pb.total_steps = total;
  while (pb.phase1_end + 1 <= total && full[pb.phase1_end + 1]) ++pb.phase1_end;
  if (!zero[total]) {
    pb.phase2_end = total;
  } else {
    for (std::size_t t = total; t >= 1; --t) {
      if (!zero[t]) {
        pb.phase2_end = t;
        break;
      }
    }
  }
  if (pb.phase2_end < pb.phase1_end) throw contract_error("phase boundaries out of order");
  return pb;
}

namespace detail {

/// Prefix of xi2 up to step t, extended by a lexicographic shortest path to
/// goal1 and cut at the first goal reached.
template <class W>
Trajectory<W> branch_path(const Trajectory<W>& xi2, std::size_t t, const Scenario<W>& s) {
  std::vector<VertexId> nodes(xi2.nodes().begin(), xi2.nodes().begin() + static_cast<long>(t) + 1);
  if (!s.is_goal(nodes.back())) {
    auto suffix = lex_shortest_path(s.graph, nodes.back(), s.goal1, s.dist1);
    for (std::size_t i = 1; i < suffix.size(); ++i) {
      nodes.push_back(suffix[i]);
      if (s.is_goal(suffix[i])) break;  // the game ends at the first goal visit
    }
  }
  return Trajectory<W>::from_nodes(s.graph, std::move(nodes));
}

}  // namespace detail

/// The two primary-mover paths: follow the secondary path through phase I
/// (resp. phase II), then branch onto a shortest path to goal1. Branching
/// at the last step keeps the whole secondary path.
template <class W>
std::pair<Trajectory<W>, Trajectory<W>> build_primary_paths(const Trajectory<W>& xi2,
                                                            const PhaseBoundaries& pb,
                                                            const Scenario<W>& s) {
  return {detail::branch_path(xi2, pb.phase1_end, s), detail::branch_path(xi2, pb.phase2_end, s)};
}

/// Mixing weights (early branch, late branch) = (1 - b2/b1, b2/b1).
inline std::pair<Rat, Rat> mixing_probabilities(const Belief& prior) {
  if (prior.b1 < prior.b2) throw contract_error("scenario not canonical: b1 < b2");
  Rat late = prior.b2 / prior.b1;
  return {Rat(1) - late, late};
}

/// Bayes posterior over types after observing `prefix`, under a mixed
/// strategy: P(prefix | type) sums the probabilities of supported paths
/// extending it. Prefixes off every supported path have no Bayes posterior
/// and yield nullopt ("unspecified").
template <class W>
std::optional<Belief> induced_beliefs(const MixedStrategy<W>& mixed, const Belief& prior,
                                      std::span<const VertexId> prefix) {
  auto mass = [&](const std::vector<SupportPath<W>>& support) {
    Rat total(0);
    for (const auto& sp : support) {
      const auto& nodes = sp.path.nodes();
      if (nodes.size() < prefix.size()) continue;
      if (std::equal(prefix.begin(), prefix.end(), nodes.begin())) total += sp.prob;
    }
    return total;
  };
  const Rat p1 = mass(mixed.primary);
  const Rat p2 = mass(mixed.secondary);
  const Rat den = prior.b1 * p1 + prior.b2 * p2;
  if (den == 0) return std::nullopt;
  return Belief{prior.b1 * p1 / den, prior.b2 * p2 / den};
}

/// Posterior after each step along `traj` (index t = prefix of length t).
template <class W>
std::vector<std::optional<Belief>> belief_trace(const MixedStrategy<W>& mixed, const Belief& prior,
                                                const Trajectory<W>& traj) {
  std::vector<std::optional<Belief>> trace;
  trace.reserve(traj.steps() + 1);
  for (std::size_t t = 0; t <= traj.steps(); ++t)
    trace.push_back(induced_beliefs(mixed, prior, std::span(traj.nodes().data(), t + 1)));
  return trace;
}

template <class W>
struct EquilibriumSolution {
  EquilibriumPath<W> secondary;
  PhaseBoundaries phases;
  Trajectory<W> primary_early;  // branches at the end of phase I
  Trajectory<W> primary_late;   // branches at the end of phase II
  Rat prob_early;
  Rat prob_late;

  /// Support per type; identical primary branches merge into one entry.
  MixedStrategy<W> strategy() const {
    MixedStrategy<W> m;
    if (primary_early == primary_late) {
      m.primary.push_back({primary_early, Rat(1)});
    } else {
      m.primary.push_back({primary_early, prob_early});
      m.primary.push_back({primary_late, prob_late});
    }
    m.secondary.push_back({secondary.path, Rat(1)});
    return m;
  }

  StrategyProfile<W> profile() const { return {"sigma_star", strategy()}; }
};

template <class W>
EquilibriumSolution<W> solve_equilibrium(const Scenario<W>& s) {
  EquilibriumSolution<W> sol{solve_secondary(s), {}, Trajectory<W>(), Trajectory<W>(), Rat(0),
                             Rat(0)};
  sol.phases = segment_phases(sol.secondary.path, s);
  auto [early, late] = build_primary_paths(sol.secondary.path, sol.phases, s);
  sol.primary_early = std::move(early);
  sol.primary_late = std::move(late);
  std::tie(sol.prob_early, sol.prob_late) = mixing_probabilities(s.prior);
  return sol;
}

}  // namespace dpp
