#pragma once

// A scenario bundles the environment with the two candidate goals, the
// start vertex and the prior over the mover's type, relabeled so that
// index 1 is the type with the larger prior. Distance maps to both goals
// are precomputed once; everything downstream reads them.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpp/errors.hpp"
#include "dpp/graph.hpp"
#include "dpp/rational.hpp"

namespace dpp {

/// Exact belief over the two types. b1 + b2 == 1 always.
struct Belief {
  Rat b1;
  Rat b2;

  static Belief make(Rat b1, Rat b2) {
    if (b1 < 0 || b2 < 0 || b1 + b2 != 1) throw input_error("belief must be a distribution");
    return Belief{std::move(b1), std::move(b2)};
  }
  bool operator==(const Belief&) const = default;
};

template <class W>
struct Scenario {
  WeightedGraph<W> graph;
  VertexId start = 0;
  VertexId goal1 = 0;  // primary: prior.b1 >= prior.b2
  VertexId goal2 = 0;
  Belief prior;
  std::vector<std::optional<W>> dist1;  // d(., goal1)
  std::vector<std::optional<W>> dist2;  // d(., goal2)

  VertexId goal(int type) const { return type == 1 ? goal1 : goal2; }
  const std::vector<std::optional<W>>& dist(int type) const { return type == 1 ? dist1 : dist2; }
  bool is_goal(VertexId v) const { return v == goal1 || v == goal2; }

  const W& d1(VertexId v) const { return require(dist1, v); }
  const W& d2(VertexId v) const { return require(dist2, v); }
  const W& d(int type, VertexId v) const { return type == 1 ? d1(v) : d2(v); }

 private:
  static const W& require(const std::vector<std::optional<W>>& m, VertexId v) {
    if (v < 0 || static_cast<std::size_t>(v) >= m.size())
      throw input_error("vertex id " + std::to_string(v) + " out of range");
    const auto& slot = m[static_cast<std::size_t>(v)];
    if (!slot) throw input_error("vertex " + std::to_string(v) + " missing from distance map");
    return *slot;
  }
};

/// Relabels goals so the higher-prior one is primary. An exact tie keeps
/// the first-listed goal primary. Degenerate priors (an entry of 0 or 1)
/// are rejected.
template <class W>
Scenario<W> make_scenario(WeightedGraph<W> graph, std::array<VertexId, 2> goals, VertexId start,
                          std::array<Rat, 2> prior) {
  if (prior[0] + prior[1] != 1) throw input_error("prior must sum to 1");
  if (prior[0] <= 0 || prior[1] <= 0)
    throw input_error("degenerate type distribution: prior entries must lie in (0,1)");
  Scenario<W> s;
  s.graph = std::move(graph);
  if (prior[0] >= prior[1]) {
    s.goal1 = goals[0];
    s.goal2 = goals[1];
    s.prior = Belief::make(prior[0], prior[1]);
  } else {
    s.goal1 = goals[1];
    s.goal2 = goals[0];
    s.prior = Belief::make(prior[1], prior[0]);
  }
  s.start = start;
  s.dist1 = shortest_distances(s.graph, s.goal1);
  s.dist2 = shortest_distances(s.graph, s.goal2);
  return s;
}

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks every scenario invariant and reports each violation; never
/// repairs anything. Reachability is demanded only on the part of the
/// graph reachable from the start.
template <class W>
ValidationReport validate(const Scenario<W>& s) {
  ValidationReport report;
  const auto n = s.graph.num_vertices();
  auto in_range = [&](VertexId v) { return v >= 0 && v < n; };
  if (!in_range(s.start) || !in_range(s.goal1) || !in_range(s.goal2)) {
    report.violations.push_back("start or goal id out of range");
    return report;
  }
  if (s.goal1 == s.goal2) report.violations.push_back("goals coincide");
  if (s.start == s.goal1 || s.start == s.goal2)
    report.violations.push_back("start coincides with a goal");
  if (s.prior.b1 + s.prior.b2 != 1 || s.prior.b1 <= 0 || s.prior.b2 <= 0)
    report.violations.push_back("prior is not an interior distribution");
  if (s.prior.b1 < s.prior.b2)
    report.violations.push_back("labeling violation: primary goal has the smaller prior");

  const auto reach = reachable_from(s.graph, s.start);
  for (VertexId v = 0; v < n; ++v) {
    if (!reach[static_cast<std::size_t>(v)]) continue;
    if (!s.dist1[static_cast<std::size_t>(v)]) {
      report.violations.push_back("goal 1 unreachable from vertex " + std::to_string(v) +
                                  " which is reachable from start");
      break;
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    if (!reach[static_cast<std::size_t>(v)]) continue;
    if (!s.dist2[static_cast<std::size_t>(v)]) {
      report.violations.push_back("goal 2 unreachable from vertex " + std::to_string(v) +
                                  " which is reachable from start");
      break;
    }
  }
  return report;
}

}  // namespace dpp
