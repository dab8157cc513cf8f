#pragma once

// Payoff evaluation. Both supported defender policies are deterministic
// functions of the observed prefix, so expected costs against a finite
// path mixture reduce to an exact finite sum: per supported path, walk it
// once, accumulate step weight times the allocation probability on the
// mover's true goal, and add the terminal distance from wherever the game
// ends. A trajectory is cut at its first goal visit; whatever the mover
// would do afterwards is already priced into the terminal distance.
//
// The Monte-Carlo path samples type, path and per-step allocations, and
// exists to validate the exact evaluator, not to replace it.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <thread>
#include <variant>
#include <vector>

#include "dpp/defender.hpp"
#include "dpp/equilibrium.hpp"
#include "dpp/errors.hpp"
#include "dpp/rng.hpp"
#include "dpp/scenario.hpp"

namespace dpp {

/// Expected cost the defender inflicts on a mover of `type` walking `traj`,
/// under one concrete policy (not type-erased).
template <class W, class Policy>
field_of<W> path_cost(const Scenario<W>& s, const Policy& policy, const Trajectory<W>& traj,
                      int type) {
  using F = field_of<W>;
  auto st = policy.init();
  F stage(0);
  VertexId last = traj.start();
  bool terminated = s.is_goal(last);
  for (std::size_t t = 1; t <= traj.steps() && !terminated; ++t) {
    const VertexId v = traj.node(t);
    const W w = traj.step_weight(t);
    const Allocation<W> alloc = policy.step(st, v, w);
    stage += to_field(w) * (type == 1 ? alloc.p1 : alloc.p2);
    last = v;
    terminated = s.is_goal(v);
  }
  if (!terminated) throw input_error("trajectory does not reach a goal");
  return stage + to_field(s.d(type, last));
}

template <class W>
field_of<W> path_cost(const Scenario<W>& s, const DefenderPolicy<W>& policy,
                      const Trajectory<W>& traj, int type) {
  return std::visit([&](const auto& p) { return path_cost(s, p, traj, type); }, policy);
}

/// Exact type-conditional expected cost of a mixture: sum over supported
/// paths of probability times path cost. Linear in the mixture weights.
template <class W>
field_of<W> exact_cost(const Scenario<W>& s, const DefenderPolicy<W>& policy,
                       const MixedStrategy<W>& mixed, int type) {
  using F = field_of<W>;
  const auto& support = mixed.support(type);
  if (support.empty()) throw input_error("empty strategy support for type " + std::to_string(type));
  Rat total_prob(0);
  F total(0);
  for (const auto& sp : support) {
    total_prob += sp.prob;
    F p = weight_traits<W>::exact ? F(sp.prob) : F(to_double(sp.prob));
    total += p * path_cost(s, policy, sp.path, type);
  }
  if (total_prob != 1) throw input_error("mixture probabilities must sum to 1");
  return total;
}

/// Expected costs, complete-information values and the value of
/// information for one (defender, attacker) pairing.
template <class F>
struct GameOutcome {
  F u1;     // expected cost, primary type
  F u2;     // expected cost, secondary type
  F u;      // prior-weighted overall cost
  F ubar1;  // complete-information value d(start, goal1)
  F ubar2;  // complete-information value d(start, goal2)
  F voi;    // (ubar - u) / ubar with ubar = b1*ubar1 + b2*ubar2
};

template <class W>
GameOutcome<field_of<W>> outcome(const Scenario<W>& s, const DefenderPolicy<W>& policy,
                                 const MixedStrategy<W>& mixed) {
  using F = field_of<W>;
  GameOutcome<F> out{};
  out.u1 = exact_cost(s, policy, mixed, 1);
  out.u2 = exact_cost(s, policy, mixed, 2);
  const F b1 = weight_traits<W>::exact ? F(s.prior.b1) : F(to_double(s.prior.b1));
  const F b2 = weight_traits<W>::exact ? F(s.prior.b2) : F(to_double(s.prior.b2));
  out.u = b1 * out.u1 + b2 * out.u2;
  out.ubar1 = to_field(s.d1(s.start));
  out.ubar2 = to_field(s.d2(s.start));
  const F ubar = b1 * out.ubar1 + b2 * out.ubar2;
  out.voi = (ubar - out.u) / ubar;
  return out;
}

// ---------------------------------------------------------------------------
// Monte-Carlo rollouts.

struct RolloutRecord {
  std::uint64_t seed = 0;
  int type = 0;
  std::size_t path_index = 0;
  std::size_t path_len = 0;            // steps actually played (after goal cut)
  std::vector<std::uint8_t> allocations;  // goal index per step, 1 or 2
  double cost = 0;                     // stage cost actually incurred
  double terminal_cost = 0;
};

struct SimulationSummary {
  std::size_t rollouts = 0;
  std::size_t count1 = 0, count2 = 0;
  double u1 = 0, u2 = 0, u = 0;        // empirical means (stage + terminal)
  double se1 = 0, se2 = 0, se = 0;     // standard errors of those means
};

struct SimulationResult {
  SimulationSummary summary;
  std::vector<RolloutRecord> records;
};

/// Sums in pairs; the result does not depend on how work was distributed.
inline double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 32) {
    double acc = 0;
    for (double x : xs) acc += x;
    return acc;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

namespace detail {

template <class W>
RolloutRecord one_rollout(const Scenario<W>& s, const DefenderPolicy<W>& policy,
                          const MixedStrategy<W>& mixed, std::uint64_t seed) {
  RolloutRecord rec;
  rec.seed = seed;
  SplitMix64 rng(seed);
  rec.type = rng.next_unit() < to_double(s.prior.b1) ? 1 : 2;
  const auto& support = mixed.support(rec.type);
  double u = rng.next_unit();
  double acc = 0;
  rec.path_index = support.size() - 1;
  for (std::size_t i = 0; i < support.size(); ++i) {
    acc += to_double(support[i].prob);
    if (u < acc) {
      rec.path_index = i;
      break;
    }
  }
  const Trajectory<W>& traj = support[rec.path_index].path;
  const VertexId true_goal = s.goal(rec.type);

  return std::visit(
      [&](const auto& pol) {
        auto st = pol.init();
        VertexId last = traj.start();
        for (std::size_t t = 1; t <= traj.steps(); ++t) {
          const VertexId v = traj.node(t);
          const W w = traj.step_weight(t);
          const auto alloc = pol.step(st, v, w);
          const int target = rng.next_unit() < to_double(alloc.p1) ? 1 : 2;
          rec.allocations.push_back(static_cast<std::uint8_t>(target));
          if (s.goal(target) == true_goal) rec.cost += to_double(w);
          last = v;
          ++rec.path_len;
          if (s.is_goal(v)) break;
        }
        rec.terminal_cost = to_double(s.d(rec.type, last));
        return rec;
      },
      policy);
}

}  // namespace detail

/// Runs `n` independent rollouts. Each rollout draws from its own
/// hash-derived substream, so results are reproducible bit-for-bit and
/// independent of the worker count.
template <class W>
SimulationResult simulate(const Scenario<W>& s, const DefenderPolicy<W>& policy,
                          const MixedStrategy<W>& mixed, std::size_t n, std::uint64_t seed,
                          int workers = 1) {
  if (n < 1) throw input_error("need at least one rollout");
  SimulationResult result;
  result.records.resize(n);
  auto run_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
      result.records[i] = detail::one_rollout(s, policy, mixed, derive_seed(seed, {i}));
  };
  if (workers <= 1) {
    run_range(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + static_cast<std::size_t>(workers) - 1) / workers;
    for (int t = 0; t < workers; ++t) {
      const std::size_t lo = std::min(n, chunk * static_cast<std::size_t>(t));
      const std::size_t hi = std::min(n, lo + chunk);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  auto& sum = result.summary;
  sum.rollouts = n;
  std::vector<double> all, t1, t2;
  all.reserve(n);
  for (const auto& rec : result.records) {
    const double total = rec.cost + rec.terminal_cost;
    all.push_back(total);
    (rec.type == 1 ? t1 : t2).push_back(total);
  }
  sum.count1 = t1.size();
  sum.count2 = t2.size();
  auto mean_se = [](std::span<const double> xs, double& mean, double& se) {
    if (xs.empty()) {
      mean = se = 0;
      return;
    }
    mean = pairwise_sum(xs) / static_cast<double>(xs.size());
    if (xs.size() > 1) {
      std::vector<double> sq;
      sq.reserve(xs.size());
      for (double x : xs) sq.push_back((x - mean) * (x - mean));
      const double var = pairwise_sum(sq) / static_cast<double>(xs.size() - 1);
      se = std::sqrt(var / static_cast<double>(xs.size()));
    } else {
      se = 0;
    }
  };
  mean_se(all, sum.u, sum.se);
  mean_se(t1, sum.u1, sum.se1);
  mean_se(t2, sum.u2, sum.se2);
  return result;
}

}  // namespace dpp
