#pragma once

// JSON exchange formats.
//
// Graph:    {"vertices": N, "edges": [{"from":u,"to":v,"weight":w}, ...],
//            "grid": {"rows":R,"cols":C,"obstacles":[cell,...]}}   (grid optional)
// Scenario: {"graph": {...} | "grid": {...}, "goals": [a,b], "start": s,
//            "prior": [p,q]}
//
// Weights and priors are kept exact: integers stay integers, decimal
// literals are recovered to small rationals, and "p/q" strings are accepted
// and emitted for anything that has no finite decimal form. Scenario files
// carry goals in file order; canonical labeling happens on load.

#include <array>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dpp/errors.hpp"
#include "dpp/graph.hpp"
#include "dpp/grid.hpp"
#include "dpp/rational.hpp"
#include "dpp/scenario.hpp"

namespace dpp {

using Json = nlohmann::json;

inline Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_number_unsigned()) return Rat(BigInt(j.get<std::uint64_t>()), BigInt(1));
  if (j.is_number_float()) return rat_from_double(j.get<double>());
  if (j.is_string()) return rat_parse(j.get<std::string>());
  throw input_error("expected a number or rational string");
}

inline Json rat_to_json(const Rat& r) {
  if (denominator(r) == 1) {
    const BigInt num = numerator(r);
    if (num >= std::numeric_limits<long long>::min() && num <= std::numeric_limits<long long>::max())
      return Json(num.convert_to<long long>());
  }
  return Json(r.str());
}

struct GridMeta {
  int rows = 0;
  int cols = 0;
  std::vector<VertexId> obstacles;
};

struct LoadedScenario {
  Scenario<Rat> scenario;
  std::optional<GridMeta> grid;
};

namespace detail {

inline WeightedGraph<Rat> grid_graph_from_meta(const GridMeta& meta) {
  std::vector<bool> blocked(static_cast<std::size_t>(meta.rows) * meta.cols, false);
  for (VertexId v : meta.obstacles) {
    if (v < 0 || v >= static_cast<VertexId>(blocked.size()))
      throw input_error("obstacle cell out of range");
    blocked[static_cast<std::size_t>(v)] = true;
  }
  std::vector<EdgeSpec<Rat>> edges;
  for (int r = 0; r < meta.rows; ++r) {
    for (int c = 0; c < meta.cols; ++c) {
      const auto v = static_cast<VertexId>(r * meta.cols + c);
      if (blocked[static_cast<std::size_t>(v)]) continue;
      if (c + 1 < meta.cols && !blocked[static_cast<std::size_t>(v) + 1]) {
        edges.push_back({v, v + 1, Rat(1)});
        edges.push_back({v + 1, v, Rat(1)});
      }
      if (r + 1 < meta.rows && !blocked[static_cast<std::size_t>(v) + meta.cols]) {
        edges.push_back({v, v + meta.cols, Rat(1)});
        edges.push_back({v + meta.cols, v, Rat(1)});
      }
    }
  }
  return WeightedGraph<Rat>(static_cast<VertexId>(meta.rows * meta.cols), edges);
}

inline GridMeta grid_meta_from_json(const Json& j) {
  GridMeta meta;
  meta.rows = j.at("rows").get<int>();
  meta.cols = j.at("cols").get<int>();
  if (meta.rows <= 0 || meta.cols <= 0) throw input_error("grid dimensions must be positive");
  if (j.contains("obstacles"))
    for (const auto& o : j.at("obstacles")) meta.obstacles.push_back(o.get<VertexId>());
  return meta;
}

}  // namespace detail

inline std::pair<WeightedGraph<Rat>, std::optional<GridMeta>> graph_from_json(const Json& j) {
  if (j.contains("grid")) {
    auto meta = detail::grid_meta_from_json(j.at("grid"));
    return {detail::grid_graph_from_meta(meta), meta};
  }
  if (!j.contains("vertices") || !j.contains("edges"))
    throw input_error("graph JSON needs 'vertices' and 'edges' (or a 'grid' block)");
  VertexId n = 0;
  const auto& jv = j.at("vertices");
  if (jv.is_number()) {
    n = jv.get<VertexId>();
  } else if (jv.is_array()) {
    n = static_cast<VertexId>(jv.size());
    std::vector<bool> seen(jv.size(), false);
    for (const auto& id : jv) {
      const auto v = id.get<VertexId>();
      if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
        throw input_error("vertex ids must be unique and dense 0..n-1");
      seen[static_cast<std::size_t>(v)] = true;
    }
  } else {
    throw input_error("'vertices' must be a count or an id array");
  }
  std::vector<EdgeSpec<Rat>> edges;
  for (const auto& e : j.at("edges"))
    edges.push_back({e.at("from").get<VertexId>(), e.at("to").get<VertexId>(),
                     rat_from_json(e.at("weight"))});
  return {WeightedGraph<Rat>(n, edges), std::nullopt};
}

inline Json graph_to_json(const WeightedGraph<Rat>& g, const std::optional<GridMeta>& grid) {
  Json j;
  if (grid) {
    j["grid"] = {{"rows", grid->rows}, {"cols", grid->cols}, {"obstacles", grid->obstacles}};
    return j;
  }
  j["vertices"] = g.num_vertices();
  Json edges = Json::array();
  for (const auto& e : g.edge_list())
    edges.push_back({{"from", e.from}, {"to", e.to}, {"weight", rat_to_json(e.weight)}});
  j["edges"] = std::move(edges);
  return j;
}

inline LoadedScenario scenario_from_json(const Json& j) {
  WeightedGraph<Rat> graph;
  std::optional<GridMeta> grid;
  if (j.contains("grid")) {
    grid = detail::grid_meta_from_json(j.at("grid"));
    graph = detail::grid_graph_from_meta(*grid);
  } else if (j.contains("graph")) {
    auto loaded = graph_from_json(j.at("graph"));
    graph = std::move(loaded.first);
    grid = std::move(loaded.second);
  } else {
    throw input_error("scenario JSON needs a 'graph' or 'grid' block");
  }
  const auto& goals = j.at("goals");
  if (!goals.is_array() || goals.size() != 2) throw input_error("'goals' must list two vertex ids");
  const auto& prior = j.at("prior");
  if (!prior.is_array() || prior.size() != 2) throw input_error("'prior' must list two probabilities");
  LoadedScenario out{make_scenario(std::move(graph),
                                   {goals[0].get<VertexId>(), goals[1].get<VertexId>()},
                                   j.at("start").get<VertexId>(),
                                   {rat_from_json(prior[0]), rat_from_json(prior[1])}),
                     std::move(grid)};
  return out;
}

inline Json scenario_to_json(const Scenario<Rat>& s, const std::optional<GridMeta>& grid) {
  Json j;
  if (grid) {
    j["grid"] = {{"rows", grid->rows}, {"cols", grid->cols}, {"obstacles", grid->obstacles}};
  } else {
    j["graph"] = graph_to_json(s.graph, std::nullopt);
  }
  j["goals"] = {s.goal1, s.goal2};
  j["start"] = s.start;
  j["prior"] = {to_double(s.prior.b1), to_double(s.prior.b2)};
  j["prior_exact"] = {s.prior.b1.str(), s.prior.b2.str()};
  return j;
}

inline Json scenario_to_json(const GridWorld& world, const Belief& prior) {
  Json j;
  j["grid"] = {{"rows", world.rows}, {"cols", world.cols}, {"obstacles", world.obstacles}};
  j["goals"] = {world.goal1, world.goal2};
  j["start"] = world.start;
  j["prior"] = {to_double(prior.b1), to_double(prior.b2)};
  j["prior_exact"] = {prior.b1.str(), prior.b2.str()};
  return j;
}

template <class W>
Json trajectory_to_json(const Trajectory<W>& t) {
  Json j;
  j["nodes"] = t.nodes();
  j["total_weight"] = to_double(t.total_weight());
  return j;
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw input_error("parse error in '" + path + "': " + e.what());
  }
}

inline void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace dpp
