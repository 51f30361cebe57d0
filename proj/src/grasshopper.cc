// Copyright 2026 The Buselab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "buselab/grasshopper.h"

#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <tuple>

#include "buselab/errors.h"

namespace buselab {
namespace {

constexpr double kUnitTolerance = 1e-9;

using TreeKey = std::tuple<int, int, Rational>;

TreeKey key_of(const TreePoint& p) {
  if (p.is_vertex()) return {p.vertex, -1, Rational(0)};
  return {-1, p.segment, p.offset};
}

std::vector<std::optional<int>> bfs(const UnitJumpGraph& graph, int from) {
  std::vector<std::optional<int>> dist(graph.nodes.size());
  std::deque<int> queue = {from};
  dist[from] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : graph.adjacency[u]) {
      if (!dist[v]) {
        dist[v] = *dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

std::optional<int> tree_grasshopper(const SpaceModel& space, const Point& x, const Point& y,
                                    int cap) {
  if (!x.tree.exact || !y.tree.exact) {
    throw DomainError("tree grasshopper distance needs exact points");
  }
  const MetricTree& tree = space.tree();
  const TreeKey target = key_of(y.tree);
  std::map<TreeKey, int> seen = {{key_of(x.tree), 0}};
  if (key_of(x.tree) == target) return 0;
  std::deque<TreePoint> queue = {x.tree};
  while (!queue.empty()) {
    const TreePoint u = queue.front();
    queue.pop_front();
    const int du = seen.at(key_of(u));
    for (const TreePoint& v : tree.points_at_distance(u, Rational(1))) {
      const TreeKey k = key_of(v);
      if (seen.count(k)) continue;
      if (k == target) return du + 1;
      seen.emplace(k, du + 1);
      if (static_cast<int>(seen.size()) > cap) {
        throw SearchError("grasshopper search exceeded " + std::to_string(cap) + " points");
      }
      queue.push_back(v);
    }
  }
  return std::nullopt;
}

Rational floor_div(const Rational& q) {
  return Rational(q.numerator() / q.denominator());
}

}  // namespace

UnitJumpGraph unit_jump_graph(const SpaceModel& space, std::vector<Point> nodes) {
  UnitJumpGraph graph{space, std::move(nodes), {}};
  const std::size_t n = graph.nodes.size();
  graph.adjacency.assign(n, {});
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (unit_class(space, graph.nodes[u], graph.nodes[v]) == 0) {
        graph.adjacency[u].push_back(static_cast<int>(v));
        graph.adjacency[v].push_back(static_cast<int>(u));
      }
    }
  }
  return graph;
}

std::optional<int> graph_grasshopper_distance(const UnitJumpGraph& graph, int from, int to) {
  const int n = static_cast<int>(graph.nodes.size());
  if (from < 0 || from >= n || to < 0 || to >= n) {
    throw DomainError("grasshopper endpoints must be graph nodes");
  }
  return bfs(graph, from)[to];
}

std::vector<std::vector<std::optional<int>>> graph_grasshopper_table(
    const UnitJumpGraph& graph) {
  std::vector<std::vector<std::optional<int>>> table;
  for (std::size_t u = 0; u < graph.nodes.size(); ++u) {
    table.push_back(bfs(graph, static_cast<int>(u)));
  }
  return table;
}

std::optional<int> grasshopper_distance(const SpaceModel& space, const Point& x, const Point& y,
                                        int tree_node_cap) {
  check_point(space, x);
  check_point(space, y);
  const bool one_dimensional = space.kind() == SpaceKind::kRealLine ||
                               (space.kind() == SpaceKind::kEuclidean && space.dim() == 1);
  if (one_dimensional) {
    const double d = distance(space, x, y);
    const double k = std::round(d);
    if (std::abs(d - k) <= kUnitTolerance) return static_cast<int>(k);
    return std::nullopt;
  }
  if (space.kind() == SpaceKind::kEuclidean) {
    const double d = distance(space, x, y);
    if (d == 0.0) return 0;
    if (std::abs(d - 1.0) <= kUnitTolerance) return 1;
    if (d < 1.0) return 2;
    return static_cast<int>(std::ceil(d - kUnitTolerance));
  }
  if (space.kind() == SpaceKind::kMetricTree) return tree_grasshopper(space, x, y, tree_node_cap);
  throw DomainError("no analytic grasshopper distance on " + space.name() +
                    "; use a unit-jump graph");
}

std::vector<std::vector<int>> grasshopper_components(const UnitJumpGraph& graph) {
  const int n = static_cast<int>(graph.nodes.size());
  std::vector<int> label(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    const auto dist = bfs(graph, s);
    std::vector<int> comp;
    for (int v = 0; v < n; ++v) {
      if (dist[v]) {
        label[v] = static_cast<int>(out.size());
        comp.push_back(v);
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

std::int64_t tree_step_denominator(const MetricTree& tree) {
  std::int64_t n = 1;
  for (const auto& e : tree.desc().edges) n = std::lcm(n, e.length.denominator());
  return n;
}

TreePointSet tree_point_set(const SpaceModel& space, const Rational& alpha,
                            const Rational& beta) {
  if (space.kind() != SpaceKind::kMetricTree) throw DomainError("tree point sets need a tree");
  const MetricTree& tree = space.tree();
  if (tree.end_count() != 0) throw DomainError("tree point sets need a finite tree");
  TreePointSet tps;
  tps.space = space;
  tps.n = tree_step_denominator(tree);
  tps.alpha = alpha;
  tps.beta = beta;
  const Rational step(1, tps.n);
  if (!(alpha > 0 && alpha < beta && 2 * beta < step)) {
    throw DomainError("offsets must satisfy 0 < alpha < beta < 1/(2n) with n = " +
                      std::to_string(tps.n));
  }
  for (int e = 0; e < tree.edge_count(); ++e) {
    const Rational pieces = tree.segment_length(e) / step;
    for (std::int64_t k = 0; k < pieces.numerator(); ++k) {
      const Rational base = Rational(k) * step;
      for (const Rational& r : {alpha, step - alpha}) {
        tps.a_alpha.push_back(Point::OnTree(tree.on_segment(e, base + r)));
      }
      for (const Rational& r : {beta, step - beta}) {
        tps.a_beta.push_back(Point::OnTree(tree.on_segment(e, base + r)));
      }
    }
  }
  return tps;
}

BijectionSpec tree_swap_bijection(const TreePointSet& tps) {
  const SpaceModel space = tps.space;
  const Rational step(1, tps.n), alpha = tps.alpha, beta = tps.beta;
  if (!(alpha > 0 && alpha < beta && 2 * beta < step)) {
    throw DomainError("invalid swap offsets");
  }
  auto swap = [space, step, alpha, beta](const Point& p) {
    if (p.tree.is_vertex() || !p.tree.exact || space.tree().is_ray(p.tree.segment)) return p;
    const Rational base = floor_div(p.tree.offset / step) * step;
    const Rational r = p.tree.offset - base;
    Rational moved;
    if (r == alpha) {
      moved = base + beta;
    } else if (r == beta) {
      moved = base + alpha;
    } else if (r == step - alpha) {
      moved = base + step - beta;
    } else if (r == step - beta) {
      moved = base + step - alpha;
    } else {
      return p;
    }
    return Point::OnTree(space.tree().on_segment(p.tree.segment, moved));
  };
  BijectionSpec f;
  f.name = "tree-swap";
  f.domain = space;
  f.codomain = space;
  f.forward = swap;
  f.inverse = swap;
  f.params = {{"n", tps.n}, {"alpha", format_rational(alpha)}, {"beta", format_rational(beta)}};
  return f;
}

}  // namespace buselab
