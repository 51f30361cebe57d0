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

// The grasshopper metric: fewest unit jumps between two points.

#ifndef BUSELAB_GRASSHOPPER_H_
#define BUSELAB_GRASSHOPPER_H_

#include <optional>
#include <vector>

#include "buselab/metric_verify.h"
#include "buselab/model_spaces.h"

namespace buselab {

// Nodes joined when their distance is 1 (exact on trees).
struct UnitJumpGraph {
  SpaceModel space = SpaceModel::RealLine();
  std::vector<Point> nodes;
  std::vector<std::vector<int>> adjacency;
};

UnitJumpGraph unit_jump_graph(const SpaceModel& space, std::vector<Point> nodes);

// nullopt stands for an infinite distance.
std::optional<int> graph_grasshopper_distance(const UnitJumpGraph& graph, int from, int to);
// All-pairs table by breadth-first search from every node.
std::vector<std::vector<std::optional<int>>> graph_grasshopper_table(const UnitJumpGraph& graph);

// Closed forms on the real line and Euclidean spaces; exhaustive search over
// the finitely many reachable points of a finite tree.
std::optional<int> grasshopper_distance(const SpaceModel& space, const Point& x, const Point& y,
                                        int tree_node_cap = 100000);

std::vector<std::vector<int>> grasshopper_components(const UnitJumpGraph& graph);

// Points at distance alpha (resp. beta) from the vertices of the finite tree
// subdivided into edges of length 1/n, where n is the common denominator of
// the edge lengths.
struct TreePointSet {
  SpaceModel space = SpaceModel::RealLine();
  std::int64_t n = 1;
  Rational alpha;
  Rational beta;
  std::vector<Point> a_alpha;
  std::vector<Point> a_beta;
};

TreePointSet tree_point_set(const SpaceModel& tree, const Rational& alpha, const Rational& beta);
// Common denominator n of the edge lengths.
std::int64_t tree_step_denominator(const MetricTree& tree);

// Swaps the points at distance alpha and beta from the same subdivision
// vertex; identity elsewhere.
BijectionSpec tree_swap_bijection(const TreePointSet& tps);

}  // namespace buselab

#endif  // BUSELAB_GRASSHOPPER_H_
