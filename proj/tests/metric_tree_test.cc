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

#include "buselab/metric_tree.h"

#include <gtest/gtest.h>

#include "buselab/errors.h"

namespace buselab {
namespace {

Rational Q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

TEST(Rational, ParsesAndFormats) {
  EXPECT_EQ(parse_rational("3/6"), Q(1, 2));
  EXPECT_EQ(parse_rational("-4"), Q(-4));
  EXPECT_EQ(format_rational(Q(2, 4)), "1/2");
  EXPECT_EQ(format_rational(Q(3)), "3");
  EXPECT_THROW(parse_rational("1/0"), DomainError);
  EXPECT_THROW(parse_rational("x"), DomainError);
}

TEST(MetricTree, StarLeavesAreOneApart) {
  MetricTree tree(star_tree(3, Q(1, 2), 2, false));
  const TreePoint a = tree.vertex(1), b = tree.vertex(2);
  EXPECT_EQ(tree.distance_exact(a, b), Q(1));
  EXPECT_EQ(tree.distance_exact(a, a), Q(0));
}

TEST(MetricTree, RejectsCyclesAndBadDenominators) {
  TreeDesc cycle;
  cycle.vertices = {"a", "b", "c"};
  cycle.edges = {{0, 1, Q(1)}, {1, 2, Q(1)}, {2, 0, Q(1)}};
  EXPECT_THROW(MetricTree{cycle}, DomainError);

  TreeDesc split;
  split.vertices = {"a", "b", "c", "d"};
  split.edges = {{0, 1, Q(1)}, {2, 3, Q(1)}, {0, 1, Q(1)}};
  EXPECT_THROW(MetricTree{split}, DomainError);

  TreeDesc denominators = path_tree(2, Q(1, 3), 3);
  denominators.denominator_bound = 2;
  EXPECT_THROW(MetricTree{denominators}, DomainError);

  TreeDesc negative = path_tree(1, Q(1), 1);
  negative.edges[0].length = Q(-1);
  EXPECT_THROW(MetricTree{negative}, DomainError);
}

TEST(MetricTree, JsonRoundTrip) {
  const auto j = nlohmann::json::parse(
      R"({"vertices":["a","b","c"],"edges":[["a","b","1/2"],["b","c","3/2"]],)"
      R"("denominator_bound":2})");
  MetricTree tree(tree_desc_from_json(j));
  EXPECT_EQ(tree.vertex_count(), 3);
  EXPECT_EQ(tree.distance_exact(tree.vertex(0), tree.vertex(2)), Q(2));
  MetricTree again(tree_desc_from_json(tree_desc_to_json(tree.desc())));
  EXPECT_EQ(again.distance_exact(again.vertex(0), again.vertex(2)), Q(2));
}

TEST(MetricTree, PointsOnEdgesCanonicalize) {
  MetricTree tree(path_tree(3, Q(1, 2), 2));
  EXPECT_TRUE(tree.on_segment(0, Q(0)).is_vertex());
  EXPECT_TRUE(tree.on_segment(0, Q(1, 2)).is_vertex());
  EXPECT_THROW(tree.on_segment(0, Q(3, 4)), DomainError);
  const TreePoint p = tree.on_segment(0, Q(1, 10));
  const TreePoint q = tree.on_segment(2, Q(2, 5));
  // 1/2 - 1/10 + 1/2 + 2/5
  EXPECT_EQ(tree.distance_exact(p, q), Q(13, 10));
  EXPECT_EQ(tree.point_from_json(tree.point_to_json(p)).offset, p.offset);
}

TEST(MetricTree, DistancesHaveBoundedDenominators) {
  MetricTree tree(comb_tree(3, Q(1, 3), Q(2, 3), 3));
  for (int a = 0; a < tree.vertex_count(); ++a) {
    for (int b = 0; b < tree.vertex_count(); ++b) {
      EXPECT_EQ(3 % tree.vertex_distance(a, b).denominator(), 0);
    }
  }
}

TEST(MetricTree, PointsAtDistanceAreExact) {
  MetricTree tree(star_tree(3, Q(1, 2), 2, false));
  const auto pts = tree.points_at_distance(tree.vertex(1), Q(3, 4));
  ASSERT_EQ(pts.size(), 2u);
  for (const auto& p : pts) EXPECT_EQ(tree.distance_exact(tree.vertex(1), p), Q(3, 4));
  EXPECT_TRUE(tree.points_at_distance(tree.vertex(1), Q(2)).empty());
}

TEST(MetricTree, EndHeightsDecreaseAlongTheRay) {
  MetricTree tree(star_tree(2, Q(1), 1, true));
  const int end = 0;
  const TreePoint far = tree.on_segment(tree.end_segment(end), Q(5));
  EXPECT_EQ(tree.end_height(far, end), Q(-5));
  EXPECT_EQ(tree.end_height(tree.vertex(0), end), Q(1));
}

TEST(MetricTree, PathEvaluation) {
  MetricTree tree(path_tree(2, Q(1), 1));
  const TreePath path = tree.path(tree.vertex(0), tree.vertex(2));
  EXPECT_EQ(path.length(), Q(2));
  const TreePoint mid = tree.evaluate(path, Q(1, 2));
  EXPECT_EQ(tree.distance_exact(mid, tree.vertex(0)), Q(1, 2));
  EXPECT_THROW(tree.evaluate(path, Q(3)), DomainError);
}

}  // namespace
}  // namespace buselab
