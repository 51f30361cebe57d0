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

#ifndef BUSELAB_METRIC_TREE_H_
#define BUSELAB_METRIC_TREE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>
#include <json.hpp>

namespace buselab {

using Rational = boost::rational<std::int64_t>;

// Boost 1.74 implements rational == integer through a member template that
// C++20 rewritten comparisons turn into endless recursion. These exact
// overloads win overload resolution inside this namespace.
#define BUSELAB_RATIONAL_EQ(Int)                                      \
  inline bool operator==(const Rational& q, Int i) {                  \
    return q.denominator() == 1 && q.numerator() == i;                \
  }                                                                   \
  inline bool operator!=(const Rational& q, Int i) { return !(q == i); }
BUSELAB_RATIONAL_EQ(int)
BUSELAB_RATIONAL_EQ(long)
BUSELAB_RATIONAL_EQ(long long)
#undef BUSELAB_RATIONAL_EQ

// Parses "num/den", "num" or a JSON integer into a reduced rational.
Rational parse_rational(std::string_view text);
Rational rational_from_json(const nlohmann::json& value);
std::string format_rational(const Rational& q);
inline double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) /
         static_cast<double>(q.denominator());
}

// Finite combinatorial tree with rational edge lengths. Every vertex listed
// in `ends` additionally carries one infinite ray; those rays are the ideal
// points (ends) of the tree.
struct TreeDesc {
  struct Edge {
    int u = 0;
    int v = 0;
    Rational length{1};
  };
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  std::int64_t denominator_bound = 1;
  std::vector<int> ends;
};

TreeDesc tree_desc_from_json(const nlohmann::json& j);
nlohmann::json tree_desc_to_json(const TreeDesc& desc);
TreeDesc load_tree_desc(const std::string& path);

// Path on `edges` edges of equal length.
TreeDesc path_tree(int edges, Rational length, std::int64_t denominator_bound);
// Star with `leaves` edges of equal length; `with_ends` attaches a ray at
// every leaf.
TreeDesc star_tree(int leaves, Rational length,
                   std::int64_t denominator_bound, bool with_ends);
// Spine of `teeth` + 1 vertices with a tooth hanging off every inner spine
// vertex. Rays are attached at both spine ends and at every tooth tip.
TreeDesc comb_tree(int teeth, Rational spine_length, Rational tooth_length,
                   std::int64_t denominator_bound);

// A point of a metric tree. Segments are numbered edges first, then one
// segment per end (the infinite ray). Offsets are measured from the
// segment's first endpoint; for rays from the attaching vertex.
struct TreePoint {
  int vertex = -1;
  int segment = -1;
  Rational offset{0};
  double real_offset = 0.0;
  bool exact = true;

  bool is_vertex() const { return vertex >= 0; }
  double offset_value() const {
    return exact ? to_double(offset) : real_offset;
  }
};

struct TreePath {
  int lead_end = -1;   // parameters below 0 run out along this end's ray
  int trail_end = -1;  // parameters beyond length() run along this end's ray
  std::vector<TreePoint> waypoints;
  std::vector<Rational> cumulative;
  Rational length() const { return cumulative.back(); }
};

class MetricTree {
 public:
  explicit MetricTree(TreeDesc desc);

  const TreeDesc& desc() const { return desc_; }
  int vertex_count() const { return static_cast<int>(desc_.vertices.size()); }
  int edge_count() const { return static_cast<int>(desc_.edges.size()); }
  int end_count() const { return static_cast<int>(desc_.ends.size()); }
  int segment_count() const { return edge_count() + end_count(); }
  bool is_ray(int segment) const { return segment >= edge_count(); }
  int segment_start(int segment) const;
  int segment_finish(int segment) const;  // -1 for rays
  Rational segment_length(int segment) const;
  int end_vertex(int end) const { return desc_.ends.at(end); }
  int end_segment(int end) const { return edge_count() + end; }
  int vertex_index(std::string_view name) const;
  int edge_between(int a, int b) const;

  TreePoint vertex(int v) const;
  TreePoint on_segment(int segment, const Rational& offset) const;
  TreePoint on_segment_real(int segment, double offset) const;
  void validate(const TreePoint& p) const;

  Rational vertex_distance(int a, int b) const {
    return dist_[index(a, b)];
  }
  Rational distance_exact(const TreePoint& x, const TreePoint& y) const;
  double distance(const TreePoint& x, const TreePoint& y) const;
  bool same_point(const TreePoint& x, const TreePoint& y) const;

  // Every point at exact distance r from x (finite for finite r).
  std::vector<TreePoint> points_at_distance(const TreePoint& x,
                                            const Rational& r) const;

  // Busemann height towards an end, normalised to 0 at the ray's vertex.
  Rational end_height(const TreePoint& y, int end) const;
  double end_height_real(const TreePoint& y, int end) const;

  TreePath path(const TreePoint& x, const TreePoint& y) const;
  TreePath path_to_end(const TreePoint& x, int end) const;
  TreePath path_between_ends(int from_end, int to_end) const;
  TreePoint evaluate(const TreePath& path, const Rational& s) const;
  TreePoint evaluate(const TreePath& path, double s) const;

  nlohmann::json point_to_json(const TreePoint& p) const;
  TreePoint point_from_json(const nlohmann::json& j) const;

 private:
  std::size_t index(int a, int b) const {
    return static_cast<std::size_t>(a) * vertex_count() + b;
  }
  // Vertex sequence a -> b inclusive.
  std::vector<int> vertex_route(int a, int b) const;
  int common_segment(const TreePoint& a, const TreePoint& b) const;
  template <class Scalar>
  Scalar offset_on(const TreePoint& p, int segment) const;
  template <class Scalar>
  TreePoint evaluate_impl(const TreePath& path, const Scalar& s) const;
  TreePath build_path(const TreePoint& x, const TreePoint& y) const;

  TreeDesc desc_;
  std::vector<Rational> dist_;
  std::vector<int> next_hop_;
};

}  // namespace buselab

#endif  // BUSELAB_METRIC_TREE_H_
