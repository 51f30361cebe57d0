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

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <limits>
#include <map>

#include "buselab/errors.h"

namespace buselab {
namespace {

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw DomainError("malformed integer '" + std::string(text) + "'");
  }
  return value;
}

std::string vertex_name(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  throw DomainError("vertex ids must be strings or integers");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const auto den = parse_int(text.substr(slash + 1));
  if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

Rational rational_from_json(const nlohmann::json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
  throw DomainError("expected a rational as \"num/den\" or an integer");
}

std::string format_rational(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

TreeDesc tree_desc_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges")) {
    throw DomainError("tree descriptor needs \"vertices\" and \"edges\"");
  }
  TreeDesc desc;
  std::map<std::string, int> ids;
  for (const auto& v : j.at("vertices")) {
    auto name = vertex_name(v);
    if (!ids.emplace(name, static_cast<int>(desc.vertices.size())).second) {
      throw DomainError("duplicate vertex '" + name + "'");
    }
    desc.vertices.push_back(std::move(name));
  }
  auto lookup = [&](const nlohmann::json& v) {
    auto it = ids.find(vertex_name(v));
    if (it == ids.end()) throw DomainError("unknown vertex " + v.dump());
    return it->second;
  };
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3) {
      throw DomainError("edges are [u, v, \"num/den\"] triples");
    }
    desc.edges.push_back({lookup(e[0]), lookup(e[1]), rational_from_json(e[2])});
  }
  desc.denominator_bound = j.value("denominator_bound", std::int64_t{1});
  if (j.contains("ends")) {
    for (const auto& v : j.at("ends")) desc.ends.push_back(lookup(v));
  }
  return desc;
}

nlohmann::json tree_desc_to_json(const TreeDesc& desc) {
  nlohmann::ordered_json j;
  j["vertices"] = desc.vertices;
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : desc.edges) {
    edges.push_back({desc.vertices[e.u], desc.vertices[e.v],
                     format_rational(e.length)});
  }
  j["edges"] = edges;
  j["denominator_bound"] = desc.denominator_bound;
  if (!desc.ends.empty()) {
    auto ends = nlohmann::ordered_json::array();
    for (int v : desc.ends) ends.push_back(desc.vertices[v]);
    j["ends"] = ends;
  }
  return nlohmann::json::parse(j.dump());
}

TreeDesc load_tree_desc(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open tree file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("tree file '" + path + "': " + e.what());
  }
  return tree_desc_from_json(j);
}

TreeDesc path_tree(int edges, Rational length, std::int64_t denominator_bound) {
  TreeDesc desc;
  for (int i = 0; i <= edges; ++i) desc.vertices.push_back("v" + std::to_string(i));
  for (int i = 0; i < edges; ++i) desc.edges.push_back({i, i + 1, length});
  desc.denominator_bound = denominator_bound;
  return desc;
}

TreeDesc star_tree(int leaves, Rational length, std::int64_t denominator_bound,
                   bool with_ends) {
  TreeDesc desc;
  desc.vertices.push_back("o");
  for (int i = 1; i <= leaves; ++i) {
    desc.vertices.push_back("l" + std::to_string(i));
    desc.edges.push_back({0, i, length});
    if (with_ends) desc.ends.push_back(i);
  }
  desc.denominator_bound = denominator_bound;
  return desc;
}

TreeDesc comb_tree(int teeth, Rational spine_length, Rational tooth_length,
                   std::int64_t denominator_bound) {
  TreeDesc desc;
  for (int i = 0; i <= teeth + 1; ++i) desc.vertices.push_back("s" + std::to_string(i));
  for (int i = 0; i <= teeth; ++i) desc.edges.push_back({i, i + 1, spine_length});
  desc.ends.push_back(0);
  desc.ends.push_back(teeth + 1);
  for (int i = 1; i <= teeth; ++i) {
    const int tip = static_cast<int>(desc.vertices.size());
    desc.vertices.push_back("t" + std::to_string(i));
    desc.edges.push_back({i, tip, tooth_length});
    desc.ends.push_back(tip);
  }
  desc.denominator_bound = denominator_bound;
  return desc;
}

MetricTree::MetricTree(TreeDesc desc) : desc_(std::move(desc)) {
  const int n = vertex_count();
  if (n == 0) throw DomainError("tree has no vertices");
  if (desc_.denominator_bound <= 0) throw DomainError("denominator bound must be positive");
  if (edge_count() != n - 1) {
    throw DomainError("a tree on " + std::to_string(n) + " vertices needs " +
                      std::to_string(n - 1) + " edges");
  }
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (int e = 0; e < edge_count(); ++e) {
    const auto& edge = desc_.edges[e];
    if (edge.u < 0 || edge.u >= n || edge.v < 0 || edge.v >= n || edge.u == edge.v) {
      throw DomainError("edge " + std::to_string(e) + " has invalid endpoints");
    }
    if (edge.length <= 0) throw DomainError("edge lengths must be positive");
    if (desc_.denominator_bound % edge.length.denominator() != 0) {
      throw DomainError("edge length " + format_rational(edge.length) +
                        " has a denominator not dividing " +
                        std::to_string(desc_.denominator_bound));
    }
    adj[edge.u].push_back({edge.v, e});
    adj[edge.v].push_back({edge.u, e});
  }
  for (int v : desc_.ends) {
    if (v < 0 || v >= n) throw DomainError("end attached to unknown vertex");
  }

  dist_.assign(static_cast<std::size_t>(n) * n, Rational(-1));
  next_hop_.assign(static_cast<std::size_t>(n) * n, -1);
  for (int root = 0; root < n; ++root) {
    std::deque<int> queue{root};
    dist_[index(root, root)] = 0;
    next_hop_[index(root, root)] = root;
    while (!queue.empty()) {
      const int a = queue.front();
      queue.pop_front();
      for (auto [b, e] : adj[a]) {
        if (dist_[index(b, root)] >= 0) continue;
        dist_[index(b, root)] = dist_[index(a, root)] + desc_.edges[e].length;
        next_hop_[index(b, root)] = a;
        queue.push_back(b);
      }
    }
  }
  if (std::any_of(dist_.begin(), dist_.end(), [](const Rational& q) { return q < 0; })) {
    throw DomainError("tree is not connected");
  }
}

int MetricTree::segment_start(int segment) const {
  if (segment < 0 || segment >= segment_count()) throw DomainError("segment out of range");
  return is_ray(segment) ? desc_.ends[segment - edge_count()] : desc_.edges[segment].u;
}

int MetricTree::segment_finish(int segment) const {
  if (segment < 0 || segment >= segment_count()) throw DomainError("segment out of range");
  return is_ray(segment) ? -1 : desc_.edges[segment].v;
}

Rational MetricTree::segment_length(int segment) const {
  if (is_ray(segment)) throw DomainError("rays have no finite length");
  return desc_.edges.at(segment).length;
}

int MetricTree::vertex_index(std::string_view name) const {
  for (int v = 0; v < vertex_count(); ++v) {
    if (desc_.vertices[v] == name) return v;
  }
  throw DomainError("unknown vertex '" + std::string(name) + "'");
}

int MetricTree::edge_between(int a, int b) const {
  for (int e = 0; e < edge_count(); ++e) {
    const auto& edge = desc_.edges[e];
    if ((edge.u == a && edge.v == b) || (edge.u == b && edge.v == a)) return e;
  }
  throw DomainError("vertices are not adjacent");
}

TreePoint MetricTree::vertex(int v) const {
  if (v < 0 || v >= vertex_count()) throw DomainError("vertex out of range");
  TreePoint p;
  p.vertex = v;
  return p;
}

TreePoint MetricTree::on_segment(int segment, const Rational& offset) const {
  if (segment < 0 || segment >= segment_count()) throw DomainError("segment out of range");
  if (offset < 0 || (!is_ray(segment) && offset > segment_length(segment))) {
    throw DomainError("offset " + format_rational(offset) + " outside segment " +
                      std::to_string(segment));
  }
  if (offset == 0) return vertex(segment_start(segment));
  if (!is_ray(segment) && offset == segment_length(segment)) {
    return vertex(segment_finish(segment));
  }
  TreePoint p;
  p.segment = segment;
  p.offset = offset;
  return p;
}

TreePoint MetricTree::on_segment_real(int segment, double offset) const {
  if (segment < 0 || segment >= segment_count()) throw DomainError("segment out of range");
  const double length = is_ray(segment) ? std::numeric_limits<double>::infinity()
                                        : to_double(segment_length(segment));
  if (!(offset >= -1e-12 && offset <= length + 1e-12)) {
    throw DomainError("offset outside segment " + std::to_string(segment));
  }
  TreePoint p;
  p.segment = segment;
  p.real_offset = std::clamp(offset, 0.0, length);
  p.exact = false;
  return p;
}

void MetricTree::validate(const TreePoint& p) const {
  if (p.is_vertex()) {
    if (p.vertex >= vertex_count()) throw DomainError("vertex out of range");
    return;
  }
  if (p.segment < 0 || p.segment >= segment_count()) {
    throw DomainError("tree point has no vertex or segment");
  }
  if (p.exact) {
    if (p.offset <= 0 || (!is_ray(p.segment) && p.offset >= segment_length(p.segment))) {
      throw DomainError("tree point offset not inside its segment");
    }
  } else if (p.real_offset < 0 ||
             (!is_ray(p.segment) && p.real_offset > to_double(segment_length(p.segment)))) {
    throw DomainError("tree point offset not inside its segment");
  }
}

namespace {

template <class Scalar>
Scalar as_scalar(const Rational& q) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return q;
  } else {
    return to_double(q);
  }
}

// Exits of a point towards the vertex skeleton: (vertex, distance).
template <class Scalar>
std::vector<std::pair<int, Scalar>> exits(const MetricTree& tree, const TreePoint& p) {
  if (p.is_vertex()) return {{p.vertex, Scalar(0)}};
  Scalar off;
  if constexpr (std::is_same_v<Scalar, Rational>) {
    off = p.offset;
  } else {
    off = p.offset_value();
  }
  std::vector<std::pair<int, Scalar>> out{{tree.segment_start(p.segment), off}};
  if (!tree.is_ray(p.segment)) {
    out.push_back({tree.segment_finish(p.segment),
                   as_scalar<Scalar>(tree.segment_length(p.segment)) - off});
  }
  return out;
}

template <class Scalar>
Scalar distance_impl(const MetricTree& tree, const TreePoint& x, const TreePoint& y) {
  if (!x.is_vertex() && !y.is_vertex() && x.segment == y.segment) {
    Scalar a, b;
    if constexpr (std::is_same_v<Scalar, Rational>) {
      a = x.offset;
      b = y.offset;
      return a > b ? a - b : b - a;
    } else {
      a = x.offset_value();
      b = y.offset_value();
      return std::abs(a - b);
    }
  }
  bool first = true;
  Scalar best(0);
  for (const auto& [ex, cx] : exits<Scalar>(tree, x)) {
    for (const auto& [ey, cy] : exits<Scalar>(tree, y)) {
      const Scalar total = cx + as_scalar<Scalar>(tree.vertex_distance(ex, ey)) + cy;
      if (first || total < best) best = total;
      first = false;
    }
  }
  return best;
}

}  // namespace

Rational MetricTree::distance_exact(const TreePoint& x, const TreePoint& y) const {
  if (!x.exact || !y.exact) throw DomainError("exact distance needs exact tree points");
  return distance_impl<Rational>(*this, x, y);
}

double MetricTree::distance(const TreePoint& x, const TreePoint& y) const {
  if (x.exact && y.exact) return to_double(distance_impl<Rational>(*this, x, y));
  return distance_impl<double>(*this, x, y);
}

bool MetricTree::same_point(const TreePoint& x, const TreePoint& y) const {
  if (x.exact && y.exact) return distance_exact(x, y) == 0;
  return distance(x, y) <= 1e-12;
}

std::vector<TreePoint> MetricTree::points_at_distance(const TreePoint& x,
                                                      const Rational& r) const {
  if (!x.exact) throw DomainError("points_at_distance needs an exact tree point");
  if (r < 0) return {};
  if (r == 0) return {x};
  std::vector<TreePoint> candidates;
  auto consider = [&](int segment, const Rational& offset) {
    if (offset < 0) return;
    if (!is_ray(segment) && offset > segment_length(segment)) return;
    TreePoint c = on_segment(segment, offset);
    if (distance_exact(x, c) == r) candidates.push_back(c);
  };
  if (!x.is_vertex()) {
    consider(x.segment, x.offset + r);
    consider(x.segment, x.offset - r);
  }
  for (int s = 0; s < segment_count(); ++s) {
    const Rational via_start = r - distance_exact(x, vertex(segment_start(s)));
    if (via_start >= 0) consider(s, via_start);
    if (!is_ray(s)) {
      const Rational via_finish = r - distance_exact(x, vertex(segment_finish(s)));
      if (via_finish >= 0) consider(s, segment_length(s) - via_finish);
    }
  }
  std::vector<TreePoint> unique;
  for (const auto& c : candidates) {
    if (std::none_of(unique.begin(), unique.end(),
                     [&](const TreePoint& u) { return same_point(u, c); })) {
      unique.push_back(c);
    }
  }
  return unique;
}

Rational MetricTree::end_height(const TreePoint& y, int end) const {
  if (!y.exact) throw DomainError("exact end height needs an exact tree point");
  if (!y.is_vertex() && y.segment == end_segment(end)) return -y.offset;
  return distance_exact(y, vertex(end_vertex(end)));
}

double MetricTree::end_height_real(const TreePoint& y, int end) const {
  if (y.exact) return to_double(end_height(y, end));
  if (!y.is_vertex() && y.segment == end_segment(end)) return -y.real_offset;
  return distance(y, vertex(end_vertex(end)));
}

std::vector<int> MetricTree::vertex_route(int a, int b) const {
  std::vector<int> route{a};
  while (route.back() != b) route.push_back(next_hop_[index(route.back(), b)]);
  return route;
}

TreePath MetricTree::build_path(const TreePoint& x, const TreePoint& y) const {
  if (!x.exact || !y.exact) throw DomainError("tree geodesics need exact points");
  TreePath path;
  if (same_point(x, y)) {
    path.waypoints = {x};
    path.cumulative = {Rational(0)};
    return path;
  }
  std::vector<TreePoint> pts;
  if (!x.is_vertex() && !y.is_vertex() && x.segment == y.segment) {
    pts = {x, y};
  } else {
    Rational best(-1);
    int best_x = -1, best_y = -1;
    for (const auto& [ex, cx] : exits<Rational>(*this, x)) {
      for (const auto& [ey, cy] : exits<Rational>(*this, y)) {
        const Rational total = cx + vertex_distance(ex, ey) + cy;
        if (best < 0 || total < best) {
          best = total;
          best_x = ex;
          best_y = ey;
        }
      }
    }
    if (!x.is_vertex()) pts.push_back(x);
    for (int v : vertex_route(best_x, best_y)) pts.push_back(vertex(v));
    if (!y.is_vertex()) pts.push_back(y);
  }
  path.waypoints = pts;
  path.cumulative = {Rational(0)};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    path.cumulative.push_back(path.cumulative.back() + distance_exact(pts[i - 1], pts[i]));
  }
  return path;
}

TreePath MetricTree::path(const TreePoint& x, const TreePoint& y) const {
  return build_path(x, y);
}

TreePath MetricTree::path_to_end(const TreePoint& x, int end) const {
  if (end < 0 || end >= end_count()) throw DomainError("end out of range");
  const TreePoint anchor = vertex(end_vertex(end));
  if (!x.is_vertex() && x.segment == end_segment(end)) {
    // Already on the end's ray: follow it outwards.
    TreePath p;
    p.waypoints = {x};
    p.cumulative = {Rational(0)};
    p.trail_end = end;
    return p;
  }
  TreePath p = build_path(x, anchor);
  p.trail_end = end;
  return p;
}

TreePath MetricTree::path_between_ends(int from_end, int to_end) const {
  if (from_end == to_end) throw DegenerateError("a tree line needs two distinct ends");
  if (from_end < 0 || from_end >= end_count() || to_end < 0 || to_end >= end_count()) {
    throw DomainError("end out of range");
  }
  TreePath p = build_path(vertex(end_vertex(from_end)), vertex(end_vertex(to_end)));
  p.lead_end = from_end;
  p.trail_end = to_end;
  return p;
}

int MetricTree::common_segment(const TreePoint& a, const TreePoint& b) const {
  if (!a.is_vertex()) return a.segment;
  if (!b.is_vertex()) return b.segment;
  return edge_between(a.vertex, b.vertex);
}

template <class Scalar>
Scalar MetricTree::offset_on(const TreePoint& p, int segment) const {
  if (!p.is_vertex()) {
    if constexpr (std::is_same_v<Scalar, Rational>) {
      return p.offset;
    } else {
      return p.offset_value();
    }
  }
  if (p.vertex == segment_start(segment)) return Scalar(0);
  return as_scalar<Scalar>(segment_length(segment));
}

template <class Scalar>
TreePoint MetricTree::evaluate_impl(const TreePath& path, const Scalar& s) const {
  auto make = [&](int segment, const Scalar& offset) {
    if constexpr (std::is_same_v<Scalar, Rational>) {
      return on_segment(segment, offset);
    } else {
      return on_segment_real(segment, offset);
    }
  };
  const Scalar total = as_scalar<Scalar>(path.length());
  if (s < Scalar(0)) {
    if (path.lead_end < 0) throw DomainError("parameter before the start of a tree path");
    return make(end_segment(path.lead_end), -s);
  }
  if (s > total) {
    if (path.trail_end < 0) throw DomainError("parameter beyond the end of a tree path");
    const TreePoint& last = path.waypoints.back();
    if (!last.is_vertex()) {
      // Path starting inside the end's ray.
      return make(end_segment(path.trail_end), offset_on<Scalar>(last, last.segment) + s - total);
    }
    return make(end_segment(path.trail_end), s - total);
  }
  std::size_t i = 0;
  while (i + 1 < path.waypoints.size() &&
         as_scalar<Scalar>(path.cumulative[i + 1]) <= s) {
    ++i;
  }
  if (i + 1 == path.waypoints.size()) {
    if constexpr (std::is_same_v<Scalar, Rational>) {
      return path.waypoints.back();
    } else {
      const TreePoint& w = path.waypoints.back();
      return w.is_vertex() ? w : on_segment_real(w.segment, w.offset_value());
    }
  }
  const TreePoint& a = path.waypoints[i];
  const TreePoint& b = path.waypoints[i + 1];
  const int segment = common_segment(a, b);
  const Scalar oa = offset_on<Scalar>(a, segment);
  const Scalar ob = offset_on<Scalar>(b, segment);
  const Scalar along = s - as_scalar<Scalar>(path.cumulative[i]);
  return make(segment, ob > oa ? oa + along : oa - along);
}

TreePoint MetricTree::evaluate(const TreePath& path, const Rational& s) const {
  return evaluate_impl<Rational>(path, s);
}

TreePoint MetricTree::evaluate(const TreePath& path, double s) const {
  return evaluate_impl<double>(path, s);
}

nlohmann::json MetricTree::point_to_json(const TreePoint& p) const {
  nlohmann::ordered_json j;
  if (p.is_vertex()) {
    j["vertex"] = desc_.vertices[p.vertex];
  } else {
    if (is_ray(p.segment)) {
      j["end"] = p.segment - edge_count();
    } else {
      j["edge"] = p.segment;
    }
    if (p.exact) {
      j["offset"] = format_rational(p.offset);
    } else {
      j["offset"] = p.real_offset;
    }
  }
  return nlohmann::json::parse(j.dump());
}

TreePoint MetricTree::point_from_json(const nlohmann::json& j) const {
  if (j.contains("vertex")) return vertex(vertex_index(vertex_name(j.at("vertex"))));
  int segment = -1;
  if (j.contains("edge")) {
    segment = j.at("edge").get<int>();
    if (segment < 0 || segment >= edge_count()) throw DomainError("edge out of range");
  } else if (j.contains("end")) {
    const int end = j.at("end").get<int>();
    if (end < 0 || end >= end_count()) throw DomainError("end out of range");
    segment = end_segment(end);
  } else {
    throw DomainError("tree point needs \"vertex\", \"edge\" or \"end\"");
  }
  const auto& off = j.at("offset");
  if (off.is_number_float()) return on_segment_real(segment, off.get<double>());
  return on_segment(segment, rational_from_json(off));
}

}  // namespace buselab
