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

#ifndef BUSELAB_MODEL_SPACES_H_
#define BUSELAB_MODEL_SPACES_H_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "buselab/metric_tree.h"

namespace buselab {

enum class SpaceKind {
  kEuclidean,
  kMinkowskiLp,
  kMinkowskiLinf,
  kHyperbolicPlane,
  kMetricTree,
  kSphere,
  kRealLine,
  kMaxProduct,
};

std::string to_string(SpaceKind kind);

// Immutable descriptor of one closed-form metric space. Copies share the
// underlying tree and product factors.
class SpaceModel {
 public:
  static SpaceModel Euclidean(int dim);
  // 1 < p < infinity; the plane unless `dim` says otherwise.
  static SpaceModel MinkowskiLp(double p, int dim = 2);
  // Sup-norm plane. Not Busemann; exists to produce convexity witnesses.
  static SpaceModel MinkowskiLinf(int dim = 2);
  static SpaceModel HyperbolicPlane();
  static SpaceModel Tree(std::shared_ptr<const MetricTree> tree);
  static SpaceModel Tree(TreeDesc desc);
  // Round sphere of `radius` in R^dim with its intrinsic (arc) metric.
  static SpaceModel Sphere(double radius, int dim);
  static SpaceModel RealLine();
  static SpaceModel MaxProduct(const SpaceModel& left, const SpaceModel& right);

  SpaceKind kind() const { return kind_; }
  // Number of real coordinates for vector-like models (1 for the line,
  // 2 for the half-plane, ambient dimension for spheres).
  int dim() const { return dim_; }
  double p() const { return p_; }
  double radius() const { return radius_; }
  const MetricTree& tree() const;
  std::shared_ptr<const MetricTree> tree_ptr() const { return tree_; }
  const SpaceModel& left() const;
  const SpaceModel& right() const;
  int product_depth() const;

  std::string name() const;
  // Euclidean, Minkowski 1<p<inf, H^2, trees and the real line.
  bool is_busemann() const;
  // Models whose points are plain coordinate vectors with a norm metric.
  bool is_normed() const;
  // Norm of a coordinate vector; normed models only.
  double norm(std::span<const double> v) const;

 private:
  SpaceModel() = default;

  SpaceKind kind_ = SpaceKind::kEuclidean;
  int dim_ = 0;
  double p_ = 2.0;
  double radius_ = 1.0;
  std::shared_ptr<const MetricTree> tree_;
  std::shared_ptr<const SpaceModel> left_;
  std::shared_ptr<const SpaceModel> right_;
};

// Space-tagged coordinates. Which member is meaningful depends on `kind`:
// coords for vector models, the half-plane (x, y) and sphere directions;
// tree for metric trees; parts = {left, right} for max products.
struct Point {
  SpaceKind kind = SpaceKind::kEuclidean;
  std::vector<double> coords;
  TreePoint tree;
  std::vector<Point> parts;

  static Point Vector(const SpaceModel& space, std::vector<double> coords);
  static Point HalfPlane(double x, double y);
  static Point Real(double x);
  static Point OnSphere(const SpaceModel& space, std::vector<double> direction);
  static Point OnTree(TreePoint p);
  static Point Product(Point left, Point right);

  double x() const { return coords.at(0); }
  double y() const { return coords.at(1); }
};

// Throws DomainError unless p is a valid point of space.
void check_point(const SpaceModel& space, const Point& p);
bool same_point(const SpaceModel& space, const Point& a, const Point& b,
                double tol = 1e-12);

// A point of the geodesic ideal boundary.
struct IdealPoint {
  SpaceKind kind = SpaceKind::kEuclidean;
  std::vector<double> direction;  // normed models and the real line
  bool at_infinity = false;       // half-plane: the point infinity
  double boundary = 0.0;          // half-plane: a point of the real axis
  int end = -1;                   // trees

  static IdealPoint Direction(const SpaceModel& space, std::vector<double> dir);
  static IdealPoint HalfPlaneBoundary(double x);
  static IdealPoint HalfPlaneInfinity();
  static IdealPoint TreeEnd(int end);
};

bool same_ideal(const SpaceModel& space, const IdealPoint& a,
                const IdealPoint& b, double tol = 1e-9);
IdealPoint negate_direction(const SpaceModel& space, const IdealPoint& xi);

enum class GeodesicDomain { kSegment, kRay, kLine };

// Unit-speed geodesic c(t) = E(orientation * t + shift) where E is the
// model's closed-form evaluator. Value type; cheap to copy.
struct GeodesicRef {
  enum class Form { kLinear, kPolyline, kHalfPlaneVertical, kHalfPlaneCircle,
                    kSphere, kTree };

  SpaceModel space = SpaceModel::RealLine();
  Form form = Form::kLinear;
  GeodesicDomain domain = GeodesicDomain::kSegment;
  double lo = 0.0;
  double hi = 0.0;
  std::optional<IdealPoint> minus_end;  // c(-inf)
  std::optional<IdealPoint> plus_end;   // c(+inf)

  int orientation = 1;
  double shift = 0.0;
  Rational tree_shift{0};

  // kLinear: origin + u * velocity. kPolyline: arclength through vertices.
  std::vector<double> origin;
  std::vector<double> velocity;
  std::vector<std::vector<double>> vertices;
  std::vector<double> arclength;
  // Half-plane: vertical line x = x0 with y = e^u, or the semicircle with
  // `center` and `radius`: (center + r tanh u, r sech u).
  double x0 = 0.0;
  double center = 0.0;
  double radius = 1.0;
  // Sphere: cos(u/R) base + sin(u/R) tangent.
  std::vector<double> base;
  std::vector<double> tangent;
  // Trees.
  TreePath path;

  Point at(double t) const;
  // Exact evaluation on trees.
  Point at_exact(const Rational& t) const;

  // c'(t) = c(-t).
  GeodesicRef reversed() const;
  // c'(t) = c(t + s).
  GeodesicRef shifted(double s) const;
  GeodesicRef shifted_exact(const Rational& s) const;
  // Ray t >= 0 of a line (or ray); `towards_plus` picks c(+inf) or c(-inf),
  // starting at c(start).
  GeodesicRef ray_towards(bool towards_plus, double start = 0.0) const;
  GeodesicRef ray_towards_exact(bool towards_plus, const Rational& start) const;
};

double distance(const SpaceModel& space, const Point& x, const Point& y);
// Exact distance for tree points; throws for other models.
Rational distance_exact(const SpaceModel& space, const Point& x, const Point& y);

GeodesicRef geodesic_between(const SpaceModel& space, const Point& x,
                             const Point& y);
GeodesicRef ray_from(const SpaceModel& space, const Point& base,
                     const IdealPoint& xi);
GeodesicRef line_through(const SpaceModel& space, const IdealPoint& eta,
                         const IdealPoint& xi);
// Line through `through` (at parameter 0) with c(+inf) = xi; normed models
// and the real line only.
GeodesicRef line_through_point(const SpaceModel& space, const Point& through,
                               const IdealPoint& xi);
// Segment following the polyline x0 -> x1 -> ... in a normed model. Each
// leg must be a straight segment; the whole is a geodesic when lengths add.
GeodesicRef polyline_geodesic(const SpaceModel& space,
                              const std::vector<Point>& vertices);

// Chooses among midpoints when they are not unique (sup-norm only).
enum class MidpointSelector { kCenter, kUpper, kLower };

Point midpoint(const SpaceModel& space, const Point& x, const Point& y,
               MidpointSelector selector = MidpointSelector::kCenter);

// JSON forms used by configs and the C API.
SpaceModel space_from_json(const nlohmann::json& j);
nlohmann::json space_to_json(const SpaceModel& space);
Point point_from_json(const SpaceModel& space, const nlohmann::json& j);
nlohmann::json point_to_json(const SpaceModel& space, const Point& p);
IdealPoint ideal_from_json(const SpaceModel& space, const nlohmann::json& j);
nlohmann::json ideal_to_json(const SpaceModel& space, const IdealPoint& xi);

}  // namespace buselab

#endif  // BUSELAB_MODEL_SPACES_H_
