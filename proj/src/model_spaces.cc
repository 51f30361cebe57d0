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

#include "buselab/model_spaces.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "buselab/errors.h"

namespace buselab {
namespace {

constexpr double kSphereNormTol = 1e-12;

std::vector<double> sub(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double euclid(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double sign_of(double v) { return v < 0 ? -1.0 : 1.0; }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void require_kind(const SpaceModel& space, const Point& p) {
  if (p.kind != space.kind()) {
    throw DomainError("point of kind " + to_string(p.kind) +
                      " used with space " + space.name());
  }
}

// Stable hyperbolic distance in the upper half-plane.
double half_plane_distance(const Point& a, const Point& b) {
  const double chord = std::hypot(a.x() - b.x(), a.y() - b.y());
  return 2.0 * std::asinh(chord / (2.0 * std::sqrt(a.y() * b.y())));
}

}  // namespace

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::kEuclidean: return "euclidean";
    case SpaceKind::kMinkowskiLp: return "minkowski";
    case SpaceKind::kMinkowskiLinf: return "minkowski_linf";
    case SpaceKind::kHyperbolicPlane: return "hyperbolic";
    case SpaceKind::kMetricTree: return "tree";
    case SpaceKind::kSphere: return "sphere";
    case SpaceKind::kRealLine: return "real_line";
    case SpaceKind::kMaxProduct: return "max_product";
  }
  return "unknown";
}

SpaceModel SpaceModel::Euclidean(int dim) {
  if (dim < 1) throw DomainError("Euclidean dimension must be positive");
  SpaceModel s;
  s.kind_ = SpaceKind::kEuclidean;
  s.dim_ = dim;
  return s;
}

SpaceModel SpaceModel::MinkowskiLp(double p, int dim) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw DomainError("Minkowski exponent must satisfy 1 < p < infinity");
  }
  if (dim < 1) throw DomainError("Minkowski dimension must be positive");
  SpaceModel s;
  s.kind_ = SpaceKind::kMinkowskiLp;
  s.dim_ = dim;
  s.p_ = p;
  return s;
}

SpaceModel SpaceModel::MinkowskiLinf(int dim) {
  if (dim < 1) throw DomainError("dimension must be positive");
  SpaceModel s;
  s.kind_ = SpaceKind::kMinkowskiLinf;
  s.dim_ = dim;
  s.p_ = std::numeric_limits<double>::infinity();
  return s;
}

SpaceModel SpaceModel::HyperbolicPlane() {
  SpaceModel s;
  s.kind_ = SpaceKind::kHyperbolicPlane;
  s.dim_ = 2;
  return s;
}

SpaceModel SpaceModel::Tree(std::shared_ptr<const MetricTree> tree) {
  if (!tree) throw DomainError("null tree");
  SpaceModel s;
  s.kind_ = SpaceKind::kMetricTree;
  s.tree_ = std::move(tree);
  return s;
}

SpaceModel SpaceModel::Tree(TreeDesc desc) {
  return Tree(std::make_shared<const MetricTree>(std::move(desc)));
}

SpaceModel SpaceModel::Sphere(double radius, int dim) {
  if (!(radius > 0.0)) throw DomainError("sphere radius must be positive");
  if (dim < 2) throw DomainError("sphere needs ambient dimension >= 2");
  SpaceModel s;
  s.kind_ = SpaceKind::kSphere;
  s.dim_ = dim;
  s.radius_ = radius;
  return s;
}

SpaceModel SpaceModel::RealLine() {
  SpaceModel s;
  s.kind_ = SpaceKind::kRealLine;
  s.dim_ = 1;
  return s;
}

SpaceModel SpaceModel::MaxProduct(const SpaceModel& left, const SpaceModel& right) {
  SpaceModel s;
  s.kind_ = SpaceKind::kMaxProduct;
  s.left_ = std::make_shared<const SpaceModel>(left);
  s.right_ = std::make_shared<const SpaceModel>(right);
  if (s.product_depth() > 2) throw DomainError("max products nest at most two deep");
  return s;
}

const MetricTree& SpaceModel::tree() const {
  if (!tree_) throw DomainError(name() + " is not a metric tree");
  return *tree_;
}

const SpaceModel& SpaceModel::left() const {
  if (!left_) throw DomainError(name() + " is not a product");
  return *left_;
}

const SpaceModel& SpaceModel::right() const {
  if (!right_) throw DomainError(name() + " is not a product");
  return *right_;
}

int SpaceModel::product_depth() const {
  if (kind_ != SpaceKind::kMaxProduct) return 0;
  return 1 + std::max(left_->product_depth(), right_->product_depth());
}

std::string SpaceModel::name() const {
  switch (kind_) {
    case SpaceKind::kEuclidean: return "euclidean(" + std::to_string(dim_) + ")";
    case SpaceKind::kMinkowskiLp: return "minkowski_p(" + fmt(p_) + ")";
    case SpaceKind::kMinkowskiLinf: return "minkowski_linf(" + std::to_string(dim_) + ")";
    case SpaceKind::kHyperbolicPlane: return "hyperbolic_plane";
    case SpaceKind::kMetricTree:
      return "tree(V=" + std::to_string(tree_->vertex_count()) +
             ",ends=" + std::to_string(tree_->end_count()) +
             ",n=" + std::to_string(tree_->desc().denominator_bound) + ")";
    case SpaceKind::kSphere:
      return "sphere(r=" + fmt(radius_) + ",dim=" + std::to_string(dim_) + ")";
    case SpaceKind::kRealLine: return "real_line";
    case SpaceKind::kMaxProduct:
      return "max_product(" + left_->name() + "," + right_->name() + ")";
  }
  return "unknown";
}

bool SpaceModel::is_busemann() const {
  switch (kind_) {
    case SpaceKind::kEuclidean:
    case SpaceKind::kMinkowskiLp:
    case SpaceKind::kHyperbolicPlane:
    case SpaceKind::kMetricTree:
    case SpaceKind::kRealLine:
      return true;
    default:
      return false;
  }
}

bool SpaceModel::is_normed() const {
  return kind_ == SpaceKind::kEuclidean || kind_ == SpaceKind::kMinkowskiLp ||
         kind_ == SpaceKind::kMinkowskiLinf || kind_ == SpaceKind::kRealLine;
}

double SpaceModel::norm(std::span<const double> v) const {
  switch (kind_) {
    case SpaceKind::kEuclidean:
      return euclid(v);
    case SpaceKind::kRealLine:
      return std::abs(v[0]);
    case SpaceKind::kMinkowskiLinf: {
      double m = 0.0;
      for (double c : v) m = std::max(m, std::abs(c));
      return m;
    }
    case SpaceKind::kMinkowskiLp: {
      double scale = 0.0;
      for (double c : v) scale = std::max(scale, std::abs(c));
      if (scale == 0.0) return 0.0;
      double s = 0.0;
      for (double c : v) s += std::pow(std::abs(c) / scale, p_);
      return scale * std::pow(s, 1.0 / p_);
    }
    default:
      throw DomainError(name() + " has no norm");
  }
}

Point Point::Vector(const SpaceModel& space, std::vector<double> coords) {
  Point p;
  p.kind = space.kind();
  p.coords = std::move(coords);
  check_point(space, p);
  return p;
}

Point Point::HalfPlane(double x, double y) {
  if (!(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
    throw DomainError("half-plane points need finite x and y > 0");
  }
  Point p;
  p.kind = SpaceKind::kHyperbolicPlane;
  p.coords = {x, y};
  return p;
}

Point Point::Real(double x) {
  Point p;
  p.kind = SpaceKind::kRealLine;
  p.coords = {x};
  return p;
}

Point Point::OnSphere(const SpaceModel& space, std::vector<double> direction) {
  if (space.kind() != SpaceKind::kSphere) throw DomainError("not a sphere");
  const double n = euclid(direction);
  if (!(n > 0.0)) throw DomainError("sphere direction must be nonzero");
  for (double& c : direction) c /= n;
  Point p;
  p.kind = SpaceKind::kSphere;
  p.coords = std::move(direction);
  check_point(space, p);
  return p;
}

Point Point::OnTree(TreePoint t) {
  Point p;
  p.kind = SpaceKind::kMetricTree;
  p.tree = t;
  return p;
}

Point Point::Product(Point left, Point right) {
  Point p;
  p.kind = SpaceKind::kMaxProduct;
  p.parts = {std::move(left), std::move(right)};
  return p;
}

void check_point(const SpaceModel& space, const Point& p) {
  require_kind(space, p);
  auto finite = [&] {
    for (double c : p.coords) {
      if (!std::isfinite(c)) throw DomainError("non-finite coordinate");
    }
  };
  switch (space.kind()) {
    case SpaceKind::kEuclidean:
    case SpaceKind::kMinkowskiLp:
    case SpaceKind::kMinkowskiLinf:
    case SpaceKind::kRealLine:
      if (static_cast<int>(p.coords.size()) != space.dim()) {
        throw DomainError("expected " + std::to_string(space.dim()) + " coordinates");
      }
      finite();
      return;
    case SpaceKind::kHyperbolicPlane:
      if (p.coords.size() != 2 || !(p.coords[1] > 0.0)) {
        throw DomainError("half-plane points are (x, y) with y > 0");
      }
      finite();
      return;
    case SpaceKind::kSphere:
      if (static_cast<int>(p.coords.size()) != space.dim()) {
        throw DomainError("sphere point has the wrong dimension");
      }
      finite();
      if (std::abs(euclid(p.coords) - 1.0) > kSphereNormTol) {
        throw DomainError("sphere directions must have unit norm");
      }
      return;
    case SpaceKind::kMetricTree:
      space.tree().validate(p.tree);
      return;
    case SpaceKind::kMaxProduct:
      if (p.parts.size() != 2) throw DomainError("product points have two parts");
      check_point(space.left(), p.parts[0]);
      check_point(space.right(), p.parts[1]);
      return;
  }
}

bool same_point(const SpaceModel& space, const Point& a, const Point& b, double tol) {
  require_kind(space, a);
  require_kind(space, b);
  switch (space.kind()) {
    case SpaceKind::kMetricTree:
      return space.tree().same_point(a.tree, b.tree);
    case SpaceKind::kMaxProduct:
      return same_point(space.left(), a.parts[0], b.parts[0], tol) &&
             same_point(space.right(), a.parts[1], b.parts[1], tol);
    default:
      for (std::size_t i = 0; i < a.coords.size(); ++i) {
        if (std::abs(a.coords[i] - b.coords[i]) > tol) return false;
      }
      return true;
  }
}

IdealPoint IdealPoint::Direction(const SpaceModel& space, std::vector<double> dir) {
  if (!space.is_normed()) throw DomainError(space.name() + " has no direction ideal points");
  if (static_cast<int>(dir.size()) != space.dim()) {
    throw DomainError("direction has the wrong dimension");
  }
  const double n = space.norm(dir);
  if (!(n > 0.0)) throw DomainError("direction must be nonzero");
  for (double& c : dir) c /= n;
  IdealPoint xi;
  xi.kind = space.kind();
  xi.direction = std::move(dir);
  return xi;
}

IdealPoint IdealPoint::HalfPlaneBoundary(double x) {
  if (!std::isfinite(x)) throw DomainError("boundary point must be finite");
  IdealPoint xi;
  xi.kind = SpaceKind::kHyperbolicPlane;
  xi.boundary = x;
  return xi;
}

IdealPoint IdealPoint::HalfPlaneInfinity() {
  IdealPoint xi;
  xi.kind = SpaceKind::kHyperbolicPlane;
  xi.at_infinity = true;
  return xi;
}

IdealPoint IdealPoint::TreeEnd(int end) {
  IdealPoint xi;
  xi.kind = SpaceKind::kMetricTree;
  xi.end = end;
  return xi;
}

bool same_ideal(const SpaceModel& space, const IdealPoint& a, const IdealPoint& b,
                double tol) {
  if (a.kind != space.kind() || b.kind != space.kind()) {
    throw DomainError("ideal point does not belong to " + space.name());
  }
  switch (space.kind()) {
    case SpaceKind::kHyperbolicPlane:
      if (a.at_infinity || b.at_infinity) return a.at_infinity == b.at_infinity;
      return std::abs(a.boundary - b.boundary) <= tol;
    case SpaceKind::kMetricTree:
      return a.end == b.end;
    default:
      for (std::size_t i = 0; i < a.direction.size(); ++i) {
        if (std::abs(a.direction[i] - b.direction[i]) > tol) return false;
      }
      return true;
  }
}

IdealPoint negate_direction(const SpaceModel& space, const IdealPoint& xi) {
  if (!space.is_normed()) throw DomainError("only normed models have opposite directions");
  IdealPoint out = xi;
  for (double& c : out.direction) c = -c;
  return out;
}

double distance(const SpaceModel& space, const Point& x, const Point& y) {
  require_kind(space, x);
  require_kind(space, y);
  switch (space.kind()) {
    case SpaceKind::kEuclidean:
    case SpaceKind::kMinkowskiLp:
    case SpaceKind::kMinkowskiLinf:
    case SpaceKind::kRealLine:
      if (x.coords.size() != y.coords.size()) throw DomainError("dimension mismatch");
      return space.norm(sub(x.coords, y.coords));
    case SpaceKind::kHyperbolicPlane:
      return half_plane_distance(x, y);
    case SpaceKind::kMetricTree:
      return space.tree().distance(x.tree, y.tree);
    case SpaceKind::kSphere: {
      const auto d = sub(x.coords, y.coords);
      std::vector<double> s(x.coords.size());
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = x.coords[i] + y.coords[i];
      return space.radius() * 2.0 * std::atan2(euclid(d), euclid(s));
    }
    case SpaceKind::kMaxProduct:
      return std::max(distance(space.left(), x.parts.at(0), y.parts.at(0)),
                      distance(space.right(), x.parts.at(1), y.parts.at(1)));
  }
  throw DomainError("unknown space kind");
}

Rational distance_exact(const SpaceModel& space, const Point& x, const Point& y) {
  if (space.kind() != SpaceKind::kMetricTree) {
    throw DomainError("exact distances exist only on metric trees");
  }
  require_kind(space, x);
  require_kind(space, y);
  return space.tree().distance_exact(x.tree, y.tree);
}

// ---------------------------------------------------------------------------
// Geodesics

Point GeodesicRef::at(double t) const {
  const double slack = 1e-9 * std::max(1.0, std::abs(t));
  if (t < lo - slack || t > hi + slack) {
    throw DomainError("geodesic parameter " + fmt(t) + " outside its domain");
  }
  if (form == Form::kTree) {
    return Point::OnTree(space.tree().evaluate(path, orientation * t + to_double(tree_shift)));
  }
  const double u = orientation * t + shift;
  switch (form) {
    case Form::kLinear: {
      Point p;
      p.kind = space.kind();
      p.coords.resize(origin.size());
      for (std::size_t i = 0; i < origin.size(); ++i) p.coords[i] = origin[i] + u * velocity[i];
      return p;
    }
    case Form::kPolyline: {
      const double s = std::clamp(u, 0.0, arclength.back());
      std::size_t i = 0;
      while (i + 2 < arclength.size() && arclength[i + 1] < s) ++i;
      const double leg = arclength[i + 1] - arclength[i];
      const double w = leg > 0 ? (s - arclength[i]) / leg : 0.0;
      Point p;
      p.kind = space.kind();
      p.coords.resize(vertices[i].size());
      for (std::size_t k = 0; k < p.coords.size(); ++k) {
        p.coords[k] = (1.0 - w) * vertices[i][k] + w * vertices[i + 1][k];
      }
      return p;
    }
    case Form::kHalfPlaneVertical:
      return Point::HalfPlane(x0, std::exp(u));
    case Form::kHalfPlaneCircle:
      return Point::HalfPlane(center + radius * std::tanh(u), radius / std::cosh(u));
    case Form::kSphere: {
      const double angle = u / space.radius();
      std::vector<double> v(base.size());
      for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = std::cos(angle) * base[i] + std::sin(angle) * tangent[i];
      }
      const double n = euclid(v);
      for (double& c : v) c /= n;
      Point p;
      p.kind = SpaceKind::kSphere;
      p.coords = std::move(v);
      return p;
    }
    case Form::kTree:
      break;
  }
  throw DomainError("unsupported geodesic form");
}

Point GeodesicRef::at_exact(const Rational& t) const {
  if (form != Form::kTree) throw DomainError("exact evaluation exists only on trees");
  if ((domain != GeodesicDomain::kLine && to_double(t) < lo - 1e-12) ||
      (domain == GeodesicDomain::kSegment && to_double(t) > hi + 1e-12)) {
    throw DomainError("geodesic parameter outside its domain");
  }
  return Point::OnTree(space.tree().evaluate(path, Rational(orientation) * t + tree_shift));
}

GeodesicRef GeodesicRef::reversed() const {
  if (domain == GeodesicDomain::kRay) throw DomainError("rays cannot be reversed");
  GeodesicRef g = *this;
  g.orientation = -orientation;
  g.lo = -hi;
  g.hi = -lo;
  std::swap(g.minus_end, g.plus_end);
  return g;
}

GeodesicRef GeodesicRef::shifted(double s) const {
  if (form == Form::kTree) {
    if (s != std::floor(s) || std::abs(s) > 1e15) {
      throw DomainError("tree geodesics shift by exact amounts; use shifted_exact");
    }
    return shifted_exact(Rational(static_cast<std::int64_t>(s)));
  }
  GeodesicRef g = *this;
  g.shift = shift + orientation * s;
  g.lo = lo - s;
  g.hi = hi - s;
  return g;
}

GeodesicRef GeodesicRef::shifted_exact(const Rational& s) const {
  if (form != Form::kTree) return shifted(to_double(s));
  GeodesicRef g = *this;
  g.tree_shift = tree_shift + Rational(orientation) * s;
  g.lo = lo - to_double(s);
  g.hi = hi - to_double(s);
  return g;
}

GeodesicRef GeodesicRef::ray_towards(bool towards_plus, double start) const {
  if (form == Form::kTree) {
    if (start != std::floor(start)) throw DomainError("tree rays start at exact parameters");
    return ray_towards_exact(towards_plus, Rational(static_cast<std::int64_t>(start)));
  }
  GeodesicRef g = towards_plus ? shifted(start) : reversed().shifted(-start);
  const bool unbounded = towards_plus ? (domain != GeodesicDomain::kSegment &&
                                         std::isinf(hi))
                                      : domain == GeodesicDomain::kLine;
  if (!unbounded) throw DomainError("no unbounded end in that direction");
  g.domain = GeodesicDomain::kRay;
  g.lo = 0.0;
  g.hi = std::numeric_limits<double>::infinity();
  g.minus_end.reset();
  return g;
}

GeodesicRef GeodesicRef::ray_towards_exact(bool towards_plus, const Rational& start) const {
  if (form != Form::kTree) return ray_towards(towards_plus, to_double(start));
  const bool unbounded = towards_plus ? domain != GeodesicDomain::kSegment
                                      : domain == GeodesicDomain::kLine;
  if (!unbounded) throw DomainError("no unbounded end in that direction");
  GeodesicRef g = towards_plus ? shifted_exact(start) : reversed().shifted_exact(-start);
  g.domain = GeodesicDomain::kRay;
  g.lo = 0.0;
  g.hi = std::numeric_limits<double>::infinity();
  g.minus_end.reset();
  return g;
}

namespace {

GeodesicRef make_linear(const SpaceModel& space, const std::vector<double>& origin,
                        std::vector<double> velocity) {
  GeodesicRef g;
  g.space = space;
  g.form = GeodesicRef::Form::kLinear;
  g.origin = origin;
  g.velocity = std::move(velocity);
  return g;
}

// Semicircle through (x, y) centred at `center` on the real axis.
void set_circle(GeodesicRef& g, double center, double x, double y) {
  g.form = GeodesicRef::Form::kHalfPlaneCircle;
  g.center = center;
  g.radius = std::hypot(x - center, y);
  g.shift = std::asinh((x - center) / y);
}

}  // namespace

GeodesicRef geodesic_between(const SpaceModel& space, const Point& x, const Point& y) {
  check_point(space, x);
  check_point(space, y);
  if (same_point(space, x, y, 0.0)) {
    throw DegenerateError("geodesic between identical points");
  }
  const double d = distance(space, x, y);
  GeodesicRef g;
  switch (space.kind()) {
    case SpaceKind::kEuclidean:
    case SpaceKind::kMinkowskiLp:
    case SpaceKind::kMinkowskiLinf:
    case SpaceKind::kRealLine: {
      auto v = sub(y.coords, x.coords);
      for (double& c : v) c /= d;
      g = make_linear(space, x.coords, std::move(v));
      break;
    }
    case SpaceKind::kHyperbolicPlane: {
      g.space = space;
      const double scale = std::max({1.0, std::abs(x.x()), std::abs(y.x())});
      if (std::abs(x.x() - y.x()) <= 1e-15 * scale) {
        g.form = GeodesicRef::Form::kHalfPlaneVertical;
        g.x0 = x.x();
        g.shift = std::log(x.y());
        g.orientation = y.y() > x.y() ? 1 : -1;
      } else {
        const double c = ((y.x() * y.x() + y.y() * y.y()) - (x.x() * x.x() + x.y() * x.y())) /
                         (2.0 * (y.x() - x.x()));
        set_circle(g, c, x.x(), x.y());
        g.orientation = y.x() > x.x() ? 1 : -1;
      }
      break;
    }
    case SpaceKind::kSphere: {
      std::vector<double> s(x.coords.size());
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = x.coords[i] + y.coords[i];
      if (euclid(s) <= 1e-12) {
        throw AmbiguityError("antipodal sphere points have no unique segment");
      }
      const double c = dot(x.coords, y.coords);
      std::vector<double> w(x.coords.size());
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = y.coords[i] - c * x.coords[i];
      const double n = euclid(w);
      for (double& v : w) v /= n;
      g.space = space;
      g.form = GeodesicRef::Form::kSphere;
      g.base = x.coords;
      g.tangent = std::move(w);
      break;
    }
    case SpaceKind::kMetricTree:
      g.space = space;
      g.form = GeodesicRef::Form::kTree;
      g.path = space.tree().path(x.tree, y.tree);
      g.domain = GeodesicDomain::kSegment;
      g.lo = 0.0;
      g.hi = to_double(g.path.length());
      return g;
    case SpaceKind::kMaxProduct:
      throw DomainError("geodesics are not provided for max products");
  }
  g.domain = GeodesicDomain::kSegment;
  g.lo = 0.0;
  g.hi = d;
  return g;
}

GeodesicRef ray_from(const SpaceModel& space, const Point& base, const IdealPoint& xi) {
  check_point(space, base);
  if (xi.kind != space.kind()) throw DomainError("ideal point from another space");
  GeodesicRef g;
  switch (space.kind()) {
    case SpaceKind::kEuclidean:
    case SpaceKind::kMinkowskiLp:
    case SpaceKind::kMinkowskiLinf:
    case SpaceKind::kRealLine: {
      auto v = xi.direction;
      const double n = space.norm(v);
      for (double& c : v) c /= n;
      g = make_linear(space, base.coords, std::move(v));
      break;
    }
    case SpaceKind::kHyperbolicPlane:
      g.space = space;
      if (xi.at_infinity) {
        g.form = GeodesicRef::Form::kHalfPlaneVertical;
        g.x0 = base.x();
        g.shift = std::log(base.y());
      } else if (std::abs(base.x() - xi.boundary) <=
                 1e-15 * std::max(1.0, std::abs(xi.boundary))) {
        g.form = GeodesicRef::Form::kHalfPlaneVertical;
        g.x0 = base.x();
        g.shift = std::log(base.y());
        g.orientation = -1;
      } else {
        const double a = xi.boundary;
        const double c = (a * a - base.x() * base.x() - base.y() * base.y()) /
                         (2.0 * (a - base.x()));
        set_circle(g, c, base.x(), base.y());
        g.orientation = a > c ? 1 : -1;
      }
      break;
    case SpaceKind::kMetricTree:
      if (xi.end < 0 || xi.end >= space.tree().end_count()) {
        throw DomainError("tree end out of range");
      }
      g.space = space;
      g.form = GeodesicRef::Form::kTree;
      g.path = space.tree().path_to_end(base.tree, xi.end);
      break;
    default:
      throw DomainError(space.name() + " has no ideal boundary");
  }
  g.domain = GeodesicDomain::kRay;
  g.lo = 0.0;
  g.hi = std::numeric_limits<double>::infinity();
  g.plus_end = xi;
  return g;
}

GeodesicRef line_through(const SpaceModel& space, const IdealPoint& eta,
                         const IdealPoint& xi) {
  if (eta.kind != space.kind() || xi.kind != space.kind()) {
    throw DomainError("ideal point from another space");
  }
  if (same_ideal(space, eta, xi)) throw DegenerateError("a line needs two distinct ends");
  GeodesicRef g;
  switch (space.kind()) {
    case SpaceKind::kEuclidean:
    case SpaceKind::kMinkowskiLp:
    case SpaceKind::kMinkowskiLinf:
    case SpaceKind::kRealLine: {
      if (!same_ideal(space, eta, negate_direction(space, xi))) {
        throw DomainError("in a normed space only opposite directions bound a line");
      }
      std::vector<double> zero(space.dim(), 0.0);
      return line_through_point(space, Point::Vector(space, zero), xi);
    }
    case SpaceKind::kHyperbolicPlane:
      g.space = space;
      if (eta.at_infinity || xi.at_infinity) {
        g.form = GeodesicRef::Form::kHalfPlaneVertical;
        g.x0 = eta.at_infinity ? xi.boundary : eta.boundary;
        g.orientation = xi.at_infinity ? 1 : -1;
        g.shift = 0.0;
      } else {
        g.form = GeodesicRef::Form::kHalfPlaneCircle;
        g.center = 0.5 * (eta.boundary + xi.boundary);
        g.radius = 0.5 * std::abs(xi.boundary - eta.boundary);
        g.orientation = xi.boundary > eta.boundary ? 1 : -1;
        g.shift = 0.0;
      }
      break;
    case SpaceKind::kMetricTree:
      g.space = space;
      g.form = GeodesicRef::Form::kTree;
      g.path = space.tree().path_between_ends(eta.end, xi.end);
      break;
    default:
      throw DomainError(space.name() + " has no ideal boundary");
  }
  g.domain = GeodesicDomain::kLine;
  g.lo = -std::numeric_limits<double>::infinity();
  g.hi = std::numeric_limits<double>::infinity();
  g.minus_end = eta;
  g.plus_end = xi;
  return g;
}

GeodesicRef line_through_point(const SpaceModel& space, const Point& through,
                               const IdealPoint& xi) {
  if (!space.is_normed()) throw DomainError("line_through_point needs a normed model");
  check_point(space, through);
  auto v = xi.direction;
  const double n = space.norm(v);
  for (double& c : v) c /= n;
  GeodesicRef g = make_linear(space, through.coords, std::move(v));
  g.domain = GeodesicDomain::kLine;
  g.lo = -std::numeric_limits<double>::infinity();
  g.hi = std::numeric_limits<double>::infinity();
  g.plus_end = IdealPoint::Direction(space, xi.direction);
  g.minus_end = negate_direction(space, *g.plus_end);
  return g;
}

GeodesicRef polyline_geodesic(const SpaceModel& space, const std::vector<Point>& vertices) {
  if (!space.is_normed()) throw DomainError("polylines need a normed model");
  if (vertices.size() < 2) throw DomainError("a polyline needs two vertices");
  GeodesicRef g;
  g.space = space;
  g.form = GeodesicRef::Form::kPolyline;
  g.arclength = {0.0};
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    check_point(space, vertices[i]);
    g.vertices.push_back(vertices[i].coords);
    if (i > 0) {
      g.arclength.push_back(g.arclength.back() +
                            distance(space, vertices[i - 1], vertices[i]));
    }
  }
  g.domain = GeodesicDomain::kSegment;
  g.lo = 0.0;
  g.hi = g.arclength.back();
  return g;
}

Point midpoint(const SpaceModel& space, const Point& x, const Point& y,
               MidpointSelector selector) {
  check_point(space, x);
  check_point(space, y);
  if (space.is_normed()) {
    if (same_point(space, x, y, 0.0)) throw DegenerateError("midpoint of identical points");
    std::vector<double> m(x.coords.size());
    if (space.kind() == SpaceKind::kMinkowskiLinf && selector != MidpointSelector::kCenter) {
      // Midpoints of the sup-norm form a box: coordinate i ranges over
      // [max(x_i, y_i) - D/2, min(x_i, y_i) + D/2].
      const double half = 0.5 * distance(space, x, y);
      for (std::size_t i = 0; i < m.size(); ++i) {
        const double lo = std::max(x.coords[i], y.coords[i]) - half;
        const double hi = std::min(x.coords[i], y.coords[i]) + half;
        m[i] = selector == MidpointSelector::kUpper ? hi : lo;
      }
    } else {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = 0.5 * (x.coords[i] + y.coords[i]);
    }
    return Point::Vector(space, std::move(m));
  }
  const GeodesicRef g = geodesic_between(space, x, y);
  if (space.kind() == SpaceKind::kMetricTree) return g.at_exact(g.path.length() / 2);
  return g.at(0.5 * g.hi);
}

// ---------------------------------------------------------------------------
// JSON

SpaceModel space_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ConfigError("space needs a \"kind\"");
  const auto kind = j.at("kind").get<std::string>();
  try {
    if (kind == "euclidean") return SpaceModel::Euclidean(j.value("dim", 2));
    if (kind == "minkowski") return SpaceModel::MinkowskiLp(j.at("p").get<double>(), j.value("dim", 2));
    if (kind == "minkowski_linf") return SpaceModel::MinkowskiLinf(j.value("dim", 2));
    if (kind == "hyperbolic") return SpaceModel::HyperbolicPlane();
    if (kind == "real_line") return SpaceModel::RealLine();
    if (kind == "sphere") {
      return SpaceModel::Sphere(j.at("radius").get<double>(), j.value("dim", 3));
    }
    if (kind == "tree") {
      if (j.contains("file")) return SpaceModel::Tree(load_tree_desc(j.at("file").get<std::string>()));
      return SpaceModel::Tree(tree_desc_from_json(j.at("tree")));
    }
    if (kind == "max_product") {
      return SpaceModel::MaxProduct(space_from_json(j.at("left")), space_from_json(j.at("right")));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("space " + j.dump() + ": " + e.what());
  }
  throw ConfigError("unknown space kind '" + kind + "'");
}

nlohmann::json space_to_json(const SpaceModel& space) {
  nlohmann::json j;
  j["kind"] = to_string(space.kind());
  switch (space.kind()) {
    case SpaceKind::kEuclidean:
    case SpaceKind::kMinkowskiLinf:
      j["dim"] = space.dim();
      break;
    case SpaceKind::kMinkowskiLp:
      j["p"] = space.p();
      j["dim"] = space.dim();
      break;
    case SpaceKind::kSphere:
      j["radius"] = space.radius();
      j["dim"] = space.dim();
      break;
    case SpaceKind::kMetricTree:
      j["tree"] = tree_desc_to_json(space.tree().desc());
      break;
    case SpaceKind::kMaxProduct:
      j["left"] = space_to_json(space.left());
      j["right"] = space_to_json(space.right());
      break;
    default:
      break;
  }
  return j;
}

Point point_from_json(const SpaceModel& space, const nlohmann::json& j) {
  try {
    switch (space.kind()) {
      case SpaceKind::kMetricTree:
        return Point::OnTree(space.tree().point_from_json(j));
      case SpaceKind::kMaxProduct:
        return Point::Product(point_from_json(space.left(), j.at("left")),
                              point_from_json(space.right(), j.at("right")));
      case SpaceKind::kRealLine:
        if (j.is_number()) return Point::Real(j.get<double>());
        return Point::Vector(space, j.get<std::vector<double>>());
      case SpaceKind::kHyperbolicPlane: {
        const auto c = j.get<std::vector<double>>();
        if (c.size() != 2) throw DomainError("half-plane points are [x, y]");
        return Point::HalfPlane(c[0], c[1]);
      }
      case SpaceKind::kSphere:
        return Point::OnSphere(space, j.get<std::vector<double>>());
      default:
        return Point::Vector(space, j.get<std::vector<double>>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("point " + j.dump() + ": " + e.what());
  }
}

nlohmann::json point_to_json(const SpaceModel& space, const Point& p) {
  switch (space.kind()) {
    case SpaceKind::kMetricTree:
      return space.tree().point_to_json(p.tree);
    case SpaceKind::kMaxProduct:
      return {{"left", point_to_json(space.left(), p.parts.at(0))},
              {"right", point_to_json(space.right(), p.parts.at(1))}};
    default:
      return p.coords;
  }
}

IdealPoint ideal_from_json(const SpaceModel& space, const nlohmann::json& j) {
  try {
    switch (space.kind()) {
      case SpaceKind::kHyperbolicPlane:
        if ((j.is_string() && j.get<std::string>() == "infinity") ||
            (j.is_object() && j.value("infinity", false))) {
          return IdealPoint::HalfPlaneInfinity();
        }
        if (j.is_number()) return IdealPoint::HalfPlaneBoundary(j.get<double>());
        return IdealPoint::HalfPlaneBoundary(j.at("boundary").get<double>());
      case SpaceKind::kMetricTree: {
        const int end = j.is_number() ? j.get<int>() : j.at("end").get<int>();
        if (end < 0 || end >= space.tree().end_count()) throw DomainError("tree end out of range");
        return IdealPoint::TreeEnd(end);
      }
      default:
        if (j.is_array()) return IdealPoint::Direction(space, j.get<std::vector<double>>());
        return IdealPoint::Direction(space, j.at("direction").get<std::vector<double>>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("ideal point " + j.dump() + ": " + e.what());
  }
}

nlohmann::json ideal_to_json(const SpaceModel& space, const IdealPoint& xi) {
  switch (space.kind()) {
    case SpaceKind::kHyperbolicPlane:
      if (xi.at_infinity) return {{"infinity", true}};
      return {{"boundary", xi.boundary}};
    case SpaceKind::kMetricTree:
      return {{"end", xi.end}};
    default:
      return {{"direction", xi.direction}};
  }
}

}  // namespace buselab
