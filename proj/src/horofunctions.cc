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

#include "buselab/horofunctions.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "buselab/errors.h"
#include "buselab/numeric.h"

namespace buselab {
namespace {

constexpr double kTitsTol = 1e-4;

void require_unbounded(const GeodesicRef& ray) {
  if (!std::isinf(ray.hi)) throw DomainError("Busemann functions need a ray or a line");
}

int plus_end_of(const GeodesicRef& ray) {
  if (ray.plus_end) return ray.plus_end->end;
  const int end = ray.orientation > 0 ? ray.path.trail_end : ray.path.lead_end;
  if (end < 0) throw DomainError("tree geodesic has no end in its forward direction");
  return end;
}

// log(((x - a)^2 + y^2) / y): Busemann function towards the boundary point a
// up to an additive constant.
double log_poisson(const Point& p, double a) {
  const double dx = p.x() - a;
  return std::log((dx * dx + p.y() * p.y()) / p.y());
}

// Largest truncation at which half-plane rays stay representable.
double truncation_cap(const SpaceModel& space, double requested) {
  return space.kind() == SpaceKind::kHyperbolicPlane ? std::min(requested, 512.0) : requested;
}

}  // namespace

TruncatedLimit busemann_truncated(const SpaceModel& space, const GeodesicRef& ray,
                                  const Point& y, const BusemannOptions& options) {
  require_unbounded(ray);
  const Point origin = ray.at(0.0);
  double t = options.initial_truncation > 0 ? options.initial_truncation
                                            : 1.0 + distance(space, y, origin);
  const double cap = truncation_cap(space, options.max_truncation);
  auto v = [&](double s) { return distance(space, y, ray.at(s)) - s; };
  double v1 = v(t);
  while (2 * t <= cap) {
    const double v2 = v(2 * t);
    if (std::abs(v2 - v1) < options.tolerance) {
      return {2 * v2 - v1, v2, 2 * t};
    }
    t *= 2;
    v1 = v2;
  }
  throw ConvergenceError("Busemann limit did not settle below truncation " + std::to_string(cap));
}

std::optional<double> busemann_closed_form(const SpaceModel& space, const GeodesicRef& ray,
                                           const Point& y) {
  require_unbounded(ray);
  switch (space.kind()) {
    case SpaceKind::kEuclidean:
    case SpaceKind::kMinkowskiLp:
    case SpaceKind::kRealLine: {
      if (ray.form != GeodesicRef::Form::kLinear) return std::nullopt;
      const Point o = ray.at(0.0);
      const double p = space.kind() == SpaceKind::kMinkowskiLp ? space.p() : 2.0;
      double beta = 0.0;
      for (std::size_t i = 0; i < o.coords.size(); ++i) {
        const double u = ray.orientation * ray.velocity[i];
        const double grad = std::copysign(std::pow(std::abs(u), p - 1.0), u);
        beta -= grad * (y.coords[i] - o.coords[i]);
      }
      return beta;
    }
    case SpaceKind::kHyperbolicPlane: {
      const Point o = ray.at(0.0);
      if (ray.form == GeodesicRef::Form::kHalfPlaneVertical) {
        if (ray.orientation > 0) return std::log(o.y()) - std::log(y.y());
        return log_poisson(y, ray.x0) - log_poisson(o, ray.x0);
      }
      const double a = ray.center + ray.orientation * ray.radius;
      return log_poisson(y, a) - log_poisson(o, a);
    }
    case SpaceKind::kMetricTree: {
      const int end = plus_end_of(ray);
      const MetricTree& tree = space.tree();
      const Point o = ray.at_exact(0);
      if (y.tree.exact) return to_double(tree.end_height(y.tree, end) - tree.end_height(o.tree, end));
      return tree.end_height_real(y.tree, end) - to_double(tree.end_height(o.tree, end));
    }
    default:
      return std::nullopt;
  }
}

Rational busemann_exact(const SpaceModel& space, const GeodesicRef& ray, const Point& y) {
  if (space.kind() != SpaceKind::kMetricTree || !y.tree.exact) {
    throw DomainError("exact Busemann values need an exact tree point");
  }
  require_unbounded(ray);
  const int end = plus_end_of(ray);
  const MetricTree& tree = space.tree();
  return tree.end_height(y.tree, end) - tree.end_height(ray.at_exact(0).tree, end);
}

double busemann_value(const SpaceModel& space, const GeodesicRef& ray, const Point& y,
                      const BusemannOptions& options) {
  check_point(space, y);
  if (options.prefer_closed_form) {
    if (auto v = busemann_closed_form(space, ray, y)) return *v;
  }
  return busemann_truncated(space, ray, y, options).value;
}

bool horoball_contains(const SpaceModel& space, const GeodesicRef& ray, const Point& x0,
                       const Point& x) {
  if (space.kind() == SpaceKind::kMetricTree && x0.tree.exact && x.tree.exact) {
    return busemann_exact(space, ray, x) <= busemann_exact(space, ray, x0);
  }
  return busemann_value(space, ray, x) <= busemann_value(space, ray, x0) + 1e-9;
}

double ray_pseudodistance(const SpaceModel& space, const GeodesicRef& c, const GeodesicRef& d,
                          int levels) {
  require_unbounded(c);
  require_unbounded(d);
  if (levels < 1) throw DomainError("refinement levels must be positive");
  if (c.plus_end && d.plus_end && !same_ideal(space, *c.plus_end, *d.plus_end)) {
    throw DomainError("rays do not share their ideal endpoint");
  }
  if (space.kind() == SpaceKind::kMetricTree) {
    // Rays towards one end of a tree share a tail.
    if (plus_end_of(c) != plus_end_of(d)) throw DomainError("tree rays towards different ends");
    return 0.0;
  }
  const double d0 = distance(space, c.at(0.0), d.at(0.0));
  // Half-plane points near a boundary end lose their offsets to rounding
  // beyond parameters of a few dozen.
  const bool half_plane = space.kind() == SpaceKind::kHyperbolicPlane;
  for (double t = 1.0; t <= (half_plane ? 16.0 : 1024.0); t *= 2) {
    const double dt = distance(space, c.at(t), d.at(t));
    if (dt > d0 + 1e-6) {
      throw DomainError("rays are not asymptotic: distance grows from " + std::to_string(d0) +
                        " to " + std::to_string(dt));
    }
  }
  const double window = std::min(levels * (1.0 + d0), half_plane ? 24.0 : 600.0);
  auto inner = [&](double s) {
    const Point cs = c.at(s);
    return minimize_unimodal([&](double t) { return distance(space, cs, d.at(t)); }, 0.0,
                             window)
        .second;
  };
  const double best = minimize_unimodal(inner, 0.0, window).second;
  return std::min({best, d0, inner(0.0), inner(window)});
}

VerificationReport check_busemann_sum_bound(const SpaceModel& space, const GeodesicRef& c,
                                            const GeodesicRef& d) {
  constexpr double kSlack = 1e-6;
  VerificationReport report("busemann_sum_bound." + space.name(), kSlack);
  OrderedJson w;
  if (space.kind() == SpaceKind::kMetricTree) {
    const Rational sum = busemann_exact(space, c, d.at_exact(0)) +
                         busemann_exact(space, d, c.at_exact(0));
    const double rho = ray_pseudodistance(space, c, d);
    w["sum"] = format_rational(sum);
    w["rho"] = rho;
    report.record(sum >= 0 && to_double(sum) <= 2 * rho, w);
    report.details()["sum"] = format_rational(sum);
    report.details()["rho"] = rho;
    return report;
  }
  const double sum = busemann_value(space, c, d.at(0.0)) + busemann_value(space, d, c.at(0.0));
  const double rho = ray_pseudodistance(space, c, d);
  w["sum"] = sum;
  w["rho"] = rho;
  report.record(sum >= -kSlack && sum <= 2 * rho + kSlack, w);
  report.details()["sum"] = sum;
  report.details()["rho"] = rho;
  return report;
}

double tits_delta(const SpaceModel& space, const Point& o, const IdealPoint& xi,
                  const IdealPoint& eta, double initial_truncation) {
  if (same_ideal(space, xi, eta)) throw DegenerateError("Tits delta needs distinct ideal points");
  if (space.kind() == SpaceKind::kMetricTree) {
    // Rays to distinct ends separate for good once they leave their common
    // initial segment.
    return 1.0;
  }
  const GeodesicRef c = ray_from(space, o, xi);
  const GeodesicRef d = ray_from(space, o, eta);
  auto f = [&](double t) { return distance(space, c.at(t), d.at(t)) / (2 * t); };
  const double cap = truncation_cap(space, 1e8);
  double t = std::max(initial_truncation, 1e-3);
  double f1 = f(t), f2 = f(2 * t);
  double r1 = 2 * f2 - f1;
  while (4 * t <= cap) {
    const double f3 = f(4 * t);
    const double r2 = 2 * f3 - f2;
    if (std::abs(f3 - f2) < kTitsTol || std::abs(r2 - r1) < kTitsTol) {
      const double value = std::abs(f3 - f2) < kTitsTol ? f3 : r2;
      return std::clamp(value, 0.0, 1.0);
    }
    t *= 2;
    f2 = f3;
    r1 = r2;
  }
  throw ConvergenceError("Tits delta did not settle");
}

bool tits_below_pi(double delta) { return delta < 1.0 - kTitsTol; }

bool shadow_contains(const SpaceModel& space, const Viewpoint& y, const Point& x0,
                     const Point& z, double tol) {
  if (const auto* py = std::get_if<Point>(&y)) {
    if (same_point(space, *py, x0)) throw DomainError("shadow viewpoint equals its base point");
    if (space.kind() == SpaceKind::kMetricTree && py->tree.exact && x0.tree.exact &&
        z.tree.exact) {
      const MetricTree& tree = space.tree();
      return tree.distance_exact(py->tree, x0.tree) + tree.distance_exact(x0.tree, z.tree) ==
             tree.distance_exact(py->tree, z.tree);
    }
    return distance(space, *py, x0) + distance(space, x0, z) <= distance(space, *py, z) + tol;
  }
  const GeodesicRef ray = ray_from(space, x0, std::get<IdealPoint>(y));
  if (space.kind() == SpaceKind::kMetricTree && x0.tree.exact && z.tree.exact) {
    return busemann_exact(space, ray, z) == space.tree().distance_exact(x0.tree, z.tree);
  }
  return std::abs(busemann_value(space, ray, z) - distance(space, x0, z)) <= tol;
}

std::vector<Point> spherical_shadow_sample(const SpaceModel& space, const Viewpoint& y,
                                           const Point& x0, double rho, int resolution,
                                           double tol) {
  if (!(rho > 0.0)) throw DomainError("shadow sphere radius must be positive");
  std::vector<Point> sphere;
  switch (space.kind()) {
    case SpaceKind::kRealLine:
      sphere = {Point::Real(x0.x() - rho), Point::Real(x0.x() + rho)};
      break;
    case SpaceKind::kEuclidean:
    case SpaceKind::kMinkowskiLp:
    case SpaceKind::kMinkowskiLinf:
      if (space.dim() != 2) throw DomainError("spherical shadows are sampled in the plane");
      for (int k = 0; k < resolution; ++k) {
        const double theta = 2 * std::numbers::pi * k / resolution;
        const std::vector<double> v = {std::cos(theta), std::sin(theta)};
        const double n = space.norm(v);
        sphere.push_back(Point::Vector(space, {x0.x() + rho * v[0] / n, x0.y() + rho * v[1] / n}));
      }
      break;
    case SpaceKind::kHyperbolicPlane: {
      const double r = std::tanh(rho / 2);
      for (int k = 0; k < resolution; ++k) {
        const std::complex<double> w = std::polar(r, 2 * std::numbers::pi * k / resolution);
        const std::complex<double> h = std::complex<double>(0, 1) * (1.0 + w) / (1.0 - w);
        sphere.push_back(Point::HalfPlane(x0.x() + x0.y() * h.real(), x0.y() * h.imag()));
      }
      break;
    }
    case SpaceKind::kMetricTree: {
      constexpr std::int64_t kDen = 720720;
      const Rational r(std::llround(rho * kDen), kDen);
      if (std::abs(to_double(r) - rho) > 1e-12) {
        throw DomainError("tree shadow radius must be a rational with small denominator");
      }
      for (const auto& p : space.tree().points_at_distance(x0.tree, r)) {
        sphere.push_back(Point::OnTree(p));
      }
      break;
    }
    default:
      throw DomainError("spherical shadows are not sampled in " + space.name());
  }
  std::vector<Point> out;
  for (const auto& z : sphere) {
    if (shadow_contains(space, y, x0, z, tol)) out.push_back(z);
  }
  return out;
}

}  // namespace buselab
