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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "buselab/errors.h"
#include "buselab/metric_verify.h"

namespace buselab {
namespace {

Rational Q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

Point V(const SpaceModel& s, std::vector<double> c) { return Point::Vector(s, std::move(c)); }

BusemannOptions Truncated() {
  BusemannOptions o;
  o.prefer_closed_form = false;
  return o;
}

TEST(Busemann, EuclideanTruncatedMatchesInnerProduct) {
  const auto e2 = SpaceModel::Euclidean(2);
  const auto ray = ray_from(e2, V(e2, {0, 0}), IdealPoint::Direction(e2, {1, 0}));
  EXPECT_DOUBLE_EQ(busemann_value(e2, ray, V(e2, {3, 4})), -3.0);
  const auto lim = busemann_truncated(e2, ray, V(e2, {3, 4}));
  EXPECT_NEAR(lim.value, -3.0, 1e-6);
  // Unaccelerated truncation at T = 1e6 for comparison: sqrt((T-3)^2 + 16) - T.
  const double T = 1e6;
  EXPECT_NEAR(std::hypot(T - 3, 4) - T, -3.0, 1e-5);
}

TEST(Busemann, NormalizedAtBasepoint) {
  const auto h = SpaceModel::HyperbolicPlane();
  const auto l3 = SpaceModel::MinkowskiLp(3);
  const auto tree = SpaceModel::Tree(star_tree(3, Q(1), 1, true));
  EXPECT_EQ(busemann_value(h, ray_from(h, Point::HalfPlane(2, 3), IdealPoint::HalfPlaneBoundary(-1)),
                           Point::HalfPlane(2, 3)),
            0.0);
  const auto lray = ray_from(l3, V(l3, {1, 2}), IdealPoint::Direction(l3, {1, 1}));
  EXPECT_NEAR(busemann_value(l3, lray, V(l3, {1, 2})), 0.0, 1e-15);
  const auto p = Point::OnTree(tree.tree().on_segment(0, Q(1, 3)));
  EXPECT_EQ(busemann_exact(tree, ray_from(tree, p, IdealPoint::TreeEnd(1)), p), Q(0));
}

TEST(Busemann, HyperbolicClosedFormsAgreeWithTruncation) {
  const auto h = SpaceModel::HyperbolicPlane();
  const auto up = ray_from(h, Point::HalfPlane(0, 1), IdealPoint::HalfPlaneInfinity());
  const Point y = Point::HalfPlane(1.5, 0.4);
  EXPECT_NEAR(busemann_value(h, up, y), -std::log(0.4), 1e-14);
  EXPECT_NEAR(busemann_truncated(h, up, y).value, -std::log(0.4), 1e-6);

  const auto side = ray_from(h, Point::HalfPlane(0.3, 2), IdealPoint::HalfPlaneBoundary(1));
  const double closed = busemann_value(h, side, y);
  EXPECT_NEAR(busemann_value(h, side, y, Truncated()), closed, 1e-6);
  // Poisson-kernel oracle: beta = log(P(o)/P(y)) with P(z) = Im z / |z - 1|^2.
  auto poisson = [](double x, double v) { return v / ((x - 1) * (x - 1) + v * v); };
  EXPECT_NEAR(closed, std::log(poisson(0.3, 2) / poisson(1.5, 0.4)), 1e-12);
}

TEST(Busemann, MinkowskiTruncationMatchesClosedForm) {
  for (double p : {1.5, 3.0}) {
    const auto l = SpaceModel::MinkowskiLp(p);
    const auto ray = ray_from(l, V(l, {0.5, -1}), IdealPoint::Direction(l, {2, 1}));
    Rng rng(7);
    for (int i = 0; i < 10; ++i) {
      const Point y = random_point(l, rng);
      EXPECT_NEAR(busemann_value(l, ray, y, Truncated()), busemann_value(l, ray, y), 1e-6);
    }
  }
}

TEST(Busemann, SupNormHasNoClosedForm) {
  const auto linf = SpaceModel::MinkowskiLinf();
  const auto ray = ray_from(linf, V(linf, {0, 0}), IdealPoint::Direction(linf, {1, 0}));
  EXPECT_FALSE(busemann_closed_form(linf, ray, V(linf, {1, 1})).has_value());
  EXPECT_NEAR(busemann_value(linf, ray, V(linf, {3, 1})), -3.0, 1e-6);
}

TEST(Busemann, TreeMergingRaysExact) {
  const auto space = SpaceModel::Tree(star_tree(3, Q(1), 12, true));
  const MetricTree& t = space.tree();
  // x on leg 0 and y on leg 1; rays toward end 2 merge at the center.
  const Point x = Point::OnTree(t.on_segment(0, Q(1, 3)));
  const Point y = Point::OnTree(t.on_segment(1, Q(3, 4)));
  const Rational s0 = distance_exact(space, x, Point::OnTree(t.vertex(0)));
  const Rational t0 = distance_exact(space, y, Point::OnTree(t.vertex(0)));
  const auto c = ray_from(space, x, IdealPoint::TreeEnd(2));
  const auto d = ray_from(space, y, IdealPoint::TreeEnd(2));
  EXPECT_EQ(busemann_exact(space, c, y), t0 - s0);
  EXPECT_EQ(busemann_exact(space, d, x), s0 - t0);
  EXPECT_EQ(ray_pseudodistance(space, c, d), 0.0);
  const auto r = check_busemann_sum_bound(space, c, d);
  EXPECT_TRUE(r.passed());
}

TEST(Busemann, PropertiesOnSamples) {
  const auto h = SpaceModel::HyperbolicPlane();
  const auto l3 = SpaceModel::MinkowskiLp(3);
  struct Case {
    SpaceModel space;
    GeodesicRef ray;
  };
  const std::vector<Case> cases = {
      {h, ray_from(h, Point::HalfPlane(0, 1), IdealPoint::HalfPlaneBoundary(2))},
      {h, ray_from(h, Point::HalfPlane(0, 1), IdealPoint::HalfPlaneInfinity())},
      {l3, ray_from(l3, V(l3, {0, 0}), IdealPoint::Direction(l3, {1, 2}))}};
  for (const auto& c : cases) {
    Rng rng(23);
    for (int i = 0; i < 40; ++i) {
      const Point x = random_point(c.space, rng), y = random_point(c.space, rng);
      const double bx = busemann_value(c.space, c.ray, x);
      const double by = busemann_value(c.space, c.ray, y);
      EXPECT_LE(std::abs(bx - by), distance(c.space, x, y) + 1e-6);
      const double bm = busemann_value(c.space, c.ray, midpoint(c.space, x, y));
      EXPECT_LE(bm, 0.5 * (bx + by) + 1e-6);
    }
  }
}

TEST(Horoball, Examples) {
  const auto e2 = SpaceModel::Euclidean(2);
  const auto ray = ray_from(e2, V(e2, {0, 0}), IdealPoint::Direction(e2, {1, 0}));
  EXPECT_TRUE(horoball_contains(e2, ray, V(e2, {0, 0}), V(e2, {0, 0})));
  EXPECT_TRUE(horoball_contains(e2, ray, V(e2, {0, 0}), V(e2, {5, 0})));
  EXPECT_FALSE(horoball_contains(e2, ray, V(e2, {0, 0}), V(e2, {-0.5, 3})));
  const auto h = SpaceModel::HyperbolicPlane();
  const auto up = ray_from(h, Point::HalfPlane(0, 1), IdealPoint::HalfPlaneInfinity());
  EXPECT_FALSE(horoball_contains(h, up, Point::HalfPlane(0, 1), Point::HalfPlane(7, 0.5)));
  EXPECT_TRUE(horoball_contains(h, up, Point::HalfPlane(0, 1), Point::HalfPlane(-7, 1)));
}

TEST(RayPseudodistance, Examples) {
  const auto e2 = SpaceModel::Euclidean(2);
  const auto xi = IdealPoint::Direction(e2, {1, 0});
  const auto c = ray_from(e2, V(e2, {0, 0}), xi);
  const auto d = ray_from(e2, V(e2, {0, 1}), xi);
  EXPECT_NEAR(ray_pseudodistance(e2, c, d), 1.0, 1e-6);
  EXPECT_TRUE(check_busemann_sum_bound(e2, c, d).passed());

  const auto h = SpaceModel::HyperbolicPlane();
  const auto inf = IdealPoint::HalfPlaneInfinity();
  const auto hc = ray_from(h, Point::HalfPlane(0, 1), inf);
  const auto hd = ray_from(h, Point::HalfPlane(3, 1), inf);
  EXPECT_LE(ray_pseudodistance(h, hc, hd), 1e-3);
  const auto r = check_busemann_sum_bound(h, hc, hd);
  EXPECT_TRUE(r.passed());
}

TEST(RayPseudodistance, DivergingRaysRejected) {
  const auto e2 = SpaceModel::Euclidean(2);
  const auto c = ray_from(e2, V(e2, {0, 0}), IdealPoint::Direction(e2, {1, 0}));
  const auto d = ray_from(e2, V(e2, {0, 1}), IdealPoint::Direction(e2, {1, 1}));
  EXPECT_THROW(ray_pseudodistance(e2, c, d), DomainError);
  const auto tree = SpaceModel::Tree(star_tree(3, Q(1), 1, true));
  const Point o = Point::OnTree(tree.tree().vertex(0));
  EXPECT_THROW(ray_pseudodistance(tree, ray_from(tree, o, IdealPoint::TreeEnd(0)),
                                  ray_from(tree, o, IdealPoint::TreeEnd(1))),
               DomainError);
}

TEST(RayPseudodistance, PseudometricOnParallelRays) {
  const auto e2 = SpaceModel::Euclidean(2);
  const auto xi = IdealPoint::Direction(e2, {1, 0});
  Rng rng(41);
  std::vector<GeodesicRef> rays;
  for (int i = 0; i < 6; ++i) rays.push_back(ray_from(e2, random_point(e2, rng), xi));
  for (const auto& a : rays) {
    for (const auto& b : rays) {
      const double ab = ray_pseudodistance(e2, a, b);
      EXPECT_NEAR(ab, ray_pseudodistance(e2, b, a), 1e-6);
      EXPECT_NEAR(ab, std::abs(a.at(0).y() - b.at(0).y()), 1e-6);
      for (const auto& c : rays) {
        EXPECT_LE(ab, ray_pseudodistance(e2, a, c) + ray_pseudodistance(e2, c, b) + 1e-6);
      }
    }
  }
}

TEST(Tits, Examples) {
  const auto e2 = SpaceModel::Euclidean(2);
  const Point o = V(e2, {0, 0});
  auto dir = [&](double theta) {
    return IdealPoint::Direction(e2, {std::cos(theta), std::sin(theta)});
  };
  for (double theta : {0.01, std::numbers::pi / 2, std::numbers::pi}) {
    const double delta = tits_delta(e2, o, dir(0), dir(theta));
    EXPECT_NEAR(delta, std::sin(theta / 2), 1e-4) << theta;
  }
  EXPECT_NEAR(tits_delta(e2, o, dir(0), dir(std::numbers::pi / 2)), 0.70711, 1e-4);
  EXPECT_TRUE(tits_below_pi(tits_delta(e2, o, dir(0), dir(std::numbers::pi / 2))));
  EXPECT_FALSE(tits_below_pi(tits_delta(e2, o, dir(0), dir(std::numbers::pi))));
  EXPECT_THROW(tits_delta(e2, o, dir(0), dir(0)), DegenerateError);

  const auto tree = SpaceModel::Tree(star_tree(3, Q(1), 1, true));
  EXPECT_EQ(tits_delta(tree, Point::OnTree(tree.tree().vertex(0)), IdealPoint::TreeEnd(0),
                       IdealPoint::TreeEnd(2)),
            1.0);

  const auto h = SpaceModel::HyperbolicPlane();
  EXPECT_NEAR(tits_delta(h, Point::HalfPlane(0, 1), IdealPoint::HalfPlaneInfinity(),
                         IdealPoint::HalfPlaneBoundary(0)),
              1.0, 1e-4);
}

TEST(Shadow, Examples) {
  const auto e2 = SpaceModel::Euclidean(2);
  const Point y = V(e2, {-1, 0}), x0 = V(e2, {0, 0});
  EXPECT_TRUE(shadow_contains(e2, y, x0, V(e2, {2, 0})));
  EXPECT_FALSE(shadow_contains(e2, y, x0, V(e2, {0, 2})));
  EXPECT_THROW(shadow_contains(e2, x0, x0, V(e2, {2, 0})), DomainError);
  const Viewpoint west = IdealPoint::Direction(e2, {-1, 0});
  EXPECT_TRUE(shadow_contains(e2, west, x0, V(e2, {2, 0})));
  EXPECT_FALSE(shadow_contains(e2, west, x0, V(e2, {2, 1})));

  const auto tree = SpaceModel::Tree(star_tree(3, Q(1), 4, false));
  const MetricTree& t = tree.tree();
  const Point center = Point::OnTree(t.vertex(0));
  EXPECT_TRUE(shadow_contains(tree, Point::OnTree(t.on_segment(0, Q(1, 2))), center,
                              Point::OnTree(t.on_segment(1, Q(1, 4)))));
  EXPECT_FALSE(shadow_contains(tree, Point::OnTree(t.on_segment(0, Q(1, 2))),
                               Point::OnTree(t.on_segment(1, Q(1, 2))), center));
}

TEST(Shadow, TreeSphereSample) {
  const auto tree = SpaceModel::Tree(star_tree(3, Q(1), 4, false));
  const MetricTree& t = tree.tree();
  const Point y = Point::OnTree(t.on_segment(0, Q(1, 2)));
  const auto shadow = spherical_shadow_sample(tree, y, Point::OnTree(t.vertex(0)), 0.5, 0);
  // The two other legs at distance 1/2 from the center.
  ASSERT_EQ(shadow.size(), 2u);
  for (const auto& z : shadow) EXPECT_EQ(distance_exact(tree, y, z), Q(1));
}

TEST(Shadow, SemicontinuitySpotCheck) {
  const auto e2 = SpaceModel::Euclidean(2);
  const Point y = V(e2, {-1, 0}), x0 = V(e2, {0, 0});
  constexpr double kRho = 1.0, kEps = 0.1, kDelta = 0.01;
  constexpr int kResolution = 3600;
  const auto base = spherical_shadow_sample(e2, y, x0, kRho, kResolution);
  ASSERT_FALSE(base.empty());
  for (double sign : {-1.0, 1.0}) {
    const Point x1 = V(e2, {-1 + std::cos(kDelta), sign * std::sin(kDelta)});
    const auto moved = spherical_shadow_sample(e2, y, x1, kRho, kResolution);
    ASSERT_FALSE(moved.empty());
    for (const auto& z : moved) {
      double nearest = INFINITY;
      for (const auto& b : base) nearest = std::min(nearest, distance(e2, z, b));
      EXPECT_LE(nearest, kEps);
    }
  }
}

}  // namespace
}  // namespace buselab
