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

#include "buselab/metric_verify.h"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "buselab/errors.h"

namespace buselab {
namespace {

Rational Q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

Point V(const SpaceModel& s, std::vector<double> c) { return Point::Vector(s, std::move(c)); }

BijectionSpec SineOnLine() {
  BijectionSpec f;
  f.name = "test_sine";
  f.forward = [](const Point& p) {
    return Point::Real(p.x() + std::sin(2 * std::numbers::pi * p.x()) / (2 * std::numbers::pi));
  };
  f.inverse = [](const Point& p) { return p; };  // unused by is_isometry
  return f;
}

BijectionSpec Rotation(double angle) {
  const auto e2 = SpaceModel::Euclidean(2);
  BijectionSpec f;
  f.name = "rotation";
  f.domain = e2;
  f.codomain = e2;
  f.forward = [=](const Point& p) {
    return V(e2, {std::cos(angle) * p.x() - std::sin(angle) * p.y(),
                  std::sin(angle) * p.x() + std::cos(angle) * p.y()});
  };
  f.inverse = [=](const Point& p) {
    return V(e2, {std::cos(angle) * p.x() + std::sin(angle) * p.y(),
                  -std::sin(angle) * p.x() + std::cos(angle) * p.y()});
  };
  return f;
}

TEST(BusemannMidpoints, EuclideanIsEquality) {
  const auto e2 = SpaceModel::Euclidean(2);
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const Point x = random_point(e2, rng), y = random_point(e2, rng), z = random_point(e2, rng);
    const auto r = check_busemann_midpoints(e2, x, y, z);
    ASSERT_TRUE(r.passed());
    const Point m = midpoint(e2, x, y), n = midpoint(e2, x, z);
    EXPECT_NEAR(distance(e2, m, n), 0.5 * distance(e2, y, z), 1e-12);
  }
}

TEST(BusemannMidpoints, SupNormWitness) {
  const auto linf = SpaceModel::MinkowskiLinf();
  const auto r = check_busemann_midpoints(linf, V(linf, {0, 0}), V(linf, {2, 0}),
                                          V(linf, {2, 2}), MidpointSelector::kLower,
                                          MidpointSelector::kCenter);
  ASSERT_FALSE(r.passed());
  ASSERT_EQ(r.witnesses().size(), 1u);
  const auto w = r.witnesses()[0];
  EXPECT_EQ(w["m"], OrderedJson({1.0, -1.0}));
  EXPECT_EQ(w["n"], OrderedJson({1.0, 1.0}));
  EXPECT_EQ(w["mn"].get<double>(), 2.0);
  EXPECT_EQ(w["half_yz"].get<double>(), 1.0);
}

TEST(BusemannMidpoints, TreeExhaustiveOverSevenPoints) {
  const auto space = SpaceModel::Tree(star_tree(3, Q(1), 2, false));
  const MetricTree& t = space.tree();
  const std::vector<Point> pts = {
      Point::OnTree(t.vertex(0)),          Point::OnTree(t.vertex(1)),
      Point::OnTree(t.vertex(2)),          Point::OnTree(t.vertex(3)),
      Point::OnTree(t.on_segment(0, Q(1, 2))), Point::OnTree(t.on_segment(1, Q(1, 2))),
      Point::OnTree(t.on_segment(2, Q(1, 2)))};
  int triples = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      for (std::size_t k = 0; k < pts.size(); ++k) {
        if (i == j || j == k || i == k) continue;
        EXPECT_TRUE(check_busemann_midpoints(space, pts[i], pts[j], pts[k]).passed());
        ++triples;
      }
    }
  }
  EXPECT_EQ(triples, 210);
}

TEST(BusemannMidpoints, BusemannCatalogRandomTriples) {
  const std::vector<SpaceModel> spaces = {
      SpaceModel::Euclidean(2), SpaceModel::MinkowskiLp(1.5), SpaceModel::MinkowskiLp(2),
      SpaceModel::MinkowskiLp(3), SpaceModel::HyperbolicPlane(),
      SpaceModel::Tree(comb_tree(3, Q(1, 2), Q(1, 3), 6)), SpaceModel::RealLine()};
  for (const auto& space : spaces) {
    ASSERT_TRUE(space.is_busemann());
    Rng rng(19);
    for (int i = 0; i < 100; ++i) {
      const Point x = random_point(space, rng), y = random_point(space, rng),
                  z = random_point(space, rng);
      if (same_point(space, x, y) || same_point(space, x, z)) continue;
      EXPECT_TRUE(check_busemann_midpoints(space, x, y, z).passed()) << space.name();
    }
  }
}

TEST(DistanceConvexity, FlatAndHyperbolicPass) {
  const auto e2 = SpaceModel::Euclidean(2);
  const auto g1 = geodesic_between(e2, V(e2, {0, 0}), V(e2, {3, 1}));
  const auto g2 = geodesic_between(e2, V(e2, {0, 2}), V(e2, {1, 5}));
  EXPECT_TRUE(check_distance_convexity(e2, g1, g2, 6).passed());

  const auto h = SpaceModel::HyperbolicPlane();
  const auto a = geodesic_between(h, Point::HalfPlane(-3, 0.5), Point::HalfPlane(-1, 2));
  const auto b = geodesic_between(h, Point::HalfPlane(1, 0.2), Point::HalfPlane(4, 1));
  EXPECT_TRUE(check_distance_convexity(h, a, b, 6).passed());
}

TEST(DistanceConvexity, SupNormFails) {
  const auto linf = SpaceModel::MinkowskiLinf();
  const auto bent = polyline_geodesic(linf, {V(linf, {0, 0}), V(linf, {1, -1}), V(linf, {2, 0})});
  const auto straight = geodesic_between(linf, V(linf, {0, 0}), V(linf, {2, 2}));
  const auto r = check_distance_convexity(linf, bent, straight, 2);
  EXPECT_FALSE(r.passed());
  EXPECT_FALSE(r.witnesses().empty());
}

TEST(Hausdorff, Examples) {
  const auto e2 = SpaceModel::Euclidean(2);
  EXPECT_DOUBLE_EQ(hausdorff_distance(e2, {V(e2, {0, 0})}, {V(e2, {3, 4})}), 5.0);
  std::vector<Point> a, b;
  for (int i = 0; i < 100; ++i) {
    a.push_back(V(e2, {0.1 * i, 0}));
    b.push_back(V(e2, {0.1 * i, 1}));
  }
  EXPECT_DOUBLE_EQ(hausdorff_distance(e2, a, b), 1.0);
  EXPECT_EQ(hausdorff_distance(e2, a, a), 0.0);
  EXPECT_THROW(hausdorff_distance(e2, {}, a), DomainError);
}

TEST(NormedStrip, EuclideanLines) {
  const auto e2 = SpaceModel::Euclidean(2);
  const auto xi = IdealPoint::Direction(e2, {1, 0});
  const auto fit = detect_normed_strip(e2, line_through_point(e2, V(e2, {0, 0}), xi),
                                       line_through_point(e2, V(e2, {0, 1}), xi), 8);
  ASSERT_TRUE(fit.is_strip);
  EXPECT_TRUE(fit.report.passed()) << fit.report.to_json().dump(1);
  for (const auto& n : fit.table) EXPECT_NEAR(n.value, std::hypot(n.alpha, n.beta), 1e-6);
}

TEST(NormedStrip, MinkowskiFitsThePNorm) {
  const auto l3 = SpaceModel::MinkowskiLp(3);
  const auto xi = IdealPoint::Direction(l3, {1, 0});
  const auto fit = detect_normed_strip(l3, line_through_point(l3, V(l3, {0, 0}), xi),
                                       line_through_point(l3, V(l3, {0, 1}), xi), 8);
  ASSERT_TRUE(fit.is_strip);
  EXPECT_TRUE(fit.report.passed());
  for (const auto& n : fit.table) {
    const double expect = std::cbrt(std::pow(std::abs(n.alpha), 3) + std::pow(std::abs(n.beta), 3));
    EXPECT_NEAR(n.value, expect, 1e-6);
  }
}

TEST(NormedStrip, HyperbolicLinesAreNotAStrip) {
  const auto h = SpaceModel::HyperbolicPlane();
  const auto a = line_through(h, IdealPoint::HalfPlaneBoundary(-1), IdealPoint::HalfPlaneBoundary(1));
  const auto b = line_through(h, IdealPoint::HalfPlaneBoundary(-1), IdealPoint::HalfPlaneBoundary(3));
  const auto fit = detect_normed_strip(h, a, b, 4);
  EXPECT_FALSE(fit.is_strip);
  EXPECT_FALSE(fit.report.passed());
  EXPECT_FALSE(fit.report.witnesses().empty());
}

TEST(Isometry, IdentityAndRotationPass) {
  const auto e2 = SpaceModel::Euclidean(2);
  const auto sample = random_sample(e2, 40, 3);
  EXPECT_TRUE(is_isometry(identity_bijection(e2), sample).passed());
  EXPECT_TRUE(is_isometry(Rotation(std::numbers::pi / 6), sample).passed());
}

TEST(Isometry, SineMapFailsWithWitness) {
  const auto line = SpaceModel::RealLine();
  const auto sample = user_sample(line, {Point::Real(0), Point::Real(0.25)});
  const auto r = is_isometry(SineOnLine(), sample);
  ASSERT_FALSE(r.passed());
  const auto w = r.witnesses().at(0);
  EXPECT_DOUBLE_EQ(w["d"].get<double>(), 0.25);
  EXPECT_NEAR(w["d_image"].get<double>(), 0.25 + 1 / (2 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(w["d_image"].get<double>(), 0.4092, 1e-4);
}

TEST(UnitDistance, SineMapPreservesUnitPairs) {
  const auto line = SpaceModel::RealLine();
  BijectionSpec f = SineOnLine();
  // Inverse by bisection, written independently of the library's version.
  f.inverse = [&](const Point& p) {
    double lo = p.x() - 0.2, hi = p.x() + 0.2;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (f.forward(Point::Real(mid)).x() < p.x() ? lo : hi) = mid;
    }
    return Point::Real(0.5 * (lo + hi));
  };
  std::vector<Point> pts;
  for (int k = -20; k < 20; ++k) {
    const double x = (2 * k + 1) / 32.0;
    pts.push_back(Point::Real(x));
    pts.push_back(Point::Real(x + 1));
  }
  const auto r = preserves_unit_distance(f, user_sample(line, pts), UnitMode::kEq);
  EXPECT_TRUE(r.passed()) << r.to_json().dump(1);
  EXPECT_GT(r.details()["related_pairs"].get<int>(), 0);
}

TEST(UnitDistance, IsometryImpliesAllModes) {
  const auto e2 = SpaceModel::Euclidean(2);
  // Grid with many exact unit pairs.
  std::vector<Point> pts;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) pts.push_back(V(e2, {0.5 * i, 0.5 * j}));
  }
  const auto sample = user_sample(e2, pts);
  for (const auto& f : {identity_bijection(e2), Rotation(0.3)}) {
    ASSERT_TRUE(is_isometry(f, sample).passed());
    for (auto mode : {UnitMode::kEq, UnitMode::kLe, UnitMode::kLt}) {
      EXPECT_TRUE(preserves_unit_distance(f, sample, mode).passed()) << to_string(mode);
    }
  }
}

TEST(UnitDistance, ModeRelations) {
  EXPECT_TRUE(unit_relation(0, UnitMode::kEq));
  EXPECT_TRUE(unit_relation(0, UnitMode::kLe));
  EXPECT_FALSE(unit_relation(0, UnitMode::kLt));
  EXPECT_TRUE(unit_relation(-1, UnitMode::kLt));
  EXPECT_FALSE(unit_relation(1, UnitMode::kLe));
  EXPECT_EQ(unit_mode_from_string("le"), UnitMode::kLe);
  EXPECT_THROW(unit_mode_from_string("ge"), ConfigError);
  const auto line = SpaceModel::RealLine();
  EXPECT_EQ(unit_class(line, Point::Real(0), Point::Real(1 + 5e-10)), 0);
  EXPECT_EQ(unit_class(line, Point::Real(0), Point::Real(1 + 5e-9)), 1);
}

TEST(Reports, WitnessesAreCanonicalAndCapped) {
  VerificationReport a("x", 0.1), b("x", 0.1);
  for (int i = 0; i < 100; ++i) a.record(false, {{"i", i}});
  for (int i = 99; i >= 0; --i) b.record(false, {{"i", i}});
  EXPECT_EQ(a.witnesses().size(), VerificationReport::kWitnessCap);
  EXPECT_EQ(a.to_json(), b.to_json());
  EXPECT_EQ(VerificationReport::from_json(a.to_json()), a);
  VerificationReport c("y", 0);
  c.fail({{"reason", "r"}});
  EXPECT_FALSE(c.passed());
  EXPECT_EQ(VerificationReport::from_json(c.to_json()), c);
}

}  // namespace
}  // namespace buselab
