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

#include "buselab/counterexamples.h"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "buselab/errors.h"
#include "buselab/rng.h"

namespace buselab {
namespace {

Rational Q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

TEST(LineCounterexample, Values) {
  const auto f = line_counterexample();
  EXPECT_EQ(f.forward(Point::Real(0)).x(), 0.0);
  EXPECT_NEAR(f.forward(Point::Real(0.25)).x(), 0.25 + 1 / (2 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(f.forward(Point::Real(0.25)).x(), 0.40915, 1e-5);
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const double x = rng.uniform(-10, 10);
    EXPECT_NEAR(f.forward(Point::Real(x + 1)).x() - f.forward(Point::Real(x)).x(), 1.0, 1e-12);
    EXPECT_NEAR(f.inverse(f.forward(Point::Real(x))).x(), x, 1e-6);
  }
}

TEST(SmoothTree, Values) {
  const auto tree = SpaceModel::Tree(path_tree(2, Q(1, 2), 8));
  const auto f = smooth_tree_bijection(tree, 2);
  const MetricTree& t = tree.tree();
  for (int v = 0; v < 3; ++v) {
    EXPECT_TRUE(same_point(tree, f.forward(Point::OnTree(t.vertex(v))), Point::OnTree(t.vertex(v))));
  }
  const Point p = f.forward(Point::OnTree(t.on_segment(0, Q(1, 8))));
  EXPECT_NEAR(p.tree.offset_value(), 0.125 + 1 / (4 * std::numbers::pi), 1e-15);
  // The vertex-to-point distance changes.
  EXPECT_GT(std::abs(distance(tree, Point::OnTree(t.vertex(0)), p) - 0.125), 0.05);
  EXPECT_THROW(smooth_tree_bijection(SpaceModel::Tree(path_tree(2, Q(1), 1)), 2), DomainError);
  EXPECT_THROW(smooth_tree_bijection(SpaceModel::Tree(star_tree(2, Q(1, 2), 2, true)), 2),
               DomainError);
}

TEST(SphereFlip, RequiresSymmetry) {
  const auto s = SpaceModel::Sphere(1 / std::numbers::pi, 3);
  const Point p = Point::OnSphere(s, {1, 0, 0});
  EXPECT_THROW(sphere_flip_bijection(s, {p}), DomainError);
  const auto f = sphere_flip_bijection(s, {p, Point::OnSphere(s, {-1, 0, 0})});
  EXPECT_TRUE(same_point(s, f.forward(p), Point::OnSphere(s, {-1, 0, 0})));
  const Point q = Point::OnSphere(s, {0, 1, 0});
  EXPECT_TRUE(same_point(s, f.forward(q), q));
}

TEST(SphereFlip, UnitPairsAreAntipodalOrAbsent) {
  Rng rng(11);
  for (double radius : {1 / std::numbers::pi, 1 / (2 * std::numbers::pi)}) {
    const auto s = SpaceModel::Sphere(radius, 3);
    std::vector<Point> pts, flipped;
    for (int i = 0; i < 10; ++i) {
      const Point p = Point::OnSphere(s, {rng.normal(), rng.normal(), rng.normal()});
      Point m = p;
      for (double& c : m.coords) c = -c;
      pts.push_back(p);
      pts.push_back(m);
      if (i < 4) {
        flipped.push_back(p);
        flipped.push_back(m);
      }
    }
    const auto sample = user_sample(s, pts);
    const auto f = sphere_flip_bijection(s, flipped);
    const auto r = preserves_unit_distance(f, sample, UnitMode::kEq);
    EXPECT_TRUE(r.passed());
    const int related = r.details()["related_pairs"].get<int>();
    if (radius * std::numbers::pi < 1 - 1e-9) {
      EXPECT_EQ(related, 0);
    } else {
      EXPECT_GT(related, 0);
    }
    EXPECT_FALSE(is_isometry(f, sample).passed());
  }
}

TEST(MaxLift, IdentityAndInheritedWitness) {
  const auto x_space = SpaceModel::Euclidean(1);
  const auto id = max_product_lift(identity_bijection(SpaceModel::RealLine()), x_space);
  const Point p = Point::Product(Point::Vector(x_space, {0.5}), Point::Real(0.25));
  EXPECT_TRUE(same_point(id.domain, id.forward(p), p));
  const auto f = max_product_lift(line_counterexample(), x_space);
  const Point q = Point::Product(Point::Vector(x_space, {0.5}), Point::Real(0.0));
  EXPECT_NEAR(distance(f.domain, f.forward(p), f.forward(q)), 0.25 + 1 / (2 * std::numbers::pi),
              1e-12);
}

class Packaged : public ::testing::TestWithParam<std::string> {};

TEST_P(Packaged, PreservesUnitDistanceButIsNoIsometry) {
  for (std::uint64_t seed : {1u, 2u}) {
    const auto c = run_counterexample(GetParam(), seed);
    EXPECT_TRUE(c.preserves.passed()) << c.preserves.to_json().dump(1);
    EXPECT_FALSE(c.isometry.passed());
    EXPECT_FALSE(c.isometry.witnesses().empty());
    EXPECT_TRUE(c.passed());
    EXPECT_TRUE(c.summary().passed());
    if (GetParam() != "small-diameter" && GetParam() != "sphere-flip") {
      EXPECT_GT(c.preserves.details()["related_pairs"].get<int>(), 0) << GetParam();
    }
  }
}

INSTANTIATE_TEST_SUITE_P(All, Packaged, ::testing::ValuesIn(counterexample_names()),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (char& ch : s) ch = ch == '-' ? '_' : ch;
                           return s;
                         });

TEST(Counterexamples, SmallDiameterIsVacuousForAnySeed) {
  for (std::uint64_t seed = 10; seed < 20; ++seed) {
    const auto c = run_counterexample("small-diameter", seed);
    EXPECT_TRUE(c.preserves.passed());
    EXPECT_EQ(c.preserves.details()["related_pairs"].get<int>(), 0);
  }
  EXPECT_THROW(run_counterexample("nope", 1), ConfigError);
}

}  // namespace
}  // namespace buselab
