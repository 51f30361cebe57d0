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

#include "buselab/tapes.h"

#include <cmath>

#include <gtest/gtest.h>

#include "buselab/errors.h"

namespace buselab {
namespace {

Rational Q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

Point V(const SpaceModel& s, std::vector<double> c) { return Point::Vector(s, std::move(c)); }

GeodesicRef XAxis(const SpaceModel& s) {
  return line_through_point(s, V(s, {0, 0}), IdealPoint::Direction(s, {1, 0}));
}

TEST(RSequence, Examples) {
  const auto e2 = SpaceModel::Euclidean(2);
  RSequence seq{e2, -5, {}};
  for (int z = -5; z <= 5; ++z) seq.points.push_back(V(e2, {double(z), 0}));
  EXPECT_TRUE(validate_r_sequence(seq).passed());

  seq.points[3 + 5] = V(e2, {3.1, 0});
  const auto bad = validate_r_sequence(seq);
  ASSERT_FALSE(bad.passed());
  bool saw_23 = false;
  for (const auto& w : bad.witnesses()) saw_23 |= w["z"] == OrderedJson({2, 3});
  EXPECT_TRUE(saw_23);

  const auto tree = SpaceModel::Tree(star_tree(2, Q(1), 1, true));
  const auto line = line_through(tree, IdealPoint::TreeEnd(0), IdealPoint::TreeEnd(1));
  RSequence tseq{tree, -4, {}};
  for (int z = -4; z <= 4; ++z) tseq.points.push_back(line.at_exact(Q(z)));
  EXPECT_TRUE(validate_r_sequence(tseq).passed());
  EXPECT_THROW(validate_r_sequence(RSequence{e2, 0, {V(e2, {0, 0})}}), DomainError);
}

TEST(TapePosition, Examples) {
  EXPECT_EQ(tape_position_exact(3, 1, 0), Q(0));
  EXPECT_EQ(tape_position_exact(3, 2, 0), Q(5, 3));
  EXPECT_EQ(tape_position_exact(3, 3, -2), Q(4, 3));
  EXPECT_DOUBLE_EQ(tape_position(3, 2, 0), 5.0 / 3.0);
  EXPECT_THROW(tape_position(3, 0, 0), DomainError);
  EXPECT_THROW(tape_position(3, 4, 0), DomainError);
}

TEST(TapeQuadruples, MatchTheDefinitionForFourRows) {
  const auto q = tape_quadruples(4);
  ASSERT_EQ(q.size(), 8u);
  auto same = [](const TapeIndex& a, TapeIndex b) { return a == b; };
  // [x_{0,2,0}, x_{1,1,0}, x_{2,p,1-2p}, x_{3,p-1,1-2p}]
  EXPECT_TRUE(same(q[4][0], {0, 2, 0}) && same(q[4][1], {1, 1, 0}) &&
              same(q[4][2], {2, 4, -7}) && same(q[4][3], {3, 3, -7}));
  // [x_{0,3,0}, x_{1,2,0}, x_{2,1,0}, x_{3,p,1-2p}]
  EXPECT_TRUE(same(q[5][3], {3, 4, -7}) && same(q[5][2], {2, 1, 0}));
  // [x_{0,1,2p-1}, x_{1,p,0}, x_{2,p-1,0}, x_{3,p-2,0}]
  EXPECT_TRUE(same(q[7][0], {0, 1, 7}) && same(q[7][1], {1, 4, 0}) &&
              same(q[7][2], {2, 3, 0}) && same(q[7][3], {3, 2, 0}));
}

TEST(BuildTape, EuclideanThresholds) {
  const auto e2 = SpaceModel::Euclidean(2);
  const auto a = XAxis(e2);
  EXPECT_NEAR(tape_chord(e2, a, 0.6), 1.6, 1e-12);
  EXPECT_NEAR(tape_threshold(e2, a, 0.6), 5.0, 1e-10);
  EXPECT_NEAR(tape_chord(e2, a, 0.2), 2 * std::sqrt(0.96), 1e-12);
  EXPECT_NEAR(tape_threshold(e2, a, 0.2), 2 / (2 - 2 * std::sqrt(0.96)), 1e-8);
  EXPECT_THROW(build_p_tape(e2, a, 3, 1.0, 0.2), PreconditionError);
  EXPECT_THROW(build_p_tape(e2, a, 5, 1.0, 0.6), PreconditionError);
  EXPECT_THROW(build_p_tape(e2, a, 6, 0.5, 0.6), PreconditionError);

  const PTape tape = build_p_tape(e2, a, 6, 1.0, 0.6);
  const auto report = validate_p_tape(tape);
  EXPECT_TRUE(report.passed()) << report.to_json().dump(1);
  for (int j = 1; j <= 6; ++j) {
    for (int z = tape.z_min; z <= tape.z_max; ++z) {
      EXPECT_NEAR(tape.at(1, j, z).x(), tape_position(6, j, z), 1e-9);
      EXPECT_EQ(tape.at(1, j, z).y(), 0.0);
    }
  }
}

TEST(BuildTape, MinkowskiAndTiltedAxes) {
  const auto l3 = SpaceModel::MinkowskiLp(3);
  EXPECT_NEAR(tape_chord(l3, XAxis(l3), 0.9), 2 * std::cbrt(1 - 0.729), 1e-12);
  const auto tape = build_p_tape(l3, XAxis(l3), 4, 2.0, 0.9);
  EXPECT_TRUE(validate_p_tape(tape).passed());
  // Same drift as the Euclidean h = 0.6 case: t = 1.6, so P = 5.
  const double h = tape_probe_distance(l3, XAxis(l3), 1.6);
  EXPECT_NEAR(h, std::cbrt(1 - 0.8 * 0.8 * 0.8), 1e-9);
  EXPECT_THROW(build_p_tape(l3, XAxis(l3), 6, 1.0, 0.6), PreconditionError);
  const auto six = build_p_tape(l3, XAxis(l3), 6, 1.0, h);
  EXPECT_TRUE(validate_p_tape(six).passed());
  EXPECT_TRUE(validate_p_tape(tape).passed());

  const auto l15 = SpaceModel::MinkowskiLp(1.5);
  const auto tilted = line_through_point(l15, V(l15, {1, -2}), IdealPoint::Direction(l15, {2, 1}));
  const int p = static_cast<int>(std::floor(tape_threshold(l15, tilted, 0.6))) + 1;
  const auto t2 = build_p_tape(l15, tilted, p, 1.0, 0.6);
  EXPECT_TRUE(validate_p_tape(t2).passed()) << validate_p_tape(t2).to_json().dump(1);
  EXPECT_THROW(build_p_tape(l15, tilted, p - 1, 1.0, 0.6), PreconditionError);
  for (int j = 1; j <= p; ++j) {
    EXPECT_LE(distance(l15, t2.at(1, j, 0), tilted.at(tape_position(p, j, 0))), 1e-9);
  }
}

TEST(ValidateTape, PerturbationAndShiftInvariance) {
  const auto e2 = SpaceModel::Euclidean(2);
  const PTape tape = build_p_tape(e2, XAxis(e2), 3, 1.0, 0.9);
  ASSERT_TRUE(validate_p_tape(tape).passed());

  PTape moved = tape;
  moved.points.at({2, 1, 0}).coords[1] += 0.05;
  EXPECT_FALSE(validate_p_tape(moved).passed());

  // Relabel z by a common integer shift.
  for (int k : {-1, 1}) {
    PTape shifted = tape;
    shifted.points.clear();
    shifted.z_min = tape.z_min + std::max(0, -k);
    shifted.z_max = tape.z_max - std::max(0, k);
    for (const auto& [idx, v] : tape.points) {
      if (idx.z - k >= shifted.z_min && idx.z - k <= shifted.z_max) {
        shifted.points.emplace(TapeIndex{idx.i, idx.j, idx.z - k}, v);
      }
    }
    EXPECT_TRUE(validate_p_tape(shifted).passed()) << k;
  }

  PTape missing = tape;
  missing.points.erase({0, 1, 5});
  EXPECT_THROW(validate_p_tape(missing), DomainError);
}

TEST(ValidateTape, CoincidingRowsFail) {
  const auto e2 = SpaceModel::Euclidean(2);
  PTape tape;
  tape.space = e2;
  tape.p = 2;
  tape.z_min = -4;
  tape.z_max = 4;
  for (int i = 0; i <= 3; ++i) {
    for (int j = 1; j <= 2; ++j) {
      for (int z = -4; z <= 4; ++z) tape.points.emplace(TapeIndex{i, j, z}, V(e2, {double(z), 0}));
    }
  }
  const auto report = validate_p_tape(tape);
  EXPECT_FALSE(report.passed());
  EXPECT_EQ(report.failures(), 4);
}

TEST(ThirdDivision, ForcedConfigurationCollapses) {
  const auto e2 = SpaceModel::Euclidean(2);
  for (int p : {2, 3, 5}) {
    std::vector<std::vector<Point>> y(4);
    for (int i = 0; i < 4; ++i) y[i].assign(p, V(e2, {double(i), 0}));
    const auto r = check_third_division(e2, y);
    EXPECT_TRUE(r.relations_hold);
    EXPECT_TRUE(r.collapsed);
    EXPECT_TRUE(r.report.passed());
  }
}

TEST(ThirdDivision, SpreadRowsBreakARelation) {
  const auto e2 = SpaceModel::Euclidean(2);
  for (int p : {2, 4}) {
    std::vector<std::vector<Point>> y(4);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < p; ++j) y[i].push_back(V(e2, {double(i), 0.1 * j * (i == 1)}));
    }
    const auto r = check_third_division(e2, y);
    EXPECT_FALSE(r.relations_hold);
    EXPECT_FALSE(r.collapsed);
    EXPECT_GE(r.report.failures(), 1);
  }
  EXPECT_THROW(check_third_division(e2, {{}, {}, {}}), DomainError);
}

TEST(ThirdDivision, TreeExact) {
  const auto tree = SpaceModel::Tree(path_tree(3, Q(1), 1));
  const MetricTree& t = tree.tree();
  std::vector<std::vector<Point>> y(4);
  for (int i = 0; i < 4; ++i) y[i].assign(3, Point::OnTree(t.vertex(i)));
  const auto r = check_third_division(tree, y);
  EXPECT_TRUE(r.relations_hold && r.collapsed);
}

TEST(TapeJson, RoundTrip) {
  const auto e2 = SpaceModel::Euclidean(2);
  const PTape tape = build_p_tape(e2, XAxis(e2), 3, 1.0, 0.9);
  const auto j = tape_to_json(tape);
  const PTape back = tape_from_json(e2, j);
  EXPECT_EQ(tape_to_json(back), j);
  EXPECT_TRUE(validate_p_tape(back).passed());
}

}  // namespace
}  // namespace buselab
