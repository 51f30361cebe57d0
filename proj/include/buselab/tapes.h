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

// r-sequences, p-tapes and the third-division configuration.

#ifndef BUSELAB_TAPES_H_
#define BUSELAB_TAPES_H_

#include <array>
#include <map>
#include <vector>

#include <json.hpp>

#include "buselab/model_spaces.h"
#include "buselab/report.h"

namespace buselab {

// Points x_z for z in [z_min, z_min + points.size()).
struct RSequence {
  SpaceModel space = SpaceModel::RealLine();
  int z_min = 0;
  std::vector<Point> points;

  int z_max() const { return z_min + static_cast<int>(points.size()) - 1; }
};

VerificationReport validate_r_sequence(const RSequence& seq);

struct TapeIndex {
  int i = 0;
  int j = 1;
  int z = 0;
  auto operator<=>(const TapeIndex&) const = default;
};

// 4p rows x_{i, j, z}, i in 0..3, j in 1..p, over a common z-window.
struct PTape {
  SpaceModel space = SpaceModel::RealLine();
  int p = 2;
  int z_min = 0;
  int z_max = 0;
  std::map<TapeIndex, Point> points;

  const Point& at(int i, int j, int z) const;
  RSequence row(int i, int j) const;
};

// The 2p bracketed quadruples of the tape definition: p vertical ones
// followed by p diagonal ones.
std::vector<std::array<TapeIndex, 4>> tape_quadruples(int p);

VerificationReport validate_p_tape(const PTape& tape);

// (j - 1)(2p - 1)/p + z.
Rational tape_position_exact(int p, int j, int z);
double tape_position(int p, int j, int z);

// Tape on the four lines a - u, a, a + u, a + 2u inside a strip of width
// `strip_width` around the straight line `a` of a strictly convex normed
// plane. `h` is the distance from a of the probe point q with |a(0)q| = 1.
PTape build_p_tape(const SpaceModel& space, const GeodesicRef& a, int p, double strip_width,
                   double h);
// Chord t of the unit sphere around q at distance h from a, and the
// threshold P = 2 / (2 - t).
double tape_chord(const SpaceModel& space, const GeodesicRef& a, double h);
double tape_threshold(const SpaceModel& space, const GeodesicRef& a, double h);
// Probe distance h whose chord is `chord`, for chord in (0, 2).
double tape_probe_distance(const SpaceModel& space, const GeodesicRef& a, double chord);

struct ThirdDivision {
  VerificationReport report;
  bool relations_hold = false;
  bool collapsed = false;
};

// y[i][j - 1] for i in 0..3 and j in 1..p.
ThirdDivision check_third_division(const SpaceModel& space,
                                   const std::vector<std::vector<Point>>& y);

nlohmann::json tape_to_json(const PTape& tape);
PTape tape_from_json(const SpaceModel& space, const nlohmann::json& j);

}  // namespace buselab

#endif  // BUSELAB_TAPES_H_
