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

#ifndef BUSELAB_METRIC_VERIFY_H_
#define BUSELAB_METRIC_VERIFY_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "buselab/model_spaces.h"
#include "buselab/report.h"
#include "buselab/rng.h"

namespace buselab {

// |d - 1| <= kUnitTol counts as a unit distance on floating-point models.
inline constexpr double kUnitTol = 1e-9;

struct SampleSet {
  SpaceModel space = SpaceModel::RealLine();
  std::vector<Point> points;
  std::uint64_t seed = 0;
  std::string generation;  // "random", "grid" or "user"
};

// Random point of a bounded region: coordinates in [-scale, scale] for
// vector models, x in [-scale, scale] and log y in [-1.5, 1.5] on the
// half-plane, uniform directions on spheres, and exact offsets with
// denominator 8n on trees (rays up to `scale` beyond their vertex).
Point random_point(const SpaceModel& space, Rng& rng, double scale = 2.0);
SampleSet random_sample(const SpaceModel& space, int count, std::uint64_t seed,
                        double scale = 2.0);
SampleSet user_sample(const SpaceModel& space, std::vector<Point> points);

struct BijectionSpec {
  std::string name;
  SpaceModel domain = SpaceModel::RealLine();
  SpaceModel codomain = SpaceModel::RealLine();
  std::function<Point(const Point&)> forward;
  std::function<Point(const Point&)> inverse;
  OrderedJson params = OrderedJson::object();
};

BijectionSpec identity_bijection(const SpaceModel& space);

enum class UnitMode { kEq, kLe, kLt };
std::string to_string(UnitMode mode);
UnitMode unit_mode_from_string(const std::string& text);

// Position of d(x, y) relative to 1: -1 below, 0 equal, +1 above. Exact on
// trees when both points carry rational offsets.
int unit_class(const SpaceModel& space, const Point& x, const Point& y,
               double tol = kUnitTol);
// Whether a distance of class `cls` satisfies the relation of `mode`.
bool unit_relation(int cls, UnitMode mode);

// Symmetry, identity of indiscernibles and the triangle inequality on the
// consecutive triples (p[3k], p[3k+1], p[3k+2]) of the sample.
VerificationReport check_metric_axioms(const SampleSet& sample, double tol = 1e-9);
// |d(c(s), c(t)) - |s - t|| <= tol for sampled parameters. Unbounded
// domains are cut to [-window, window].
VerificationReport check_unit_speed(const GeodesicRef& g, int samples,
                                    double tol = 1e-9, double window = 8.0);
VerificationReport check_midpoint(const SpaceModel& space, const Point& x,
                                  const Point& y,
                                  MidpointSelector selector = MidpointSelector::kCenter,
                                  double tol = 1e-12);

// m = midpoint(x, y), n = midpoint(x, z); passes iff |mn| <= |yz|/2 + tol.
VerificationReport check_busemann_midpoints(
    const SpaceModel& space, const Point& x, const Point& y, const Point& z,
    MidpointSelector select_y = MidpointSelector::kCenter,
    MidpointSelector select_z = MidpointSelector::kCenter, double tol = 1e-9);

// Midpoint convexity of D(t, t') = d(g1(t), g2(t')) over every pair of
// points of a (grid+1) x (grid+1) parameter lattice.
VerificationReport check_distance_convexity(const SpaceModel& space,
                                            const GeodesicRef& g1,
                                            const GeodesicRef& g2, int grid,
                                            double tol = 1e-9);

double hausdorff_distance(const SpaceModel& space, const std::vector<Point>& a,
                          const std::vector<Point>& b);
double hausdorff_distance(const SampleSet& a, const SampleSet& b);

struct NormSample {
  double alpha = 0.0;
  double beta = 0.0;
  double value = 0.0;
};

struct StripFit {
  bool is_strip = false;
  double width = 0.0;     // distance between the lines
  double alignment = 0.0; // b(s + alignment) is the foot of a(s) on b
  std::vector<NormSample> table;
  VerificationReport report;
};

// Parameterizes the region between lines a and b as p(s, t), the point at
// fraction t of the segment [a(s), b(s + alignment)], fits
// N(alpha, beta) = d(p(s, t), p(s + alpha, t + beta)) on [-2, 2] x [-1, 1]
// and checks that the value does not depend on (s, t), is homogeneous and
// satisfies the norm axioms on the table.
StripFit detect_normed_strip(const SpaceModel& space, const GeodesicRef& a,
                             const GeodesicRef& b, int grid);

VerificationReport is_isometry(const BijectionSpec& f, const SampleSet& sample,
                               double tol = 1e-9);
// Checks d(x, y) ~ 1  <=>  d(f x, f y) ~ 1 in the given mode on all pairs,
// then the same on the image sample through the declared inverse.
VerificationReport preserves_unit_distance(const BijectionSpec& f,
                                           const SampleSet& sample, UnitMode mode,
                                           double tol = kUnitTol);

}  // namespace buselab

#endif  // BUSELAB_METRIC_VERIFY_H_
