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

// Horospherical transfers between asymptotic lines and scissors
// configurations.

#ifndef BUSELAB_TRANSFERS_H_
#define BUSELAB_TRANSFERS_H_

#include <vector>

#include <json.hpp>

#include "buselab/model_spaces.h"
#include "buselab/report.h"

namespace buselab {

struct TransferResult {
  Point image;
  double parameter = 0.0;      // image = target(parameter)
  double shift = 0.0;          // measured parameter displacement along the line
  double formula_shift = 0.0;  // value predicted from Busemann values
  std::vector<double> residuals;
};

// Parameter t with line(t) closest to x, read off the Busemann function
// toward line(+inf). Exact on trees.
double parameter_on(const SpaceModel& space, const GeodesicRef& line, const Point& x);
Rational parameter_on_exact(const SpaceModel& space, const GeodesicRef& line,
                            const Point& x);

// Moves m along the horosphere centered at xi until it meets `to`. Both
// lines must have xi as an end.
TransferResult horospherical_transfer(const SpaceModel& space, const GeodesicRef& from,
                                      const GeodesicRef& to, const IdealPoint& xi,
                                      const Point& m);

// a -> b along the horosphere of a's ray, then back to a along the
// horosphere of b's ray, lowered by `level_offset`. Requires
// a(+inf) = b(+inf).
TransferResult double_transfer(const SpaceModel& space, const GeodesicRef& a,
                               const GeodesicRef& b, const Point& x,
                               double level_offset = 0.0);

struct ScissorsConfig {
  GeodesicRef a, b, c, d;
  Point x;
};

// Lines a: alpha -> beta, b: alpha -> delta, c: gamma -> beta,
// d: gamma -> delta on the real axis, centered at the crossing of b and c.
ScissorsConfig hyperbolic_scissors(double alpha, double beta, double gamma, double delta);

bool scissors_degenerate(const SpaceModel& space, const ScissorsConfig& cfg);
VerificationReport validate_scissors(const SpaceModel& space, const ScissorsConfig& cfg);

struct ScissorsShift {
  double by_composition = 0.0;
  double by_formula = 0.0;
  bool degenerate = false;
  Point image;  // T applied to the probe
};

// T = R_ba R_db R_cd R_ac applied to the probe a(probe), and the four-term
// Busemann sum at the center normalized at a(norm_a) and d(norm_d).
ScissorsShift scissors_shift(const SpaceModel& space, const ScissorsConfig& cfg,
                             double probe = 0.0, double norm_a = 0.0, double norm_d = 0.0);

ScissorsConfig scissors_from_json(const SpaceModel& space, const nlohmann::json& j);
nlohmann::json scissors_to_json(const SpaceModel& space, const ScissorsConfig& cfg);

}  // namespace buselab

#endif  // BUSELAB_TRANSFERS_H_
