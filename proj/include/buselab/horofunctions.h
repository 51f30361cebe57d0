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

#ifndef BUSELAB_HOROFUNCTIONS_H_
#define BUSELAB_HOROFUNCTIONS_H_

#include <optional>
#include <variant>
#include <vector>

#include "buselab/model_spaces.h"
#include "buselab/report.h"

namespace buselab {

struct BusemannOptions {
  bool prefer_closed_form = true;
  double tolerance = 1e-6;      // |v(2T) - v(T)| needed to accept
  double initial_truncation = 0.0;  // 0 picks 1 + d(y, c(0))
  double max_truncation = 1e8;
};

struct TruncatedLimit {
  double value = 0.0;       // Richardson value 2 v(2T) - v(T)
  double raw = 0.0;         // v(2T)
  double truncation = 0.0;  // accepted T
};

// v(T) = d(y, c(T)) - T for doubling T; throws ConvergenceError past the cap.
TruncatedLimit busemann_truncated(const SpaceModel& space, const GeodesicRef& ray,
                                  const Point& y,
                                  const BusemannOptions& options = {});
// Closed form where the model has one (Euclidean, Minkowski p, real line,
// half-plane, trees); empty otherwise.
std::optional<double> busemann_closed_form(const SpaceModel& space,
                                           const GeodesicRef& ray, const Point& y);
Rational busemann_exact(const SpaceModel& space, const GeodesicRef& ray, const Point& y);
// beta_c(y) = lim (d(y, c(t)) - t). `ray` may be a ray or a line, in which
// case its part t >= 0 is used.
double busemann_value(const SpaceModel& space, const GeodesicRef& ray, const Point& y,
                      const BusemannOptions& options = {});

bool horoball_contains(const SpaceModel& space, const GeodesicRef& ray, const Point& x0,
                       const Point& x);

// inf over s, t >= 0 of d(c(s), d(t)) for rays sharing their ideal endpoint.
double ray_pseudodistance(const SpaceModel& space, const GeodesicRef& c,
                          const GeodesicRef& d, int levels = 20);

// 0 <= beta_c(d(0)) + beta_d(c(0)) <= 2 rho(c, d), slack 1e-6 (exact on trees).
VerificationReport check_busemann_sum_bound(const SpaceModel& space, const GeodesicRef& c,
                                            const GeodesicRef& d);

// lim d(c(t), d(t)) / (2t) for the rays from o to xi and eta.
double tits_delta(const SpaceModel& space, const Point& o, const IdealPoint& xi,
                  const IdealPoint& eta, double initial_truncation = 1.0);
// The relation "Tits distance below pi" in the [0, 1] scale of tits_delta.
bool tits_below_pi(double delta);

using Viewpoint = std::variant<Point, IdealPoint>;

bool shadow_contains(const SpaceModel& space, const Viewpoint& y, const Point& x0,
                     const Point& z, double tol = 1e-6);
// Points of the sphere S(x0, rho) inside the shadow, found by sampling
// `resolution` directions (planar models and the half-plane) or exactly
// (trees).
std::vector<Point> spherical_shadow_sample(const SpaceModel& space, const Viewpoint& y,
                                           const Point& x0, double rho, int resolution,
                                           double tol = 1e-6);

}  // namespace buselab

#endif  // BUSELAB_HOROFUNCTIONS_H_
