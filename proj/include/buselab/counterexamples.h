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

// Bijections that preserve the unit distance without being isometries.

#ifndef BUSELAB_COUNTEREXAMPLES_H_
#define BUSELAB_COUNTEREXAMPLES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "buselab/metric_verify.h"
#include "buselab/report.h"

namespace buselab {

// x + sin(2 pi x) / (2 pi) on the real line.
BijectionSpec line_counterexample();

// t + sin(2 pi n t) / (2 pi n) along every edge; every edge must have
// length 1/n.
BijectionSpec smooth_tree_bijection(const SpaceModel& tree, std::int64_t n);

// x -> -x on the centrally symmetric set `flipped`, identity elsewhere.
BijectionSpec sphere_flip_bijection(const SpaceModel& sphere, std::vector<Point> flipped);

// (x, y) -> (x, phi(y)) on MaxProduct(x_space, phi.domain).
BijectionSpec max_product_lift(const BijectionSpec& phi, const SpaceModel& x_space);

// A packaged counterexample: unit distance preserved on the sample and the
// isometry check refuted by a witness.
struct Counterexample {
  std::string name;
  BijectionSpec map;
  SampleSet sample;
  VerificationReport preserves;
  VerificationReport isometry;
  // Companion checks folded into the summary (the vacuous small sphere).
  std::vector<VerificationReport> extras;

  bool passed() const;
  // Single report named "counterexample.<name>" carrying both checks.
  VerificationReport summary() const;
};

std::vector<std::string> counterexample_names();
Counterexample run_counterexample(const std::string& name, std::uint64_t seed);

}  // namespace buselab

#endif  // BUSELAB_COUNTEREXAMPLES_H_
