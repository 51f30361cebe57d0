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

#ifndef BUSELAB_NUMERIC_H_
#define BUSELAB_NUMERIC_H_

#include <cmath>
#include <cstdint>
#include <utility>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

namespace buselab {

// Minimum of a unimodal function on [lo, hi] (Brent's method).
template <class F>
std::pair<double, double> minimize_unimodal(F f, double lo, double hi) {
  std::uintmax_t iterations = 200;
  return boost::math::tools::brent_find_minima(f, lo, hi, 52, iterations);
}

// Root of a monotone function with a sign change on [lo, hi], bisected down
// to adjacent doubles.
template <class F>
double bisect_root(F f, double lo, double hi) {
  std::uintmax_t iterations = 2000;
  const auto bracket = boost::math::tools::bisect(
      f, lo, hi,
      [](double a, double b) { return std::nextafter(a, b) == b || a == b; },
      iterations);
  return 0.5 * (bracket.first + bracket.second);
}

}  // namespace buselab

#endif  // BUSELAB_NUMERIC_H_
