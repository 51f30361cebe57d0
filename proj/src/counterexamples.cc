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

#include "buselab/errors.h"
#include "buselab/grasshopper.h"
#include "buselab/numeric.h"
#include "buselab/rng.h"

namespace buselab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sine_shift(double t, double n) { return t + std::sin(kTwoPi * n * t) / (kTwoPi * n); }

// Inverse of t -> t + sin(2 pi n t)/(2 pi n); the shift is at most 1/(2 pi n).
double sine_unshift(double y, double n) {
  const double r = 1.0 / (kTwoPi * n);
  auto f = [&](double t) { return sine_shift(t, n) - y; };
  if (f(y - r) >= 0.0) return y - r;
  if (f(y + r) <= 0.0) return y + r;
  return bisect_root(f, y - r, y + r);
}

Point negate(const Point& p) {
  Point q = p;
  for (double& c : q.coords) c = -c;
  return q;
}

SampleSet line_sample(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point> pts = {Point::Real(0.0), Point::Real(0.25)};
  for (int i = 0; i < 24; ++i) {
    const double x = (2 * rng.integer(-48, 47) + 1) / 32.0;
    pts.push_back(Point::Real(x));
    pts.push_back(Point::Real(x + 1.0));
  }
  SampleSet s = user_sample(SpaceModel::RealLine(), std::move(pts));
  s.seed = seed;
  s.generation = "random";
  return s;
}

Counterexample package(std::string name, BijectionSpec map, SampleSet sample) {
  Counterexample c{std::move(name), std::move(map), std::move(sample), {}, {}};
  c.preserves = preserves_unit_distance(c.map, c.sample, UnitMode::kEq);
  c.isometry = is_isometry(c.map, c.sample);
  return c;
}

}  // namespace

BijectionSpec line_counterexample() {
  BijectionSpec f;
  f.name = "line-sine";
  f.domain = SpaceModel::RealLine();
  f.codomain = f.domain;
  f.forward = [](const Point& p) { return Point::Real(sine_shift(p.x(), 1.0)); };
  f.inverse = [](const Point& p) { return Point::Real(sine_unshift(p.x(), 1.0)); };
  return f;
}

BijectionSpec smooth_tree_bijection(const SpaceModel& space, std::int64_t n) {
  if (space.kind() != SpaceKind::kMetricTree) throw DomainError("smooth bijection needs a tree");
  const MetricTree& tree = space.tree();
  if (n < 1) throw DomainError("n must be positive");
  if (tree.end_count() != 0) throw DomainError("smooth bijection needs a finite tree");
  for (const auto& e : tree.desc().edges) {
    if (e.length != Rational(1, n)) {
      throw DomainError("every edge must have length 1/" + std::to_string(n));
    }
  }
  auto along = [space, n](const Point& p, bool forward) {
    if (p.tree.is_vertex()) return p;
    const double t = p.tree.offset_value();
    const double moved = forward ? sine_shift(t, static_cast<double>(n))
                                 : sine_unshift(t, static_cast<double>(n));
    const double len = 1.0 / static_cast<double>(n);
    return Point::OnTree(
        space.tree().on_segment_real(p.tree.segment, std::clamp(moved, 0.0, len)));
  };
  BijectionSpec f;
  f.name = "tree-smooth";
  f.domain = space;
  f.codomain = space;
  f.forward = [along](const Point& p) { return along(p, true); };
  f.inverse = [along](const Point& p) { return along(p, false); };
  f.params = {{"n", n}};
  return f;
}

BijectionSpec sphere_flip_bijection(const SpaceModel& sphere, std::vector<Point> flipped) {
  if (sphere.kind() != SpaceKind::kSphere) throw DomainError("sphere flip needs a sphere");
  auto member = [sphere](const std::vector<Point>& set, const Point& p) {
    for (const auto& q : set) {
      if (same_point(sphere, q, p)) return true;
    }
    return false;
  };
  for (const auto& p : flipped) {
    check_point(sphere, p);
    if (!member(flipped, negate(p))) {
      throw DomainError("flipped set must be centrally symmetric");
    }
  }
  auto flip = [sphere, flipped, member](const Point& p) {
    return member(flipped, p) ? negate(p) : p;
  };
  BijectionSpec f;
  f.name = "sphere-flip";
  f.domain = sphere;
  f.codomain = sphere;
  f.forward = flip;
  f.inverse = flip;
  f.params = {{"radius", sphere.radius()}, {"flipped", flipped.size()}};
  return f;
}

BijectionSpec max_product_lift(const BijectionSpec& phi, const SpaceModel& x_space) {
  BijectionSpec f;
  f.name = "max-lift(" + phi.name + ")";
  f.domain = SpaceModel::MaxProduct(x_space, phi.domain);
  f.codomain = SpaceModel::MaxProduct(x_space, phi.codomain);
  auto fwd = phi.forward;
  auto inv = phi.inverse;
  f.forward = [fwd](const Point& p) { return Point::Product(p.parts.at(0), fwd(p.parts.at(1))); };
  f.inverse = [inv](const Point& p) { return Point::Product(p.parts.at(0), inv(p.parts.at(1))); };
  f.params = {{"slot", "right"}, {"inner", phi.name}};
  return f;
}

bool Counterexample::passed() const {
  for (const auto& e : extras) {
    if (!e.passed()) return false;
  }
  return preserves.passed() && !isometry.passed() && !isometry.witnesses().empty();
}

VerificationReport Counterexample::summary() const {
  VerificationReport r("counterexample." + name, preserves.tolerance());
  r.record(preserves.passed(), {{"claim", "preserves unit distance (eq)"},
                                {"failures", preserves.failures()}});
  OrderedJson w = {{"claim", "not an isometry"}};
  if (!isometry.witnesses().empty()) w["witness"] = isometry.witnesses().front();
  r.record(!isometry.passed() && !isometry.witnesses().empty(), w);
  for (const auto& e : extras) {
    OrderedJson x = {{"claim", e.check()}};
    if (!e.passed()) x["witness"] = e.witnesses().empty() ? OrderedJson() : e.witnesses().front();
    r.record(e.passed(), x);
  }
  r.details()["sample_size"] = sample.points.size();
  r.details()["params"] = map.params;
  r.details()["unit_distance"] = preserves.to_json();
  r.details()["isometry"] = isometry.to_json();
  return r;
}

std::vector<std::string> counterexample_names() {
  return {"small-diameter", "sphere-flip", "line-sine", "tree-swap", "tree-smooth", "max-lift"};
}

Counterexample run_counterexample(const std::string& name, std::uint64_t seed) {
  Rng rng(seed);
  if (name == "small-diameter") {
    const auto e2 = SpaceModel::Euclidean(2);
    std::vector<Point> pts;
    for (int i = 0; i < 16; ++i) {
      pts.push_back(Point::Vector(e2, {rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)}));
    }
    // Cyclic shift of the sample, identity elsewhere.
    auto shift = [e2, pts](const Point& p, int by) {
      const int n = static_cast<int>(pts.size());
      for (int i = 0; i < n; ++i) {
        if (same_point(e2, pts[i], p)) return pts[((i + by) % n + n) % n];
      }
      return p;
    };
    BijectionSpec f;
    f.name = name;
    f.domain = e2;
    f.codomain = e2;
    f.forward = [shift](const Point& p) { return shift(p, 1); };
    f.inverse = [shift](const Point& p) { return shift(p, -1); };
    SampleSet s = user_sample(e2, pts);
    s.seed = seed;
    return package(name, std::move(f), std::move(s));
  }
  if (name == "sphere-flip") {
    const auto sphere = SpaceModel::Sphere(1.0 / std::numbers::pi, 3);
    std::vector<Point> pts, flipped;
    for (int i = 0; i < 12; ++i) {
      const Point p = Point::OnSphere(sphere, {rng.normal(), rng.normal(), rng.normal()});
      pts.push_back(p);
      pts.push_back(negate(p));
      if (i % 2 == 0) {
        flipped.push_back(p);
        flipped.push_back(negate(p));
      }
    }
    SampleSet s = user_sample(sphere, pts);
    s.seed = seed;
    Counterexample c = package(name, sphere_flip_bijection(sphere, flipped), std::move(s));

    // On the sphere of radius 1/(2 pi) the diameter is 1/2, so the same
    // flip preserves the unit distance vacuously.
    const auto small = SpaceModel::Sphere(0.5 / std::numbers::pi, 3);
    auto rescale = [&](std::vector<Point> v) {
      for (auto& p : v) p = Point::OnSphere(small, p.coords);
      return v;
    };
    const SampleSet small_sample = user_sample(small, rescale(pts));
    const BijectionSpec small_flip = sphere_flip_bijection(small, rescale(flipped));
    const VerificationReport pres = preserves_unit_distance(small_flip, small_sample, UnitMode::kEq);
    const VerificationReport iso = is_isometry(small_flip, small_sample);
    VerificationReport vacuous("sphere-flip.vacuous(r=1/(2pi))", pres.tolerance());
    const int related = pres.details().value("related_pairs", -1);
    vacuous.record(pres.passed() && related == 0, {{"related_pairs", related}});
    vacuous.record(!iso.passed(), {{"isometry", "not refuted"}});
    c.extras.push_back(std::move(vacuous));
    return c;
  }
  if (name == "line-sine") return package(name, line_counterexample(), line_sample(seed));
  if (name == "tree-swap") {
    const auto tree = SpaceModel::Tree(path_tree(3, Rational(1, 2), 40));
    const TreePointSet tps = tree_point_set(tree, Rational(1, 10), Rational(1, 5));
    std::vector<Point> pts = tps.a_alpha;
    pts.insert(pts.end(), tps.a_beta.begin(), tps.a_beta.end());
    for (int v = 0; v < tree.tree().vertex_count(); ++v) {
      pts.push_back(Point::OnTree(tree.tree().vertex(v)));
    }
    for (int i = 0; i < 8; ++i) {
      const int e = static_cast<int>(rng.integer(0, 2));
      pts.push_back(Point::OnTree(tree.tree().on_segment(e, Rational(rng.integer(1, 19), 40))));
    }
    SampleSet s = user_sample(tree, pts);
    s.seed = seed;
    return package(name, tree_swap_bijection(tps), std::move(s));
  }
  if (name == "tree-smooth") {
    const auto tree = SpaceModel::Tree(path_tree(4, Rational(1, 2), 32));
    std::vector<Point> pts;
    for (int v = 0; v < tree.tree().vertex_count(); ++v) {
      pts.push_back(Point::OnTree(tree.tree().vertex(v)));
    }
    for (int e = 0; e < tree.tree().edge_count(); ++e) {
      for (int k = 0; k < 8; ++k) {
        pts.push_back(Point::OnTree(tree.tree().on_segment(e, Rational(2 * k + 1, 32))));
      }
    }
    SampleSet s = user_sample(tree, pts);
    s.seed = seed;
    return package(name, smooth_tree_bijection(tree, 2), std::move(s));
  }
  if (name == "max-lift") {
    const auto x_space = SpaceModel::Euclidean(1);
    const BijectionSpec f = max_product_lift(line_counterexample(), x_space);
    std::vector<Point> pts;
    for (int i = 0; i < 20; ++i) {
      for (int k = 0; k < 20; ++k) {
        pts.push_back(Point::Product(Point::Vector(x_space, {-5.0 + 0.5 * i}),
                                     Point::Real(-2.5 + (2 * k + 1) / 8.0)));
      }
    }
    SampleSet s = user_sample(f.domain, pts);
    s.seed = seed;
    s.generation = "grid";
    return package(name, f, std::move(s));
  }
  throw ConfigError("unknown counterexample '" + name + "'");
}

}  // namespace buselab
