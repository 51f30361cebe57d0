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

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "buselab/errors.h"
#include "buselab/numeric.h"

namespace buselab {
namespace {

constexpr double kRoundTripTol = 1e-12;

bool exact_tree_pair(const SpaceModel& space, const Point& x, const Point& y) {
  return space.kind() == SpaceKind::kMetricTree && x.tree.exact && y.tree.exact;
}

OrderedJson pj(const SpaceModel& space, const Point& p) {
  return OrderedJson::parse(point_to_json(space, p).dump());
}

}  // namespace

Point random_point(const SpaceModel& space, Rng& rng, double scale) {
  switch (space.kind()) {
    case SpaceKind::kEuclidean:
    case SpaceKind::kMinkowskiLp:
    case SpaceKind::kMinkowskiLinf:
    case SpaceKind::kRealLine: {
      std::vector<double> c(space.dim());
      for (double& v : c) v = rng.uniform(-scale, scale);
      return Point::Vector(space, std::move(c));
    }
    case SpaceKind::kHyperbolicPlane: {
      const double x = rng.uniform(-scale, scale);
      return Point::HalfPlane(x, std::exp(rng.uniform(-1.5, 1.5)));
    }
    case SpaceKind::kSphere: {
      std::vector<double> c(space.dim());
      double n = 0.0;
      while (n < 1e-6) {
        for (double& v : c) v = rng.normal();
        n = std::sqrt(std::inner_product(c.begin(), c.end(), c.begin(), 0.0));
      }
      return Point::OnSphere(space, std::move(c));
    }
    case SpaceKind::kMetricTree: {
      const MetricTree& tree = space.tree();
      if (tree.segment_count() == 0) return Point::OnTree(tree.vertex(0));
      const int segment = static_cast<int>(rng.integer(0, tree.segment_count() - 1));
      const std::int64_t den = 8 * tree.desc().denominator_bound;
      const Rational span = tree.is_ray(segment)
                                ? Rational(static_cast<std::int64_t>(std::ceil(scale)))
                                : tree.segment_length(segment);
      const std::int64_t top = (span * den).numerator() / (span * den).denominator();
      return Point::OnTree(tree.on_segment(segment, Rational(rng.integer(0, top), den)));
    }
    case SpaceKind::kMaxProduct: {
      Point l = random_point(space.left(), rng, scale);
      Point r = random_point(space.right(), rng, scale);
      return Point::Product(std::move(l), std::move(r));
    }
  }
  throw DomainError("unknown space kind");
}

SampleSet random_sample(const SpaceModel& space, int count, std::uint64_t seed,
                        double scale) {
  if (count <= 0) throw DomainError("sample size must be positive");
  Rng rng(seed);
  SampleSet s;
  s.space = space;
  s.seed = seed;
  s.generation = "random";
  s.points.reserve(count);
  for (int i = 0; i < count; ++i) s.points.push_back(random_point(space, rng, scale));
  return s;
}

SampleSet user_sample(const SpaceModel& space, std::vector<Point> points) {
  for (const auto& p : points) check_point(space, p);
  SampleSet s;
  s.space = space;
  s.points = std::move(points);
  s.generation = "user";
  return s;
}

BijectionSpec identity_bijection(const SpaceModel& space) {
  BijectionSpec f;
  f.name = "identity";
  f.domain = space;
  f.codomain = space;
  f.forward = [](const Point& p) { return p; };
  f.inverse = [](const Point& p) { return p; };
  return f;
}

std::string to_string(UnitMode mode) {
  switch (mode) {
    case UnitMode::kEq: return "eq";
    case UnitMode::kLe: return "le";
    case UnitMode::kLt: return "lt";
  }
  return "eq";
}

UnitMode unit_mode_from_string(const std::string& text) {
  if (text == "eq") return UnitMode::kEq;
  if (text == "le") return UnitMode::kLe;
  if (text == "lt") return UnitMode::kLt;
  throw ConfigError("unknown unit-distance mode '" + text + "'");
}

int unit_class(const SpaceModel& space, const Point& x, const Point& y, double tol) {
  if (exact_tree_pair(space, x, y)) {
    const Rational d = space.tree().distance_exact(x.tree, y.tree);
    return d < 1 ? -1 : (d == 1 ? 0 : 1);
  }
  const double d = distance(space, x, y);
  if (std::abs(d - 1.0) <= tol) return 0;
  return d < 1.0 ? -1 : 1;
}

bool unit_relation(int cls, UnitMode mode) {
  switch (mode) {
    case UnitMode::kEq: return cls == 0;
    case UnitMode::kLe: return cls <= 0;
    case UnitMode::kLt: return cls < 0;
  }
  return false;
}

VerificationReport check_metric_axioms(const SampleSet& sample, double tol) {
  const SpaceModel& space = sample.space;
  VerificationReport report("metric_axioms." + space.name(), tol);
  const auto& p = sample.points;
  if (p.size() < 3) throw DomainError("metric axioms need at least one triple");
  std::int64_t triples = 0;
  for (std::size_t k = 0; k + 2 < p.size(); k += 3) {
    ++triples;
    const std::array<const Point*, 3> t = {&p[k], &p[k + 1], &p[k + 2]};
    const bool exact = exact_tree_pair(space, *t[0], *t[1]) && t[2]->tree.exact;
    auto witness = [&](const char* axiom) {
      OrderedJson w;
      w["axiom"] = axiom;
      w["triple"] = k / 3;
      w["points"] = {pj(space, *t[0]), pj(space, *t[1]), pj(space, *t[2])};
      return w;
    };
    if (exact) {
      const MetricTree& tree = space.tree();
      const Rational dxy = tree.distance_exact(t[0]->tree, t[1]->tree);
      const Rational dyz = tree.distance_exact(t[1]->tree, t[2]->tree);
      const Rational dxz = tree.distance_exact(t[0]->tree, t[2]->tree);
      report.record(dxy == tree.distance_exact(t[1]->tree, t[0]->tree), witness("symmetry"));
      report.record(tree.distance_exact(t[0]->tree, t[0]->tree) == 0, witness("zero"));
      report.record((dxy == 0) == tree.same_point(t[0]->tree, t[1]->tree),
                    witness("indiscernibles"));
      report.record(dxz <= dxy + dyz && dxy <= dxz + dyz && dyz <= dxy + dxz,
                    witness("triangle"));
      continue;
    }
    const double dxy = distance(space, *t[0], *t[1]);
    const double dyx = distance(space, *t[1], *t[0]);
    const double dyz = distance(space, *t[1], *t[2]);
    const double dxz = distance(space, *t[0], *t[2]);
    auto w = witness("symmetry");
    w["values"] = {dxy, dyx};
    report.record(std::abs(dxy - dyx) <= tol, w);
    w = witness("zero");
    w["values"] = {distance(space, *t[0], *t[0])};
    report.record(distance(space, *t[0], *t[0]) == 0.0, w);
    w = witness("indiscernibles");
    w["values"] = {dxy};
    report.record((dxy == 0.0) == same_point(space, *t[0], *t[1], 0.0) || dxy <= tol, w);
    w = witness("triangle");
    w["values"] = {dxy, dyz, dxz};
    report.record(dxz <= dxy + dyz + tol && dxy <= dxz + dyz + tol && dyz <= dxy + dxz + tol,
                  w);
  }
  report.details()["triples"] = triples;
  report.details()["seed"] = sample.seed;
  return report;
}

VerificationReport check_unit_speed(const GeodesicRef& g, int samples, double tol,
                                    double window) {
  VerificationReport report("unit_speed." + g.space.name(), tol);
  const double lo = std::isinf(g.lo) ? -window : g.lo;
  const double hi = std::isinf(g.hi) ? (std::isinf(g.lo) ? window : g.lo + 2 * window) : g.hi;
  std::vector<double> ts;
  std::vector<Point> pts;
  for (int i = 0; i < samples; ++i) {
    const double t = samples == 1 ? lo : lo + (hi - lo) * i / (samples - 1);
    ts.push_back(t);
    pts.push_back(g.at(t));
  }
  for (int i = 0; i < samples; ++i) {
    for (int j = i + 1; j < samples; ++j) {
      const double d = distance(g.space, pts[i], pts[j]);
      const double expect = std::abs(ts[i] - ts[j]);
      OrderedJson w;
      w["s"] = ts[i];
      w["t"] = ts[j];
      w["distance"] = d;
      report.record(std::abs(d - expect) <= tol * std::max(1.0, expect), w);
    }
  }
  return report;
}

VerificationReport check_midpoint(const SpaceModel& space, const Point& x, const Point& y,
                                  MidpointSelector selector, double tol) {
  VerificationReport report("midpoint." + space.name(), tol);
  const Point m = midpoint(space, x, y, selector);
  OrderedJson w;
  w["x"] = pj(space, x);
  w["y"] = pj(space, y);
  w["m"] = pj(space, m);
  if (exact_tree_pair(space, x, y) && m.tree.exact) {
    const MetricTree& tree = space.tree();
    const Rational d = tree.distance_exact(x.tree, y.tree);
    report.record(tree.distance_exact(x.tree, m.tree) * 2 == d &&
                      tree.distance_exact(m.tree, y.tree) * 2 == d,
                  w);
    return report;
  }
  const double d = distance(space, x, y);
  const double slack = tol * std::max(1.0, d);
  w["d_xm"] = distance(space, x, m);
  w["d_my"] = distance(space, m, y);
  report.record(std::abs(distance(space, x, m) - d / 2) <= slack &&
                    std::abs(distance(space, m, y) - d / 2) <= slack,
                w);
  return report;
}

VerificationReport check_busemann_midpoints(const SpaceModel& space, const Point& x,
                                            const Point& y, const Point& z,
                                            MidpointSelector select_y,
                                            MidpointSelector select_z, double tol) {
  VerificationReport report("busemann_midpoints." + space.name(), tol);
  const Point m = midpoint(space, x, y, select_y);
  const Point n = midpoint(space, x, z, select_z);
  OrderedJson w;
  w["x"] = pj(space, x);
  w["y"] = pj(space, y);
  w["z"] = pj(space, z);
  w["m"] = pj(space, m);
  w["n"] = pj(space, n);
  if (exact_tree_pair(space, m, n) && y.tree.exact && z.tree.exact) {
    const MetricTree& tree = space.tree();
    const Rational mn = tree.distance_exact(m.tree, n.tree);
    const Rational yz = tree.distance_exact(y.tree, z.tree);
    w["mn"] = format_rational(mn);
    w["half_yz"] = format_rational(yz / 2);
    report.record(mn * 2 <= yz, w);
    return report;
  }
  const double mn = distance(space, m, n);
  const double yz = distance(space, y, z);
  w["mn"] = mn;
  w["half_yz"] = yz / 2;
  report.record(mn <= 0.5 * yz + tol, w);
  return report;
}

VerificationReport check_distance_convexity(const SpaceModel& space, const GeodesicRef& g1,
                                            const GeodesicRef& g2, int grid, double tol) {
  if (g1.domain != GeodesicDomain::kSegment || g2.domain != GeodesicDomain::kSegment) {
    throw DomainError("distance convexity is checked on segments");
  }
  if (grid < 1) throw DomainError("grid must be positive");
  VerificationReport report("distance_convexity." + space.name(), tol);
  auto param = [&](const GeodesicRef& g, int i) { return g.lo + (g.hi - g.lo) * i / grid; };
  auto dist = [&](double t1, double t2) { return distance(space, g1.at(t1), g2.at(t2)); };
  std::vector<std::pair<int, int>> lattice;
  for (int i = 0; i <= grid; ++i) {
    for (int j = 0; j <= grid; ++j) lattice.emplace_back(i, j);
  }
  for (std::size_t a = 0; a < lattice.size(); ++a) {
    for (std::size_t b = a + 1; b < lattice.size(); ++b) {
      const double s1 = param(g1, lattice[a].first), t1 = param(g2, lattice[a].second);
      const double s2 = param(g1, lattice[b].first), t2 = param(g2, lattice[b].second);
      const double mid = dist(0.5 * (s1 + s2), 0.5 * (t1 + t2));
      const double avg = 0.5 * (dist(s1, t1) + dist(s2, t2));
      OrderedJson w;
      w["first"] = {s1, t1};
      w["second"] = {s2, t2};
      w["midpoint_distance"] = mid;
      w["average"] = avg;
      report.record(mid <= avg + tol, w);
    }
  }
  return report;
}

double hausdorff_distance(const SpaceModel& space, const std::vector<Point>& a,
                          const std::vector<Point>& b) {
  if (a.empty() || b.empty()) throw DomainError("Hausdorff distance of an empty set");
  auto directed = [&](const std::vector<Point>& from, const std::vector<Point>& to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to) best = std::min(best, distance(space, p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

double hausdorff_distance(const SampleSet& a, const SampleSet& b) {
  return hausdorff_distance(a.space, a.points, b.points);
}

StripFit detect_normed_strip(const SpaceModel& space, const GeodesicRef& a,
                             const GeodesicRef& b, int grid) {
  if (a.domain != GeodesicDomain::kLine || b.domain != GeodesicDomain::kLine) {
    throw DomainError("normed-strip detection needs two lines");
  }
  if (grid < 2 || grid % 2 != 0) throw DomainError("strip grid must be even and >= 2");
  constexpr double kTol = 1e-6;
  StripFit fit;
  fit.report = VerificationReport("normed_strip." + space.name(), kTol);
  VerificationReport& report = fit.report;

  const double reach = 4.0 * (1.0 + distance(space, a.at(0.0), b.at(0.0)));
  auto foot = [&](double s, double center) {
    return minimize_unimodal([&](double t) { return distance(space, a.at(s), b.at(t)); },
                             center - reach, center + reach);
  };
  const auto [tau0, width] = foot(0.0, 0.0);
  fit.alignment = tau0;
  fit.width = width;
  report.details()["width"] = width;
  report.details()["alignment"] = tau0;

  double spread = 0.0;
  for (double s : {-16.0, -8.0, -4.0, -2.0, -1.0, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    const double h = foot(s, s + tau0).second;
    spread = std::max(spread, std::abs(h - width));
    if (std::abs(h - width) > kTol) {
      OrderedJson w;
      w["reason"] = "lines are not parallel";
      w["s"] = s;
      w["distance_to_b"] = h;
      w["distance_at_0"] = width;
      report.fail(w);
      break;
    }
  }
  report.details()["parallel_spread"] = spread;
  if (!report.passed() || width <= kTol) {
    if (width <= kTol) report.fail({{"reason", "lines coincide"}});
    report.details()["is_strip"] = false;
    return fit;
  }

  auto p = [&](double s, double t) {
    const Point from = a.at(s);
    const Point to = b.at(s + tau0);
    const GeodesicRef seg = geodesic_between(space, from, to);
    return seg.at(t * seg.hi);
  };
  auto rho = [&](double s, double t, double alpha, double beta) {
    return distance(space, p(s, t), p(s + alpha, t + beta));
  };
  auto base_range = [](double step, double extent) {
    return std::pair<double, double>{std::max(0.0, -step), extent - std::max(0.0, step)};
  };

  std::vector<std::vector<double>> table(grid + 1, std::vector<double>(grid + 1));
  for (int k = 0; k <= grid; ++k) {
    for (int l = 0; l <= grid; ++l) {
      const double alpha = -2.0 + 4.0 * k / grid;
      const double beta = -1.0 + 2.0 * l / grid;
      const auto [s_lo, s_hi] = base_range(alpha, 2.0);
      const auto [t_lo, t_hi] = base_range(beta, 1.0);
      const double value = rho(s_lo, t_lo, alpha, beta);
      table[k][l] = value;
      fit.table.push_back({alpha, beta, value});
      for (double s : {s_lo, 0.5 * (s_lo + s_hi), s_hi}) {
        for (double t : {t_lo, 0.5 * (t_lo + t_hi), t_hi}) {
          const double other = rho(s, t, alpha, beta);
          OrderedJson w;
          w["property"] = "constant";
          w["alpha"] = alpha;
          w["beta"] = beta;
          w["base"] = {s, t};
          w["values"] = {value, other};
          report.record(std::abs(other - value) <= kTol, w);
        }
      }
      for (double lambda : {0.5, 0.25}) {
        const double scaled = rho(s_lo, t_lo, lambda * alpha, lambda * beta);
        OrderedJson w;
        w["property"] = "homogeneity";
        w["alpha"] = alpha;
        w["beta"] = beta;
        w["lambda"] = lambda;
        w["values"] = {lambda * value, scaled};
        report.record(std::abs(scaled - lambda * value) <= kTol, w);
      }
    }
  }
  for (int k = 0; k <= grid; ++k) {
    for (int l = 0; l <= grid; ++l) {
      OrderedJson w;
      w["property"] = "symmetry";
      w["index"] = {k, l};
      w["values"] = {table[k][l], table[grid - k][grid - l]};
      report.record(std::abs(table[k][l] - table[grid - k][grid - l]) <= kTol, w);
    }
  }
  const int half = grid / 2;
  for (int k1 = 0; k1 <= grid; ++k1) {
    for (int l1 = 0; l1 <= grid; ++l1) {
      for (int k2 = 0; k2 <= grid; ++k2) {
        for (int l2 = 0; l2 <= grid; ++l2) {
          const int ks = k1 + k2 - half, ls = l1 + l2 - half;
          if (ks < 0 || ks > grid || ls < 0 || ls > grid) continue;
          OrderedJson w;
          w["property"] = "triangle";
          w["first"] = {k1, l1};
          w["second"] = {k2, l2};
          report.record(table[ks][ls] <= table[k1][l1] + table[k2][l2] + kTol, w);
        }
      }
    }
  }
  fit.is_strip = true;
  report.details()["is_strip"] = true;
  OrderedJson rows = OrderedJson::array();
  for (const auto& n : fit.table) rows.push_back({n.alpha, n.beta, n.value});
  report.details()["norm_table"] = rows;
  return fit;
}

VerificationReport is_isometry(const BijectionSpec& f, const SampleSet& sample, double tol) {
  VerificationReport report("is_isometry." + f.name, tol);
  std::vector<Point> image;
  image.reserve(sample.points.size());
  for (const auto& p : sample.points) image.push_back(f.forward(p));
  for (std::size_t i = 0; i < sample.points.size(); ++i) {
    for (std::size_t j = i + 1; j < sample.points.size(); ++j) {
      const Point& x = sample.points[i];
      const Point& y = sample.points[j];
      OrderedJson w;
      w["x"] = pj(f.domain, x);
      w["y"] = pj(f.domain, y);
      if (exact_tree_pair(f.domain, x, y) && exact_tree_pair(f.codomain, image[i], image[j])) {
        const Rational dx = f.domain.tree().distance_exact(x.tree, y.tree);
        const Rational dy = f.codomain.tree().distance_exact(image[i].tree, image[j].tree);
        w["d"] = format_rational(dx);
        w["d_image"] = format_rational(dy);
        report.record(dx == dy, w);
        continue;
      }
      const double dx = distance(f.domain, x, y);
      const double dy = distance(f.codomain, image[i], image[j]);
      w["d"] = dx;
      w["d_image"] = dy;
      report.record(std::abs(dx - dy) <= tol, w);
    }
  }
  report.details()["sample_size"] = sample.points.size();
  return report;
}

VerificationReport preserves_unit_distance(const BijectionSpec& f, const SampleSet& sample,
                                           UnitMode mode, double tol) {
  VerificationReport report("preserves_unit_distance." + to_string(mode) + "." + f.name, tol);
  const auto& pts = sample.points;
  std::vector<Point> image;
  image.reserve(pts.size());
  for (const auto& p : pts) image.push_back(f.forward(p));

  std::int64_t related = 0;
  auto compare_pairs = [&](const SpaceModel& from_space, const std::vector<Point>& from,
                           const SpaceModel& to_space, const std::vector<Point>& to,
                           const char* direction) {
    for (std::size_t i = 0; i < from.size(); ++i) {
      for (std::size_t j = i + 1; j < from.size(); ++j) {
        const int before = unit_class(from_space, from[i], from[j], tol);
        const int after = unit_class(to_space, to[i], to[j], tol);
        const bool r_before = unit_relation(before, mode);
        if (r_before && direction[0] == 'f') ++related;
        OrderedJson w;
        w["direction"] = direction;
        w["x"] = pj(from_space, from[i]);
        w["y"] = pj(from_space, from[j]);
        w["d"] = distance(from_space, from[i], from[j]);
        w["d_image"] = distance(to_space, to[i], to[j]);
        report.record(r_before == unit_relation(after, mode), w);
      }
    }
  };
  compare_pairs(f.domain, pts, f.codomain, image, "forward");

  std::vector<Point> back;
  back.reserve(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) {
    back.push_back(f.inverse(image[i]));
    const double err = distance(f.domain, back.back(), pts[i]);
    OrderedJson w;
    w["direction"] = "round_trip";
    w["x"] = pj(f.domain, pts[i]);
    w["error"] = err;
    report.record(err <= kRoundTripTol, w);
  }
  compare_pairs(f.codomain, image, f.domain, back, "inverse");
  report.details()["related_pairs"] = related;
  report.details()["sample_size"] = pts.size();
  return report;
}

}  // namespace buselab
