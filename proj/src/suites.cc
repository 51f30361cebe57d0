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

#include "buselab/suites.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "buselab/counterexamples.h"
#include "buselab/errors.h"
#include "buselab/grasshopper.h"
#include "buselab/horofunctions.h"
#include "buselab/metric_verify.h"
#include "buselab/rng.h"
#include "buselab/tapes.h"
#include "buselab/transfers.h"

namespace buselab {
namespace {

using Reports = std::vector<VerificationReport>;

constexpr double kOracleTol = 1e-6;
constexpr double kShiftTol = 1e-6;
constexpr double kInvarianceTol = 1e-8;
constexpr double kTitsTol = 1e-4;

Point V(const SpaceModel& s, std::vector<double> c) { return Point::Vector(s, std::move(c)); }

OrderedJson to_ordered(const nlohmann::json& j) { return OrderedJson::parse(j.dump()); }

double sup_tol(const ScenarioConfig& config, double fallback) {
  return config.tol.value_or(fallback);
}

std::vector<SpaceModel> spaces_or_override(const ScenarioConfig& config,
                                           std::vector<SpaceModel> defaults) {
  if (config.space) return {space_from_json(*config.space)};
  return defaults;
}

// Runs `body`, turning a library error into a failed report.
void guarded(VerificationReport& r, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    r.fail({{"error", e.what()}, {"code", static_cast<int>(e.code())}});
  }
}

// --- axioms -----------------------------------------------------------------

Reports run_axioms(const ScenarioConfig& config) {
  Reports out;
  const auto spaces = spaces_or_override(config, catalog_spaces());
  const double tol = sup_tol(config, 1e-9);
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    const auto sample = random_sample(spaces[i], 600, *config.seed + i);
    auto r = check_metric_axioms(sample, tol);
    r.set_check("metric_axioms." + spaces[i].name());
    r.details()["triples"] = sample.points.size() / 3;
    out.push_back(std::move(r));
  }
  return out;
}

// --- busemann ---------------------------------------------------------------

Reports run_busemann(const ScenarioConfig& config) {
  Reports out;
  const auto spaces = spaces_or_override(config, busemann_catalog());
  const double tol = sup_tol(config, 1e-9);
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    const SpaceModel& space = spaces[i];
    std::vector<std::pair<MidpointSelector, MidpointSelector>> selectors = {
        {MidpointSelector::kCenter, MidpointSelector::kCenter}};
    if (space.kind() == SpaceKind::kMinkowskiLinf) {
      for (auto a : {MidpointSelector::kLower, MidpointSelector::kUpper}) {
        selectors.push_back({a, MidpointSelector::kCenter});
        selectors.push_back({MidpointSelector::kCenter, a});
      }
    }
    VerificationReport r("busemann_midpoints." + space.name(), tol);
    Rng rng(*config.seed + 1000 + i);
    for (int k = 0; k < 200; ++k) {
      // Redraw coincident points.
      const Point x = random_point(space, rng);
      Point y = random_point(space, rng), z = random_point(space, rng);
      while (same_point(space, x, y, 0.0)) y = random_point(space, rng);
      while (same_point(space, x, z, 0.0)) z = random_point(space, rng);
      for (const auto& [sy, sz] : selectors) {
        guarded(r, [&] { r.merge(check_busemann_midpoints(space, x, y, z, sy, sz, tol)); });
      }
    }
    r.details()["triples"] = 200;
    r.details()["selector_pairs"] = selectors.size();
    out.push_back(std::move(r));
  }
  if (!config.space) {
    // The sup-norm midpoints of the fixed witness must violate the inequality.
    const auto linf = SpaceModel::MinkowskiLinf();
    const auto w = check_busemann_midpoints(linf, V(linf, {0, 0}), V(linf, {2, 0}),
                                            V(linf, {2, 2}), MidpointSelector::kLower,
                                            MidpointSelector::kCenter);
    VerificationReport r("busemann_midpoints.linf_witness_fails", 0.0);
    const auto ws = w.witnesses();
    const bool ok = !w.passed() && ws.size() == 1 && ws[0]["mn"].get<double>() == 2.0 &&
                    ws[0]["half_yz"].get<double>() == 1.0;
    r.record(ok, {{"inner", w.to_json()}});
    r.details()["witness"] = ws.empty() ? OrderedJson() : ws[0];
    out.push_back(std::move(r));
  }
  return out;
}

// --- horofn -----------------------------------------------------------------

double poisson_level(const Point& z, double b) {
  return -std::log(z.y() / ((z.x() - b) * (z.x() - b) + z.y() * z.y()));
}

Point random_halfplane(Rng& rng) {
  return Point::HalfPlane(rng.uniform(-2, 2), std::exp(rng.uniform(-1.5, 1.5)));
}

BusemannOptions truncated_only() {
  BusemannOptions o;
  o.prefer_closed_form = false;
  return o;
}

VerificationReport oracle_euclidean(Rng& rng) {
  const auto e2 = SpaceModel::Euclidean(2);
  VerificationReport r("busemann_oracle.euclidean", kOracleTol);
  for (int k = 0; k < 50; ++k) {
    const Point o = random_point(e2, rng), y = random_point(e2, rng);
    const double th = rng.uniform(0, 2 * std::numbers::pi);
    const std::vector<double> u = {std::cos(th), std::sin(th)};
    const auto ray = ray_from(e2, o, IdealPoint::Direction(e2, u));
    const double oracle = -((y.x() - o.x()) * u[0] + (y.y() - o.y()) * u[1]);
    guarded(r, [&] {
      const double v = busemann_truncated(e2, ray, y, truncated_only()).value;
      r.record(std::abs(v - oracle) <= kOracleTol, {{"value", v}, {"oracle", oracle}});
    });
  }
  return r;
}

VerificationReport oracle_hyperbolic(Rng& rng) {
  const auto h = SpaceModel::HyperbolicPlane();
  VerificationReport r("busemann_oracle.hyperbolic", kOracleTol);
  for (int k = 0; k < 50; ++k) {
    const Point y = random_halfplane(rng);
    double oracle = 0.0;
    GeodesicRef ray;
    if (k % 2 == 0) {
      const double x0 = rng.uniform(-2, 2);
      ray = ray_from(h, Point::HalfPlane(x0, 1), IdealPoint::HalfPlaneInfinity());
      oracle = -std::log(y.y());
    } else {
      const Point o = random_halfplane(rng);
      const double b = rng.uniform(-3, 3);
      ray = ray_from(h, o, IdealPoint::HalfPlaneBoundary(b));
      oracle = poisson_level(y, b) - poisson_level(o, b);
    }
    guarded(r, [&] {
      const double v = busemann_truncated(h, ray, y, truncated_only()).value;
      r.record(std::abs(v - oracle) <= kOracleTol, {{"value", v}, {"oracle", oracle}});
    });
  }
  return r;
}

SpaceModel horofn_tree() {
  return SpaceModel::Tree(comb_tree(3, Rational(1, 2), Rational(1, 3), 6));
}

VerificationReport oracle_tree(Rng& rng) {
  const auto tree = horofn_tree();
  VerificationReport r("busemann_oracle.tree", 0.0);
  const Rational far(1000);
  for (int k = 0; k < 30; ++k) {
    const Point o = random_point(tree, rng), y = random_point(tree, rng);
    const int end = static_cast<int>(rng.integer(0, tree.tree().end_count() - 1));
    const auto ray = ray_from(tree, o, IdealPoint::TreeEnd(end));
    // Far along the ray, d(y, c(T)) - T no longer depends on T.
    const Rational at_far = distance_exact(tree, y, ray.at_exact(far)) - far;
    const Rational at_farther = distance_exact(tree, y, ray.at_exact(2 * far)) - 2 * far;
    guarded(r, [&] {
      const Rational v = busemann_exact(tree, ray, y);
      r.record(v == at_far && v == at_farther,
               {{"value", format_rational(v)}, {"oracle", format_rational(at_far)}});
    });
  }
  return r;
}

VerificationReport sum_bound_pairs(Rng& rng) {
  VerificationReport r("busemann_sum_bound", 1e-6);
  const auto e2 = SpaceModel::Euclidean(2);
  for (int k = 0; k < 40; ++k) {
    const double th = rng.uniform(0, 2 * std::numbers::pi);
    const auto xi = IdealPoint::Direction(e2, {std::cos(th), std::sin(th)});
    const Point a = random_point(e2, rng), b = random_point(e2, rng);
    guarded(r, [&] { r.merge(check_busemann_sum_bound(e2, ray_from(e2, a, xi), ray_from(e2, b, xi))); });
  }
  const auto h = SpaceModel::HyperbolicPlane();
  for (int k = 0; k < 30; ++k) {
    const auto xi = k % 2 == 0 ? IdealPoint::HalfPlaneInfinity()
                               : IdealPoint::HalfPlaneBoundary(rng.uniform(-3, 3));
    const Point a = random_halfplane(rng), b = random_halfplane(rng);
    guarded(r, [&] { r.merge(check_busemann_sum_bound(h, ray_from(h, a, xi), ray_from(h, b, xi))); });
  }
  const auto tree = horofn_tree();
  for (int k = 0; k < 40; ++k) {
    const auto xi = IdealPoint::TreeEnd(static_cast<int>(rng.integer(0, tree.tree().end_count() - 1)));
    const Point a = random_point(tree, rng), b = random_point(tree, rng);
    guarded(r, [&] {
      r.merge(check_busemann_sum_bound(tree, ray_from(tree, a, xi), ray_from(tree, b, xi)));
    });
  }
  r.details()["pairs"] = 110;
  return r;
}

VerificationReport tits_examples() {
  VerificationReport r("tits_delta", kTitsTol);
  const auto e2 = SpaceModel::Euclidean(2);
  const Point o = V(e2, {0, 0});
  auto dir = [&](double theta) {
    return IdealPoint::Direction(e2, {std::cos(theta), std::sin(theta)});
  };
  OrderedJson values = OrderedJson::array();
  for (double theta : {0.01, std::numbers::pi / 2, std::numbers::pi}) {
    guarded(r, [&] {
      const double delta = tits_delta(e2, o, dir(0), dir(theta));
      values.push_back({{"theta", theta}, {"delta", delta}});
      r.record(std::abs(delta - std::sin(theta / 2)) <= kTitsTol,
               {{"theta", theta}, {"delta", delta}, {"oracle", std::sin(theta / 2)}});
    });
  }
  const auto tree = horofn_tree();
  guarded(r, [&] {
    const MetricTree& t = tree.tree();
    const Point v = Point::OnTree(t.vertex(t.end_vertex(0)));
    const double delta = tits_delta(tree, v, IdealPoint::TreeEnd(0), IdealPoint::TreeEnd(1));
    values.push_back({{"tree_opposite_ends", delta}});
    r.record(delta == 1.0, {{"tree_delta", delta}});
  });
  r.details()["values"] = values;
  return r;
}

VerificationReport shadow_semicontinuity(Rng& rng) {
  constexpr double kRho = 1.0, kEps = 0.1, kDelta = 0.01;
  constexpr int kResolution = 3600;
  const auto e2 = SpaceModel::Euclidean(2);
  VerificationReport r("shadow_semicontinuity", kEps);
  int configs = 0;
  while (r.checked() < 100 && configs < 1000) {
    ++configs;
    const Point y = random_point(e2, rng);
    const double th = rng.uniform(0, 2 * std::numbers::pi);
    const double len = rng.uniform(1, 3);
    const Point x0 = V(e2, {y.x() + len * std::cos(th), y.y() + len * std::sin(th)});
    const double ph = rng.uniform(0, 2 * std::numbers::pi);
    const Point x1 = V(e2, {x0.x() + kDelta * std::cos(ph), x0.y() + kDelta * std::sin(ph)});
    guarded(r, [&] {
      const auto base = spherical_shadow_sample(e2, y, x0, kRho, kResolution);
      const auto moved = spherical_shadow_sample(e2, y, x1, kRho, kResolution);
      if (base.empty() || moved.empty()) {
        r.fail({{"empty_shadow", true}});
        return;
      }
      for (const auto& z : moved) {
        double nearest = INFINITY;
        for (const auto& b : base) nearest = std::min(nearest, distance(e2, z, b));
        r.record(nearest <= kEps, {{"z", OrderedJson(z.coords)}, {"nearest", nearest}});
      }
    });
  }
  r.details()["rho"] = kRho;
  r.details()["delta"] = kDelta;
  r.details()["configurations"] = configs;
  return r;
}

Reports run_horofn(const ScenarioConfig& config) {
  Rng rng(*config.seed);
  Reports out;
  out.push_back(oracle_euclidean(rng));
  out.push_back(oracle_hyperbolic(rng));
  out.push_back(oracle_tree(rng));
  out.push_back(sum_bound_pairs(rng));
  out.push_back(tits_examples());
  out.push_back(shadow_semicontinuity(rng));
  return out;
}

// --- transfers --------------------------------------------------------------

struct LinePair {
  std::string label;
  SpaceModel space;
  GeodesicRef a, b;
  std::vector<Point> probes;
  bool exact = false;
};

std::vector<LinePair> transfer_pairs() {
  std::vector<LinePair> pairs;
  const auto e2 = SpaceModel::Euclidean(2);
  const auto l3 = SpaceModel::MinkowskiLp(3);
  for (const auto& [space, label] : {std::pair{e2, "euclidean"}, std::pair{l3, "minkowski_3"}}) {
    const auto xi = IdealPoint::Direction(space, {2, 1});
    const auto a = line_through_point(space, V(space, {0, 0}), xi);
    for (const auto& through : {std::vector<double>{0, 1}, {3, -2}, {-1, 4}}) {
      pairs.push_back({std::string(label), space, a, line_through_point(space, V(space, through), xi),
                       {a.at(-1.5), a.at(0.0), a.at(2.25)}});
    }
  }
  const auto tree = SpaceModel::Tree(star_tree(3, Rational(1), 12, true));
  const auto te = IdealPoint::TreeEnd(2);
  const auto ta = line_through(tree, IdealPoint::TreeEnd(0), te);
  for (const auto& s : {Rational(0), Rational(1, 3), Rational(-5, 4)}) {
    const auto tb = line_through(tree, IdealPoint::TreeEnd(1), te).shifted_exact(s);
    pairs.push_back({"tree", tree, ta, tb,
                     {ta.at_exact(Rational(-1, 2)), ta.at_exact(Rational(0)),
                      ta.at_exact(Rational(7, 3))},
                     true});
  }
  const auto h = SpaceModel::HyperbolicPlane();
  const auto inf = IdealPoint::HalfPlaneInfinity();
  const auto ha = line_through(h, IdealPoint::HalfPlaneBoundary(0), inf);
  for (double b : {-2.0, 0.5, 3.0}) {
    const auto hb = line_through(h, IdealPoint::HalfPlaneBoundary(b), inf).shifted(0.4);
    pairs.push_back({"hyperbolic_infinity", h, ha, hb, {ha.at(-1.0), ha.at(0.25), ha.at(1.5)}});
  }
  const auto one = IdealPoint::HalfPlaneBoundary(1);
  const auto ka = line_through(h, IdealPoint::HalfPlaneBoundary(-1), one);
  for (const auto& other : {IdealPoint::HalfPlaneInfinity(), IdealPoint::HalfPlaneBoundary(4),
                            IdealPoint::HalfPlaneBoundary(-3)}) {
    pairs.push_back({"hyperbolic_boundary", h, ka, line_through(h, other, one),
                     {ka.at(-0.7), ka.at(0.3), ka.at(2.0)}});
  }
  return pairs;
}

VerificationReport horospherical_residuals() {
  VerificationReport r("horospherical_transfer.residuals", 1e-8);
  for (const auto& pair : transfer_pairs()) {
    const auto xi = *pair.a.plus_end;
    for (const auto& m : pair.probes) {
      guarded(r, [&] {
        const auto t = horospherical_transfer(pair.space, pair.a, pair.b, xi, m);
        double worst = 0.0;
        for (double v : t.residuals) worst = std::max(worst, v);
        r.record(pair.exact ? worst == 0.0 : worst <= 1e-8,
                 {{"pair", pair.label}, {"residual", worst}});
      });
    }
  }
  return r;
}

VerificationReport double_transfer_shifts() {
  VerificationReport r("double_transfer.shift", kShiftTol);
  OrderedJson shifts = OrderedJson::array();
  for (const auto& pair : transfer_pairs()) {
    for (const auto& x : pair.probes) {
      guarded(r, [&] {
        const auto t = double_transfer(pair.space, pair.a, pair.b, x);
        const bool nonneg = t.shift >= -kShiftTol && t.formula_shift >= -kShiftTol;
        const bool agree = std::abs(t.shift - t.formula_shift) <= kShiftTol;
        const bool identity = pair.exact ? t.shift == 0.0 && t.formula_shift == 0.0
                                         : std::abs(t.shift) <= kShiftTol &&
                                               distance(pair.space, t.image, x) <= kShiftTol;
        shifts.push_back({{"pair", pair.label}, {"shift", t.shift}, {"formula", t.formula_shift}});
        r.record(nonneg && agree && identity,
                 {{"pair", pair.label}, {"shift", t.shift}, {"formula", t.formula_shift},
                  {"nonnegative", nonneg}, {"agree", agree}, {"identity", identity}});
      });
    }
  }
  r.details()["shifts"] = shifts;
  return r;
}

VerificationReport double_transfer_n_fold() {
  VerificationReport r("double_transfer.n_fold", kShiftTol);
  const auto h = SpaceModel::HyperbolicPlane();
  const auto one = IdealPoint::HalfPlaneBoundary(1);
  const auto a = line_through(h, IdealPoint::HalfPlaneBoundary(-1), one);
  const auto b = line_through(h, IdealPoint::HalfPlaneInfinity(), one);
  for (int n : {1, 2, 5, 10}) {
    guarded(r, [&] {
      Point x = a.at(0.3);
      double worst = 0.0;
      for (int k = 0; k < n; ++k) {
        const auto t = double_transfer(h, a, b, x, 1.0 / n);
        worst = std::max(worst, std::abs(t.shift - t.formula_shift));
        x = t.image;
      }
      const double miss = distance(h, x, a.at(1.3));
      r.record(miss <= kShiftTol && worst <= kShiftTol, {{"n", n}, {"miss", miss}, {"step_error", worst}});
    });
  }
  return r;
}

Reports run_transfers(const ScenarioConfig&) {
  return {horospherical_residuals(), double_transfer_shifts(), double_transfer_n_fold()};
}

// --- scissors ---------------------------------------------------------------

OrderedJson shift_json(const ScissorsShift& s) {
  return {{"composition", s.by_composition}, {"formula", s.by_formula}, {"degenerate", s.degenerate}};
}

VerificationReport scissors_euclidean() {
  VerificationReport r("scissors.euclidean_degenerate", kShiftTol);
  const auto e2 = SpaceModel::Euclidean(2);
  const auto line = line_through_point(e2, V(e2, {0, 0}), IdealPoint::Direction(e2, {1, 0}));
  const ScissorsConfig cfg{line, line.shifted(1.0), line.shifted(-2.0), line.shifted(3.0),
                           V(e2, {0, 0})};
  guarded(r, [&] {
    const auto valid = validate_scissors(e2, cfg);
    r.record(valid.passed(), {{"validation", valid.to_json()}});
    const auto s = scissors_shift(e2, cfg);
    r.record(s.degenerate && std::abs(s.by_composition) <= kShiftTol &&
                 std::abs(s.by_formula) <= kShiftTol,
             shift_json(s));
    r.details() = shift_json(s);
  });
  return r;
}

VerificationReport scissors_tree() {
  VerificationReport r("scissors.tree", 0.0);
  const auto tree = SpaceModel::Tree(star_tree(4, Rational(1), 4, true));
  auto line = [&](int from, int to) {
    return line_through(tree, IdealPoint::TreeEnd(from), IdealPoint::TreeEnd(to));
  };
  const ScissorsConfig cfg{line(0, 1), line(0, 3), line(2, 1), line(2, 3),
                           Point::OnTree(tree.tree().vertex(0))};
  guarded(r, [&] {
    const auto valid = validate_scissors(tree, cfg);
    r.record(valid.passed(), {{"validation", valid.to_json()}});
    for (double probe : {0.0, 0.25, -1.5}) {
      const auto s = scissors_shift(tree, cfg, probe, 0.5, -1.0);
      r.record(s.degenerate && s.by_composition == 0.0 && s.by_formula == 0.0, shift_json(s));
    }
  });
  return r;
}

VerificationReport scissors_hyperbolic() {
  VerificationReport r("scissors.hyperbolic", kShiftTol);
  const auto h = SpaceModel::HyperbolicPlane();
  const auto cfg = hyperbolic_scissors(-1, 1, -2, 2);
  guarded(r, [&] {
    const auto valid = validate_scissors(h, cfg);
    r.record(valid.passed(), {{"validation", valid.to_json()}});
    const auto s = scissors_shift(h, cfg);
    const double oracle = 4 * std::log(3 / (2 * std::sqrt(2.0)));
    r.record(std::abs(s.by_composition - s.by_formula) <= kShiftTol && s.by_composition > 0.01 &&
                 s.by_formula > 0.01 && std::abs(s.by_formula - oracle) <= kShiftTol,
             shift_json(s));
    r.details() = shift_json(s);
    r.details()["oracle"] = oracle;
    r.details()["config"] = to_ordered(scissors_to_json(h, cfg));
  });
  return r;
}

VerificationReport scissors_normalization() {
  VerificationReport r("scissors.normalization_invariance", kInvarianceTol);
  const auto h = SpaceModel::HyperbolicPlane();
  const auto cfg = hyperbolic_scissors(-1, 1, -2, 2);
  guarded(r, [&] {
    const auto base = scissors_shift(h, cfg);
    for (double p : {-1.5, -0.25, 0.4, 2.0}) {
      const auto moved = scissors_shift(h, cfg, p, p, -0.5 * p);
      r.record(std::abs(moved.by_formula - base.by_formula) <= kInvarianceTol &&
                   std::abs(moved.by_composition - base.by_composition) <= kShiftTol,
               {{"normalization", p}, {"moved", shift_json(moved)}, {"base", shift_json(base)}});
    }
  });
  return r;
}

VerificationReport scissors_continuity() {
  VerificationReport r("scissors.continuity", 0.1);
  const auto h = SpaceModel::HyperbolicPlane();
  constexpr double kPerturb = 1e-3;
  guarded(r, [&] {
    const double base = scissors_shift(h, hyperbolic_scissors(-1, 1, -2, 2)).by_formula;
    for (int mask = 0; mask < 16; ++mask) {
      auto e = [&](int bit, double v) { return v + ((mask >> bit) & 1 ? kPerturb : -kPerturb); };
      const auto s = scissors_shift(h, hyperbolic_scissors(e(0, -1), e(1, 1), e(2, -2), e(3, 2)));
      r.record(std::abs(s.by_formula - base) < 0.1 &&
                   std::abs(s.by_composition - s.by_formula) <= kShiftTol,
               {{"mask", mask}, {"shift", shift_json(s)}});
    }
  });
  return r;
}

Reports run_scissors(const ScenarioConfig&) {
  return {scissors_euclidean(), scissors_tree(), scissors_hyperbolic(), scissors_normalization(),
          scissors_continuity()};
}

// --- tapes ------------------------------------------------------------------

GeodesicRef x_axis(const SpaceModel& s) {
  return line_through_point(s, V(s, {0, 0}), IdealPoint::Direction(s, {1, 0}));
}

VerificationReport tape_case(const std::string& name, const SpaceModel& space, double h) {
  constexpr int kP = 6;
  VerificationReport r(name, 1e-9);
  const auto a = x_axis(space);
  guarded(r, [&] {
    const PTape tape = build_p_tape(space, a, kP, 1.0, h);
    const auto valid = validate_p_tape(tape);
    r.record(valid.passed(), {{"validation", valid.to_json()}});
    double worst = 0.0;
    for (int j = 1; j <= kP; ++j) {
      for (int z = tape.z_min; z <= tape.z_max; ++z) {
        worst = std::max(worst, distance(space, tape.at(1, j, z), a.at(tape_position(kP, j, z))));
      }
    }
    r.record(worst <= 1e-9, {{"row_one_error", worst}});
    r.details()["h"] = h;
    r.details()["chord"] = tape_chord(space, a, h);
    r.details()["threshold"] = tape_threshold(space, a, h);
    r.details()["row_one_error"] = worst;
  });
  // Below the threshold the construction must refuse.
  const double low = 0.2;
  const int p_low = static_cast<int>(std::ceil(tape_threshold(space, a, low))) - 1;
  bool refused = false;
  try {
    build_p_tape(space, a, std::max(2, p_low), 1.0, low);
  } catch (const PreconditionError&) {
    refused = true;
  }
  r.record(refused, {{"h", low}, {"p", p_low}, {"refused", refused}});
  return r;
}

VerificationReport third_division() {
  VerificationReport r("third_division", 1e-9);
  const auto e2 = SpaceModel::Euclidean(2);
  for (int p : {2, 3, 6}) {
    std::vector<std::vector<Point>> forced(4), spread(4);
    for (int i = 0; i < 4; ++i) {
      forced[i].assign(p, V(e2, {double(i), 0}));
      for (int j = 0; j < p; ++j) spread[i].push_back(V(e2, {double(i), 0.1 * j * (i == 1)}));
    }
    guarded(r, [&] {
      const auto f = check_third_division(e2, forced);
      r.record(f.relations_hold && f.collapsed && f.report.passed(), {{"p", p}, {"forced", true}});
      const auto s = check_third_division(e2, spread);
      r.record(!s.relations_hold && !s.report.passed(), {{"p", p}, {"forced", false}});
    });
  }
  return r;
}

VerificationReport tape_positions() {
  VerificationReport r("tape_position", 0.0);
  const std::vector<std::tuple<int, int, int, Rational>> cases = {
      {3, 1, 0, Rational(0)}, {3, 2, 0, Rational(5, 3)}, {3, 3, -2, Rational(4, 3)}};
  for (const auto& [p, j, z, want] : cases) {
    const Rational got = tape_position_exact(p, j, z);
    r.record(got == want, {{"p", p}, {"j", j}, {"z", z}, {"value", format_rational(got)}});
  }
  return r;
}

Reports run_tapes(const ScenarioConfig&) {
  const auto l3 = SpaceModel::MinkowskiLp(3);
  // The Euclidean h = 0.6 case has drift 1.6; the Minkowski probe keeps that drift.
  const double h3 = tape_probe_distance(l3, x_axis(l3), 1.6);
  return {tape_case("p_tape.euclidean", SpaceModel::Euclidean(2), 0.6),
          tape_case("p_tape.minkowski_3", l3, h3), third_division(), tape_positions()};
}

// --- grasshopper ------------------------------------------------------------

VerificationReport grasshopper_line() {
  VerificationReport r("grasshopper.real_line", 0.0);
  const auto line = SpaceModel::RealLine();
  const auto three = grasshopper_distance(line, Point::Real(0), Point::Real(3));
  r.record(three == 3, {{"G(0,3)", three ? OrderedJson(*three) : OrderedJson("inf")}});
  const auto half = grasshopper_distance(line, Point::Real(0), Point::Real(2.5));
  r.record(!half.has_value(), {{"G(0,2.5)", half ? OrderedJson(*half) : OrderedJson("inf")}});
  std::set<double> reach = {0.0};
  for (int step = 0; step < 5; ++step) {
    std::set<double> next = reach;
    for (double x : reach) {
      next.insert(x + 1);
      next.insert(x - 1);
    }
    reach = next;
  }
  r.record(reach.count(2.5) == 0 && reach.size() == 11, {{"reachable", reach.size()}});
  r.details()["brute_force_jumps"] = 5;
  return r;
}

// Explicit chain of unit jumps from x to y realizing the closed form.
std::vector<Point> jump_chain(const SpaceModel& e2, const Point& x, const Point& y) {
  const double dx = y.x() - x.x(), dy = y.y() - x.y();
  const double d = std::hypot(dx, dy);
  const double ux = dx / d, uy = dy / d;
  std::vector<Point> chain = {x};
  const int k = static_cast<int>(std::ceil(d - 1e-12));
  const bool integral = std::abs(d - std::round(d)) <= 1e-12 && d >= 1;
  const int straight = integral ? k - 1 : std::max(0, k - 2);
  for (int s = 1; s <= straight; ++s) chain.push_back(V(e2, {x.x() + s * ux, x.y() + s * uy}));
  if (!integral) {
    const Point& from = chain.back();
    const double rest = d - straight;
    const double mx = from.x() + 0.5 * rest * ux, my = from.y() + 0.5 * rest * uy;
    const double hgt = std::sqrt(std::max(0.0, 1 - 0.25 * rest * rest));
    chain.push_back(V(e2, {mx - hgt * uy, my + hgt * ux}));
  }
  chain.push_back(y);
  return chain;
}

VerificationReport grasshopper_euclidean(Rng& rng) {
  VerificationReport r("grasshopper.euclidean_graph", 0.0);
  const auto e2 = SpaceModel::Euclidean(2);
  for (int k = 0; k < 50; ++k) {
    const Point x = random_point(e2, rng);
    const double th = rng.uniform(0, 2 * std::numbers::pi);
    const double d = k < 5 ? double(k + 1) : rng.uniform(0.05, 4.5);
    const Point y = V(e2, {x.x() + d * std::cos(th), x.y() + d * std::sin(th)});
    const auto analytic = grasshopper_distance(e2, x, y);
    const auto chain = jump_chain(e2, x, y);
    const auto graph = graph_grasshopper_distance(unit_jump_graph(e2, chain), 0,
                                                  static_cast<int>(chain.size()) - 1);
    r.record(analytic.has_value() && analytic == graph,
             {{"d", d}, {"analytic", analytic ? OrderedJson(*analytic) : OrderedJson("inf")},
              {"graph", graph ? OrderedJson(*graph) : OrderedJson("inf")}});
  }
  return r;
}

struct TreeCase {
  SpaceModel tree = SpaceModel::Tree(path_tree(3, Rational(1, 2), 40));
  TreePointSet tps = tree_point_set(tree, Rational(1, 10), Rational(1, 5));
  BijectionSpec swap = tree_swap_bijection(tps);

  std::vector<Point> domain() const {
    std::vector<Point> all = tps.a_alpha;
    all.insert(all.end(), tps.a_beta.begin(), tps.a_beta.end());
    return all;
  }
  // Every point of offset class k/40 on the tree: closed under the swap and
  // under unit jumps from A.
  std::vector<Point> node_set() const {
    std::vector<Point> nodes;
    const MetricTree& t = tree.tree();
    for (int v = 0; v < t.vertex_count(); ++v) nodes.push_back(Point::OnTree(t.vertex(v)));
    for (int e = 0; e < t.edge_count(); ++e) {
      for (int k = 1; k < 20; ++k) nodes.push_back(Point::OnTree(t.on_segment(e, Rational(k, 40))));
    }
    return nodes;
  }
};

VerificationReport grasshopper_tree_isometry(const TreeCase& tc) {
  VerificationReport r("grasshopper.tree_isometry_on_a", 0.0);
  const auto all = tc.domain();
  std::vector<Point> images;
  for (const auto& p : all) images.push_back(tc.swap.forward(p));
  const auto before = graph_grasshopper_table(unit_jump_graph(tc.tree, all));
  const auto after = graph_grasshopper_table(unit_jump_graph(tc.tree, images));
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < all.size(); ++j) {
      const auto full_before = grasshopper_distance(tc.tree, all[i], all[j]);
      const auto full_after = grasshopper_distance(tc.tree, images[i], images[j]);
      r.record(before[i][j] == after[i][j] && full_before == full_after,
               {{"i", i}, {"j", j}});
    }
  }
  r.details()["pairs"] = all.size() * all.size();
  return r;
}

VerificationReport grasshopper_tree_unit(const TreeCase& tc) {
  auto r = preserves_unit_distance(tc.swap, user_sample(tc.tree, tc.node_set()), UnitMode::kEq);
  r.set_check("grasshopper.tree_unit_preservation");
  return r;
}

VerificationReport grasshopper_tree_witness(const TreeCase& tc) {
  VerificationReport r("grasshopper.tree_isometry_witness", 0.0);
  const auto iso = is_isometry(tc.swap, user_sample(tc.tree, tc.node_set()));
  const auto ws = iso.witnesses();
  r.record(!iso.passed() && !ws.empty(), {{"isometry", iso.to_json()}});
  if (!ws.empty()) r.details()["witness"] = ws.front();
  return r;
}

Reports run_grasshopper(const ScenarioConfig& config) {
  Rng rng(*config.seed);
  const TreeCase tc;
  return {grasshopper_line(), grasshopper_euclidean(rng), grasshopper_tree_isometry(tc),
          grasshopper_tree_unit(tc), grasshopper_tree_witness(tc)};
}

// --- counterexamples --------------------------------------------------------

const std::vector<std::string>& cli_counterexamples() {
  static const std::vector<std::string> names = {"line-sine", "sphere-flip", "tree-swap",
                                                 "tree-smooth", "max-lift"};
  return names;
}

Reports run_counterexamples(const ScenarioConfig& config) {
  Reports out;
  for (const auto& name : cli_counterexamples()) {
    out.push_back(run_counterexample(name, *config.seed).summary());
  }
  return out;
}

using SuiteFn = std::function<Reports(const ScenarioConfig&)>;

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"axioms", run_axioms},     {"busemann", run_busemann},
      {"horofn", run_horofn},     {"transfers", run_transfers},
      {"scissors", run_scissors}, {"tapes", run_tapes},
      {"grasshopper", run_grasshopper}, {"counterexamples", run_counterexamples}};
  return table;
}

// Declared report count of each suite, checked after every run.
std::size_t declared_count(const std::string& suite, const ScenarioConfig& config) {
  static const std::map<std::string, std::size_t> fixed = {
      {"horofn", 6}, {"transfers", 3}, {"scissors", 5}, {"tapes", 4},
      {"grasshopper", 5}, {"counterexamples", 5}};
  if (suite == "axioms") return config.space ? 1 : catalog_spaces().size();
  if (suite == "busemann") return config.space ? 1 : busemann_catalog().size() + 1;
  if (suite == "all") {
    std::size_t n = 0;
    for (const auto& [name, fn] : suite_table()) n += declared_count(name, config);
    return n;
  }
  return fixed.at(suite);
}

std::string format_number(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : suite_table()) n.push_back(name);
    n.push_back("all");
    return n;
  }();
  return names;
}

bool suite_needs_seed(const std::string& suite) {
  static const std::set<std::string> seeded = {"axioms", "busemann", "horofn", "grasshopper",
                                               "counterexamples", "all"};
  return seeded.count(suite) > 0;
}

void validate_config(const ScenarioConfig& config) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), config.suite) == names.end()) {
    throw ConfigError("unknown suite '" + config.suite + "'");
  }
  if (suite_needs_seed(config.suite) && !config.seed) {
    throw ConfigError("suite '" + config.suite + "' needs a seed");
  }
  if (config.tol && !(*config.tol > 0.0 && std::isfinite(*config.tol))) {
    throw ConfigError("tolerance must be positive and finite");
  }
  if (config.space) space_from_json(*config.space);
}

ReportFormat format_from_string(const std::string& text) {
  if (text == "json") return ReportFormat::kJson;
  if (text == "text") return ReportFormat::kText;
  throw ConfigError("unknown format '" + text + "'");
}

ScenarioConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> keys = {"suite", "seed", "tol", "space", "out", "format"};
  for (const auto& [key, value] : j.items()) {
    if (!keys.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  ScenarioConfig c;
  try {
    if (j.contains("suite")) c.suite = j.at("suite").get<std::string>();
    if (j.contains("seed")) {
      if (!j.at("seed").is_number_unsigned()) throw ConfigError("seed must be a nonnegative integer");
      c.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("tol")) c.tol = j.at("tol").get<double>();
    if (j.contains("space")) c.space = j.at("space");
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    if (j.contains("format")) c.format = format_from_string(j.at("format").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
  return c;
}

OrderedJson config_to_json(const ScenarioConfig& config) {
  OrderedJson j;
  j["suite"] = config.suite;
  j["seed"] = config.seed ? OrderedJson(*config.seed) : OrderedJson();
  j["tol"] = config.tol ? OrderedJson(*config.tol) : OrderedJson();
  j["space"] = config.space ? to_ordered(*config.space) : OrderedJson();
  return j;
}

std::vector<SpaceModel> catalog_spaces() {
  return {SpaceModel::Euclidean(2),
          SpaceModel::Euclidean(3),
          SpaceModel::MinkowskiLp(1.5),
          SpaceModel::MinkowskiLp(3),
          SpaceModel::MinkowskiLinf(),
          SpaceModel::HyperbolicPlane(),
          SpaceModel::Tree(comb_tree(3, Rational(1, 2), Rational(1, 3), 6)),
          SpaceModel::Sphere(1.0 / std::numbers::pi, 3),
          SpaceModel::RealLine(),
          SpaceModel::MaxProduct(SpaceModel::Euclidean(1), SpaceModel::RealLine())};
}

std::vector<SpaceModel> busemann_catalog() {
  return {SpaceModel::Euclidean(2),
          SpaceModel::MinkowskiLp(1.5),
          SpaceModel::MinkowskiLp(2),
          SpaceModel::MinkowskiLp(3),
          SpaceModel::HyperbolicPlane(),
          SpaceModel::Tree(comb_tree(3, Rational(1, 2), Rational(1, 3), 6)),
          SpaceModel::RealLine()};
}

bool SuiteResult::passed() const {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });
}

OrderedJson SuiteResult::to_json() const {
  OrderedJson j;
  j["suite"] = suite;
  j["seed"] = seed ? OrderedJson(*seed) : OrderedJson();
  j["passed"] = passed();
  j["reports"] = OrderedJson::array();
  for (const auto& r : reports) j["reports"].push_back(r.to_json());
  j["config"] = config;
  return j;
}

SuiteResult SuiteResult::from_json(const OrderedJson& j) {
  SuiteResult s;
  try {
    s.suite = j.at("suite").get<std::string>();
    if (!j.at("seed").is_null()) s.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& r : j.at("reports")) s.reports.push_back(VerificationReport::from_json(r));
    s.config = j.value("config", OrderedJson::object());
  } catch (const OrderedJson::exception& e) {
    throw ConfigError(std::string("bad suite result: ") + e.what());
  }
  return s;
}

bool SuiteResult::operator==(const SuiteResult& other) const {
  return suite == other.suite && seed == other.seed && reports == other.reports &&
         config == other.config;
}

SuiteResult run_suite(const ScenarioConfig& config) {
  validate_config(config);
  const auto start = std::chrono::steady_clock::now();
  SuiteResult result;
  result.suite = config.suite;
  result.seed = config.seed;
  result.config = config_to_json(config);
  for (const auto& [name, fn] : suite_table()) {
    if (config.suite != name && config.suite != "all") continue;
    ScenarioConfig sub = config;
    sub.suite = name;
    if (!sub.seed) sub.seed = 0;
    for (auto& r : fn(sub)) result.reports.push_back(std::move(r));
  }
  if (result.reports.size() != declared_count(config.suite, config)) {
    throw std::logic_error("suite '" + config.suite + "' produced an unexpected report count");
  }
  result.duration_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string emit_report(const SuiteResult& result, ReportFormat format) {
  if (format == ReportFormat::kJson) return result.to_json().dump(2) + "\n";
  std::size_t width = 5;
  for (const auto& r : result.reports) width = std::max(width, r.check().size());
  std::ostringstream s;
  s << "suite " << result.suite << "  seed "
    << (result.seed ? std::to_string(*result.seed) : std::string("-")) << "  "
    << (result.passed() ? "PASS" : "FAIL") << "\n";
  s << "  status  " << std::string("check") << std::string(width - 5, ' ')
    << "  checked  failures  tolerance\n";
  for (const auto& r : result.reports) {
    s << "  " << (r.passed() ? "pass  " : "FAIL  ") << "  " << r.check()
      << std::string(width - r.check().size(), ' ') << "  " << r.checked() << std::string(
             std::max<int>(1, 9 - static_cast<int>(std::to_string(r.checked()).size())), ' ')
      << r.failures() << std::string(
             std::max<int>(1, 10 - static_cast<int>(std::to_string(r.failures()).size())), ' ')
      << format_number(r.tolerance()) << "\n";
  }
  s << "duration_ms " << format_number(result.duration_ms) << "\n";
  return s.str();
}

void write_report(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("cannot write '" + path + "'");
}

}  // namespace buselab
