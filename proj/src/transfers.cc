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

#include "buselab/transfers.h"

#include <cmath>
#include <optional>
#include <string>

#include "buselab/errors.h"
#include "buselab/horofunctions.h"
#include "buselab/numeric.h"

namespace buselab {
namespace {

constexpr double kOnLineTol = 1e-9;
constexpr int kMaxWindowDoublings = 20;

bool is_tree(const SpaceModel& space) { return space.kind() == SpaceKind::kMetricTree; }

void require_line(const GeodesicRef& g) {
  if (g.domain != GeodesicDomain::kLine || !g.minus_end || !g.plus_end) {
    throw DomainError("transfers act on complete lines");
  }
}

// Which end of `line` is xi: true for +inf, false for -inf.
bool end_side(const SpaceModel& space, const GeodesicRef& line, const IdealPoint& xi) {
  require_line(line);
  if (same_ideal(space, *line.plus_end, xi)) return true;
  if (same_ideal(space, *line.minus_end, xi)) return false;
  throw DomainError("line does not end at the given ideal point");
}

// Busemann function of the ray of `line` from line(0) toward the given end.
GeodesicRef end_ray(const SpaceModel& space, const GeodesicRef& line, bool towards_plus,
                    double start = 0.0) {
  if (is_tree(space)) return line.ray_towards_exact(towards_plus, Rational(0));
  return line.ray_towards(towards_plus, start);
}

Rational to_rational(double v) {
  constexpr std::int64_t kDen = 720720;
  return Rational(std::llround(v * kDen), kDen);
}

// Point of `to` on the level set {ray's Busemann function = level}.
TransferResult transfer_to_level(const SpaceModel& space, const GeodesicRef& ray,
                                 const GeodesicRef& to, bool to_plus, double level,
                                 const Point& from_point) {
  TransferResult out;
  if (is_tree(space)) {
    // Along a line toward the center of the horosphere the value drops at
    // unit rate.
    const Rational b0 = busemann_exact(space, ray, to.at_exact(Rational(0)));
    const Rational target = to_rational(level);
    const Rational t = to_plus ? b0 - target : target - b0;
    out.image = to.at_exact(t);
    out.parameter = to_double(t);
    out.residuals.push_back(to_double(busemann_exact(space, ray, out.image) - target));
    return out;
  }
  auto f = [&](double t) { return busemann_value(space, ray, to.at(t)) - level; };
  double w = 4.0 * (1.0 + distance(space, from_point, to.at(0.0)));
  for (int k = 0;; ++k) {
    const double lo = f(-w), hi = f(w);
    if ((lo <= 0.0 && hi >= 0.0) || (lo >= 0.0 && hi <= 0.0)) break;
    if (k == kMaxWindowDoublings) {
      throw SearchError("horosphere does not meet the target line inside the search window");
    }
    w *= 2.0;
  }
  out.parameter = bisect_root(f, -w, w);
  out.image = to.at(out.parameter);
  out.residuals.push_back(std::abs(f(out.parameter)));
  return out;
}

}  // namespace

double parameter_on(const SpaceModel& space, const GeodesicRef& line, const Point& x) {
  if (is_tree(space)) return to_double(parameter_on_exact(space, line, x));
  require_line(line);
  return -busemann_value(space, end_ray(space, line, true), x);
}

Rational parameter_on_exact(const SpaceModel& space, const GeodesicRef& line,
                            const Point& x) {
  require_line(line);
  return -busemann_exact(space, line.ray_towards_exact(true, Rational(0)), x);
}

TransferResult horospherical_transfer(const SpaceModel& space, const GeodesicRef& from,
                                      const GeodesicRef& to, const IdealPoint& xi,
                                      const Point& m) {
  const GeodesicRef ray = end_ray(space, from, end_side(space, from, xi));
  const bool to_plus = end_side(space, to, xi);
  const double level = is_tree(space) ? to_double(busemann_exact(space, ray, m))
                                      : busemann_value(space, ray, m);
  return transfer_to_level(space, ray, to, to_plus, level, m);
}

TransferResult double_transfer(const SpaceModel& space, const GeodesicRef& a,
                               const GeodesicRef& b, const Point& x, double level_offset) {
  require_line(a);
  require_line(b);
  if (!same_ideal(space, *a.plus_end, *b.plus_end)) {
    throw DomainError("double transfer needs a(+inf) = b(+inf)");
  }
  const GeodesicRef ray_a = end_ray(space, a, true);
  const GeodesicRef ray_b = end_ray(space, b, true);
  auto beta = [&](const GeodesicRef& ray, const Point& p) {
    return is_tree(space) ? to_double(busemann_exact(space, ray, p))
                          : busemann_value(space, ray, p);
  };
  const double t = parameter_on(space, a, x);
  const TransferResult to_b = transfer_to_level(space, ray_a, b, true, beta(ray_a, x), x);
  TransferResult back = transfer_to_level(space, ray_b, a, true,
                                          beta(ray_b, to_b.image) - level_offset, to_b.image);
  back.shift = back.parameter - t;
  auto origin = [&](const GeodesicRef& g) {
    return is_tree(space) ? g.at_exact(Rational(0)) : g.at(0.0);
  };
  back.formula_shift = beta(ray_a, origin(b)) + beta(ray_b, origin(a)) + level_offset;
  back.residuals.insert(back.residuals.begin(), to_b.residuals.begin(), to_b.residuals.end());
  return back;
}

ScissorsConfig hyperbolic_scissors(double alpha, double beta, double gamma, double delta) {
  const auto h = SpaceModel::HyperbolicPlane();
  auto line = [&](double from, double to) {
    return line_through(h, IdealPoint::HalfPlaneBoundary(from), IdealPoint::HalfPlaneBoundary(to));
  };
  ScissorsConfig cfg{line(alpha, beta), line(alpha, delta), line(gamma, beta),
                     line(gamma, delta), Point::HalfPlane(0, 1)};
  const double cb = 0.5 * (alpha + delta), rb = 0.5 * std::abs(delta - alpha);
  const double cc = 0.5 * (gamma + beta), rc = 0.5 * std::abs(beta - gamma);
  if (cb == cc) throw DomainError("lines b and c are concentric");
  const double x = (rb * rb - rc * rc - cb * cb + cc * cc) / (2.0 * (cc - cb));
  const double y2 = rb * rb - (x - cb) * (x - cb);
  if (!(y2 > 0.0)) throw DomainError("lines b and c do not cross");
  cfg.x = Point::HalfPlane(x, std::sqrt(y2));
  return cfg;
}

namespace {

double line_residual(const SpaceModel& space, const GeodesicRef& line, const Point& x) {
  if (is_tree(space)) {
    return to_double(distance_exact(space, line.at_exact(parameter_on_exact(space, line, x)), x));
  }
  return distance(space, line.at(parameter_on(space, line, x)), x);
}

}  // namespace

bool scissors_degenerate(const SpaceModel& space, const ScissorsConfig& cfg) {
  return line_residual(space, cfg.a, cfg.x) <= kOnLineTol &&
         line_residual(space, cfg.d, cfg.x) <= kOnLineTol;
}

VerificationReport validate_scissors(const SpaceModel& space, const ScissorsConfig& cfg) {
  VerificationReport report("scissors." + space.name(), kOnLineTol);
  struct Incidence {
    const char* label;
    const std::optional<IdealPoint>& lhs;
    const std::optional<IdealPoint>& rhs;
  };
  const Incidence incidences[] = {
      {"a(-inf)=b(-inf)", cfg.a.minus_end, cfg.b.minus_end},
      {"a(+inf)=c(+inf)", cfg.a.plus_end, cfg.c.plus_end},
      {"c(-inf)=d(-inf)", cfg.c.minus_end, cfg.d.minus_end},
      {"b(+inf)=d(+inf)", cfg.b.plus_end, cfg.d.plus_end},
  };
  for (const auto& inc : incidences) {
    const bool ok = inc.lhs && inc.rhs && same_ideal(space, *inc.lhs, *inc.rhs);
    report.record(ok, {{"incidence", inc.label}});
  }
  nlohmann::ordered_json residuals;
  for (const auto& [label, line] :
       {std::pair<const char*, const GeodesicRef*>{"b", &cfg.b}, {"c", &cfg.c}}) {
    double r = INFINITY;
    try {
      r = line_residual(space, *line, cfg.x);
    } catch (const DomainError&) {
    }
    residuals[label] = r;
    report.record(r <= kOnLineTol, {{"incidence", std::string("x on ") + label}, {"residual", r}});
  }
  report.details()["residuals"] = residuals;
  bool degenerate = false;
  try {
    degenerate = scissors_degenerate(space, cfg);
  } catch (const DomainError&) {
  }
  report.details()["degenerate"] = degenerate;
  return report;
}

ScissorsShift scissors_shift(const SpaceModel& space, const ScissorsConfig& cfg,
                             double probe, double norm_a, double norm_d) {
  const VerificationReport valid = validate_scissors(space, cfg);
  if (!valid.passed()) throw DomainError("invalid scissors: " + valid.to_json().dump());
  ScissorsShift out;
  out.degenerate = scissors_degenerate(space, cfg);

  if (is_tree(space)) {
    auto beta = [&](const GeodesicRef& ray, const Point& p) {
      return busemann_exact(space, ray, p);
    };
    const Point m = cfg.a.at_exact(to_rational(probe));
    Point p = horospherical_transfer(space, cfg.a, cfg.c, *cfg.a.plus_end, m).image;
    p = horospherical_transfer(space, cfg.c, cfg.d, *cfg.c.minus_end, p).image;
    p = horospherical_transfer(space, cfg.d, cfg.b, *cfg.d.plus_end, p).image;
    p = horospherical_transfer(space, cfg.b, cfg.a, *cfg.b.minus_end, p).image;
    out.image = p;
    const GeodesicRef a_minus = cfg.a.ray_towards_exact(false, Rational(0));
    out.by_composition = to_double(beta(a_minus, p) - beta(a_minus, m));
    const Rational pa = to_rational(norm_a), pd = to_rational(norm_d);
    out.by_formula = to_double(beta(cfg.a.ray_towards_exact(false, pa), cfg.x) +
                               beta(cfg.a.ray_towards_exact(true, pa), cfg.x) +
                               beta(cfg.d.ray_towards_exact(false, pd), cfg.x) +
                               beta(cfg.d.ray_towards_exact(true, pd), cfg.x));
    return out;
  }

  auto beta = [&](const GeodesicRef& ray, const Point& p) {
    return busemann_value(space, ray, p);
  };
  const Point m = cfg.a.at(probe);
  Point p = horospherical_transfer(space, cfg.a, cfg.c, *cfg.a.plus_end, m).image;
  p = horospherical_transfer(space, cfg.c, cfg.d, *cfg.c.minus_end, p).image;
  p = horospherical_transfer(space, cfg.d, cfg.b, *cfg.d.plus_end, p).image;
  p = horospherical_transfer(space, cfg.b, cfg.a, *cfg.b.minus_end, p).image;
  out.image = p;
  const GeodesicRef a_minus = cfg.a.ray_towards(false, 0.0);
  out.by_composition = beta(a_minus, p) - beta(a_minus, m);
  out.by_formula = beta(cfg.a.ray_towards(false, norm_a), cfg.x) +
                   beta(cfg.a.ray_towards(true, norm_a), cfg.x) +
                   beta(cfg.d.ray_towards(false, norm_d), cfg.x) +
                   beta(cfg.d.ray_towards(true, norm_d), cfg.x);
  return out;
}

namespace {

bool lines_carry_position(const SpaceModel& space) {
  switch (space.kind()) {
    case SpaceKind::kEuclidean:
    case SpaceKind::kMinkowskiLp:
    case SpaceKind::kMinkowskiLinf:
    case SpaceKind::kRealLine:
      return true;
    default:
      return false;
  }
}

GeodesicRef line_from_json(const SpaceModel& space, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("from") || !j.contains("to")) {
    throw ConfigError("scissors line needs 'from' and 'to' ideal points");
  }
  const IdealPoint eta = ideal_from_json(space, j.at("from"));
  const IdealPoint xi = ideal_from_json(space, j.at("to"));
  if (j.contains("through")) {
    GeodesicRef g = line_through_point(space, point_from_json(space, j.at("through")), xi);
    if (!same_ideal(space, *g.minus_end, eta)) {
      throw ConfigError("scissors line ends are not opposite");
    }
    return g;
  }
  return line_through(space, eta, xi);
}

nlohmann::json line_to_json(const SpaceModel& space, const GeodesicRef& g) {
  require_line(g);
  nlohmann::json j;
  j["from"] = ideal_to_json(space, *g.minus_end);
  j["to"] = ideal_to_json(space, *g.plus_end);
  if (lines_carry_position(space)) j["through"] = point_to_json(space, g.at(0.0));
  return j;
}

}  // namespace

ScissorsConfig scissors_from_json(const SpaceModel& space, const nlohmann::json& j) {
  for (const char* key : {"a", "b", "c", "d", "center"}) {
    if (!j.contains(key)) throw ConfigError(std::string("scissors config lacks '") + key + "'");
  }
  return ScissorsConfig{line_from_json(space, j.at("a")), line_from_json(space, j.at("b")),
                        line_from_json(space, j.at("c")), line_from_json(space, j.at("d")),
                        point_from_json(space, j.at("center"))};
}

nlohmann::json scissors_to_json(const SpaceModel& space, const ScissorsConfig& cfg) {
  nlohmann::json j;
  j["a"] = line_to_json(space, cfg.a);
  j["b"] = line_to_json(space, cfg.b);
  j["c"] = line_to_json(space, cfg.c);
  j["d"] = line_to_json(space, cfg.d);
  j["center"] = point_to_json(space, cfg.x);
  return j;
}

}  // namespace buselab
