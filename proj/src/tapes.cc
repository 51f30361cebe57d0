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

#include "buselab/tapes.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "buselab/errors.h"
#include "buselab/numeric.h"

namespace buselab {
namespace {

constexpr double kTol = 1e-9;

std::string label(const TapeIndex& k) {
  return std::to_string(k.i) + "," + std::to_string(k.j) + "," + std::to_string(k.z);
}

OrderedJson pj(const SpaceModel& space, const Point& p) {
  return OrderedJson::parse(point_to_json(space, p).dump());
}

bool exact_pair(const SpaceModel& space, const Point& x, const Point& y) {
  return space.kind() == SpaceKind::kMetricTree && x.tree.exact && y.tree.exact;
}

// |d(x, y) - expected|, exact on trees.
double distance_error(const SpaceModel& space, const Point& x, const Point& y,
                      const Rational& expected) {
  if (exact_pair(space, x, y)) {
    const Rational diff = distance_exact(space, x, y) - expected;
    return to_double(diff < 0 ? -diff : diff);
  }
  return std::abs(distance(space, x, y) - to_double(expected));
}

// Wrapped index of the diagonal quadruples: j <= 0 continues row j + p
// shifted by 1 - 2p, and j = p + 1 continues row 1 shifted by 2p - 1.
TapeIndex wrap(int i, int j, int p) {
  if (j <= 0) return {i, j + p, 1 - 2 * p};
  if (j > p) return {i, j - p, 2 * p - 1};
  return {i, j, 0};
}

double norm2(const SpaceModel& space, double x, double y) {
  const double v[2] = {x, y};
  return space.norm(v);
}

void require_planar_norm(const SpaceModel& space) {
  const bool ok = (space.kind() == SpaceKind::kEuclidean ||
                   space.kind() == SpaceKind::kMinkowskiLp) &&
                  space.dim() == 2;
  if (!ok) throw DomainError("tapes are built in strictly convex normed planes");
}

struct Frame {
  std::vector<double> e;  // unit direction of a
  std::vector<double> n;  // transverse direction, not normalized
  double argmin = 0.0;    // argmin_x N(x e + n)
  double depth = 1.0;     // min_x N(x e + n)
};

Frame frame_of(const SpaceModel& space, const GeodesicRef& a) {
  require_planar_norm(space);
  if (a.domain != GeodesicDomain::kLine || a.form != GeodesicRef::Form::kLinear) {
    throw DomainError("tape axis must be a straight line");
  }
  Frame f;
  const double speed = space.norm(a.velocity) * a.orientation;
  f.e = {a.velocity[0] / speed, a.velocity[1] / speed};
  f.n = {-f.e[1], f.e[0]};
  const double reach = 4.0 * space.norm(f.n);
  const auto [x, v] = minimize_unimodal(
      [&](double s) { return norm2(space, s * f.e[0] + f.n[0], s * f.e[1] + f.n[1]); },
      -reach, reach);
  f.argmin = x;
  f.depth = v;
  return f;
}

// Roots x- < x+ of N(x e + y n) = 1.
std::pair<double, double> unit_roots(const SpaceModel& space, const Frame& f, double y) {
  auto g = [&](double x) {
    return norm2(space, x * f.e[0] + y * f.n[0], x * f.e[1] + y * f.n[1]) - 1.0;
  };
  const double c = y * f.argmin;
  if (g(c) >= 0.0) throw SearchError("transverse offset leaves the unit ball");
  return {bisect_root(g, c - 4.0, c), bisect_root(g, c, c + 4.0)};
}

double chord_at(const SpaceModel& space, const Frame& f, double y) {
  const auto [lo, hi] = unit_roots(space, f, y);
  return hi - lo;
}

}  // namespace

VerificationReport validate_r_sequence(const RSequence& seq) {
  if (seq.points.size() < 2) throw DomainError("r-sequence window needs two points");
  VerificationReport report("r_sequence." + seq.space.name(), kTol);
  for (std::size_t u = 0; u < seq.points.size(); ++u) {
    for (std::size_t v = u + 1; v < seq.points.size(); ++v) {
      const double err = distance_error(seq.space, seq.points[u], seq.points[v],
                                        Rational(static_cast<std::int64_t>(v - u)));
      OrderedJson w;
      w["z"] = {seq.z_min + static_cast<int>(u), seq.z_min + static_cast<int>(v)};
      w["error"] = err;
      report.record(err <= kTol, w);
    }
  }
  return report;
}

const Point& PTape::at(int i, int j, int z) const {
  const auto it = points.find({i, j, z});
  if (it == points.end()) {
    throw DomainError("tape point x(" + label({i, j, z}) + ") is missing");
  }
  return it->second;
}

RSequence PTape::row(int i, int j) const {
  RSequence seq{space, z_min, {}};
  for (int z = z_min; z <= z_max; ++z) seq.points.push_back(at(i, j, z));
  return seq;
}

std::vector<std::array<TapeIndex, 4>> tape_quadruples(int p) {
  if (p < 2) throw DomainError("tapes need p >= 2");
  std::vector<std::array<TapeIndex, 4>> out;
  for (int j = 1; j <= p; ++j) out.push_back({{{0, j, 0}, {1, j, 0}, {2, j, 0}, {3, j, 0}}});
  for (int k = 1; k <= p; ++k) {
    out.push_back({wrap(0, k + 1, p), wrap(1, k, p), wrap(2, k - 1, p), wrap(3, k - 2, p)});
  }
  return out;
}

VerificationReport validate_p_tape(const PTape& tape) {
  VerificationReport report("p_tape." + tape.space.name(), kTol);
  for (int i = 0; i <= 3; ++i) {
    for (int j = 1; j <= tape.p; ++j) {
      const VerificationReport row = validate_r_sequence(tape.row(i, j));
      OrderedJson w;
      w["row"] = {i, j};
      if (!row.passed()) w["pair"] = row.witnesses().front();
      report.record(row.passed(), w);
    }
  }
  const Rational one(1), three(3);
  for (const auto& q : tape_quadruples(tape.p)) {
    const Point& w = tape.at(q[0].i, q[0].j, q[0].z);
    const Point& x = tape.at(q[1].i, q[1].j, q[1].z);
    const Point& y = tape.at(q[2].i, q[2].j, q[2].z);
    const Point& z = tape.at(q[3].i, q[3].j, q[3].z);
    const double err = std::max({distance_error(tape.space, w, x, one),
                                 distance_error(tape.space, x, y, one),
                                 distance_error(tape.space, y, z, one),
                                 distance_error(tape.space, w, z, three)});
    OrderedJson wj;
    wj["quadruple"] = {label(q[0]), label(q[1]), label(q[2]), label(q[3])};
    wj["error"] = err;
    report.record(err <= kTol, wj);
  }
  report.details()["p"] = tape.p;
  report.details()["window"] = {tape.z_min, tape.z_max};
  return report;
}

Rational tape_position_exact(int p, int j, int z) {
  if (p < 1) throw DomainError("tape position needs p >= 1");
  if (j < 1 || j > p) throw DomainError("tape row index j must lie in 1..p");
  return Rational(static_cast<std::int64_t>(j - 1) * (2 * p - 1), p) + Rational(z);
}

double tape_position(int p, int j, int z) { return to_double(tape_position_exact(p, j, z)); }

double tape_chord(const SpaceModel& space, const GeodesicRef& a, double h) {
  const Frame f = frame_of(space, a);
  if (!(h > 0.0 && h < 1.0)) throw PreconditionError("probe distance must lie in (0, 1)");
  return chord_at(space, f, h / f.depth);
}

double tape_threshold(const SpaceModel& space, const GeodesicRef& a, double h) {
  return 2.0 / (2.0 - tape_chord(space, a, h));
}

double tape_probe_distance(const SpaceModel& space, const GeodesicRef& a, double chord) {
  const Frame f = frame_of(space, a);
  if (!(chord > 0.0 && chord < 2.0)) throw DomainError("chord must lie in (0, 2)");
  const double top = (1.0 - 1e-12) / f.depth;
  if (!(chord_at(space, f, top) < chord)) throw SearchError("chord root not bracketed");
  return f.depth * bisect_root([&](double y) { return chord_at(space, f, y) - chord; }, 0.0, top);
}

PTape build_p_tape(const SpaceModel& space, const GeodesicRef& a, int p, double strip_width,
                   double h) {
  const Frame f = frame_of(space, a);
  if (p < 2) throw PreconditionError("tapes need p >= 2");
  if (!(h > 0.0 && h < std::min(1.0, strip_width))) {
    throw PreconditionError("probe distance must lie in (0, min(1, L))");
  }
  const double threshold = 2.0 / (2.0 - chord_at(space, f, h / f.depth));
  if (!(p > threshold)) {
    throw PreconditionError("p = " + std::to_string(p) + " does not exceed P = " +
                            std::to_string(threshold));
  }
  // Transverse offset whose chord is exactly s = (2p - 1)/p.
  const double s = to_double(Rational(2 * p - 1, p));
  const double top = (1.0 - 1e-12) / f.depth;
  if (!(chord_at(space, f, h / f.depth) < s && chord_at(space, f, top) < s)) {
    throw SearchError("chord root not bracketed");
  }
  const double y = bisect_root([&](double v) { return chord_at(space, f, v) - s; }, 0.0,
                               h / f.depth);
  const double x = unit_roots(space, f, y).second;
  const std::vector<double> u = {x * f.e[0] + y * f.n[0], x * f.e[1] + y * f.n[1]};

  PTape tape;
  tape.space = space;
  tape.p = p;
  tape.z_min = -2 * p;
  tape.z_max = 2 * p;
  for (int i = 0; i <= 3; ++i) {
    for (int j = 1; j <= p; ++j) {
      for (int z = tape.z_min; z <= tape.z_max; ++z) {
        const Point base = a.at(tape_position(p, j, z));
        tape.points.emplace(TapeIndex{i, j, z},
                            Point::Vector(space, {base.x() + (i - 1) * u[0],
                                                  base.y() + (i - 1) * u[1]}));
      }
    }
  }
  return tape;
}

ThirdDivision check_third_division(const SpaceModel& space,
                                   const std::vector<std::vector<Point>>& y) {
  if (y.size() != 4) throw DomainError("third-division configuration needs four rows");
  const int p = static_cast<int>(y[0].size());
  if (p < 2) throw DomainError("third-division configuration needs p >= 2");
  for (const auto& r : y) {
    if (static_cast<int>(r.size()) != p) throw DomainError("rows of unequal length");
  }
  auto at = [&](int i, int j) -> const Point& { return y[i][((j - 1) % p + p) % p]; };

  ThirdDivision out;
  out.report = VerificationReport("third_division." + space.name(), kTol);
  auto relation = [&](int j0, int j1, int j2, int j3) {
    const Point &a = at(0, j0), &b = at(1, j1), &c = at(2, j2), &d = at(3, j3);
    double err;
    if (space.kind() == SpaceKind::kMetricTree) {
      const Rational ab = distance_exact(space, a, b), bc = distance_exact(space, b, c),
                     cd = distance_exact(space, c, d), ad = distance_exact(space, a, d);
      const bool ok = 3 * ab == ad && 3 * bc == ad && 3 * cd == ad;
      err = ok ? 0.0 : to_double(ad - ab - bc - cd) + 1.0;
    } else {
      const double ab = distance(space, a, b), bc = distance(space, b, c),
                   cd = distance(space, c, d), ad = distance(space, a, d);
      err = std::max({std::abs(3 * ab - ad), std::abs(3 * bc - ad), std::abs(3 * cd - ad),
                      std::abs(ab + bc + cd - ad)}) / 3.0;
    }
    OrderedJson w;
    w["relation"] = {j0, j1, j2, j3};
    w["error"] = err;
    out.report.record(err <= kTol, w);
  };
  for (int j = 1; j <= p; ++j) relation(j, j, j, j);
  for (int k = 1; k <= p; ++k) relation(k + 1, k, k - 1, k - 2);
  out.relations_hold = out.report.passed();

  double spread = 0.0;
  for (int i : {1, 2}) {
    for (int u = 0; u < p; ++u) {
      for (int v = u + 1; v < p; ++v) spread = std::max(spread, distance(space, y[i][u], y[i][v]));
    }
  }
  out.collapsed = spread <= kTol;
  out.report.details()["relations_hold"] = out.relations_hold;
  out.report.details()["collapse_spread"] = spread;
  if (out.relations_hold && !out.collapsed) {
    out.report.fail({{"reason", "relations hold but rows 1 and 2 do not collapse"},
                     {"spread", spread}});
  }
  return out;
}

nlohmann::json tape_to_json(const PTape& tape) {
  nlohmann::json j;
  j["p"] = tape.p;
  j["z_min"] = tape.z_min;
  j["z_max"] = tape.z_max;
  nlohmann::json pts = nlohmann::json::object();
  for (const auto& [k, v] : tape.points) pts[label(k)] = point_to_json(tape.space, v);
  j["points"] = pts;
  return j;
}

PTape tape_from_json(const SpaceModel& space, const nlohmann::json& j) {
  PTape tape;
  tape.space = space;
  try {
    tape.p = j.at("p").get<int>();
    tape.z_min = j.at("z_min").get<int>();
    tape.z_max = j.at("z_max").get<int>();
    for (const auto& [key, value] : j.at("points").items()) {
      TapeIndex k;
      if (std::sscanf(key.c_str(), "%d,%d,%d", &k.i, &k.j, &k.z) != 3) {
        throw ConfigError("bad tape index '" + key + "'");
      }
      tape.points.emplace(k, point_from_json(space, value));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed tape: ") + e.what());
  }
  return tape;
}

}  // namespace buselab
