#pragma once

#include "orbi/common.hpp"
#include "orbi/group.hpp"

#include <array>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace orbi {

/// Chart domain: an open ball about the origin, or all of R^d. Balls are
/// star-shaped about the origin and invariant under orthogonal actions.
struct ChartFootprint {
  bool whole_space = true;
  double radius = std::numeric_limits<double>::infinity();

  bool contains(const Vec& z) const { return whole_space || z.norm() < radius; }

  /// Distance from z to the footprint boundary (infinite for R^d).
  double boundary_clearance(const Vec& z) const {
    if (whole_space) return std::numeric_limits<double>::infinity();
    return radius - z.norm();
  }
};

/// A linear orbifold chart: R^d acted on by a finite orthogonal group,
/// projecting onto an open subset of the underlying space.
struct Chart {
  int id = 0;
  int dimension = 0;
  FiniteMatrixGroup group;
  ChartFootprint footprint;
  std::string center_underlying;  // name of the underlying point at the origin
};

/// A point given by a chart id and a lift in that chart.
struct OrbifoldPoint {
  int chart_id = 0;
  Vec lift;
};

enum class Family { single_chart_quotient, spindle, round_sphere };

// Spindle chart geometry: two planar charts, N with the Z_p rotation action
// and S with Z_q. The chart radius 3 makes N cover latitudes s < 3/4 and S
// cover s > 1/4 under the radial profile s = r / (1 + r).
inline constexpr double kSpindleChartRadius = 3.0;

/// An orbifold presented by linear charts with closed-form relift rules per
/// family. Supported families: a single global chart quotient R^d / Gamma,
/// the (p, q) spindle, and the round sphere (the spindle with p = q = 1).
class Orbifold {
 public:
  static Orbifold single_chart(FiniteMatrixGroup group) {
    Orbifold o;
    o.family_ = Family::single_chart_quotient;
    Chart c;
    c.id = 0;
    c.dimension = group.dimension();
    c.group = std::move(group);
    c.footprint.whole_space = true;
    c.center_underlying = "origin";
    o.charts_.push_back(std::move(c));
    return o;
  }

  static Orbifold single_chart(FiniteMatrixGroup group, double radius) {
    Orbifold o = single_chart(std::move(group));
    o.charts_[0].footprint.whole_space = false;
    o.charts_[0].footprint.radius = radius;
    return o;
  }

  static Orbifold spindle(int p, int q) {
    if (p < 1 || q < 1) fail(errc::invalid_scenario, "spindle weights must be positive");
    if (std::gcd(p, q) != 1) fail(errc::invalid_scenario, "spindle weights must be coprime");
    Orbifold o;
    o.family_ = (p == 1 && q == 1) ? Family::round_sphere : Family::spindle;
    o.p_ = p;
    o.q_ = q;
    Chart north;
    north.id = 0;
    north.dimension = 2;
    north.group = build_group(cyclic_generators(p));
    north.footprint.whole_space = false;
    north.footprint.radius = kSpindleChartRadius;
    north.center_underlying = "N";
    Chart south;
    south.id = 1;
    south.dimension = 2;
    south.group = build_group(cyclic_generators(q));
    south.footprint.whole_space = false;
    south.footprint.radius = kSpindleChartRadius;
    south.center_underlying = "S";
    o.charts_.push_back(std::move(north));
    o.charts_.push_back(std::move(south));
    return o;
  }

  static Orbifold round_sphere() { return spindle(1, 1); }

  Family family() const { return family_; }
  int spindle_p() const { return p_; }
  int spindle_q() const { return q_; }
  const std::vector<Chart>& charts() const { return charts_; }
  const Chart& chart(int id) const { return charts_.at(static_cast<std::size_t>(id)); }
  int dimension() const { return charts_.front().dimension; }

  bool contains(const OrbifoldPoint& pt) const {
    return pt.chart_id >= 0 && pt.chart_id < static_cast<int>(charts_.size()) &&
           chart(pt.chart_id).footprint.contains(pt.lift);
  }

 private:
  Family family_ = Family::single_chart_quotient;
  int p_ = 0, q_ = 0;
  std::vector<Chart> charts_;
};

namespace detail {

// Radial profile of the spindle charts and its inverse: s in [0, 1) vs
// chart radius r in [0, inf).
inline double spindle_s_of_r(double r) { return r / (1.0 + r); }
inline double spindle_r_of_s(double s) { return s / (1.0 - s); }

}  // namespace detail

/// Underlying (s, phi) coordinates of a spindle or sphere point on the
/// smooth part; the poles return s = 0 or 1 with phi = 0.
inline std::array<double, 2> underlying_coords(const Orbifold& o, const OrbifoldPoint& pt) {
  if (o.family() == Family::single_chart_quotient)
    fail(errc::unsupported, "underlying (s, phi) coordinates are a spindle/sphere notion");
  const double r = pt.lift.norm();
  if (pt.chart_id == 0) {
    const double s = detail::spindle_s_of_r(r);
    if (r == 0.0) return {0.0, 0.0};
    const double alpha = std::atan2(pt.lift[1], pt.lift[0]);
    return {s, wrap_angle(o.spindle_p() * alpha)};
  }
  const double s = 1.0 - detail::spindle_s_of_r(r);
  if (r == 0.0) return {1.0, 0.0};
  const double beta = std::atan2(pt.lift[1], pt.lift[0]);
  return {s, wrap_angle(-o.spindle_q() * beta)};
}

/// A lift of the underlying point (s, phi) in the requested chart.
inline OrbifoldPoint from_underlying(const Orbifold& o, int chart_id, double s, double phi) {
  if (s < 0.0 || s > 1.0) fail(errc::invalid_scenario, "latitude s must lie in [0, 1]");
  OrbifoldPoint pt;
  pt.chart_id = chart_id;
  double r, angle;
  if (chart_id == 0) {
    r = detail::spindle_r_of_s(s);
    angle = phi / o.spindle_p();
  } else {
    r = detail::spindle_r_of_s(1.0 - s);
    angle = -phi / o.spindle_q();
  }
  pt.lift = Vec(2);
  pt.lift << r * std::cos(angle), r * std::sin(angle);
  if (!o.chart(chart_id).footprint.contains(pt.lift))
    fail(errc::outside_overlap, "underlying point lies outside the requested chart");
  return pt;
}

/// Relift a point into the target chart. The returned lift is one valid
/// representative (lifts differ by the target group action) and is chosen
/// deterministically.
inline OrbifoldPoint relift(const Orbifold& o, const OrbifoldPoint& pt, int target_chart) {
  if (target_chart < 0 || target_chart >= static_cast<int>(o.charts().size()))
    fail(errc::outside_overlap, "no such chart");
  if (pt.chart_id == target_chart) return pt;
  if (o.family() == Family::single_chart_quotient)
    fail(errc::outside_overlap, "single-chart orbifolds have no other chart");

  // Spindle transition in polar form: radii invert (r -> 1/r) and angles
  // follow the underlying phi, so a point is reliftable iff it avoids the
  // target pole, i.e. r > 1/R with R the chart radius.
  const double r = pt.lift.norm();
  if (r <= 1.0 / kSpindleChartRadius)
    fail(errc::outside_overlap, "point lies outside the overlap annulus");
  const double angle = std::atan2(pt.lift[1], pt.lift[0]);
  double target_angle;
  if (pt.chart_id == 0) {
    target_angle = -angle * static_cast<double>(o.spindle_p()) / o.spindle_q();
  } else {
    target_angle = -angle * static_cast<double>(o.spindle_q()) / o.spindle_p();
  }
  OrbifoldPoint out;
  out.chart_id = target_chart;
  out.lift = Vec(2);
  const double rr = 1.0 / r;
  out.lift << rr * std::cos(target_angle), rr * std::sin(target_angle);
  return out;
}

/// Minimal distance between the underlying points, measured in a common
/// chart when one exists. Points with no common chart are far apart; the
/// latitude gap is returned as a stand-in.
inline double underlying_distance(const Orbifold& o, const OrbifoldPoint& a,
                                  const OrbifoldPoint& b) {
  auto chart_distance = [&](const OrbifoldPoint& x, const OrbifoldPoint& y) {
    const auto& g = o.chart(x.chart_id).group;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : g.elements())
      best = std::min(best, (e.matrix * x.lift - y.lift).norm());
    return best;
  };
  if (a.chart_id == b.chart_id) return chart_distance(a, b);
  try {
    return chart_distance(relift(o, a, b.chart_id), b);
  } catch (const Error&) {
  }
  try {
    return chart_distance(a, relift(o, b, a.chart_id));
  } catch (const Error&) {
  }
  const auto ua = underlying_coords(o, a);
  const auto ub = underlying_coords(o, b);
  return std::abs(ua[0] - ub[0]);
}

/// Dimension of the tangent subspace fixed by the isotropy action at the
/// point; equals the chart dimension at non-singular points.
inline int sdim(const Orbifold& o, const OrbifoldPoint& pt) {
  const auto& g = o.chart(pt.chart_id).group;
  return fixed_subspace(g, isotropy(g, pt.lift)).dimension;
}

}  // namespace orbi
