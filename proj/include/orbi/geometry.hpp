#pragma once

#include "orbi/common.hpp"

#include <algorithm>
#include <vector>

namespace orbi {

/// Distance from a point to the closed segment [a, b].
inline double point_segment_distance(const Vec& z, const Vec& a, const Vec& b) {
  const Vec d = b - a;
  const double len2 = d.squaredNorm();
  if (len2 == 0.0) return (z - a).norm();
  double t = (z - a).dot(d) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return (z - (a + t * d)).norm();
}

/// Distance between the closed segments [a0, a1] and [b0, b1].
/// Quadratic minimization over the unit square with edge clamping.
inline double segment_segment_distance(const Vec& a0, const Vec& a1, const Vec& b0,
                                       const Vec& b1) {
  const Vec u = a1 - a0;
  const Vec v = b1 - b0;
  const Vec w = a0 - b0;
  const double a = u.squaredNorm();
  const double b = u.dot(v);
  const double c = v.squaredNorm();
  const double d = u.dot(w);
  const double e = v.dot(w);
  const double denom = a * c - b * b;

  double s = 0.0, t = 0.0;
  if (a == 0.0 && c == 0.0) return w.norm();
  if (a == 0.0) {
    t = std::clamp(e / c, 0.0, 1.0);
  } else if (c == 0.0) {
    s = std::clamp(-d / a, 0.0, 1.0);
  } else {
    if (denom > 1e-14 * a * c) {
      s = std::clamp((b * e - c * d) / denom, 0.0, 1.0);
    } else {
      s = 0.0;  // near-parallel, fall through to edge scan
    }
    t = (b * s + e) / c;
    if (t < 0.0) {
      t = 0.0;
      s = std::clamp(-d / a, 0.0, 1.0);
    } else if (t > 1.0) {
      t = 1.0;
      s = std::clamp((b - d) / a, 0.0, 1.0);
    }
  }
  double best = (a0 + s * u - (b0 + t * v)).norm();
  // Candidate minima on the boundary of the parameter square. Cheap and
  // guards the degenerate/parallel branches above.
  best = std::min(best, point_segment_distance(a0, b0, b1));
  best = std::min(best, point_segment_distance(a1, b0, b1));
  best = std::min(best, point_segment_distance(b0, a0, a1));
  best = std::min(best, point_segment_distance(b1, a0, a1));
  return best;
}

/// Axis-aligned bounding box.
struct Aabb {
  Vec lo, hi;

  int dim() const { return static_cast<int>(lo.size()); }

  void expand(const Aabb& other) {
    lo = lo.cwiseMin(other.lo);
    hi = hi.cwiseMax(other.hi);
  }

  Vec sample(Rng& rng) const {
    Vec z(lo.size());
    for (int i = 0; i < lo.size(); ++i) z[i] = uniform_in(rng, lo[i], hi[i]);
    return z;
  }

  std::vector<Vec> corners() const {
    const int d = dim();
    std::vector<Vec> out;
    out.reserve(std::size_t{1} << d);
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
      Vec c(d);
      for (int i = 0; i < d; ++i) c[i] = (mask >> i) & 1 ? hi[i] : lo[i];
      out.push_back(std::move(c));
    }
    return out;
  }
};

inline Aabb aabb_of_segment(const Vec& a, const Vec& b, double pad) {
  Aabb box{a.cwiseMin(b), a.cwiseMax(b)};
  box.lo.array() -= pad;
  box.hi.array() += pad;
  return box;
}

}  // namespace orbi
