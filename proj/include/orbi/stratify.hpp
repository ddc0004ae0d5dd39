#pragma once

#include "orbi/orbifold.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace orbi {

/// Width of the ambiguity band around chamber walls, relative. Points inside
/// the band are rejected rather than classified.
inline constexpr double kWallBand = 10 * kGroupTol;

/// A connected component of a singular stratum: the chamber of an isotropy
/// subgroup's fixed space cut out by the walls (codimension-1 fixed spaces
/// of larger subgroups), identified by a strict sign vector. The regular set
/// of a connected orbifold is represented by one distinguished marker.
struct StratumComponent {
  bool regular = false;
  int chart_id = -1;
  std::vector<int> subgroup;       // isotropy type, sorted element indices
  Subspace subspace;               // Fix of the subgroup in chart coordinates
  Mat wall_normals;                // m x w, unit normals in Fix coordinates
  std::vector<int> chamber_signs;  // +1 / -1 per wall
  int sdim = -1;
  Vec representative;              // interior point, chart coordinates
};

inline bool same(const StratumComponent& a, const StratumComponent& b) {
  if (a.regular || b.regular) return a.regular && b.regular;
  return a.chart_id == b.chart_id && a.subgroup == b.subgroup &&
         a.chamber_signs == b.chamber_signs;
}

/// The distinguished marker for the regular set.
inline StratumComponent regular_component(const Orbifold& o) {
  StratumComponent c;
  c.regular = true;
  c.sdim = o.dimension();
  return c;
}

namespace detail {

inline double rep_radius(const Chart& chart) {
  return chart.footprint.whole_space ? 1.0 : std::min(1.0, 0.45 * chart.footprint.radius);
}

/// Signs of the Fix-coordinates c against the wall normals; nullopt when c
/// sits inside the ambiguity band of some wall.
inline std::optional<std::vector<int>> wall_signs(const Mat& normals, const Vec& c) {
  std::vector<int> signs;
  const double scale = 1.0 + c.norm();
  for (int w = 0; w < normals.cols(); ++w) {
    const double v = normals.col(w).dot(c);
    if (std::abs(v) < kWallBand * scale) return std::nullopt;
    signs.push_back(v > 0 ? 1 : -1);
  }
  return signs;
}

/// Try a few deterministic radii (and angles, for 2-d chambers) until the
/// candidate representative classifies exactly as the target subgroup.
inline Vec find_representative(const Chart& chart, const std::vector<int>& subgroup,
                               const Subspace& fix, const Mat& normals,
                               const std::vector<int>& signs, const Vec& direction) {
  const double r0 = rep_radius(chart);
  const double radii[] = {r0, 0.61 * r0, 1.29 * r0, 0.37 * r0};
  const double angles[] = {0.0, 0.031, -0.031, 0.073, -0.073};
  for (double r : radii) {
    for (double a : angles) {
      Vec u = direction;
      if (fix.dimension == 2) {
        Vec rotated(2);
        rotated << std::cos(a) * u[0] - std::sin(a) * u[1],
            std::sin(a) * u[0] + std::cos(a) * u[1];
        u = rotated;
      } else if (a != 0.0) {
        continue;
      }
      const Vec candidate = fix.basis * (r * u);
      if (!chart.footprint.contains(candidate)) continue;
      const auto s = wall_signs(normals, fix.coords(candidate));
      if (!s || *s != signs) continue;
      try {
        if (isotropy(chart.group, candidate) == subgroup) return candidate;
      } catch (const Error&) {
      }
    }
  }
  fail(errc::outside_all_charts, "no representative found for a stratum chamber");
}

}  // namespace detail

/// Enumerates the connected components of the singular strata of every
/// chart. For each nontrivial isotropy subgroup H the points with isotropy
/// exactly H form Fix(H) minus the fixed spaces of strictly larger
/// subgroups; the codimension-1 ones are walls and the components are the
/// sign-vector chambers of that arrangement. Deterministic ordering.
inline std::vector<StratumComponent> stratify(const Orbifold& o) {
  std::vector<StratumComponent> out;
  for (const Chart& chart : o.charts()) {
    const auto& g = chart.group;
    const auto subs = subgroups(g);
    for (const auto& h : subs) {
      if (h.size() <= 1) continue;  // regular set handled by the marker
      const Subspace fix = fixed_subspace(g, h);
      const int m = fix.dimension;

      // Only actual isotropy types produce strata: the pointwise stabilizer
      // of Fix(H) must be H itself, else every point of Fix(H) has larger
      // isotropy and the exact-H set is empty.
      std::vector<int> pointwise;
      for (const auto& e : g.elements()) {
        // Fix(H) = {0} is fixed by every element; otherwise test the basis.
        if (m == 0 ||
            max_abs((e.matrix - Mat::Identity(g.dimension(), g.dimension())) * fix.basis) <
                kGroupTol) {
          pointwise.push_back(e.index);
        }
      }
      if (pointwise != h) continue;

      if (m > 2)
        fail(errc::unsupported,
             "stratum chambers of dimension > 2 are not supported by this build");

      // Walls: fixed spaces of strictly larger subgroups that are
      // codimension 1 inside Fix(H), expressed as unit normals in Fix
      // coordinates, deduplicated.
      std::vector<Vec> normals;
      for (const auto& k : subs) {
        if (k.size() <= h.size()) continue;
        if (!std::includes(k.begin(), k.end(), h.begin(), h.end())) continue;
        const Subspace kfix = fixed_subspace(g, k);
        if (kfix.dimension != m - 1) continue;
        Vec n;
        if (m == 1) {
          n = Vec::Ones(1);
        } else {  // m == 2, kfix is a line inside the plane Fix(H)
          const Vec line = fix.basis.transpose() * kfix.basis.col(0);
          n = Vec(2);
          n << -line[1], line[0];
          n.normalize();
        }
        for (int i = 0; i < n.size(); ++i) {
          if (std::abs(n[i]) > 1e-12) {
            if (n[i] < 0) n = -n;
            break;
          }
        }
        bool dup = false;
        for (const auto& seen : normals)
          if (std::abs(seen.dot(n)) > 1.0 - 1e-9) dup = true;
        if (!dup) normals.push_back(n);
      }
      Mat wall(m, static_cast<int>(normals.size()));
      for (std::size_t i = 0; i < normals.size(); ++i) wall.col(static_cast<int>(i)) = normals[i];

      // Chamber enumeration per dimension.
      std::vector<std::pair<std::vector<int>, Vec>> chambers;  // signs, direction
      if (m == 0) {
        chambers.push_back({{}, Vec(0)});
      } else if (m == 1) {
        if (normals.empty()) {
          chambers.push_back({{}, Vec::Ones(1)});
        } else {
          chambers.push_back({{1}, Vec::Ones(1)});
          chambers.push_back({{-1}, -Vec::Ones(1)});
        }
      } else {
        if (normals.empty()) {
          Vec u(2);
          u << 1, 0;
          chambers.push_back({{}, u});
        } else {
          // Central line arrangement in the plane: boundary directions are
          // the wall lines in both orientations; sectors sit between
          // consecutive boundaries and are represented by bisectors.
          std::vector<double> bounds;
          for (const auto& n : normals) {
            const double theta = std::atan2(n[0], -n[1]);  // direction of the wall line
            bounds.push_back(wrap_angle(theta));
            bounds.push_back(wrap_angle(theta + std::numbers::pi));
          }
          std::sort(bounds.begin(), bounds.end());
          for (std::size_t i = 0; i < bounds.size(); ++i) {
            const double lo = bounds[i];
            const double hi = (i + 1 < bounds.size()) ? bounds[i + 1] : bounds[0] + kTwoPi;
            if (hi - lo < 1e-12) continue;  // coincident boundaries
            const double mid = 0.5 * (lo + hi);
            Vec u(2);
            u << std::cos(mid), std::sin(mid);
            auto s = detail::wall_signs(wall, u);
            if (!s) continue;
            chambers.push_back({*s, u});
          }
        }
      }

      for (auto& [signs, direction] : chambers) {
        StratumComponent comp;
        comp.chart_id = chart.id;
        comp.subgroup = h;
        comp.subspace = fix;
        comp.wall_normals = wall;
        comp.chamber_signs = signs;
        comp.sdim = m;
        comp.representative = (m == 0)
                                  ? Vec::Zero(g.dimension())
                                  : detail::find_representative(chart, h, fix, wall, signs,
                                                                direction);
        out.push_back(std::move(comp));
      }
    }
  }

  // Components whose representatives relift into an earlier chart and land
  // in an already-listed component are duplicates across the overlap. The
  // supported families keep their singular points out of chart overlaps, so
  // this is a safety net rather than a working path.
  std::vector<StratumComponent> merged;
  for (const auto& comp : out) {
    bool duplicate = false;
    for (const auto& kept : merged) {
      if (kept.chart_id == comp.chart_id) continue;
      try {
        const OrbifoldPoint moved =
            relift(o, {comp.chart_id, comp.representative}, kept.chart_id);
        if (isotropy(o.chart(kept.chart_id).group, moved.lift) == kept.subgroup)
          duplicate = true;
      } catch (const Error&) {
      }
    }
    if (!duplicate) merged.push_back(comp);
  }

  std::sort(merged.begin(), merged.end(), [](const StratumComponent& a, const StratumComponent& b) {
    if (a.chart_id != b.chart_id) return a.chart_id < b.chart_id;
    if (a.sdim != b.sdim) return a.sdim < b.sdim;
    if (a.subgroup != b.subgroup) return a.subgroup < b.subgroup;
    return a.chamber_signs < b.chamber_signs;
  });
  return merged;
}

/// The component whose chamber contains the point, or the regular marker.
inline StratumComponent component_of(const Orbifold& o, const OrbifoldPoint& pt) {
  const auto& g = o.chart(pt.chart_id).group;
  const auto iso = isotropy(g, pt.lift);
  if (iso.size() == 1) return regular_component(o);

  for (const auto& comp : stratify(o)) {
    if (comp.chart_id != pt.chart_id || comp.subgroup != iso) continue;
    const Vec c = comp.subspace.coords(pt.lift);
    const auto signs = detail::wall_signs(comp.wall_normals, c);
    if (!signs) fail(errc::not_in_any_component, "point sits on a chamber wall within tolerance");
    if (*signs == comp.chamber_signs) return comp;
  }
  fail(errc::not_in_any_component, "no stratum chamber matches the point");
}

inline bool same_component(const Orbifold& o, const OrbifoldPoint& a, const OrbifoldPoint& b) {
  return same(component_of(o, a), component_of(o, b));
}

}  // namespace orbi
