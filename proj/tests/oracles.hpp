// Independent brute-force oracles used to freeze expected values. These
// deliberately avoid the library's implementation paths: string-keyed
// closure, exhaustive subset scans, grid flood fill, Taylor series matrix
// exponentials and Monte-Carlo areas.
#pragma once

#include "orbi/common.hpp"
#include "orbi/group.hpp"

#include <array>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using orbi::Mat;
using orbi::Vec;

// Group order by repeated multiplication until stable, deduplicated through
// rounded string keys instead of the library's tolerance matching.
inline int closure_order(const std::vector<Mat>& generators, int limit = 10000) {
  auto key = [](const Mat& m) {
    std::string s;
    char buf[32];
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) {
        double v = std::round(m(r, c) * 1e9) / 1e9;
        if (v == 0.0) v = 0.0;
        std::snprintf(buf, sizeof(buf), "%+.9f,", v);
        s += buf;
      }
    return s;
  };
  const int d = static_cast<int>(generators.front().rows());
  std::map<std::string, Mat> elems;
  elems.emplace(key(Mat::Identity(d, d)), Mat::Identity(d, d));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Mat> current;
    for (auto& [k, m] : elems) current.push_back(m);
    for (const auto& a : current)
      for (const auto& g : generators) {
        Mat p = a * g;
        if (elems.emplace(key(p), p).second) grew = true;
        if (static_cast<int>(elems.size()) > limit) return -1;
      }
  }
  return static_cast<int>(elems.size());
}

// Exhaustive subgroup enumeration: every subset of element indices that
// contains the identity and is closed under the multiplication table.
// Only sensible for small groups.
inline int subgroup_count_exhaustive(const orbi::FiniteMatrixGroup& g) {
  const int n = g.order();
  int count = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    if (!(mask & 1)) continue;  // must contain the identity
    bool closed = true;
    for (int i = 0; i < n && closed; ++i) {
      if (!((mask >> i) & 1)) continue;
      for (int j = 0; j < n && closed; ++j) {
        if (!((mask >> j) & 1)) continue;
        if (!((mask >> g.mult(i, j)) & 1)) closed = false;
      }
    }
    if (closed) ++count;
  }
  return count;
}

// Grid stratification oracle: classify grid points by thickened isotropy at
// two scales (a point counts only when both scales agree, which suppresses
// spurious rings near the origin blob), then flood fill equal labels with
// 8-connectivity.
struct GridStratification {
  int n = 0;
  double extent = 0, h = 0;
  std::vector<std::vector<int>> labels;      // per cell, sorted indices; empty = unclassified
  std::vector<int> component;                // per cell, -1 = none
  std::map<std::vector<int>, int> components_per_label;
  int total_components = 0;

  int cell_index(int ix, int iy) const { return iy * n + ix; }

  int component_near(double x, double y) const {
    const int ix = static_cast<int>(std::lround((x + extent) / h));
    const int iy = static_cast<int>(std::lround((y + extent) / h));
    for (int radius = 0; radius <= 3; ++radius)
      for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx) {
          const int cx = ix + dx, cy = iy + dy;
          if (cx < 0 || cy < 0 || cx >= n || cy >= n) continue;
          if (component[cell_index(cx, cy)] >= 0) return component[cell_index(cx, cy)];
        }
    return -1;
  }
};

inline GridStratification grid_stratify(const orbi::FiniteMatrixGroup& g, double extent = 1.2,
                                        int n = 200) {
  GridStratification out;
  out.n = n;
  out.extent = extent;
  out.h = 2 * extent / (n - 1);
  const double tau = 8 * out.h;

  auto thick_label = [&](const Vec& z, double t) {
    std::vector<int> label;
    const double scale = 1.0 + z.norm();
    for (const auto& e : g.elements())
      if ((e.matrix * z - z).norm() < t * scale) label.push_back(e.index);
    return label;
  };

  out.labels.assign(static_cast<std::size_t>(n) * n, {});
  out.component.assign(static_cast<std::size_t>(n) * n, -1);
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      Vec z(2);
      z << -extent + ix * out.h, -extent + iy * out.h;
      auto coarse = thick_label(z, tau);
      if (coarse.size() < 2) continue;
      if (coarse != thick_label(z, tau / 2)) continue;
      if (!g.is_subgroup(coarse)) continue;
      out.labels[out.cell_index(ix, iy)] = std::move(coarse);
    }

  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const int idx = out.cell_index(ix, iy);
      if (out.labels[idx].empty() || out.component[idx] >= 0) continue;
      const int comp_id = out.total_components++;
      out.components_per_label[out.labels[idx]] += 1;
      std::deque<std::pair<int, int>> queue{{ix, iy}};
      out.component[idx] = comp_id;
      while (!queue.empty()) {
        auto [cx, cy] = queue.front();
        queue.pop_front();
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = cx + dx, ny = cy + dy;
            if (nx < 0 || ny < 0 || nx >= n || ny >= n) continue;
            const int nidx = out.cell_index(nx, ny);
            if (out.component[nidx] >= 0 || out.labels[nidx] != out.labels[idx]) continue;
            out.component[nidx] = comp_id;
            queue.emplace_back(nx, ny);
          }
      }
    }
  return out;
}

// Matrix exponential by scaling and squaring of the Taylor series.
inline Mat expm_taylor(const Mat& a) {
  const int d = static_cast<int>(a.rows());
  int squarings = 0;
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.5) {
    norm /= 2;
    ++squarings;
  }
  const Mat b = a / std::pow(2.0, squarings);
  Mat term = Mat::Identity(d, d);
  Mat sum = Mat::Identity(d, d);
  for (int i = 1; i < 64; ++i) {
    term = term * b / static_cast<double>(i);
    sum += term;
    if (orbi::max_abs(term) < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

// Monte-Carlo area of the curve region separated from the s = 0 end,
// measured against the density g(s) ds dphi on the (s, phi) cylinder.
// Membership is crossing parity of the downward ray phi = const.
struct McEstimate {
  double area = 0;
  double std_error = 0;
};

inline bool separated_from_s0(const std::vector<std::array<double, 2>>& samples, double s0,
                              double phi0) {
  int crossings = 0;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const double sa = samples[i][0], sb = samples[i + 1][0];
    const double pa = samples[i][1];
    const double dphi = orbi::angle_diff(samples[i + 1][1], samples[i][1]);
    if (dphi == 0.0) continue;
    const double t = orbi::angle_diff(phi0, pa) / dphi;
    if (t <= 0.0 || t > 1.0) continue;
    if (sa + t * (sb - sa) < s0) ++crossings;
  }
  return crossings % 2 == 1;
}

inline McEstimate mc_region_area(const std::vector<std::array<double, 2>>& samples,
                                 const std::function<double(double)>& density, long n_samples,
                                 std::uint64_t seed) {
  orbi::Rng rng(seed);
  double sum = 0, sum_sq = 0;
  for (long i = 0; i < n_samples; ++i) {
    const double s = orbi::uniform_in(rng, 0.0, 1.0);
    const double phi = orbi::uniform_in(rng, 0.0, orbi::kTwoPi);
    const double value = separated_from_s0(samples, s, phi) ? density(s) : 0.0;
    sum += value;
    sum_sq += value * value;
  }
  const double mean = sum / static_cast<double>(n_samples);
  const double var = sum_sq / static_cast<double>(n_samples) - mean * mean;
  McEstimate est;
  est.area = mean * orbi::kTwoPi;  // domain measure of (0,1) x [0, 2pi)
  est.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(n_samples)) * orbi::kTwoPi;
  return est;
}

}  // namespace oracle
