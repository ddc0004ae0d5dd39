#pragma once

#include "orbi/common.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>
#include <vector>

namespace orbi {

/// One orthogonal matrix of a finite group, with its canonical index.
struct GroupElement {
  Mat matrix;
  int index = 0;
};

/// A finite group of orthogonal d x d matrices, closed under multiplication,
/// carrying integer multiplication and inverse tables. The identity always
/// sits at index 0; the remaining elements are ordered lexicographically on
/// their entries rounded to 12 decimals, so indices are stable across runs.
class FiniteMatrixGroup {
 public:
  FiniteMatrixGroup() = default;

  int dimension() const { return dimension_; }
  int order() const { return static_cast<int>(elements_.size()); }
  const std::vector<GroupElement>& elements() const { return elements_; }
  const GroupElement& element(int i) const { return elements_.at(static_cast<std::size_t>(i)); }
  const Mat& matrix(int i) const { return element(i).matrix; }

  int mult(int i, int j) const { return mult_table_[static_cast<std::size_t>(i) * elements_.size() + j]; }
  int inverse(int i) const { return inverse_table_.at(static_cast<std::size_t>(i)); }

  /// Index of the element matching m within kGroupTol, or -1.
  int find(const Mat& m) const {
    for (const auto& e : elements_)
      if (max_abs(e.matrix - m) < kGroupTol) return e.index;
    return -1;
  }

  /// Closes the index set under multiplication (pure table arithmetic).
  std::vector<int> close_subset(std::vector<int> subset) const {
    std::set<int> s(subset.begin(), subset.end());
    s.insert(0);
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<int> cur(s.begin(), s.end());
      for (int i : cur)
        for (int j : cur)
          if (s.insert(mult(i, j)).second) grew = true;
    }
    return {s.begin(), s.end()};
  }

  bool is_subgroup(const std::vector<int>& subset) const {
    std::set<int> s(subset.begin(), subset.end());
    if (!s.count(0)) return false;
    for (int i : subset)
      for (int j : subset)
        if (!s.count(mult(i, j))) return false;
    return true;
  }

  friend FiniteMatrixGroup build_group(const std::vector<Mat>& generators, int cap);

 private:
  int dimension_ = 0;
  std::vector<GroupElement> elements_;
  std::vector<int> mult_table_;   // flattened |G| x |G|
  std::vector<int> inverse_table_;
};

namespace detail {

inline std::string rounded_key(const Mat& m) {
  std::ostringstream os;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      double v = std::round(m(r, c) * 1e12) / 1e12;
      if (v == 0.0) v = 0.0;  // normalize -0
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%+.12f,", v);
      os << buf;
    }
  return os.str();
}

}  // namespace detail

/// Closes a set of orthogonal generators under multiplication. Orderings and
/// tables are deterministic for identical inputs.
inline FiniteMatrixGroup build_group(const std::vector<Mat>& generators, int cap = kGroupCap) {
  if (generators.empty())
    fail(errc::unsupported, "build_group needs at least one generator (pass the identity for the trivial group)");
  const int d = static_cast<int>(generators.front().rows());
  for (const auto& g : generators) {
    if (g.rows() != g.cols() || g.rows() != d)
      fail(errc::not_orthogonal, "generators must be square matrices of one dimension");
    if (max_abs(g.transpose() * g - Mat::Identity(d, d)) >= kGroupTol)
      fail(errc::not_orthogonal, "generator fails the orthogonality check");
  }

  std::vector<Mat> closure;
  closure.push_back(Mat::Identity(d, d));
  // Matching uses the global tolerance; candidates landing in the band just
  // above it are numerically indistinct from an existing element, which for
  // orthogonal actions means the action is not effective.
  auto absorb = [&](Mat m) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& e : closure) nearest = std::min(nearest, max_abs(e - m));
    if (nearest < kGroupTol) return false;
    if (nearest < 10 * kGroupTol)
      fail(errc::not_effective, "two distinct closure elements coincide within tolerance");
    if (static_cast<int>(closure.size()) >= cap)
      fail(errc::closure_exceeds_cap, "group closure exceeds the configured cap");
    closure.push_back(std::move(m));
    return true;
  };
  for (const auto& g : generators) absorb(g);

  // breadth-first closure under products
  for (std::size_t i = 0; i < closure.size(); ++i)
    for (std::size_t j = 0; j < closure.size(); ++j) absorb(closure[i] * closure[j]);

  // identity first, the rest sorted on rounded entries
  std::vector<std::pair<std::string, Mat>> keyed;
  for (std::size_t i = 1; i < closure.size(); ++i)
    keyed.emplace_back(detail::rounded_key(closure[i]), closure[i]);
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  FiniteMatrixGroup g;
  g.dimension_ = d;
  g.elements_.push_back({Mat::Identity(d, d), 0});
  for (auto& [key, m] : keyed)
    g.elements_.push_back({std::move(m), static_cast<int>(g.elements_.size())});

  const int n = g.order();
  g.mult_table_.assign(static_cast<std::size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int k = g.find(g.matrix(i) * g.matrix(j));
      if (k < 0) fail(errc::not_effective, "closure is not closed within tolerance");
      g.mult_table_[static_cast<std::size_t>(i) * n + j] = k;
    }
  g.inverse_table_.assign(n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g.mult(i, j) == 0) g.inverse_table_[i] = j;
  return g;
}

/// A linear (or affine) subspace with an orthonormal basis.
struct Subspace {
  int dimension = 0;
  Mat basis;   // d x dimension, orthonormal columns
  Vec offset;  // affine base point, zero for linear subspaces

  /// Orthogonal projection of z onto the subspace.
  Vec project(const Vec& z) const {
    if (dimension == 0) return offset;
    return offset + basis * (basis.transpose() * (z - offset));
  }

  /// Coordinates of z in the basis (z is assumed near the subspace).
  Vec coords(const Vec& z) const { return basis.transpose() * (z - offset); }
};

/// Orthonormal basis of the common fixed space of the chosen elements,
/// computed from the SVD of the stacked (gamma - I) blocks.
inline Subspace fixed_subspace(const FiniteMatrixGroup& g, const std::vector<int>& subset) {
  const int d = g.dimension();
  if (subset.empty()) fail(errc::unsupported, "fixed_subspace needs a nonempty subset");
  Mat stacked(static_cast<int>(subset.size()) * d, d);
  for (std::size_t k = 0; k < subset.size(); ++k)
    stacked.block(static_cast<int>(k) * d, 0, d, d) =
        g.matrix(subset[k]) - Mat::Identity(d, d);

  Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] >= kGroupTol) ++rank;
  const int m = d - rank;

  Subspace s;
  s.dimension = m;
  s.basis = svd.matrixV().rightCols(m);
  s.offset = Vec::Zero(d);
  return s;
}

/// Indices of elements fixing the lift, relative tolerance tol. Rejects
/// points whose classification is numerically borderline.
inline std::vector<int> isotropy(const FiniteMatrixGroup& g, const Vec& lift,
                                 double tol = kGroupTol) {
  if (tol <= 0) fail(errc::unsupported, "isotropy tolerance must be positive");
  const double scale = 1.0 + lift.norm();
  std::vector<int> out;
  for (const auto& e : g.elements()) {
    const double r = (e.matrix * lift - lift).norm() / scale;
    if (r < tol) {
      out.push_back(e.index);
    } else if (r < 10 * tol) {
      fail(errc::ambiguous_isotropy, "point is too close to a stratum boundary to classify");
    }
  }
  if (!g.is_subgroup(out))
    fail(errc::ambiguous_isotropy, "isotropy set fails the subgroup check");
  return out;
}

/// Every subgroup, via incremental subset closure. Sorted by order, then
/// lexicographically on indices.
inline std::vector<std::vector<int>> subgroups(const FiniteMatrixGroup& g) {
  std::set<std::vector<int>> found;
  found.insert({0});
  std::vector<std::vector<int>> queue = {{0}};
  while (!queue.empty()) {
    std::vector<int> h = queue.back();
    queue.pop_back();
    std::set<int> members(h.begin(), h.end());
    for (int e = 1; e < g.order(); ++e) {
      if (members.count(e)) continue;
      std::vector<int> ext = h;
      ext.push_back(e);
      std::vector<int> closed = g.close_subset(ext);
      if (found.insert(closed).second) queue.push_back(closed);
    }
  }
  std::vector<std::vector<int>> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

// Named 2-d generator families used by scenario files.

inline Mat rotation2(double angle) {
  Mat m(2, 2);
  m << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return m;
}

inline std::vector<Mat> cyclic_generators(int p) {
  if (p < 1) fail(errc::invalid_scenario, "cyclic order must be >= 1");
  if (p == 1) return {Mat::Identity(2, 2)};
  return {rotation2(kTwoPi / p)};
}

inline std::vector<Mat> dihedral_generators(int p) {
  if (p < 1) fail(errc::invalid_scenario, "dihedral order must be >= 1");
  Mat mirror(2, 2);
  mirror << 1, 0, 0, -1;
  if (p == 1) return {mirror};
  return {rotation2(kTwoPi / p), mirror};
}

inline std::vector<Mat> mirror_generators() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return {m};
}

inline std::vector<Mat> antipodal_generators(int dim) {
  if (dim < 1) fail(errc::invalid_scenario, "antipodal dimension must be >= 1");
  return {-Mat::Identity(dim, dim)};
}

inline FiniteMatrixGroup trivial_group(int dim) {
  return build_group({Mat::Identity(dim, dim)});
}

}  // namespace orbi
