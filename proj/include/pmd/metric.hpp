#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pmd/error.hpp"

namespace pmd {

using Point = std::vector<double>;

/// A finite metric space stored as a dense symmetric distance matrix.
///
/// Distinct indices are always at positive distance; coincident points are
/// rejected at construction so that the free vector space on the points has
/// one basis vector per point. Values are immutable once built.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;

  /// Euclidean distances between coordinate vectors.
  static FiniteMetricSpace from_points(std::vector<Point> points) {
    FiniteMetricSpace space;
    const std::size_t n = points.size();
    if (n > 0) {
      const std::size_t dim = points.front().size();
      for (std::size_t i = 0; i < n; ++i) {
        if (points[i].size() != dim) {
          throw Error(ErrorKind::DimensionMismatch,
                      "point " + std::to_string(i) + " has dimension " +
                          std::to_string(points[i].size()) + ", expected " + std::to_string(dim));
        }
      }
    }
    space.n_ = n;
    space.dist_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double sq = 0.0;
        for (std::size_t k = 0; k < points[i].size(); ++k) {
          const double d = points[i][k] - points[j][k];
          sq += d * d;
        }
        const double d = std::sqrt(sq);
        if (!(d > 0.0)) {
          throw Error(ErrorKind::DuplicatePoint,
                      "points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
        }
        space.dist_[i * n + j] = d;
        space.dist_[j * n + i] = d;
      }
    }
    space.coords_ = std::move(points);
    return space;
  }

  /// Builds a space from a dense row-major n x n matrix. The matrix must be
  /// symmetric with a zero diagonal and positive off-diagonal entries; the
  /// triangle inequality is not required (see satisfies_triangle_inequality).
  static FiniteMetricSpace from_matrix(std::size_t n, std::vector<double> dense) {
    if (dense.size() != n * n) {
      throw Error(ErrorKind::SizeMismatch, "matrix has " + std::to_string(dense.size()) +
                                               " entries, expected " + std::to_string(n * n));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (dense[i * n + i] != 0.0) {
        throw Error(ErrorKind::Parse, "nonzero diagonal entry at " + std::to_string(i));
      }
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = dense[i * n + j];
        if (d != dense[j * n + i]) {
          throw Error(ErrorKind::Parse, "asymmetric entry at (" + std::to_string(i) + ", " +
                                            std::to_string(j) + ")");
        }
        if (!std::isfinite(d)) {
          throw Error(ErrorKind::Parse, "non-finite distance at (" + std::to_string(i) + ", " +
                                            std::to_string(j) + ")");
        }
        if (!(d > 0.0)) {
          throw Error(ErrorKind::DuplicatePoint, "points " + std::to_string(i) + " and " +
                                                     std::to_string(j) + " are at distance 0");
        }
      }
    }
    FiniteMetricSpace space;
    space.n_ = n;
    space.dist_ = std::move(dense);
    return space;
  }

  /// Builds a space from the strict lower triangle, row by row
  /// (row i holds d(i,0) ... d(i,i-1)).
  static FiniteMetricSpace from_lower_triangle(std::size_t n,
                                               const std::vector<std::vector<double>>& rows) {
    if (n > 0 && rows.size() != n - 1) {
      throw Error(ErrorKind::SizeMismatch, "expected " + std::to_string(n - 1) +
                                               " lower-triangle rows, got " +
                                               std::to_string(rows.size()));
    }
    std::vector<double> dense(n * n, 0.0);
    for (std::size_t r = 0; r + 1 < n; ++r) {
      const std::size_t i = r + 1;
      if (rows[r].size() != i) {
        throw Error(ErrorKind::SizeMismatch, "lower-triangle row " + std::to_string(i) +
                                                 " has " + std::to_string(rows[r].size()) +
                                                 " entries, expected " + std::to_string(i));
      }
      for (std::size_t j = 0; j < i; ++j) {
        dense[i * n + j] = rows[r][j];
        dense[j * n + i] = rows[r][j];
      }
    }
    return from_matrix(n, std::move(dense));
  }

  std::size_t size() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return dist_[i * n_ + j]; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {dist_.data() + i * n_, n_};
  }

  const std::vector<double>& matrix() const noexcept { return dist_; }

  const std::optional<std::vector<Point>>& coords() const noexcept { return coords_; }

  /// Restriction of the metric to the given indices, in the given order.
  FiniteMetricSpace restrict_to(std::span<const std::size_t> indices) const {
    const std::size_t m = indices.size();
    for (std::size_t idx : indices) {
      if (idx >= n_) {
        throw Error(ErrorKind::IndexOutOfRange, "index " + std::to_string(idx) + " >= " +
                                                    std::to_string(n_));
      }
    }
    std::vector<double> dense(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) dense[i * m + j] = (*this)(indices[i], indices[j]);
    }
    FiniteMetricSpace sub = from_matrix(m, std::move(dense));
    if (coords_) {
      std::vector<Point> pts;
      pts.reserve(m);
      for (std::size_t idx : indices) pts.push_back((*coords_)[idx]);
      sub.coords_ = std::move(pts);
    }
    return sub;
  }

  friend bool operator==(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
    return a.n_ == b.n_ && a.dist_ == b.dist_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> dist_;
  std::optional<std::vector<Point>> coords_;
};

/// Brute-force O(n^3) check. Violations are legitimate inputs (shifted or
/// perturbed metrics), so callers treat a false result as a warning.
inline bool satisfies_triangle_inequality(const FiniteMetricSpace& space, double tol = 1e-12) {
  const std::size_t n = space.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (space(i, j) > space(i, k) + space(k, j) + tol) return false;
  return true;
}

/// A subset X of an ambient space Z, given by distinct ambient indices.
class MetricPair {
 public:
  MetricPair(FiniteMetricSpace ambient, std::vector<std::size_t> subset)
      : ambient_(std::move(ambient)), subset_(std::move(subset)) {
    std::vector<char> seen(ambient_.size(), 0);
    for (std::size_t idx : subset_) {
      if (idx >= ambient_.size()) {
        throw Error(ErrorKind::IndexOutOfRange, "subset index " + std::to_string(idx) +
                                                    " outside ambient of size " +
                                                    std::to_string(ambient_.size()));
      }
      if (seen[idx]) {
        throw Error(ErrorKind::InvalidMapping, "subset index " + std::to_string(idx) +
                                                   " repeated");
      }
      seen[idx] = 1;
    }
  }

  const FiniteMetricSpace& ambient() const noexcept { return ambient_; }
  const std::vector<std::size_t>& subset() const noexcept { return subset_; }

 private:
  FiniteMetricSpace ambient_;
  std::vector<std::size_t> subset_;
};

/// Hausdorff distance between two index sets of one space.
inline double hausdorff(std::span<const std::size_t> a, std::span<const std::size_t> b,
                        const FiniteMetricSpace& space) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::EmptySubset, "hausdorff of empty subset");
  for (auto set : {a, b})
    for (std::size_t idx : set)
      if (idx >= space.size())
        throw Error(ErrorKind::IndexOutOfRange, "index " + std::to_string(idx) + " >= " +
                                                    std::to_string(space.size()));
  auto directed = [&](std::span<const std::size_t> from, std::span<const std::size_t> to) {
    double worst = 0.0;
    for (std::size_t x : from) {
      double nearest = space(x, to.front());
      for (std::size_t y : to) nearest = std::min(nearest, space(x, y));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

/// Absolute tolerance for the isometry check in pair_hausdorff.
inline constexpr double kIsometryTolerance = 1e-9;

/// max{d_H(X, X'), d_H(Z, Z')} measured inside one common space after
/// isometric embeddings of both ambients. This is an upper bound for the
/// Gromov-Hausdorff distance between the pairs (the infimum over all common
/// spaces), not the distance itself.
inline double pair_hausdorff(const MetricPair& p, const MetricPair& q,
                             const FiniteMetricSpace& common,
                             std::span<const std::size_t> embed_p,
                             std::span<const std::size_t> embed_q) {
  auto check = [&](const MetricPair& pair, std::span<const std::size_t> embed, const char* name) {
    const auto& amb = pair.ambient();
    if (embed.size() != amb.size()) {
      throw Error(ErrorKind::SizeMismatch, std::string("embedding of ") + name + " has " +
                                               std::to_string(embed.size()) +
                                               " entries, ambient has " +
                                               std::to_string(amb.size()));
    }
    for (std::size_t idx : embed)
      if (idx >= common.size())
        throw Error(ErrorKind::IndexOutOfRange, std::string("embedding of ") + name +
                                                    " points outside the common space");
    for (std::size_t i = 0; i < amb.size(); ++i)
      for (std::size_t j = i + 1; j < amb.size(); ++j)
        if (std::abs(amb(i, j) - common(embed[i], embed[j])) > kIsometryTolerance)
          throw Error(ErrorKind::NotIsometric, std::string("embedding of ") + name +
                                                   " distorts d(" + std::to_string(i) + ", " +
                                                   std::to_string(j) + ")");
  };
  check(p, embed_p, "p");
  check(q, embed_q, "q");

  auto image = [](std::span<const std::size_t> idx, std::span<const std::size_t> embed) {
    std::vector<std::size_t> out;
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back(embed[i]);
    return out;
  };
  std::vector<std::size_t> all_p(p.ambient().size()), all_q(q.ambient().size());
  for (std::size_t i = 0; i < all_p.size(); ++i) all_p[i] = i;
  for (std::size_t i = 0; i < all_q.size(); ++i) all_q[i] = i;

  const double subsets = hausdorff(image(p.subset(), embed_p), image(q.subset(), embed_q), common);
  const double ambients = hausdorff(image(all_p, embed_p), image(all_q, embed_q), common);
  return std::max(subsets, ambients);
}

/// The space with every off-diagonal distance increased by delta.
inline FiniteMetricSpace shift_space(const FiniteMetricSpace& x, double delta) {
  if (!(delta >= 0.0)) throw Error(ErrorKind::NegativeDelta, "shift must be nonnegative");
  const std::size_t n = x.size();
  std::vector<double> dense = x.matrix();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) dense[i * n + j] += delta;
  return FiniteMetricSpace::from_matrix(n, std::move(dense));
}

/// max_{i<j} |d_x(i,j) - d_y(i,j)| for two metrics on the same index set.
inline double sup_metric_distortion(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::SizeMismatch, "spaces have " + std::to_string(x.size()) + " and " +
                                             std::to_string(y.size()) + " points");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      worst = std::max(worst, std::abs(x(i, j) - y(i, j)));
  return worst;
}

}  // namespace pmd
