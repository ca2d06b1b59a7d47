#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "pmd/error.hpp"
#include "pmd/metric.hpp"

namespace pmd {

/// Disjoint-set forest with union by rank and path compression.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0), components_(n) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }

  std::uint32_t find(std::uint32_t x) {
    std::uint32_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const std::uint32_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  /// Returns true when the two elements were in different sets.
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    --components_;
    return true;
  }

  std::size_t size() const noexcept { return parent_.size(); }
  std::size_t components() const noexcept { return components_; }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> rank_;
  std::size_t components_;
};

/// Set partition of {0..n-1}; each label is the smallest index of its block.
struct Partition {
  std::vector<std::uint32_t> labels;

  std::size_t size() const noexcept { return labels.size(); }

  std::size_t block_count() const noexcept {
    std::size_t count = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) count += labels[i] == i;
    return count;
  }

  friend bool operator==(const Partition&, const Partition&) = default;

  /// Canonical partition from a union-find state.
  static Partition from(UnionFind& uf) {
    const std::size_t n = uf.size();
    std::vector<std::uint32_t> smallest(n, std::numeric_limits<std::uint32_t>::max());
    for (std::uint32_t i = 0; i < n; ++i) {
      auto& s = smallest[uf.find(i)];
      s = std::min(s, i);
    }
    Partition p;
    p.labels.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) p.labels[i] = smallest[uf.find(i)];
    return p;
  }
};

/// Multiset of death values of a 0-dimensional barcode whose bars are all
/// born at 0, plus the number of infinite bars.
struct Barcode {
  struct Bar {
    double death;
    std::size_t mult;
    friend bool operator==(const Bar&, const Bar&) = default;
  };

  std::vector<Bar> deaths;  // strictly increasing death values
  std::size_t infinite_bars = 0;

  std::size_t finite_count() const noexcept {
    std::size_t total = 0;
    for (const auto& bar : deaths) total += bar.mult;
    return total;
  }

  std::size_t multiplicity(double death) const noexcept {
    auto it = std::lower_bound(deaths.begin(), deaths.end(), death,
                               [](const Bar& bar, double v) { return bar.death < v; });
    return it != deaths.end() && it->death == death ? it->mult : 0;
  }

  friend bool operator==(const Barcode&, const Barcode&) = default;
};

/// Multiset of finite intervals [birth, death).
struct IntervalBarcode {
  struct Interval {
    double birth;
    double death;
    std::size_t mult;
    friend bool operator==(const Interval&, const Interval&) = default;
  };

  std::vector<Interval> intervals;  // sorted by (birth, death), no repeats

  std::size_t count() const noexcept {
    std::size_t total = 0;
    for (const auto& iv : intervals) total += iv.mult;
    return total;
  }

  friend bool operator==(const IntervalBarcode&, const IntervalBarcode&) = default;
};

struct WeightedEdge {
  double weight;
  std::uint32_t u;
  std::uint32_t v;
};

/// All n(n-1)/2 edges sorted by weight, ties broken by (u, v).
inline std::vector<WeightedEdge> sorted_edges(const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  std::vector<WeightedEdge> edges;
  edges.reserve(n * (n - (n > 0)) / 2);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) edges.push_back({space(i, j), i, j});
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });
  return edges;
}

/// The 0-dimensional Vietoris-Rips filtration of a finite metric space,
/// summarized by a minimum spanning tree.
///
/// Components of the threshold graph at any r are exactly the components of
/// the MST edges of weight <= r, so every query below runs on the n-1 tree
/// edges. MST weights are grouped into levels: with tolerance 0 a level is one
/// exact weight; with tolerance t > 0 a new level starts whenever a weight
/// exceeds the first weight of the current level by more than t, and the
/// level takes that first weight as its value.
class Filtration {
 public:
  struct Level {
    double value;  // death value reported for the level
    double lo;     // smallest raw MST weight in the level
    double hi;     // largest raw MST weight in the level
    std::size_t mult;
  };

  Filtration() = default;

  explicit Filtration(const FiniteMetricSpace& space, double tolerance = 0.0)
      : n_(space.size()), tolerance_(tolerance) {
    if (!(tolerance >= 0.0)) throw Error(ErrorKind::NegativeDelta, "tolerance must be >= 0");
    UnionFind uf(n_);
    for (const auto& e : sorted_edges(space)) {
      if (uf.unite(e.u, e.v)) {
        tree_.push_back(e);
        if (tree_.size() + 1 == n_) break;
      }
    }
    level_of_.reserve(tree_.size());
    for (const auto& e : tree_) {
      if (levels_.empty() || e.weight - levels_.back().value > tolerance_) {
        levels_.push_back({e.weight, e.weight, e.weight, 0});
      }
      auto& level = levels_.back();
      level.hi = e.weight;
      ++level.mult;
      level_of_.push_back(levels_.size() - 1);
    }
    level_start_.assign(levels_.size() + 1, 0);
    for (std::size_t k = 0; k < level_of_.size(); ++k) ++level_start_[level_of_[k] + 1];
    for (std::size_t k = 0; k < levels_.size(); ++k) level_start_[k + 1] += level_start_[k];
  }

  std::size_t size() const noexcept { return n_; }
  double tolerance() const noexcept { return tolerance_; }
  const std::vector<Level>& levels() const noexcept { return levels_; }
  const std::vector<WeightedEdge>& tree() const noexcept { return tree_; }

  /// Tree edges belonging to level k.
  std::span<const WeightedEdge> level_edges(std::size_t k) const noexcept {
    return {tree_.data() + level_start_[k], level_start_[k + 1] - level_start_[k]};
  }

  Barcode barcode() const {
    Barcode bc;
    bc.infinite_bars = n_ > 0 ? 1 : 0;
    for (const auto& level : levels_) bc.deaths.push_back({level.value, level.mult});
    return bc;
  }

  /// Number of levels whose value is <= r (or < r when strict).
  std::size_t levels_through(double r, bool strict) const noexcept {
    auto it = strict ? std::lower_bound(levels_.begin(), levels_.end(), r,
                                        [](const Level& l, double v) { return l.value < v; })
                     : std::upper_bound(levels_.begin(), levels_.end(), r,
                                        [](double v, const Level& l) { return v < l.value; });
    return static_cast<std::size_t>(it - levels_.begin());
  }

  /// Tree edges of the threshold graph at r: the first edges_through(r)
  /// entries of tree().
  std::size_t edges_through(double r, bool strict) const noexcept {
    return level_start_[levels_through(r, strict)];
  }

  Partition components_at(double r, bool strict) const {
    UnionFind uf(n_);
    const std::size_t count = edges_through(r, strict);
    for (std::size_t k = 0; k < count; ++k) uf.unite(tree_[k].u, tree_[k].v);
    return Partition::from(uf);
  }

  /// Whether a raw distance w is an edge of the threshold graph at r. With
  /// tolerance 0 this is w <= r (w < r when strict). With grouping, the cut
  /// falls at the raw boundary of the levels counted by levels_through, so the
  /// component structure agrees with components_at. Once every level is in,
  /// the graph is connected and every edge is kept.
  bool includes(double w, double r, bool strict) const noexcept {
    if (tolerance_ == 0.0) return strict ? w < r : w <= r;
    const std::size_t k = levels_through(r, strict);
    return k == levels_.size() || w < levels_[k].lo;
  }

 private:
  std::size_t n_ = 0;
  double tolerance_ = 0.0;
  std::vector<WeightedEdge> tree_;
  std::vector<Level> levels_;
  std::vector<std::size_t> level_of_;
  std::vector<std::size_t> level_start_;
};

/// Deaths of the 0-dimensional Vietoris-Rips barcode: MST edge weights.
inline Barcode barcode0(const FiniteMetricSpace& space, double tolerance = 0.0) {
  return Filtration(space, tolerance).barcode();
}

/// Components of the threshold graph with edges d <= r (d < r when strict),
/// computed directly over all pairs.
inline Partition components_at(const FiniteMetricSpace& space, double r, bool strict) {
  const std::size_t n = space.size();
  UnionFind uf(n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) {
      const double d = space(i, j);
      if (strict ? d < r : d <= r) uf.unite(i, j);
    }
  return Partition::from(uf);
}

/// Distinct MST weights in increasing order.
inline std::vector<double> critical_values(const FiniteMetricSpace& space,
                                           double tolerance = 0.0) {
  const Filtration f(space, tolerance);
  std::vector<double> out;
  for (const auto& level : f.levels()) out.push_back(level.value);
  return out;
}

}  // namespace pmd
