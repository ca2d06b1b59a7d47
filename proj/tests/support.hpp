// Fixtures, random instance generators and brute-force oracles shared by the
// unit tests and the acceptance binary. The oracles deliberately avoid the
// library's union-find, filtration and GF(2) code.
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "pmd/block_function.hpp"
#include "pmd/filtration.hpp"
#include "pmd/matching.hpp"
#include "pmd/metric.hpp"

namespace pmd::testing {

inline const double kSqrt2 = std::sqrt(2.0);
inline const double k2Sqrt2 = std::sqrt(8.0);

// ---------------------------------------------------------------------------
// Fixtures

inline std::vector<Point> staircase_x_points() { return {{0, 0}, {2, 0}, {2, 2}, {4, 4}}; }
inline std::vector<Point> staircase_z_points() {
  return {{0, 0}, {2, 0}, {2, 2}, {4, 4}, {1, 1}, {3, 3}, {6, 6}};
}

struct Fixture {
  FiniteMetricSpace x;
  FiniteMetricSpace z;
  SetMapping m;
};

inline Fixture staircase() {
  return {FiniteMetricSpace::from_points(staircase_x_points()),
          FiniteMetricSpace::from_points(staircase_z_points()), SetMapping::inclusion({0, 1, 2, 3}, 7)};
}

/// X = {0, 0.5, 1} and Z = {0, 1, 3} on the line, 0 -> 0, 0.5 -> 1, 1 -> 3.
inline Fixture line_map() {
  return {FiniteMetricSpace::from_points({{0}, {0.5}, {1}}),
          FiniteMetricSpace::from_points({{0}, {1}, {3}}), SetMapping({0, 1, 2}, 3)};
}

// ---------------------------------------------------------------------------
// Random instances

enum class MappingKind { Inclusion, Injective, NonInjective };

struct Instance {
  FiniteMetricSpace x;
  FiniteMetricSpace z;
  SetMapping m;
  MappingKind kind;
  bool euclidean;
};

inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Distinct integer points in [0, side]^2; many tied distances.
inline FiniteMetricSpace random_grid_space(std::mt19937_64& rng, std::size_t n, int side = 4) {
  std::set<std::pair<int, int>> seen;
  std::vector<Point> pts;
  std::uniform_int_distribution<int> coord(0, side);
  while (pts.size() < n) {
    const int a = coord(rng), b = coord(rng);
    if (seen.insert({a, b}).second) pts.push_back({double(a), double(b)});
  }
  return FiniteMetricSpace::from_points(std::move(pts));
}

/// Shortest-path closure of random integer edge weights in [1, wmax].
inline FiniteMetricSpace random_metric_space(std::mt19937_64& rng, std::size_t n, int wmax = 4) {
  std::uniform_int_distribution<int> w(1, wmax);
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = w(rng);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
  return FiniteMetricSpace::from_matrix(n, std::move(d));
}

/// d_X(i, j) = d_Z(g(i), g(j)) + c for i != j; g is then non-expansive.
inline FiniteMetricSpace pullback_space(const FiniteMetricSpace& z,
                                        const std::vector<std::size_t>& g, double c) {
  const std::size_t n = g.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) d[i * n + j] = z(g[i], g[j]) + c;
  return FiniteMetricSpace::from_matrix(n, std::move(d));
}

/// Instance kinds cycle with the index: subset inclusion, injective
/// non-inclusion, non-injective; Euclidean grids and shortest-path metrics
/// alternate every three indices.
inline Instance random_instance(std::mt19937_64& rng, std::size_t index,
                                std::size_t max_z = 12) {
  const bool euclidean = (index / 3) % 2 == 0;
  const std::size_t nz = uniform_index(rng, 1, max_z);
  FiniteMetricSpace z = euclidean ? random_grid_space(rng, nz) : random_metric_space(rng, nz);
  std::vector<std::size_t> perm(nz);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);

  switch (index % 3) {
    case 0: {
      std::vector<std::size_t> subset(perm.begin(), perm.begin() + uniform_index(rng, 1, nz));
      std::sort(subset.begin(), subset.end());
      FiniteMetricSpace x = z.restrict_to(subset);
      return {std::move(x), std::move(z), SetMapping::inclusion(subset, nz),
              MappingKind::Inclusion, euclidean};
    }
    case 1: {
      std::vector<std::size_t> g(perm.begin(), perm.begin() + uniform_index(rng, 1, nz));
      const double c = double(uniform_index(rng, 0, 2)) / 2.0;
      FiniteMetricSpace x = pullback_space(z, g, c);
      return {std::move(x), std::move(z), SetMapping(g, nz), MappingKind::Injective, euclidean};
    }
    default: {
      const std::size_t nx = uniform_index(rng, 2, max_z);
      std::vector<std::size_t> g(nx);
      for (auto& t : g) t = uniform_index(rng, 0, nz - 1);
      if (std::set<std::size_t>(g.begin(), g.end()).size() == g.size()) g[1] = g[0];
      const double c = double(uniform_index(rng, 1, 2));
      FiniteMetricSpace x = pullback_space(z, g, c);
      return {std::move(x), std::move(z), SetMapping(g, nz), MappingKind::NonInjective,
              euclidean};
    }
  }
}

/// Uniform points in [0, side]^2.
inline std::vector<Point> random_plane_points(std::mt19937_64& rng, std::size_t n,
                                              double side = 10.0) {
  std::uniform_real_distribution<double> u(0.0, side);
  std::vector<Point> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  return pts;
}

/// Moves every point by a random vector of norm at most eps.
inline std::vector<Point> perturb_points(std::mt19937_64& rng, const std::vector<Point>& pts,
                                         double eps) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::acos(-1.0));
  std::uniform_real_distribution<double> radius(0.0, eps);
  std::vector<Point> out = pts;
  for (auto& p : out) {
    const double t = angle(rng), r = radius(rng);
    p[0] += r * std::cos(t);
    p[1] += r * std::sin(t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Oracles

/// Component labels (smallest index per component) by BFS on the graph with
/// edges d <= r, or d < r when strict.
inline std::vector<std::size_t> bfs_components(const FiniteMetricSpace& s, double r, bool strict) {
  const std::size_t n = s.size();
  std::vector<std::size_t> label(n, n);
  for (std::size_t start = 0; start < n; ++start) {
    if (label[start] != n) continue;
    std::queue<std::size_t> q;
    q.push(start);
    label[start] = start;
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t v = 0; v < n; ++v) {
        const bool edge = strict ? s(u, v) < r : s(u, v) <= r;
        if (v != u && label[v] == n && edge) {
          label[v] = start;
          q.push(v);
        }
      }
    }
  }
  return label;
}

inline std::size_t count_components(const std::vector<std::size_t>& labels) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) c += labels[i] == i;
  return c;
}

/// Deaths from component-count drops at every distinct distance.
inline Barcode brute_barcode(const FiniteMetricSpace& s) {
  std::set<double> values;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) values.insert(s(i, j));
  Barcode bc;
  for (double r : values) {
    const std::size_t before = count_components(bfs_components(s, r, true));
    const std::size_t after = count_components(bfs_components(s, r, false));
    if (before > after) bc.deaths.push_back({r, before - after});
  }
  bc.infinite_bars = s.size() > 0 ? 1 : 0;
  return bc;
}

/// Dense GF(2) vectors as bitmasks; enough for up to 64 points.
using Mask = std::uint64_t;

/// XOR basis indexed by leading bit.
class MaskSpace {
 public:
  Mask reduce(Mask v) const {
    for (int p = 63; p >= 0; --p)
      if ((v >> p & 1) && slot_[p]) v ^= slot_[p];
    return v;
  }
  void add(Mask v) {
    v = reduce(v);
    if (!v) return;
    slot_[63 - std::countl_zero(v)] = v;
    ++dim_;
  }
  bool contains(Mask v) const { return reduce(v) == 0; }
  std::size_t dim() const { return dim_; }

 private:
  Mask slot_[64] = {};
  std::size_t dim_ = 0;
};

/// Span of e_i + e_j over components of the threshold graph, pushed
/// through the mapping g into GF(2)^{|Z|}.
inline MaskSpace brute_image_kernel(const FiniteMetricSpace& s, const std::vector<std::size_t>& g,
                                    double r, bool strict) {
  MaskSpace out;
  const auto labels = bfs_components(s, r, strict);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (labels[i] != i) out.add((Mask(1) << g[i]) ^ (Mask(1) << g[labels[i]]));
  return out;
}

/// Block value by enumerating every vector of GF(2)^{|Z|}: counts the
/// elements of each intersection directly and spans the denominator.
inline std::size_t brute_block_value(const FiniteMetricSpace& x, const FiniteMetricSpace& z,
                                     const SetMapping& m, double a, double b) {
  const std::size_t n = z.size();
  std::vector<std::size_t> id(n);
  std::iota(id.begin(), id.end(), 0);
  const auto ap = brute_image_kernel(x, m.targets(), a, false);
  const auto am = brute_image_kernel(x, m.targets(), a, true);
  const auto bp = brute_image_kernel(z, id, b, false);
  const auto bm = brute_image_kernel(z, id, b, true);
  std::size_t numerator = 0;
  MaskSpace denominator;
  for (Mask v = 0; v < (Mask(1) << n); ++v) {
    if (ap.contains(v) && bp.contains(v)) ++numerator;
    if ((am.contains(v) && bp.contains(v)) || (ap.contains(v) && bm.contains(v)))
      denominator.add(v);
  }
  const std::size_t num_dim = static_cast<std::size_t>(std::countr_zero(numerator));
  return num_dim - denominator.dim();
}

/// Minimum over every partial matching of the largest pair or discard cost.
template <class Item, class PairCost, class DiscardCost>
double brute_bottleneck(const std::vector<Item>& left, const std::vector<Item>& right,
                        PairCost pair_cost, DiscardCost discard_cost) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<bool> used(right.size(), false);
  std::function<void(std::size_t, double)> go = [&](std::size_t i, double worst) {
    if (worst >= best) return;
    if (i == left.size()) {
      for (std::size_t j = 0; j < right.size(); ++j)
        if (!used[j]) worst = std::max(worst, discard_cost(right[j]));
      best = std::min(best, worst);
      return;
    }
    go(i + 1, std::max(worst, discard_cost(left[i])));
    for (std::size_t j = 0; j < right.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      go(i + 1, std::max(worst, pair_cost(left[i], right[j])));
      used[j] = false;
    }
  };
  go(0, 0.0);
  return best;
}

inline double brute_interval_bottleneck(const IntervalList& x, const IntervalList& y) {
  if (x.infinite != y.infinite) return std::numeric_limits<double>::infinity();
  using Iv = std::pair<double, double>;
  return brute_bottleneck(
      x.finite, y.finite,
      [](const Iv& p, const Iv& q) {
        return std::max(std::abs(p.first - q.first), std::abs(p.second - q.second));
      },
      [](const Iv& p) { return (p.second - p.first) / 2.0; });
}

inline double brute_diagram_distance(const MatchingDiagram& d1, const MatchingDiagram& d2) {
  const auto l = representatives(d1), r = representatives(d2);
  return brute_bottleneck(l, r, diagram_pair_cost, diagram_discard_cost);
}

inline double brute_hausdorff(const std::vector<Point>& a, const std::vector<Point>& b) {
  auto dist = [](const Point& p, const Point& q) {
    double s = 0;
    for (std::size_t k = 0; k < p.size(); ++k) s += (p[k] - q[k]) * (p[k] - q[k]);
    return std::sqrt(s);
  };
  auto directed = [&](const std::vector<Point>& from, const std::vector<Point>& to) {
    double worst = 0;
    for (const auto& p : from) {
      double near = std::numeric_limits<double>::infinity();
      for (const auto& q : to) near = std::min(near, dist(p, q));
      worst = std::max(worst, near);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace pmd::testing
