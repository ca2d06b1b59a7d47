#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <queue>
#include <tuple>
#include <utility>
#include <vector>

#include "pmd/block_function.hpp"
#include "pmd/filtration.hpp"

namespace pmd {

/// Maximum bipartite matching by Hopcroft-Karp.
class HopcroftKarp {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  HopcroftKarp(std::size_t left, std::size_t right) : left_(left), right_(right) {}

  void add_edge(std::size_t u, std::size_t v) { edges_.emplace_back(u, v); }

  std::size_t solve() {
    start_.assign(left_ + 1, 0);
    for (const auto& [u, _] : edges_) ++start_[u + 1];
    for (std::size_t u = 0; u < left_; ++u) start_[u + 1] += start_[u];
    adj_.resize(edges_.size());
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    for (const auto& [u, v] : edges_) adj_[fill[u]++] = v;

    match_left_.assign(left_, npos);
    match_right_.assign(right_, npos);
    dist_.assign(left_, 0);
    std::size_t matched = 0;
    while (bfs()) {
      it_.assign(start_.begin(), start_.end() - 1);
      for (std::size_t u = 0; u < left_; ++u)
        if (match_left_[u] == npos && dfs(u)) ++matched;
    }
    return matched;
  }

  const std::vector<std::size_t>& match_left() const noexcept { return match_left_; }

 private:
  bool bfs() {
    std::queue<std::size_t> queue;
    bool found = false;
    for (std::size_t u = 0; u < left_; ++u) {
      if (match_left_[u] == npos) {
        dist_[u] = 0;
        queue.push(u);
      } else {
        dist_[u] = npos;
      }
    }
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop();
      for (std::size_t k = start_[u]; k < start_[u + 1]; ++k) {
        const std::size_t w = match_right_[adj_[k]];
        if (w == npos) {
          found = true;
        } else if (dist_[w] == npos) {
          dist_[w] = dist_[u] + 1;
          queue.push(w);
        }
      }
    }
    return found;
  }

  // Iterative layered DFS for one augmenting path from u.
  bool dfs(std::size_t root) {
    std::vector<std::size_t> stack{root};
    std::vector<std::size_t> via;  // right vertex used to step down
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      bool advanced = false;
      for (; it_[u] < start_[u + 1]; ++it_[u]) {
        const std::size_t v = adj_[it_[u]];
        const std::size_t w = match_right_[v];
        if (w == npos) {
          // Augment along the stack.
          via.push_back(v);
          for (std::size_t d = stack.size(); d-- > 0;) {
            match_left_[stack[d]] = via[d];
            match_right_[via[d]] = stack[d];
          }
          return true;
        }
        if (dist_[w] == dist_[u] + 1) {
          via.push_back(v);
          stack.push_back(w);
          ++it_[u];
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        dist_[u] = npos;
        stack.pop_back();
        if (!via.empty()) via.pop_back();
      }
    }
    return false;
  }

  std::size_t left_, right_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::size_t> start_, adj_, it_, match_left_, match_right_, dist_;
};

/// Partial matching between index sets [0, left) and [0, right) in which
/// every pair and every discarded element costs at most delta.
struct IndexMatching {
  double delta = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> unmatched_left;
  std::vector<std::size_t> unmatched_right;
};

/// Bottleneck-type problem: pair costs (row-major, +inf when a pair may never
/// match) and discard costs for each side.
struct MatchingProblem {
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<double> pair_cost;
  std::vector<double> left_discard;
  std::vector<double> right_discard;

  double cost(std::size_t l, std::size_t r) const noexcept { return pair_cost[l * right + r]; }
};

/// Feasibility at delta. Builds the doubled graph: left side = left elements
/// plus one discard slot per right element, right side = right elements plus
/// one discard slot per left element. A perfect matching there is a valid
/// partial matching. Discard slots are linked to each other only along
/// admissible pairs, which is enough since matched real pairs mirror onto
/// them.
inline std::optional<IndexMatching> feasible_matching(const MatchingProblem& p, double delta) {
  const std::size_t nl = p.left, nr = p.right;
  HopcroftKarp hk(nl + nr, nr + nl);
  for (std::size_t l = 0; l < nl; ++l) {
    for (std::size_t r = 0; r < nr; ++r) {
      if (p.cost(l, r) <= delta) {
        hk.add_edge(l, r);
        hk.add_edge(nl + r, nr + l);
      }
    }
    if (p.left_discard[l] <= delta) hk.add_edge(l, nr + l);
  }
  for (std::size_t r = 0; r < nr; ++r)
    if (p.right_discard[r] <= delta) hk.add_edge(nl + r, r);
  if (hk.solve() != nl + nr) return std::nullopt;

  IndexMatching out;
  out.delta = delta;
  const auto& ml = hk.match_left();
  for (std::size_t l = 0; l < nl; ++l) {
    if (ml[l] < nr) {
      out.pairs.emplace_back(l, ml[l]);
    } else {
      out.unmatched_left.push_back(l);
    }
  }
  for (std::size_t r = 0; r < nr; ++r)
    if (ml[nl + r] == r) out.unmatched_right.push_back(r);
  return out;
}

/// Smallest feasible delta. The optimum is always one of the pair or discard
/// costs (or 0), so a binary search over that sorted candidate set suffices.
inline IndexMatching minimize_matching(const MatchingProblem& p) {
  std::vector<double> candidates{0.0};
  for (double c : p.pair_cost)
    if (std::isfinite(c)) candidates.push_back(c);
  candidates.insert(candidates.end(), p.left_discard.begin(), p.left_discard.end());
  candidates.insert(candidates.end(), p.right_discard.begin(), p.right_discard.end());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::size_t lo = 0, hi = candidates.size() - 1;
  std::optional<IndexMatching> best = feasible_matching(p, candidates[hi]);
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (auto m = feasible_matching(p, candidates[mid])) {
      best = std::move(m);
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (!best || best->delta != candidates[lo]) best = feasible_matching(p, candidates[lo]);
  return *best;
}

// ---------------------------------------------------------------------------
// Matching diagrams

/// Representative ((a, b), copy) of a diagram point; copies are 1-based.
struct DiagramRep {
  double a;
  double b;
  std::size_t copy;
  friend bool operator==(const DiagramRep&, const DiagramRep&) = default;
};

struct DeltaMatching {
  double delta = 0.0;
  std::vector<std::pair<DiagramRep, DiagramRep>> pairs;
  std::vector<DiagramRep> unmatched_left;
  std::vector<DiagramRep> unmatched_right;
};

inline std::vector<DiagramRep> representatives(const MatchingDiagram& d) {
  std::vector<DiagramRep> out;
  for (const auto& [key, m] : d.points)
    for (std::size_t c = 1; c <= m; ++c) out.push_back({key.first, key.second, c});
  return out;
}

/// Largest coordinate displacement; infinite a only pairs with infinite a.
inline double diagram_pair_cost(const DiagramRep& p, const DiagramRep& q) noexcept {
  const bool pi = std::isinf(p.a), qi = std::isinf(q.a);
  if (pi != qi) return kInfinity;
  const double db = std::abs(p.b - q.b);
  return pi ? db : std::max(std::abs(p.a - q.a), db);
}

/// Smallest delta at which the point may stay unmatched.
inline double diagram_discard_cost(const DiagramRep& p) noexcept {
  return std::isinf(p.a) ? p.b : std::max(p.a, p.b);
}

namespace detail {
inline MatchingProblem diagram_problem(const std::vector<DiagramRep>& l,
                                       const std::vector<DiagramRep>& r) {
  MatchingProblem p;
  p.left = l.size();
  p.right = r.size();
  p.pair_cost.resize(l.size() * r.size());
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j)
      p.pair_cost[i * r.size() + j] = diagram_pair_cost(l[i], r[j]);
  for (const auto& x : l) p.left_discard.push_back(diagram_discard_cost(x));
  for (const auto& x : r) p.right_discard.push_back(diagram_discard_cost(x));
  return p;
}

inline DeltaMatching lift(const IndexMatching& m, const std::vector<DiagramRep>& l,
                          const std::vector<DiagramRep>& r) {
  DeltaMatching out;
  out.delta = m.delta;
  for (const auto& [i, j] : m.pairs) out.pairs.emplace_back(l[i], r[j]);
  for (std::size_t i : m.unmatched_left) out.unmatched_left.push_back(l[i]);
  for (std::size_t j : m.unmatched_right) out.unmatched_right.push_back(r[j]);
  return out;
}
}  // namespace detail

/// A delta-matching between two diagrams if one exists.
inline std::optional<DeltaMatching> delta_matching_feasible(const MatchingDiagram& d1,
                                                            const MatchingDiagram& d2,
                                                            double delta) {
  if (!(delta >= 0.0)) throw Error(ErrorKind::NegativeDelta, "delta must be >= 0");
  const auto l = representatives(d1), r = representatives(d2);
  auto m = feasible_matching(detail::diagram_problem(l, r), delta);
  if (!m) return std::nullopt;
  return detail::lift(*m, l, r);
}

/// The smallest delta admitting a delta-matching, with a witness.
inline DeltaMatching min_delta_matching(const MatchingDiagram& d1, const MatchingDiagram& d2) {
  const auto l = representatives(d1), r = representatives(d2);
  return detail::lift(minimize_matching(detail::diagram_problem(l, r)), l, r);
}

/// Post-hoc check of every delta-matching condition, including that the
/// witness uses each representative of both diagrams exactly once.
inline bool is_valid(const DeltaMatching& m, const MatchingDiagram& d1,
                     const MatchingDiagram& d2) {
  auto covers = [](std::vector<DiagramRep> used, std::vector<DiagramRep> all) {
    auto key = [](const DiagramRep& x, const DiagramRep& y) {
      return std::tie(x.a, x.b, x.copy) < std::tie(y.a, y.b, y.copy);
    };
    std::sort(used.begin(), used.end(), key);
    std::sort(all.begin(), all.end(), key);
    return used == all;
  };
  std::vector<DiagramRep> left = m.unmatched_left, right = m.unmatched_right;
  for (const auto& [p, q] : m.pairs) {
    if (!(diagram_pair_cost(p, q) <= m.delta)) return false;
    left.push_back(p);
    right.push_back(q);
  }
  for (const auto& p : m.unmatched_left)
    if (!(diagram_discard_cost(p) <= m.delta)) return false;
  for (const auto& q : m.unmatched_right)
    if (!(diagram_discard_cost(q) <= m.delta)) return false;
  return covers(left, representatives(d1)) && covers(right, representatives(d2));
}

// ---------------------------------------------------------------------------
// Barcodes

/// Flat list of finite intervals plus a count of [0, inf) bars.
struct IntervalList {
  std::vector<std::pair<double, double>> finite;
  std::size_t infinite = 0;
};

inline IntervalList to_intervals(const Barcode& bc) {
  IntervalList out;
  for (const auto& bar : bc.deaths)
    for (std::size_t c = 0; c < bar.mult; ++c) out.finite.emplace_back(0.0, bar.death);
  out.infinite = bc.infinite_bars;
  return out;
}

inline IntervalList to_intervals(const IntervalBarcode& bc) {
  IntervalList out;
  for (const auto& iv : bc.intervals)
    for (std::size_t c = 0; c < iv.mult; ++c) out.finite.emplace_back(iv.birth, iv.death);
  return out;
}

/// Bottleneck distance: matched intervals move each endpoint by at most
/// epsilon, unmatched ones have half-length at most epsilon. Infinite bars
/// all start at 0 and pair up at no cost; unequal counts give +inf.
inline double barcode_bottleneck(const IntervalList& x, const IntervalList& y) {
  if (x.infinite != y.infinite) return kInfinity;
  MatchingProblem p;
  p.left = x.finite.size();
  p.right = y.finite.size();
  p.pair_cost.resize(p.left * p.right);
  for (std::size_t i = 0; i < p.left; ++i)
    for (std::size_t j = 0; j < p.right; ++j)
      p.pair_cost[i * p.right + j] = std::max(std::abs(x.finite[i].first - y.finite[j].first),
                                              std::abs(x.finite[i].second - y.finite[j].second));
  for (const auto& [b, d] : x.finite) p.left_discard.push_back((d - b) / 2.0);
  for (const auto& [b, d] : y.finite) p.right_discard.push_back((d - b) / 2.0);
  return minimize_matching(p).delta;
}

template <class BarcodeLike>
double barcode_bottleneck(const BarcodeLike& x, const BarcodeLike& y) {
  return barcode_bottleneck(to_intervals(x), to_intervals(y));
}

}  // namespace pmd
