#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pmd/block_function.hpp"
#include "pmd/error.hpp"
#include "pmd/filtration.hpp"

namespace pmd {

/// Summands kappa_a -> kappa_b, 0 -> kappa_b and kappa_inf -> kappa_inf.
struct LadderDecomposition {
  struct Ladder {
    double a;
    double b;
    std::size_t mult;
    friend bool operator==(const Ladder&, const Ladder&) = default;
  };
  struct Birth {
    double b;
    std::size_t mult;
    friend bool operator==(const Birth&, const Birth&) = default;
  };

  std::vector<Ladder> ladders;     // sorted by (a, b)
  std::vector<Birth> births_only;  // sorted by b, nonzero only
  bool has_infinite = false;

  friend bool operator==(const LadderDecomposition&, const LadderDecomposition&) = default;
};

/// A representative (value, copy) of a multiset element; copies are 1-based.
struct Representative {
  double value;
  std::size_t copy;
  friend bool operator==(const Representative&, const Representative&) = default;
};

struct PartialMatching {
  std::vector<std::pair<Representative, Representative>> pairs;
  std::vector<Representative> unmatched_domain;
  std::vector<Representative> unmatched_codomain;
};

namespace detail {
inline std::map<double, std::size_t> row_sums(const BlockFunction& bf) {
  std::map<double, std::size_t> out;
  for (const auto& [key, m] : bf.cells) out[key.first] += m;
  return out;
}
inline std::map<double, std::size_t> column_sums(const BlockFunction& bf) {
  std::map<double, std::size_t> out;
  for (const auto& [key, m] : bf.cells) out[key.second] += m;
  return out;
}
inline std::string describe(double v) { return std::to_string(v); }
}  // namespace detail

/// Ladder form of the morphism. Only defined when every domain bar is
/// matched (the row sums equal m^V), as happens for injective mappings.
inline LadderDecomposition ladder_decomposition(const BlockFunction& bf, const Barcode& bv,
                                                const Barcode& bu) {
  const auto rows = detail::row_sums(bf);
  for (const auto& bar : bv.deaths) {
    auto it = rows.find(bar.death);
    const std::size_t got = it == rows.end() ? 0 : it->second;
    if (got != bar.mult) {
      throw Error(ErrorKind::NotInjectiveDecomposable,
                  "cells at a=" + detail::describe(bar.death) + " sum to " + std::to_string(got) +
                      ", domain multiplicity is " + std::to_string(bar.mult));
    }
  }
  for (const auto& [a, _] : rows)
    if (bv.multiplicity(a) == 0)
      throw Error(ErrorKind::NotInjectiveDecomposable, "cell at a non-death domain value");
  const auto cols = detail::column_sums(bf);
  for (const auto& [b, total] : cols)
    if (total > bu.multiplicity(b))
      throw Error(ErrorKind::NotInjectiveDecomposable, "cells exceed codomain multiplicity");

  LadderDecomposition out;
  for (const auto& [key, m] : bf.cells) out.ladders.push_back({key.first, key.second, m});
  for (const auto& [b, n] : bf.deficiency)
    if (n > 0) out.births_only.push_back({b, n});
  out.has_infinite = bv.infinite_bars > 0 && bu.infinite_bars > 0;
  return out;
}

/// Intervals [b, a) with multiplicity M(a, b) for every cell with a > b.
inline IntervalBarcode kernel_barcode(const BlockFunction& bf) {
  std::map<std::pair<double, double>, std::size_t> acc;
  for (const auto& [key, m] : bf.cells)
    if (key.first > key.second) acc[{key.second, key.first}] += m;
  IntervalBarcode out;
  for (const auto& [iv, m] : acc) out.intervals.push_back({iv.first, iv.second, m});
  return out;
}

/// Bars [0, b) with multiplicity sum_a M(a, b), plus one infinite bar.
inline Barcode image_barcode(const BlockFunction& bf) {
  Barcode out;
  for (const auto& [b, m] : detail::column_sums(bf)) out.deaths.push_back({b, m});
  out.infinite_bars = 1;
  return out;
}

/// Bars [0, b) with multiplicity N(b); no infinite bar.
inline Barcode cokernel_barcode(const BlockFunction& bf) {
  Barcode out;
  for (const auto& [b, n] : bf.deficiency)
    if (n > 0) out.deaths.push_back({b, n});
  return out;
}

/// Representative-level matching induced by the block function. Domain
/// deaths are processed in increasing order; the copies of each a are paired
/// with the free codomain copies in increasing b, then increasing copy index.
inline PartialMatching induced_matching(const BlockFunction& bf, const Barcode& bv,
                                        const Barcode& bu) {
  for (const auto& [a, total] : detail::row_sums(bf))
    if (total > bv.multiplicity(a))
      throw Error(ErrorKind::NotAMatching,
                  "cells at a=" + detail::describe(a) + " exceed domain multiplicity");
  for (const auto& [b, total] : detail::column_sums(bf))
    if (total > bu.multiplicity(b))
      throw Error(ErrorKind::NotAMatching,
                  "cells at b=" + detail::describe(b) + " exceed codomain multiplicity");

  PartialMatching out;
  std::map<double, std::size_t> next_domain, next_codomain;
  for (const auto& [key, m] : bf.cells) {
    auto& da = next_domain[key.first];
    auto& cb = next_codomain[key.second];
    for (std::size_t s = 0; s < m; ++s) out.pairs.push_back({{key.first, ++da}, {key.second, ++cb}});
  }
  for (const auto& bar : bv.deaths)
    for (std::size_t c = next_domain[bar.death] + 1; c <= bar.mult; ++c)
      out.unmatched_domain.push_back({bar.death, c});
  for (const auto& bar : bu.deaths)
    for (std::size_t c = next_codomain[bar.death] + 1; c <= bar.mult; ++c)
      out.unmatched_codomain.push_back({bar.death, c});
  return out;
}

/// Rebuilds the matching diagram from the kernel, domain and cokernel
/// barcodes: kernel intervals [b, a) give (a, b), the remaining domain copies
/// of a sit on the diagonal (a, a), and cokernel bars give (inf, b).
inline MatchingDiagram diagram_from_parts(const IntervalBarcode& kernel, const Barcode& bv,
                                          const Barcode& cokernel) {
  MatchingDiagram d;
  std::map<double, std::size_t> used;
  for (const auto& iv : kernel.intervals) {
    if (!(iv.birth < iv.death)) {
      throw Error(ErrorKind::InconsistentParts, "kernel interval with birth >= death");
    }
    d.points[{iv.death, iv.birth}] += iv.mult;
    used[iv.death] += iv.mult;
  }
  for (const auto& [a, n] : used)
    if (bv.multiplicity(a) < n)
      throw Error(ErrorKind::InconsistentParts,
                  "kernel intervals ending at " + detail::describe(a) +
                      " exceed the domain multiplicity");
  for (const auto& bar : bv.deaths) {
    const std::size_t diagonal = bar.mult - used[bar.death];
    if (diagonal > 0) d.points[{bar.death, bar.death}] += diagonal;
  }
  for (const auto& bar : cokernel.deaths) d.points[{kInfinity, bar.death}] += bar.mult;
  return d;
}

}  // namespace pmd
