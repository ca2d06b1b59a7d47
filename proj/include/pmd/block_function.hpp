#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pmd/error.hpp"
#include "pmd/filtration.hpp"
#include "pmd/gf2.hpp"
#include "pmd/metric.hpp"

namespace pmd {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A total map from domain point indices to codomain point indices.
class SetMapping {
 public:
  SetMapping() = default;

  SetMapping(std::vector<std::size_t> target, std::size_t codomain_size)
      : target_(std::move(target)), codomain_size_(codomain_size) {
    std::vector<char> hit(codomain_size_, 0);
    injective_ = true;
    for (std::size_t i = 0; i < target_.size(); ++i) {
      if (target_[i] >= codomain_size_) {
        throw Error(ErrorKind::InvalidMapping, "domain index " + std::to_string(i) +
                                                   " maps to " + std::to_string(target_[i]) +
                                                   ", codomain has " +
                                                   std::to_string(codomain_size_) + " points");
      }
      if (hit[target_[i]]) injective_ = false;
      hit[target_[i]] = 1;
    }
  }

  static SetMapping identity(std::size_t n) {
    std::vector<std::size_t> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = i;
    return SetMapping(std::move(t), n);
  }

  /// The inclusion of a subset given by its ambient indices.
  static SetMapping inclusion(std::vector<std::size_t> subset, std::size_t ambient_size) {
    return SetMapping(std::move(subset), ambient_size);
  }

  std::size_t domain_size() const noexcept { return target_.size(); }
  std::size_t codomain_size() const noexcept { return codomain_size_; }
  bool injective() const noexcept { return injective_; }
  std::size_t operator[](std::size_t i) const noexcept { return target_[i]; }
  const std::vector<std::size_t>& targets() const noexcept { return target_; }

  /// The induced linear map f0 on the free vector spaces.
  BasisMap basis_map() const { return BasisMap{codomain_size_, target_}; }

 private:
  std::vector<std::size_t> target_;
  std::size_t codomain_size_ = 0;
  bool injective_ = true;
};

/// d_Z(f(x), f(y)) <= d_X(x, y) for all pairs.
inline bool is_non_expansive(const FiniteMetricSpace& x, const FiniteMetricSpace& z,
                             const SetMapping& m) {
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (z(m[i], m[j]) > x(i, j)) return false;
  return true;
}

/// The block function between the two barcodes (cells keyed by (a, b) with a
/// a domain death and b a codomain death) together with the deficiency N(b).
/// Only nonzero cells are stored; the deficiency has one entry per codomain
/// death value, zero entries included.
struct BlockFunction {
  std::map<std::pair<double, double>, std::size_t> cells;
  std::map<double, std::size_t> deficiency;

  std::size_t cell(double a, double b) const {
    auto it = cells.find({a, b});
    return it == cells.end() ? 0 : it->second;
  }

  friend bool operator==(const BlockFunction&, const BlockFunction&) = default;
};

/// Multiset of points (a, b); a is a finite death or kInfinity.
struct MatchingDiagram {
  std::map<std::pair<double, double>, std::size_t> points;

  std::size_t total() const noexcept {
    std::size_t t = 0;
    for (const auto& [_, m] : points) t += m;
    return t;
  }

  friend bool operator==(const MatchingDiagram&, const MatchingDiagram&) = default;
};

// ---------------------------------------------------------------------------
// Kernel subspaces

/// ker+_a: kernel of <X> -> H0(VR_a(X)).
inline Gf2Subspace kernel_plus(const Filtration& f, double a) {
  return subspace_from_partition(f.components_at(a, false), f.size());
}

/// ker-_a: union of the kernels at scales r < a.
inline Gf2Subspace kernel_minus(const Filtration& f, double a) {
  return subspace_from_partition(f.components_at(a, true), f.size());
}

inline Gf2Subspace kernel_plus(const FiniteMetricSpace& space, double a) {
  return kernel_plus(Filtration(space), a);
}

inline Gf2Subspace kernel_minus(const FiniteMetricSpace& space, double a) {
  return kernel_minus(Filtration(space), a);
}

namespace detail {

inline void require_compatible(const Filtration& fx, const Filtration& fz, const SetMapping& m) {
  if (m.domain_size() != fx.size() || m.codomain_size() != fz.size()) {
    throw Error(ErrorKind::InvalidMapping,
                "mapping is " + std::to_string(m.domain_size()) + " -> " +
                    std::to_string(m.codomain_size()) + " but spaces have " +
                    std::to_string(fx.size()) + " and " + std::to_string(fz.size()) + " points");
  }
}

/// dim( A+ cap B+ / (A- cap B+ + A+ cap B-) ), with the containment of the
/// denominator in the numerator checked.
inline std::size_t quotient_dimension(const Gf2Subspace& am, const Gf2Subspace& ap,
                                      const Gf2Subspace& bm, const Gf2Subspace& bp) {
  const Gf2Subspace numerator = intersection(ap, bp);
  const Gf2Subspace denominator = sum(intersection(am, bp), intersection(ap, bm));
  if (!contains(numerator, denominator)) {
    throw Error(ErrorKind::InternalInvariantViolation, "denominator not inside numerator");
  }
  return numerator.dim() - denominator.dim();
}

/// dim( (A+ + B-) cap (A- + B+) ) - dim(A- + B-).
inline std::size_t quotient_dimension_alt(const Gf2Subspace& am, const Gf2Subspace& ap,
                                          const Gf2Subspace& bm, const Gf2Subspace& bp) {
  const Gf2Subspace top = intersection(sum(ap, bm), sum(am, bp));
  const Gf2Subspace bottom = sum(am, bm);
  if (!contains(top, bottom)) {
    throw Error(ErrorKind::InternalInvariantViolation, "A- + B- not inside the intersection");
  }
  return top.dim() - bottom.dim();
}

struct FourSubspaces {
  Gf2Subspace am, ap, bm, bp;
};

inline FourSubspaces four_subspaces(const Filtration& fx, const Filtration& fz,
                                    const SetMapping& m, double a, double b) {
  require_compatible(fx, fz, m);
  const BasisMap f0 = m.basis_map();
  return {apply_map(f0, kernel_minus(fx, a)), apply_map(f0, kernel_plus(fx, a)),
          kernel_minus(fz, b), kernel_plus(fz, b)};
}

}  // namespace detail

/// Block function value at (a, b) by the quotient of intersections of the
/// pushed-forward domain kernels with the codomain kernels.
inline std::size_t block_value(const Filtration& fx, const Filtration& fz, const SetMapping& m,
                               double a, double b) {
  const auto s = detail::four_subspaces(fx, fz, m, a, b);
  return detail::quotient_dimension(s.am, s.ap, s.bm, s.bp);
}

/// Same quantity through the (A+ + B-) cap (A- + B+) form.
inline std::size_t block_value_alt(const Filtration& fx, const Filtration& fz,
                                   const SetMapping& m, double a, double b) {
  const auto s = detail::four_subspaces(fx, fz, m, a, b);
  return detail::quotient_dimension_alt(s.am, s.ap, s.bm, s.bp);
}

inline std::size_t block_value(const FiniteMetricSpace& x, const FiniteMetricSpace& z,
                               const SetMapping& m, double a, double b) {
  return block_value(Filtration(x), Filtration(z), m, a, b);
}

inline std::size_t block_value_alt(const FiniteMetricSpace& x, const FiniteMetricSpace& z,
                                   const SetMapping& m, double a, double b) {
  return block_value_alt(Filtration(x), Filtration(z), m, a, b);
}

/// Fills in the deficiency from the cells and checks N(b) >= 0.
inline void complete_deficiency(BlockFunction& bf, const Filtration& fz) {
  for (const auto& level : fz.levels()) bf.deficiency[level.value] = level.mult;
  for (const auto& [key, mult] : bf.cells) {
    auto it = bf.deficiency.find(key.second);
    if (it == bf.deficiency.end()) {
      throw Error(ErrorKind::InternalInvariantViolation, "cell at a non-death codomain value");
    }
    if (it->second < mult) {
      throw Error(ErrorKind::NegativeDeficiency,
                  "cells at b exceed the codomain multiplicity m^U(b)");
    }
    it->second -= mult;
  }
}

enum class BlockEngine {
  /// Component counts of joined partitions, swept over the codomain levels.
  ComponentSweep,
  /// Explicit GF(2) subspaces, numerator/denominator form.
  Subspace,
  /// Explicit GF(2) subspaces, (A+ + B-) cap (A- + B+) form.
  SubspaceAlt,
};

namespace detail {

/// For partition kernels dim(ker P + ker Q) = n - #blocks(P v Q), so every
/// intersection dimension in the quotient reduces to component counts of
/// f(VR_s(X)) u VR_t(Z). Writing C(s, t) for that count, the block value is
/// C(a+, b+) + C(a-, b-) - C(a-, b+) - C(a+, b-). One sweep per domain level
/// produces a full row of C.
inline BlockFunction block_function_sweep(const Filtration& fx, const Filtration& fz,
                                          const SetMapping& m) {
  const std::size_t nz = fz.size();
  const auto& xl = fx.levels();
  const auto& zl = fz.levels();
  const std::size_t rows = zl.size() + 1;

  auto sweep = [&](std::size_t through_level, std::vector<std::size_t>& row) {
    UnionFind uf(nz);
    for (std::size_t k = 0; k < through_level; ++k)
      for (const auto& e : fx.level_edges(k))
        uf.unite(static_cast<std::uint32_t>(m[e.u]), static_cast<std::uint32_t>(m[e.v]));
    row[0] = uf.components();
    for (std::size_t j = 0; j < zl.size(); ++j) {
      for (const auto& e : fz.level_edges(j)) uf.unite(e.u, e.v);
      row[j + 1] = uf.components();
    }
  };

  BlockFunction bf;
  std::vector<std::size_t> prev(rows), cur(rows);
  sweep(0, prev);
  for (std::size_t k = 0; k < xl.size(); ++k) {
    sweep(k + 1, cur);
    for (std::size_t j = 1; j < rows; ++j) {
      const auto value = static_cast<long long>(cur[j] + prev[j - 1]) -
                         static_cast<long long>(prev[j] + cur[j - 1]);
      if (value < 0) {
        throw Error(ErrorKind::InternalInvariantViolation, "negative block value");
      }
      if (value > 0) bf.cells[{xl[k].value, zl[j - 1].value}] = static_cast<std::size_t>(value);
    }
    std::swap(prev, cur);
  }
  return bf;
}

inline BlockFunction block_function_subspace(const Filtration& fx, const Filtration& fz,
                                             const SetMapping& m, bool alternative) {
  const BasisMap f0 = m.basis_map();
  const auto& xl = fx.levels();
  const auto& zl = fz.levels();
  // a_plus[k] is f0(ker+) through level k; a_plus[0] is the zero subspace.
  std::vector<Gf2Subspace> a_plus{Gf2Subspace(fz.size())};
  for (const auto& level : xl) a_plus.push_back(apply_map(f0, kernel_plus(fx, level.value)));
  std::vector<Gf2Subspace> b_plus{Gf2Subspace(fz.size())};
  for (const auto& level : zl) b_plus.push_back(kernel_plus(fz, level.value));

  BlockFunction bf;
  for (std::size_t k = 1; k < a_plus.size(); ++k)
    for (std::size_t j = 1; j < b_plus.size(); ++j) {
      const std::size_t value =
          alternative
              ? quotient_dimension_alt(a_plus[k - 1], a_plus[k], b_plus[j - 1], b_plus[j])
              : quotient_dimension(a_plus[k - 1], a_plus[k], b_plus[j - 1], b_plus[j]);
      if (value > 0) bf.cells[{xl[k - 1].value, zl[j - 1].value}] = value;
    }
  return bf;
}

}  // namespace detail

/// The block function over the grid of domain deaths x codomain deaths.
/// Between consecutive deaths every kernel subspace is constant, so no other
/// (a, b) can carry a nonzero value.
inline BlockFunction block_function(const Filtration& fx, const Filtration& fz,
                                    const SetMapping& m,
                                    BlockEngine engine = BlockEngine::ComponentSweep) {
  detail::require_compatible(fx, fz, m);
  BlockFunction bf = engine == BlockEngine::ComponentSweep
                         ? detail::block_function_sweep(fx, fz, m)
                         : detail::block_function_subspace(fx, fz, m,
                                                           engine == BlockEngine::SubspaceAlt);
  complete_deficiency(bf, fz);
  return bf;
}

inline BlockFunction block_function(const FiniteMetricSpace& x, const FiniteMetricSpace& z,
                                    const SetMapping& m,
                                    BlockEngine engine = BlockEngine::ComponentSweep) {
  return block_function(Filtration(x), Filtration(z), m, engine);
}

/// Finite cells plus (inf, b) points carrying the nonzero deficiencies.
inline MatchingDiagram matching_diagram(const BlockFunction& bf) {
  MatchingDiagram d;
  d.points = bf.cells;
  for (const auto& [b, n] : bf.deficiency)
    if (n > 0) d.points[{kInfinity, b}] = n;
  return d;
}

}  // namespace pmd
