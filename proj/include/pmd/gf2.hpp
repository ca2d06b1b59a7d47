#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pmd/error.hpp"
#include "pmd/filtration.hpp"

namespace pmd {

/// Dense bit-vector over GF(2), packed in 64-bit words.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t bits() const noexcept { return bits_; }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

  BitVector& operator^=(const BitVector& other) noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }

  /// Index of the lowest set bit, or bits() when zero.
  std::size_t lowest() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return bits_;
  }

  bool none() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// e_i + e_j as a bit-vector (zero when i == j).
inline BitVector pair_vector(std::size_t bits, std::size_t i, std::size_t j) {
  BitVector v(bits);
  v.flip(i);
  v.flip(j);
  return v;
}

/// A linear subspace of GF(2)^n kept in reduced row-echelon form: rows are
/// sorted by pivot (their lowest set bit) and every pivot column is zero in
/// all other rows. The form is canonical, so equality is row equality.
class Gf2Subspace {
 public:
  Gf2Subspace() = default;
  explicit Gf2Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

  static Gf2Subspace span(std::size_t ambient_dim, const std::vector<BitVector>& generators) {
    Gf2Subspace s(ambient_dim);
    for (const auto& g : generators) s.insert(g);
    return s;
  }

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  const std::vector<BitVector>& basis() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Reduces v against the basis; the result is zero iff v is in the span.
  BitVector reduce(BitVector v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (v.test(pivots_[r])) v ^= rows_[r];
    return v;
  }

  bool contains(const BitVector& v) const { return reduce(v).none(); }

  /// Adds v to the spanning set; returns true when the dimension grew.
  bool insert(const BitVector& v) {
    if (v.bits() != ambient_) {
      throw Error(ErrorKind::AmbientMismatch, "vector of length " + std::to_string(v.bits()) +
                                                  " in ambient " + std::to_string(ambient_));
    }
    BitVector reduced = reduce(v);
    const std::size_t pivot = reduced.lowest();
    if (pivot == ambient_) return false;
    for (auto& row : rows_)
      if (row.test(pivot)) row ^= reduced;
    const auto pos = static_cast<std::size_t>(
        std::lower_bound(pivots_.begin(), pivots_.end(), pivot) - pivots_.begin());
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(reduced));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), pivot);
    return true;
  }

  friend bool operator==(const Gf2Subspace&, const Gf2Subspace&) = default;

 private:
  std::size_t ambient_ = 0;
  std::vector<BitVector> rows_;
  std::vector<std::size_t> pivots_;
};

namespace detail {
inline void require_same_ambient(const Gf2Subspace& a, const Gf2Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorKind::AmbientMismatch, "ambient dimensions " +
                                                std::to_string(a.ambient_dim()) + " and " +
                                                std::to_string(b.ambient_dim()));
  }
}
}  // namespace detail

/// Kernel of the map <points> -> <blocks>: spanned by e_x + e_rep(x) for
/// every non-representative x.
inline Gf2Subspace subspace_from_partition(const Partition& p, std::size_t ambient_dim) {
  if (p.size() != ambient_dim) {
    throw Error(ErrorKind::AmbientMismatch, "partition of " + std::to_string(p.size()) +
                                                " points in ambient " +
                                                std::to_string(ambient_dim));
  }
  Gf2Subspace s(ambient_dim);
  for (std::size_t x = 0; x < p.size(); ++x)
    if (p.labels[x] != x) s.insert(pair_vector(ambient_dim, x, p.labels[x]));
  return s;
}

inline Gf2Subspace sum(const Gf2Subspace& a, const Gf2Subspace& b) {
  detail::require_same_ambient(a, b);
  Gf2Subspace s = a;
  for (const auto& row : b.basis()) s.insert(row);
  return s;
}

/// Explicit intersection basis by the Zassenhaus method: reduce the rows
/// [u | u] for u in a and [v | 0] for v in b over GF(2)^{2n}; the rows whose
/// left half vanishes carry a basis of the intersection in their right half.
inline Gf2Subspace intersection(const Gf2Subspace& a, const Gf2Subspace& b) {
  detail::require_same_ambient(a, b);
  const std::size_t n = a.ambient_dim();
  Gf2Subspace stacked(2 * n);
  for (const auto& u : a.basis()) {
    BitVector row(2 * n);
    for (std::size_t i = 0; i < n; ++i)
      if (u.test(i)) {
        row.set(i);
        row.set(n + i);
      }
    stacked.insert(row);
  }
  for (const auto& v : b.basis()) {
    BitVector row(2 * n);
    for (std::size_t i = 0; i < n; ++i)
      if (v.test(i)) row.set(i);
    stacked.insert(row);
  }
  Gf2Subspace out(n);
  for (std::size_t r = 0; r < stacked.dim(); ++r) {
    if (stacked.pivots()[r] < n) continue;
    const auto& row = stacked.basis()[r];
    BitVector right(n);
    for (std::size_t i = 0; i < n; ++i)
      if (row.test(n + i)) right.set(i);
    out.insert(right);
  }
  return out;
}

inline std::size_t dim_sum(const Gf2Subspace& a, const Gf2Subspace& b) { return sum(a, b).dim(); }

/// dim(A) + dim(B) - dim(A + B).
inline std::size_t dim_intersection(const Gf2Subspace& a, const Gf2Subspace& b) {
  return a.dim() + b.dim() - dim_sum(a, b);
}

/// Whether b is a subspace of a.
inline bool contains(const Gf2Subspace& a, const Gf2Subspace& b) {
  detail::require_same_ambient(a, b);
  return std::all_of(b.basis().begin(), b.basis().end(),
                     [&](const BitVector& row) { return a.contains(row); });
}

/// Linear map GF(2)^source -> GF(2)^target sending e_i to e_{image[i]}.
struct BasisMap {
  std::size_t target_dim = 0;
  std::vector<std::size_t> image;

  std::size_t source_dim() const noexcept { return image.size(); }

  static BasisMap identity(std::size_t n) {
    BasisMap m{n, std::vector<std::size_t>(n)};
    for (std::size_t i = 0; i < n; ++i) m.image[i] = i;
    return m;
  }

  /// (g after f)
  friend BasisMap compose(const BasisMap& g, const BasisMap& f) {
    if (f.target_dim != g.source_dim()) {
      throw Error(ErrorKind::AmbientMismatch, "cannot compose maps: " +
                                                  std::to_string(f.target_dim) + " != " +
                                                  std::to_string(g.source_dim()));
    }
    BasisMap out{g.target_dim, std::vector<std::size_t>(f.image.size())};
    for (std::size_t i = 0; i < f.image.size(); ++i) out.image[i] = g.image[f.image[i]];
    return out;
  }
};

inline BitVector apply_map(const BasisMap& map, const BitVector& v) {
  BitVector out(map.target_dim);
  for (std::size_t i = 0; i < v.bits(); ++i)
    if (v.test(i)) out.flip(map.image[i]);
  return out;
}

/// Span of the images of the basis of s.
inline Gf2Subspace apply_map(const BasisMap& map, const Gf2Subspace& s) {
  if (s.ambient_dim() != map.source_dim()) {
    throw Error(ErrorKind::AmbientMismatch, "map from dimension " +
                                                std::to_string(map.source_dim()) +
                                                " applied to subspace of ambient " +
                                                std::to_string(s.ambient_dim()));
  }
  for (std::size_t t : map.image)
    if (t >= map.target_dim)
      throw Error(ErrorKind::IndexOutOfRange, "map image outside target dimension");
  Gf2Subspace out(map.target_dim);
  for (const auto& row : s.basis()) out.insert(apply_map(map, row));
  return out;
}

}  // namespace pmd
