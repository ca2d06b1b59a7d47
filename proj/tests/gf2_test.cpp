#include <gtest/gtest.h>

#include <random>

#include "pmd/gf2.hpp"
#include "support.hpp"

namespace pmd {
namespace {

BitVector vec(std::size_t n, std::initializer_list<std::size_t> ones) {
  BitVector v(n);
  for (auto i : ones) v.set(i);
  return v;
}

Gf2Subspace span(std::size_t n, std::initializer_list<std::initializer_list<std::size_t>> rows) {
  std::vector<BitVector> gens;
  for (auto r : rows) gens.push_back(vec(n, r));
  return Gf2Subspace::span(n, gens);
}

testing::Mask to_mask(const BitVector& v) {
  testing::Mask m = 0;
  for (std::size_t i = 0; i < v.bits(); ++i)
    if (v.test(i)) m |= testing::Mask(1) << i;
  return m;
}

BitVector from_mask(std::size_t n, testing::Mask m) {
  BitVector v(n);
  for (std::size_t i = 0; i < n; ++i)
    if (m >> i & 1) v.set(i);
  return v;
}

TEST(PartitionKernel, Dimensions) {
  Partition discrete{{0, 1, 2, 3}};
  EXPECT_EQ(subspace_from_partition(discrete, 4).dim(), 0u);
  Partition merged{{0, 0, 0, 0}};
  EXPECT_EQ(subspace_from_partition(merged, 4).dim(), 3u);
  auto z = testing::staircase().z;
  EXPECT_EQ(subspace_from_partition(components_at(z, testing::kSqrt2, false), 7).dim(), 5u);
  EXPECT_THROW(subspace_from_partition(discrete, 5), Error);
}

TEST(Gf2Sum, Examples) {
  auto a = span(3, {{0, 1}});
  Gf2Subspace zero(3);
  EXPECT_EQ(sum(a, zero).dim(), 1u);
  EXPECT_EQ(sum(a, a), a);
  EXPECT_EQ(dim_sum(span(3, {{0, 1}}), span(3, {{1, 2}})), 2u);
  EXPECT_THROW(sum(a, Gf2Subspace(4)), Error);
}

TEST(Gf2Intersection, Examples) {
  auto a = span(3, {{0, 1}, {1, 2}});
  Gf2Subspace zero(3);
  EXPECT_EQ(intersection(a, a), a);
  EXPECT_EQ(intersection(a, zero).dim(), 0u);
  EXPECT_EQ(dim_intersection(a, span(3, {{0, 2}})), 1u);
  EXPECT_EQ(intersection(a, span(3, {{0, 2}})), span(3, {{0, 2}}));
}

TEST(Gf2Contains, Examples) {
  auto a = span(3, {{0, 1}, {1, 2}});
  Gf2Subspace zero(3);
  EXPECT_TRUE(contains(a, zero));
  EXPECT_FALSE(contains(zero, a));
  EXPECT_TRUE(contains(a, span(3, {{0, 2}})));
  EXPECT_FALSE(contains(a, span(3, {{0}})));
}

TEST(Gf2, CanonicalFormIgnoresGeneratorOrder) {
  EXPECT_EQ(span(4, {{0, 1}, {1, 2}, {2, 3}}), span(4, {{2, 3}, {0, 3}, {1, 3}}));
  EXPECT_THROW(Gf2Subspace(3).insert(BitVector(4)), Error);
}

TEST(Gf2, RandomSubspacesAgainstEnumeration) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    auto random_space = [&] {
      std::vector<BitVector> gens;
      const std::size_t k = rng() % (n + 1);
      for (std::size_t i = 0; i < k; ++i) gens.push_back(from_mask(n, rng() & ((1u << n) - 1)));
      return Gf2Subspace::span(n, gens);
    };
    auto a = random_space(), b = random_space();
    testing::MaskSpace ma, mb;
    for (const auto& r : a.basis()) ma.add(to_mask(r));
    for (const auto& r : b.basis()) mb.add(to_mask(r));
    std::size_t both = 0;
    testing::MaskSpace joint;
    for (testing::Mask v = 0; v < (testing::Mask(1) << n); ++v) {
      const bool in_a = ma.contains(v), in_b = mb.contains(v);
      EXPECT_EQ(a.contains(from_mask(n, v)), in_a);
      if (in_a && in_b) ++both;
      if (in_a || in_b) joint.add(v);
    }
    const auto cap = intersection(a, b);
    EXPECT_EQ(std::size_t(1) << cap.dim(), both);
    EXPECT_EQ(sum(a, b).dim(), joint.dim());
    EXPECT_TRUE(contains(a, cap));
    EXPECT_TRUE(contains(b, cap));
    EXPECT_TRUE(contains(sum(a, b), a));
    // Modular law: dim(A + B) + dim(A n B) = dim A + dim B.
    EXPECT_EQ(sum(a, b).dim() + cap.dim(), a.dim() + b.dim());
  }
}

TEST(BasisMap, ApplyAndCompose) {
  auto a = span(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(apply_map(BasisMap::identity(3), a), a);
  BasisMap collapse{2, {0, 0, 1}};
  EXPECT_EQ(apply_map(collapse, span(3, {{0, 1}})).dim(), 0u);

  auto x = testing::staircase().x;
  auto kernel = subspace_from_partition(components_at(x, 2.0, false), 4);
  BasisMap inclusion{7, {0, 1, 2, 3}};
  EXPECT_EQ(apply_map(inclusion, kernel), span(7, {{0, 1}, {1, 2}}));

  BasisMap swap{3, {1, 0, 2}};
  EXPECT_EQ(compose(swap, swap).image, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_THROW(compose(collapse, collapse), Error);
  EXPECT_THROW(apply_map(collapse, Gf2Subspace(4)), Error);
}

TEST(Gf2, ReductionIsIdempotentAndMapsCompose) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    std::vector<BitVector> gens;
    for (int k = 0; k < 4; ++k) gens.push_back(from_mask(n, rng() & ((1u << n) - 1)));
    const auto s = Gf2Subspace::span(n, gens);
    EXPECT_EQ(Gf2Subspace::span(n, s.basis()), s);
    for (const auto& row : s.basis()) EXPECT_EQ(s.reduce(s.reduce(row)), s.reduce(row));

    BasisMap f{n, std::vector<std::size_t>(n)}, g{n, std::vector<std::size_t>(n)};
    for (auto& t : f.image) t = rng() % n;
    for (auto& t : g.image) t = rng() % n;
    EXPECT_EQ(apply_map(compose(g, f), s), apply_map(g, apply_map(f, s)));
  }
}

}  // namespace
}  // namespace pmd
