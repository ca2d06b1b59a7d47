#include <gtest/gtest.h>

#include <random>

#include "pmd/decomposition.hpp"
#include "support.hpp"

namespace pmd {
namespace {

using testing::k2Sqrt2;
using testing::kSqrt2;
using Ladder = LadderDecomposition::Ladder;
using Birth = LadderDecomposition::Birth;

struct Computed {
  Barcode bv, bu;
  BlockFunction bf;
};

Computed compute(const testing::Fixture& f) {
  return {barcode0(f.x), barcode0(f.z), block_function(f.x, f.z, f.m)};
}

TEST(LadderDecomposition, Staircase) {
  auto c = compute(testing::staircase());
  auto d = ladder_decomposition(c.bf, c.bv, c.bu);
  EXPECT_EQ(d.ladders, (std::vector<Ladder>{{2.0, kSqrt2, 2}, {k2Sqrt2, kSqrt2, 1}}));
  EXPECT_EQ(d.births_only, (std::vector<Birth>{{kSqrt2, 2}, {k2Sqrt2, 1}}));
  EXPECT_TRUE(d.has_infinite);
}

TEST(LadderDecomposition, Identity) {
  auto z = testing::staircase().z;
  auto bc = barcode0(z);
  auto d = ladder_decomposition(block_function(z, z, SetMapping::identity(7)), bc, bc);
  EXPECT_EQ(d.ladders, (std::vector<Ladder>{{kSqrt2, kSqrt2, 5}, {k2Sqrt2, k2Sqrt2, 1}}));
  EXPECT_TRUE(d.births_only.empty());
}

TEST(LadderDecomposition, LineMap) {
  auto c = compute(testing::line_map());
  auto d = ladder_decomposition(c.bf, c.bv, c.bu);
  EXPECT_EQ(d.ladders, (std::vector<Ladder>{{0.5, 1.0, 1}, {0.5, 2.0, 1}}));
  EXPECT_TRUE(d.births_only.empty());
  EXPECT_TRUE(d.has_infinite);
}

TEST(LadderDecomposition, RejectsUnmatchedDomainBars) {
  // Two domain points collapsed onto one codomain point.
  auto x = FiniteMetricSpace::from_points({{0}, {1}});
  auto z = FiniteMetricSpace::from_points({{0}});
  SetMapping m({0, 0}, 1);
  try {
    ladder_decomposition(block_function(x, z, m), barcode0(x), barcode0(z));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInjectiveDecomposable);
  }
}

TEST(DerivedBarcodes, Staircase) {
  auto c = compute(testing::staircase());
  EXPECT_EQ(kernel_barcode(c.bf).intervals,
            (std::vector<IntervalBarcode::Interval>{{kSqrt2, 2.0, 2}, {kSqrt2, k2Sqrt2, 1}}));
  auto image = image_barcode(c.bf);
  EXPECT_EQ(image.deaths, (std::vector<Barcode::Bar>{{kSqrt2, 3}}));
  EXPECT_EQ(image.infinite_bars, 1u);
  auto cokernel = cokernel_barcode(c.bf);
  EXPECT_EQ(cokernel.deaths, (std::vector<Barcode::Bar>{{kSqrt2, 2}, {k2Sqrt2, 1}}));
  EXPECT_EQ(cokernel.infinite_bars, 0u);
}

TEST(DerivedBarcodes, IdentityAndLineMap) {
  auto z = testing::staircase().z;
  auto bf = block_function(z, z, SetMapping::identity(7));
  EXPECT_TRUE(kernel_barcode(bf).intervals.empty());
  EXPECT_EQ(image_barcode(bf), barcode0(z));
  EXPECT_TRUE(cokernel_barcode(bf).deaths.empty());

  auto c = compute(testing::line_map());
  EXPECT_TRUE(kernel_barcode(c.bf).intervals.empty());
  EXPECT_EQ(image_barcode(c.bf).deaths, (std::vector<Barcode::Bar>{{1.0, 1}, {2.0, 1}}));
  EXPECT_TRUE(cokernel_barcode(c.bf).deaths.empty());
}

TEST(InducedMatching, Staircase) {
  auto c = compute(testing::staircase());
  auto m = induced_matching(c.bf, c.bv, c.bu);
  EXPECT_EQ(m.pairs.size(), 3u);
  EXPECT_TRUE(m.unmatched_domain.empty());
  EXPECT_EQ(m.unmatched_codomain.size(), 3u);
  EXPECT_EQ(m.pairs[0].first, (Representative{2.0, 1}));
  EXPECT_EQ(m.pairs[0].second, (Representative{kSqrt2, 1}));
  EXPECT_EQ(m.pairs[2].second, (Representative{kSqrt2, 3}));
  EXPECT_EQ(m.unmatched_codomain[0], (Representative{kSqrt2, 4}));
  EXPECT_EQ(m.unmatched_codomain[2], (Representative{k2Sqrt2, 1}));
}

TEST(InducedMatching, IdentityAndLineMap) {
  auto z = testing::staircase().z;
  auto bc = barcode0(z);
  auto m = induced_matching(block_function(z, z, SetMapping::identity(7)), bc, bc);
  for (const auto& [p, q] : m.pairs) EXPECT_EQ(p, q);
  EXPECT_EQ(m.pairs.size(), 6u);

  auto c = compute(testing::line_map());
  auto lm = induced_matching(c.bf, c.bv, c.bu);
  ASSERT_EQ(lm.pairs.size(), 2u);
  for (const auto& [p, q] : lm.pairs) EXPECT_LT(p.value, q.value);
}

TEST(InducedMatching, RejectsOverfullCells) {
  BlockFunction bf;
  bf.cells[{1.0, 1.0}] = 2;
  Barcode one;
  one.deaths = {{1.0, 1}};
  EXPECT_THROW(induced_matching(bf, one, one), Error);
}

TEST(DiagramFromParts, RoundTrips) {
  auto c = compute(testing::staircase());
  EXPECT_EQ(diagram_from_parts(kernel_barcode(c.bf), c.bv, cokernel_barcode(c.bf)),
            matching_diagram(c.bf));

  auto bv = barcode0(testing::staircase().z);
  auto d = diagram_from_parts({}, bv, {});
  EXPECT_EQ(d.points, (std::map<std::pair<double, double>, std::size_t>{
                          {{kSqrt2, kSqrt2}, 5}, {{k2Sqrt2, k2Sqrt2}, 1}}));

  std::mt19937_64 rng(12);
  for (std::size_t i = 0; i < 60; i += 3) {
    auto inst = testing::random_instance(rng, i);
    auto bf = block_function(inst.x, inst.z, inst.m);
    EXPECT_EQ(diagram_from_parts(kernel_barcode(bf), barcode0(inst.x), cokernel_barcode(bf)),
              matching_diagram(bf));
  }
}

TEST(DiagramFromParts, RejectsInconsistentParts) {
  IntervalBarcode kernel;
  kernel.intervals = {{1.0, 3.0, 2}};
  Barcode bv;
  bv.deaths = {{3.0, 1}};
  EXPECT_THROW(diagram_from_parts(kernel, bv, {}), Error);
  kernel.intervals = {{3.0, 3.0, 1}};
  EXPECT_THROW(diagram_from_parts(kernel, bv, {}), Error);
}

TEST(LadderDecomposition, MarginalsAndKernelRecovery) {
  std::mt19937_64 rng(13);
  for (std::size_t i = 0; i < 120; ++i) {
    auto inst = testing::random_instance(rng, i);
    const auto bf = block_function(inst.x, inst.z, inst.m);
    const auto bv = barcode0(inst.x), bu = barcode0(inst.z);
    const auto kernel = kernel_barcode(bf);
    const auto image = image_barcode(bf), cokernel = cokernel_barcode(bf);
    std::size_t above = 0;
    for (const auto& [key, m] : bf.cells) above += key.first > key.second ? m : 0;
    EXPECT_EQ(kernel.count(), above);
    for (const auto& bar : bu.deaths)
      EXPECT_EQ(image.multiplicity(bar.death) + cokernel.multiplicity(bar.death), bar.mult);
    if (!inst.m.injective()) continue;

    const auto d = ladder_decomposition(bf, bv, bu);
    std::map<double, std::size_t> domain, codomain;
    for (const auto& l : d.ladders) {
      domain[l.a] += l.mult;
      codomain[l.b] += l.mult;
    }
    for (const auto& b : d.births_only) codomain[b.b] += b.mult;
    for (const auto& bar : bv.deaths) EXPECT_EQ(domain[bar.death], bar.mult);
    for (const auto& bar : bu.deaths) EXPECT_EQ(codomain[bar.death], bar.mult);
    EXPECT_TRUE(d.has_infinite);

    for (const auto& [key, m] : bf.cells) {
      const auto [a, b] = key;
      if (a > b) {
        std::size_t from_kernel = 0;
        for (const auto& iv : kernel.intervals)
          if (iv.birth == b && iv.death == a) from_kernel = iv.mult;
        EXPECT_EQ(m, from_kernel);
      }
    }
    if (inst.kind == testing::MappingKind::Inclusion)
      for (const auto& bar : bv.deaths) {
        std::size_t below = 0;
        for (const auto& iv : kernel.intervals)
          if (iv.death == bar.death) below += iv.mult;
        EXPECT_EQ(bf.cell(bar.death, bar.death), bar.mult - below);
      }
  }
}

}  // namespace
}  // namespace pmd
