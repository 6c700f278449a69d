#include <gtest/gtest.h>

#include "generators.hpp"
#include "polytile/errors.hpp"
#include "polytile/invariants.hpp"
#include "polytile/verify.hpp"
#include "support.hpp"

namespace polytile {
namespace {

using namespace testing;

std::map<FlagOrbitKey, Rational> summed(const HadwigerReport& a, const HadwigerReport& b) {
  auto out = a.entries;
  for (const auto& [k, v] : b.entries) out[k] += v;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

GroupElement random_element(Rng& rng, std::size_t d, int terms) {
  GroupElement g(d);
  for (int i = 0; i < terms; ++i) g.add(uniform(rng, 0, 1) ? uniform(rng, 1, 2) : -uniform(rng, 1, 2), random_simplex(rng, d, 4, 2));
  return g;
}

TEST(HadwigerAccumulate, Examples) {
  EXPECT_TRUE(hadwiger_accumulate(GroupElement::of(unit_cube(2)), Lattice::integer(2)).all_vanish());
  HadwigerReport tri = hadwiger_accumulate(GroupElement::of(unit_triangle()), Lattice::integer(2));
  EXPECT_FALSE(tri.all_vanish());
  bool has_edge_entry = false;
  for (const auto& [k, v] : tri.entries) has_edge_entry = has_edge_entry || k.direction.r == 1;
  EXPECT_TRUE(has_edge_entry);
  for (const auto& [k, v] : tri.entries) EXPECT_NE(v, 0);
}

TEST(HadwigerAccumulate, FundamentalDomainUnionsVanish) {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 3));
    Lattice l = random_lattice(rng, d);
    Polytope p = fundamental_domain_union(rng, l, static_cast<int>(uniform(rng, 1, 3)));
    EXPECT_TRUE(hadwiger_accumulate(GroupElement::of(p), l).all_vanish());
  }
}

TEST(HadwigerAccumulate, ThreadCountDoesNotChangeReport) {
  Rng rng(2);
  GroupElement g = random_element(rng, 3, 6);
  Lattice l = random_lattice(rng, 3);
  auto one = hadwiger_accumulate(g, l);
  auto four = hadwiger_accumulate(g, l, {4});
  EXPECT_EQ(one.entries, four.entries);
}

TEST(HadwigerAccumulate, DimensionMismatch) {
  EXPECT_THROW(hadwiger_accumulate(GroupElement::of(unit_triangle()), Lattice::integer(3)), DimensionMismatch);
}

TEST(HadwigerAccumulate, TranslationInvariant) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 3));
    Lattice l = random_lattice(rng, d);
    GroupElement g = random_element(rng, d, static_cast<int>(uniform(rng, 1, 3)));
    auto a = hadwiger_accumulate(g, l);
    auto b = hadwiger_accumulate(g.translated(random_lattice_point(rng, l, 6)), l);
    EXPECT_EQ(a.entries, b.entries);
  }
}

TEST(HadwigerAccumulate, Additive) {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 3));
    Lattice l = random_lattice(rng, d);
    GroupElement p = random_element(rng, d, static_cast<int>(uniform(rng, 1, 3)));
    GroupElement q = random_element(rng, d, static_cast<int>(uniform(rng, 1, 3)));
    EXPECT_EQ(hadwiger_accumulate(p + q, l).entries, summed(hadwiger_accumulate(p, l), hadwiger_accumulate(q, l)));
    EXPECT_TRUE(hadwiger_accumulate(p - p, l).all_vanish());
  }
}

// [σ] and the overlay of its pieces after a cut define the same function, so
// their reports agree.
TEST(HadwigerAccumulate, DependsOnlyOnTheIndicator) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = static_cast<std::size_t>(uniform(rng, 2, 3));
    Lattice l = random_lattice(rng, d);
    GroupElement g = random_element(rng, d, 2);
    EXPECT_EQ(hadwiger_accumulate(g, l).entries, hadwiger_accumulate(canonicalize(g), l).entries);
  }
}

TEST(HAtFlag, EdgeDirectionOfTheTriangle) {
  GroupElement tri = GroupElement::of(unit_triangle());
  Lattice z2 = Lattice::integer(2);
  FlagSpec hyp{{{V({1, 0}), M({V({-1, 1})})}}, {V({1, 1})}};
  EXPECT_EQ(h_at_flag(tri, hyp, z2), -1);
  hyp.positive_sides[0] = V({-1, -1});
  EXPECT_EQ(h_at_flag(tri, hyp, z2), 1);
  FlagSpec bottom{{{V({0, 0}), M({V({1, 0})})}}, {V({0, 1})}};
  // the bottom edge and nothing opposite: +1 (triangle lies above)
  EXPECT_EQ(h_at_flag(tri, bottom, z2), 1);
  FlagSpec elsewhere{{{V({0, Q("1/2")}), M({V({1, 0})})}}, {V({0, 1})}};
  EXPECT_EQ(h_at_flag(tri, elsewhere, z2), 0);
  FlagSpec tilted{{{V({0, 0}), M({V({1, 3})})}}, {V({1, 0})}};
  EXPECT_EQ(h_at_flag(tri, tilted, z2), 0);
}

// The 0-flag at a vertex with V_1 the x-axis: signed count over triangle
// vertices on that orbit with an edge along V_1. Each such vertex
// contributes +1 if the edge runs towards +x and −1 otherwise; the second
// sign is +1 as the triangle lies above the axis.
TEST(HAtFlag, VertexFlagSignedCount) {
  GroupElement tri = GroupElement::of(unit_triangle());
  auto spec = [](QVector at, QVector side0, QVector side1) {
    return FlagSpec{{{at, QMatrix(2)}, {at, M({V({1, 0})})}}, {side0, side1}};
  };
  Lattice z2 = Lattice::integer(2);
  EXPECT_EQ(h_at_flag(tri, spec(V({0, 0}), V({1, 0}), V({0, 1})), z2), 0);
  Lattice even = lattice({V({2, 0}), V({0, 2})});
  EXPECT_EQ(h_at_flag(tri, spec(V({0, 0}), V({1, 0}), V({0, 1})), even), 1);
  EXPECT_EQ(h_at_flag(tri, spec(V({1, 0}), V({1, 0}), V({0, 1})), even), -1);
  // flipping both orientations leaves the value unchanged
  EXPECT_EQ(h_at_flag(tri, spec(V({1, 0}), V({-1, 0}), V({0, -1})), even), -1);
  EXPECT_EQ(h_at_flag(tri, spec(V({1, 0}), V({-1, 0}), V({0, 1})), even), 1);
}

TEST(HAtFlag, MalformedFlags) {
  GroupElement tri = GroupElement::of(unit_triangle());
  Lattice z2 = Lattice::integer(2);
  FlagSpec wrong_dim{{{V({0, 0}), M({V({1, 0}), V({0, 1})})}}, {V({0, 1})}};
  EXPECT_THROW(h_at_flag(tri, wrong_dim, z2), InvalidFlag);
  FlagSpec not_nested{{{V({0, 0}), QMatrix(2)}, {V({0, 1}), M({V({1, 0})})}}, {V({1, 0}), V({0, 1})}};
  EXPECT_THROW(h_at_flag(tri, not_nested, z2), InvalidFlag);
  FlagSpec flat_side{{{V({0, 0}), M({V({1, 0})})}}, {V({2, 0})}};
  EXPECT_THROW(h_at_flag(tri, flat_side, z2), InvalidFlag);
  FlagSpec missing_side{{{V({0, 0}), M({V({1, 0})})}}, {}};
  EXPECT_THROW(h_at_flag(tri, missing_side, z2), InvalidFlag);
}

TEST(IsTiling, Examples) {
  for (std::size_t d = 1; d <= 3; ++d) {
    auto v = is_tiling(GroupElement::of(unit_cube(d)), Lattice::integer(d));
    EXPECT_TRUE(v.tiles);
    EXPECT_EQ(v.level, 1);
    EXPECT_FALSE(v.witness);
  }
  auto wide = is_tiling(GroupElement::of(box(V({0, 0}), V({2, 1}))), Lattice::integer(2));
  EXPECT_EQ(wide.level, 2);
  auto tri = is_tiling(GroupElement::of(unit_triangle()), Lattice::integer(2));
  EXPECT_FALSE(tri.tiles);
  EXPECT_FALSE(tri.level);
  ASSERT_TRUE(tri.witness);
  EXPECT_NE(tri.witness_value, 0);
  auto half = is_tiling(GroupElement::of(unit_cube(2)), lattice({V({1, 0}), V({Q("1/2"), Q("1/2")})}));
  EXPECT_TRUE(half.tiles);
  EXPECT_EQ(half.level, 2);
}

TEST(IsTiling, WitnessIsFirstSortedEntry) {
  Lattice z2 = Lattice::integer(2);
  GroupElement tri = GroupElement::of(unit_triangle());
  auto v = is_tiling(tri, z2);
  auto entries = sorted_entries(hadwiger_accumulate(tri, z2));
  ASSERT_FALSE(entries.empty());
  EXPECT_EQ(*v.witness, entries.front().first);
  EXPECT_EQ(v.witness_value, entries.front().second);
}

TEST(IsTiling, LevelOfFundamentalDomainUnions) {
  Rng rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 3));
    Lattice l = random_lattice(rng, d);
    const int k = static_cast<int>(uniform(rng, 1, 3));
    auto v = is_tiling(GroupElement::of(fundamental_domain_union(rng, l, k)), l);
    EXPECT_TRUE(v.tiles);
    EXPECT_EQ(v.level, k);
  }
}

TEST(Equidecomposable, Examples) {
  Lattice z1 = Lattice::integer(1);
  Polytope unit = box(V({0}), V({1}));
  EXPECT_TRUE(equidecomposable(unit, unit, z1));
  EXPECT_TRUE(equidecomposable(unit, box(V({Q("1/4")}), V({Q("5/4")})), z1));
  Polytope wedge(2, {S({V({0, 0}), V({2, 0}), V({0, 1})})});
  EXPECT_FALSE(equidecomposable(unit_cube(2), wedge, Lattice::integer(2)));
}

TEST(GroupEquivalent, Examples) {
  Lattice z2 = Lattice::integer(2);
  GroupElement a = GroupElement::of(unit_triangle());
  GroupElement moved = GroupElement::of(unit_triangle().translated(V({4, -1})));
  EXPECT_TRUE(group_equivalent(a, moved, z2));
  EXPECT_FALSE(group_equivalent(a, a + GroupElement::of(unit_cube(2)), z2));
  auto v = group_equivalence(a, a + GroupElement::of(unit_cube(2)), z2);
  EXPECT_FALSE(v.volumes_equal);
  EXPECT_TRUE(group_equivalent(a - moved, GroupElement(2), z2));
  EXPECT_FALSE(group_equivalent(a, GroupElement::of(unit_triangle().translated(V({Q("1/3"), 0}))), z2));
}

TEST(Equidecomposable, CutAndShiftPairsKeepTheLevel) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 3));
    Lattice l = random_lattice(rng, d);
    const int k = static_cast<int>(uniform(rng, 1, 2));
    Polytope b = fundamental_domain_union(rng, l, k);
    Polytope a = cut_and_shift(rng, b, l);
    ASSERT_TRUE(equidecomposable(a, b, l));
    auto vb = is_tiling(GroupElement::of(b), l);
    auto va = is_tiling(GroupElement::of(a), l);
    ASSERT_TRUE(vb.tiles);
    EXPECT_TRUE(va.tiles);
    EXPECT_EQ(va.level, vb.level);
  }
}

TEST(IsTiling, AgreesWithSampling) {
  Rng rng(8);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 3));
    Lattice l = random_lattice(rng, d);
    GroupElement g = trial % 2 ? GroupElement::of(fundamental_domain_union(rng, l, 2))
                               : GroupElement(d, {{1, random_simplex(rng, d, 4, 2)}});
    auto verdict = is_tiling(g, l);
    auto report = sample_tiling(g, l, 400, static_cast<std::uint64_t>(trial));
    EXPECT_EQ(verdict.tiles, report.constant);
    if (verdict.tiles) {
      EXPECT_EQ(verdict.level, report.level);
    }
  }
}

}  // namespace
}  // namespace polytile
