#include <gtest/gtest.h>

#include <map>
#include <set>

#include "generators.hpp"
#include "polytile/decomp.hpp"
#include "polytile/errors.hpp"
#include "polytile/invariants.hpp"
#include "support.hpp"

namespace polytile {
namespace {

using namespace testing;

// Piece volume per shift.
std::map<QVector, Rational> volume_by_shift(const DecompositionCertificate& cert) {
  std::map<QVector, Rational> out;
  for (const auto& p : cert.pieces) out[p.shift] += simplex_volume(p.simplex);
  return out;
}

std::pair<Rational, Rational> interval_of(const Simplex& s) {
  auto [lo, hi] = std::minmax(s.vertex(0)[0], s.vertex(1)[0]);
  return {lo, hi};
}

Polytope pieces_of(const DecompositionCertificate& cert, std::size_t d, bool shifted) {
  std::vector<Simplex> ss;
  for (const auto& p : cert.pieces) ss.push_back(shifted ? p.simplex.translated(p.shift) : p.simplex);
  return Polytope(d, std::move(ss), Polytope::Validation::kSkip);
}

// Volume bookkeeping plus indicator agreement at random points.
void expect_valid(const DecompositionCertificate& cert, const Polytope& a, const Polytope& b, const Lattice& l,
                  Rng& rng) {
  Rational total = 0;
  for (const auto& p : cert.pieces) {
    EXPECT_TRUE(contains(l, p.shift));
    EXPECT_EQ(p.coeff, 1);
    total += simplex_volume(p.simplex);
  }
  EXPECT_EQ(total, volume(a));
  const std::size_t d = a.dim();
  EXPECT_TRUE(same_indicator(GroupElement::of(pieces_of(cert, d, false)), GroupElement::of(a), rng, 300));
  EXPECT_TRUE(same_indicator(GroupElement::of(pieces_of(cert, d, true)), GroupElement::of(b), rng, 300));
}

TEST(OverlapSet, Examples) {
  EXPECT_EQ(overlap_set(unit_cube(2), unit_cube(2), Lattice::integer(2)), (std::vector<QVector>{V({0, 0})}));
  Lattice z1 = Lattice::integer(1);
  EXPECT_EQ(overlap_set(box(V({0}), V({1})), box(V({Q("1/4")}), V({Q("5/4")})), z1),
            (std::vector<QVector>{V({0}), V({1})}));
  EXPECT_TRUE(overlap_set(box(V({0}), V({Q("1/4")})), box(V({Q("1/2")}), V({Q("3/4")})), z1).empty());
}

// Every lattice vector in a wide window is classified by its overlap volume.
TEST(OverlapSet, MatchesIntersectionVolumes) {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    Lattice l = random_lattice(rng, 2);
    Polytope a(2, {random_simplex(rng, 2, 3, 2)});
    Polytope b(2, {random_simplex(rng, 2, 3, 2)});
    auto s = overlap_set(a, b, l);
    std::set<QVector> got(s.begin(), s.end());
    for (const auto& lam : s) EXPECT_GT(intersection_volume(a.simplices()[0], b.simplices()[0].translated(-lam)), 0);
    // every λ outside the result has zero overlap volume
    for (const auto& lam : enumerate_in_box(l, V({-20, -20}), V({20, 20})))
      if (!got.count(lam)) {
        EXPECT_EQ(intersection_volume(a.simplices()[0], b.simplices()[0].translated(-lam)), 0);
      }
  }
}

TEST(Equidecompose, IdenticalInputs) {
  Rng rng(2);
  Polytope a = unit_cube(2);
  auto cert = equidecompose(a, a, Lattice::integer(2));
  for (const auto& p : cert.pieces) EXPECT_EQ(p.shift, V({0, 0}));
  expect_valid(cert, a, a, Lattice::integer(2), rng);
}

TEST(Equidecompose, ShiftedUnitInterval) {
  Rng rng(3);
  Polytope a = box(V({0}), V({1})), b = box(V({Q("1/4")}), V({Q("5/4")}));
  auto cert = equidecompose(a, b, Lattice::integer(1));
  ASSERT_EQ(cert.pieces.size(), 2u);
  EXPECT_EQ(cert.pieces[0].shift, V({0}));
  EXPECT_EQ(interval_of(cert.pieces[0].simplex), std::make_pair(Q("1/4"), Q("1")));
  EXPECT_EQ(cert.pieces[1].shift, V({1}));
  EXPECT_EQ(interval_of(cert.pieces[1].simplex), std::make_pair(Q("0"), Q("1/4")));
  expect_valid(cert, a, b, Lattice::integer(1), rng);
}

TEST(Equidecompose, SquareAgainstSeparatedHalves) {
  Rng rng(4);
  Polytope a = unit_cube(2);
  Polytope b = concat(box(V({0, 0}), V({Q("1/2"), 1})), box(V({Q("5/2"), 0}), V({3, 1})));
  auto cert = equidecompose(a, b, Lattice::integer(2));
  auto by_shift = volume_by_shift(cert);
  EXPECT_EQ(by_shift, (std::map<QVector, Rational>{{V({0, 0}), Q("1/2")}, {V({2, 0}), Q("1/2")}}));
  expect_valid(cert, a, b, Lattice::integer(2), rng);
}

TEST(Equidecompose, RejectsNonEquidecomposable) {
  Lattice z2 = Lattice::integer(2);
  EXPECT_THROW(equidecompose(unit_cube(2), unit_triangle(), z2), NotEquidecomposable);
  Polytope wedge(2, {S({V({0, 0}), V({2, 0}), V({0, 1})})});
  EXPECT_THROW(equidecompose(unit_cube(2), wedge, z2), NotEquidecomposable);
  // left half with a copy of itself two units over: same volume, different functionals
  Polytope halves = concat(box(V({0, 0}), V({Q("1/2"), 1})), box(V({2, 0}), V({Q("5/2"), 1})));
  EXPECT_THROW(equidecompose(unit_cube(2), halves, z2), NotEquidecomposable);
}

TEST(Equidecompose, RandomCutAndShiftPairs) {
  Rng rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 3));
    Lattice l = random_lattice(rng, d);
    Polytope b = trial % 2 ? fundamental_domain_union(rng, l, 1) : Polytope(d, {random_simplex(rng, d, 3, 2)});
    Polytope a = cut_and_shift(rng, b, l);
    auto cert = equidecompose(a, b, l);
    expect_valid(cert, a, b, l, rng);
    auto check = check_certificate(cert, a, b, l, 200, static_cast<std::uint64_t>(trial));
    EXPECT_TRUE(check.ok) << check.failure;
  }
}

TEST(CheckCertificate, DetectsTampering) {
  Polytope a = box(V({0}), V({1})), b = box(V({Q("1/4")}), V({Q("5/4")}));
  Lattice z1 = Lattice::integer(1);
  auto cert = equidecompose(a, b, z1);
  EXPECT_TRUE(check_certificate(cert, a, b, z1, 100, 0).ok);

  auto off_lattice = cert;
  off_lattice.pieces[1].shift = V({Q("1/2")});
  EXPECT_FALSE(check_certificate(off_lattice, a, b, z1, 100, 0).ok);

  auto wrong_target = cert;
  wrong_target.pieces[1].shift = V({2});
  EXPECT_FALSE(check_certificate(wrong_target, a, b, z1, 100, 0).ok);

  auto missing = cert;
  missing.pieces.pop_back();
  auto r = check_certificate(missing, a, b, z1, 100, 0);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.failure.empty());

  auto doubled = cert;
  doubled.pieces.push_back(cert.pieces[0]);
  EXPECT_FALSE(check_certificate(doubled, a, b, z1, 100, 0).ok);
}

TEST(RepresentZeroTiler, Examples) {
  Lattice z2 = Lattice::integer(2);
  EXPECT_TRUE(represent_zero_tiler(GroupElement(2), z2).empty());

  GroupElement tri = GroupElement::of(unit_triangle());
  GroupElement p = tri - tri.translated(V({2, 1}));
  auto moves = represent_zero_tiler(p, z2);
  ASSERT_EQ(moves.size(), 1u);
  EXPECT_EQ(moves[0].shift, V({2, 1}));
  EXPECT_EQ(moves[0].coeff, 1);
  EXPECT_TRUE(canonicalize(replay(2, moves) - p).empty());
}

TEST(RepresentZeroTiler, SquareMinusSeparatedHalves) {
  Lattice z2 = Lattice::integer(2);
  GroupElement p = GroupElement::of(unit_cube(2)) - GroupElement::of(box(V({0, 0}), V({Q("1/2"), 1}))) -
                   GroupElement::of(box(V({Q("7/2"), 0}), V({4, 1})));
  auto moves = represent_zero_tiler(p, z2);
  for (const auto& m : moves) {
    EXPECT_TRUE(contains(z2, m.shift));
    EXPECT_TRUE(m.coeff == 1 || m.coeff == -1);
  }
  EXPECT_TRUE(canonicalize(replay(2, moves) - p).empty());
}

TEST(RepresentZeroTiler, RejectsOtherLevels) {
  Lattice z2 = Lattice::integer(2);
  EXPECT_THROW(represent_zero_tiler(GroupElement::of(unit_cube(2)), z2), NotZeroTiler);
  EXPECT_THROW(represent_zero_tiler(GroupElement::of(unit_triangle()), z2), NotZeroTiler);
}

TEST(RepresentZeroTiler, RandomZeroTilers) {
  Rng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 2));
    Lattice l = random_lattice(rng, d);
    GroupElement g(d);
    for (int i = 0; i < 2; ++i) {
      Simplex s = random_simplex(rng, d, 3, 2);
      const std::int64_t c = uniform(rng, 1, 2);
      g.add(c, s);
      g.add(-c, s.translated(random_lattice_point(rng, l, 3)));
    }
    auto moves = represent_zero_tiler(g, l);
    for (const auto& m : moves) EXPECT_TRUE(contains(l, m.shift));
    EXPECT_TRUE(canonicalize(replay(d, moves) - g).empty());
  }
}

}  // namespace
}  // namespace polytile
