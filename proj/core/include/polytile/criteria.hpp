#pragma once

// Dimension-specific tiling criteria that work directly on edges, facets and
// vertices, independently of the Hadwiger functionals.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polytile/geom.hpp"
#include "polytile/lattice.hpp"

namespace polytile {

struct Interval {
  Rational a, b;  // a < b
};

// Sorted by left endpoint, pairwise interior-disjoint.
class IntervalSet {
 public:
  // Throws DegenerateInput on an empty or reversed interval or an overlap.
  explicit IntervalSet(std::vector<Interval> intervals);
  // Maximal intervals of a one-dimensional polytope.
  static IntervalSet of(const Polytope& p);
  const std::vector<Interval>& intervals() const { return intervals_; }

 private:
  std::vector<Interval> intervals_;
};

// Outcome of a criterion. When `holds` is false, `failures` names the
// conditions that failed (edge, frame or facet and which condition).
struct CriterionResult {
  bool holds = false;
  std::optional<std::int64_t> level;
  std::vector<std::string> failures;
};

// Left and right endpoints agree as multisets modulo L.
CriterionResult tiles_1d(const IntervalSet& s, const Lattice& l);

// The following take a polytope given by any triangulation. Convexity is
// checked against the hull volume; a non-convex input to bolle, frames_3d or
// grs_sufficient throws HypothesisNotMet.

// Convex polygons: central symmetry plus the line and translation
// conditions for each pair of opposite edges.
CriterionResult bolle(const Polytope& p, const Lattice& l);

// Polygons in which every edge has at most one other parallel edge. Edges
// are the maximal boundary segments. Throws HypothesisNotMet otherwise.
CriterionResult kolountzakis(const Polytope& p, const Lattice& l);

// Convex 3-polytopes: central symmetry of the polytope and of its facets,
// then the plane, line and vertex-class conditions on every four-legged frame.
CriterionResult frames_3d(const Polytope& p, const Lattice& l);

// Sufficient condition for convex polytopes with d <= 3. Strict: central
// symmetry of p and its facets and all vertices in L. Relaxed: the vertex
// condition is replaced by 2(t - t_F) ∈ L for every facet F, with t the
// center of p and t_F that of F. `holds` false means inconclusive.
CriterionResult grs_sufficient(const Polytope& p, const Lattice& l, bool relaxed);

}  // namespace polytile
