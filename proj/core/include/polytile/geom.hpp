#pragma once

// Simplices, polytopes (unions of interior-disjoint simplices), elements of
// the polytope group, and exact boolean operations on them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "polytile/exact.hpp"

namespace polytile {

class Simplex {
 public:
  // d+1 affinely independent points of R^d. Throws InvalidSimplex.
  explicit Simplex(std::vector<QVector> vertices);

  std::size_t dim() const { return vertices_.size() - 1; }
  const std::vector<QVector>& vertices() const { return vertices_; }
  const QVector& vertex(std::size_t i) const { return vertices_[i]; }

  Simplex translated(const QVector& shift) const;
  // Vertices sorted lexicographically; same point set.
  Simplex sorted() const;

  friend bool operator==(const Simplex& a, const Simplex& b) {
    return a.vertices_ == b.vertices_;
  }
  friend bool operator<(const Simplex& a, const Simplex& b) {
    return a.vertices_ < b.vertices_;
  }

 private:
  struct Trusted {};
  Simplex(std::vector<QVector> vertices, Trusted) : vertices_(std::move(vertices)) {}
  friend class ConvexCell;

  std::vector<QVector> vertices_;
};

// |det(v1-v0, ..., vd-v0)| / d!
Rational simplex_volume(const Simplex& s);

// All (j+1)-element vertex-index subsets, in lexicographic index order.
std::vector<std::vector<std::size_t>> faces(const Simplex& s, std::size_t j);

enum class Location { kInterior, kBoundary, kOutside };
Location point_location(const Simplex& s, const QVector& x);

// Barycentric coordinates of x with respect to s (sum to 1).
QVector barycentric(const Simplex& s, const QVector& x);

struct BoundingBox {
  QVector lo, hi;
  bool overlaps(const BoundingBox& o) const;  // closed boxes, positive-volume overlap
  bool contains(const QVector& x) const;
};
BoundingBox bounding_box(const Simplex& s);

class Polytope {
 public:
  enum class Validation { kCheck, kSkip };

  explicit Polytope(std::size_t dim) : dim_(dim) {}
  // Checks pairwise interior disjointness unless kSkip. Throws
  // InvariantViolation naming the first offending pair.
  Polytope(std::size_t dim, std::vector<Simplex> simplices,
           Validation validation = Validation::kCheck);

  std::size_t dim() const { return dim_; }
  const std::vector<Simplex>& simplices() const { return simplices_; }
  bool empty() const { return simplices_.empty(); }

  Polytope translated(const QVector& shift) const;
  std::optional<BoundingBox> bounds() const;
  std::vector<QVector> distinct_vertices() const;

 private:
  std::size_t dim_;
  std::vector<Simplex> simplices_;
};

Rational volume(const Polytope& p);

struct Term {
  std::int64_t coeff;
  Simplex simplex;
};

// An element of the polytope group: a formal integer combination of simplices.
class GroupElement {
 public:
  explicit GroupElement(std::size_t dim) : dim_(dim) {}
  GroupElement(std::size_t dim, std::vector<Term> terms);
  // [P] for a polytope P.
  static GroupElement of(const Polytope& p, std::int64_t coeff = 1);

  std::size_t dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add(std::int64_t coeff, const Simplex& s);
  GroupElement translated(const QVector& shift) const;
  std::optional<BoundingBox> bounds() const;

  GroupElement& operator+=(const GroupElement& other);
  GroupElement& operator-=(const GroupElement& other);
  friend GroupElement operator+(GroupElement a, const GroupElement& b) { return a += b; }
  friend GroupElement operator-(GroupElement a, const GroupElement& b) { return a -= b; }
  GroupElement operator-() const;
  friend GroupElement operator*(std::int64_t k, const GroupElement& a);

 private:
  std::size_t dim_;
  std::vector<Term> terms_;
};

Rational volume(const GroupElement& p);

// Value of the indicator function at x, or nullopt when x lies on the
// boundary of some simplex of p (the value is only defined a.e.).
std::optional<std::int64_t> indicator_value(const GroupElement& p, const QVector& x);

// ---------------------------------------------------------------------------
// Convex cells in H-representation. These carry the exact boolean operations.

struct Halfspace {
  QVector normal;
  Rational offset;  // {x : <normal, x> <= offset}

  bool contains(const QVector& x) const { return dot(normal, x) <= offset; }
  Halfspace flipped() const { return {-normal, -offset}; }
  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

class ConvexCell {
 public:
  // Intersection of halfspaces in R^dim. Redundant halfspaces are pruned and
  // the vertex set is computed eagerly.
  ConvexCell(std::size_t dim, std::vector<Halfspace> halfspaces);
  static ConvexCell of(const Simplex& s);

  std::size_t dim() const { return dim_; }
  const std::vector<Halfspace>& facets() const { return halfspaces_; }
  const std::vector<QVector>& vertices() const { return vertices_; }
  // Indices of the facets tight at each vertex.
  const std::vector<std::vector<std::size_t>>& incidences() const { return tight_; }
  bool full_dimensional() const { return full_dim_; }

  ConvexCell intersect(const ConvexCell& other) const;
  ConvexCell clipped(const Halfspace& h) const;
  // Interior-disjoint convex pieces covering closure(this \ other).
  std::vector<ConvexCell> subtract(const ConvexCell& other) const;
  // Fan triangulation from the lexicographically least vertex, recursively
  // over facets. Empty when the cell is not full-dimensional.
  std::vector<Simplex> triangulate() const;
  Rational volume() const;
  BoundingBox bounds() const;

 private:
  void enumerate_vertices(std::vector<Halfspace> candidates);

  std::size_t dim_;
  std::vector<Halfspace> halfspaces_;
  std::vector<QVector> vertices_;
  std::vector<std::vector<std::size_t>> tight_;
  bool full_dim_ = false;
};

// Full-dimensional part of s ∩ t, triangulated.
Polytope intersect_convex(const Simplex& s, const Simplex& t);
Rational intersection_volume(const Simplex& s, const Simplex& t);
// Union of pairwise simplex intersections.
Polytope intersect(const Polytope& a, const Polytope& b);
// closure(a \ b) up to measure zero, triangulated.
Polytope subtract(const Polytope& a, const Polytope& b);

// Overlay of all terms: pairwise interior-disjoint simplices, each carrying
// the a.e. value of the indicator on it. Zero cells dropped; terms sorted by
// coefficient.
GroupElement canonicalize(const GroupElement& p);

// ---------------------------------------------------------------------------
// Convex hulls, d <= 3.

struct HullFacet {
  Halfspace plane;                   // outward normal, primitive integer
  std::vector<std::size_t> vertices; // indices into ConvexHull::vertices
};

struct ConvexHull {
  std::size_t dim = 0;
  std::vector<QVector> vertices;  // extreme points, lexicographically sorted
  std::vector<HullFacet> facets;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // d >= 2
  Polytope triangulation{0};
};

// Throws UnsupportedDimension for d > 3 and DegenerateInput when the points
// do not span R^d.
ConvexHull convex_hull_structure(const std::vector<QVector>& points);
Polytope convex_hull(const std::vector<QVector>& points);

}  // namespace polytile
