#pragma once

// Full-rank rational lattices and exact coset arithmetic modulo L + W for
// rational subspaces W.

#include <cstddef>
#include <vector>

#include "polytile/exact.hpp"

namespace polytile {

class Lattice {
 public:
  // Rows of `basis` generate the lattice. Throws DegenerateInput when the
  // basis is singular or not square.
  explicit Lattice(QMatrix basis);
  static Lattice integer(std::size_t d);

  std::size_t dim() const { return basis_.rows(); }
  const QMatrix& basis() const { return basis_; }
  const QMatrix& inverse_basis() const { return inverse_; }
  // |det(basis)| > 0
  const Rational& det() const { return det_; }

  // Coordinates c with v = c·basis.
  QVector coordinates(const QVector& v) const { return v * inverse_; }
  QVector point(const QVector& coords) const { return coords * basis_; }

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.basis_ == b.basis_; }

 private:
  QMatrix basis_;
  QMatrix inverse_;
  Rational det_;
};

Rational det_lattice(const Lattice& l);
// Rows b*_j with <b_i, b*_j> = δ_ij.
Lattice dual_basis(const Lattice& l);
bool contains(const Lattice& l, const QVector& v);
// True iff both lattices contain each other's basis vectors.
bool same_lattice(const Lattice& a, const Lattice& b);

// Canonical reduction modulo L + W for a fixed pair (L, W). Construction does
// the linear algebra once; reduce() and contains() are then cheap.
//
// In L-coordinates W is a rational subspace W'. Every x splits uniquely as
// w + z with w in W' and z supported on the columns that are not pivots of
// the echelon form of W'. The images z(e_i) of the unit vectors generate a
// full-rank lattice on those columns; its Hermite normal form defines a
// half-open fundamental box, and the representative of x is the point of
// that box congruent to z(x).
class CosetReducer {
 public:
  CosetReducer(const Lattice& l, const QMatrix& w_basis);

  QVector reduce(const QVector& v) const;
  bool contains(const QVector& v) const;
  // Canonical basis of W (see canonical_subspace_basis).
  const QMatrix& direction() const { return direction_; }

 private:
  QVector residual(const QVector& coords) const;  // z-part on complement columns, scaled

  QMatrix basis_;
  QMatrix inverse_;
  QMatrix direction_;
  QMatrix w_echelon_;                     // echelon form of W in L-coordinates
  std::vector<std::size_t> w_pivots_;
  std::vector<std::size_t> complement_;   // non-pivot columns
  Rational scale_;                        // common denominator of the projected generators
  QMatrix box_;                           // HNF of the scaled projected generators
};

bool coset_contains(const Lattice& l, const QMatrix& w_basis, const QVector& v);
QVector reduce_mod(const Lattice& l, const QMatrix& w_basis, const QVector& v);

// Lattice points λ with lo <= λ <= hi componentwise, ordered lexicographically
// by lattice coordinates.
std::vector<QVector> enumerate_in_box(const Lattice& l, const QVector& lo, const QVector& hi);

}  // namespace polytile
