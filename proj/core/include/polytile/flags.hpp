#pragma once

// Face chains of simplices and the flag data attached to them: direction
// flags with canonical orientation, the ±1 side signs, relative r-volumes,
// and orbit keys identifying an affine flag up to translation by L.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "polytile/exact.hpp"
#include "polytile/geom.hpp"
#include "polytile/lattice.hpp"

namespace polytile {

// F_r ⊂ F_{r+1} ⊂ ... ⊂ F_{d-1} ⊂ simplex. F_j is spanned by the first j+1
// entries of `order`; the first r+1 entries are sorted, each later entry is
// the vertex added at the next level.
struct FaceChain {
  const Simplex* simplex;
  std::size_t r;
  std::vector<std::size_t> order;

  std::size_t dim() const { return simplex->dim(); }
  std::vector<std::size_t> face(std::size_t j) const {
    return {order.begin(), order.begin() + static_cast<std::ptrdiff_t>(j + 1)};
  }
};

// (d+1)!/(r+1)! chains. Throws for r >= d.
std::vector<FaceChain> face_chains(const Simplex& s, std::size_t r);

// Linear parts W_r ⊂ ... ⊂ W_{d-1} of the affine hulls of a chain, with
// normals n_j ∈ W_{j+1}, n_j ⊥ W_j, primitive integer, first nonzero entry
// positive. The positive side of V_j inside V_{j+1} is the side n_j points to.
struct DirectionFlag {
  std::size_t r = 0;
  std::vector<QMatrix> bases;    // U_r, ..., U_{d-1}
  std::vector<QVector> normals;  // n_r, ..., n_{d-1}

  const QMatrix& basis(std::size_t j) const { return bases[j - r]; }
  const QVector& normal(std::size_t j) const { return normals[j - r]; }

  friend bool operator==(const DirectionFlag&, const DirectionFlag&) = default;
  friend bool operator<(const DirectionFlag& a, const DirectionFlag& b) {
    if (a.r != b.r) return a.r < b.r;
    if (a.bases != b.bases) return a.bases < b.bases;
    return a.normals < b.normals;
  }
};

DirectionFlag direction_flag_of(const FaceChain& c);

// Normal of W_j inside W_{j+1}, canonically signed.
QVector canonical_normal(const QMatrix& inner, const QMatrix& outer);

// ε_r, ..., ε_{d-1}. Throws InternalError if a side sign vanishes.
std::vector<int> epsilon_signs(const FaceChain& c, const DirectionFlag& df);

// r-volume of F_r measured in the coordinates of the canonical basis U_r;
// 1 for r = 0.
Rational relative_volume(const FaceChain& c);
Rational relative_volume(const FaceChain& c, const QMatrix& canonical_basis);

struct FlagOrbitKey {
  DirectionFlag direction;
  QVector anchor;  // reduce_mod(L, W_r, point of V_r)

  friend bool operator==(const FlagOrbitKey&, const FlagOrbitKey&) = default;
  friend bool operator<(const FlagOrbitKey& a, const FlagOrbitKey& b) {
    if (!(a.direction == b.direction)) return a.direction < b.direction;
    return a.anchor < b.anchor;
  }
};

FlagOrbitKey orbit_key(const FaceChain& c, const Lattice& l);

struct ChainContribution {
  FlagOrbitKey key;
  Rational value;
};

ChainContribution chain_contribution(std::int64_t coeff, const FaceChain& c, const Lattice& l);

// Caches one CosetReducer per subspace so repeated keys over many chains do
// the lattice algebra once per direction. Not thread-safe; use one per thread.
class FlagKeyer {
 public:
  explicit FlagKeyer(const Lattice& l) : lattice_(l) {}

  ChainContribution contribution(std::int64_t coeff, const FaceChain& c);
  FlagOrbitKey key(const FaceChain& c, const DirectionFlag& df);
  const CosetReducer& reducer(const QMatrix& canonical_basis);

 private:
  Lattice lattice_;
  std::map<QMatrix, std::unique_ptr<CosetReducer>> reducers_;
};

}  // namespace polytile
