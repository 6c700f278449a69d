#pragma once

// Explicit equidecompositions by lattice translations.

#include <cstdint>
#include <string>
#include <vector>

#include "polytile/geom.hpp"
#include "polytile/lattice.hpp"

namespace polytile {

struct Piece {
  Simplex simplex;
  QVector shift;  // element of L
  int coeff = 1;  // ±1; see represent_zero_tiler
};

// Pieces of A, pairwise interior-disjoint; piece + shift are the pieces of B.
struct DecompositionCertificate {
  std::vector<Piece> pieces;
};

// S(A, B) = {λ ∈ L : vol(A ∩ (B - λ)) > 0}, ordered lexicographically by
// lattice coordinates.
std::vector<QVector> overlap_set(const Polytope& a, const Polytope& b, const Lattice& l);

// Throws NotEquidecomposable (naming the volume mismatch or the Hadwiger
// witness) when a and b are not equidecomposable by L.
DecompositionCertificate equidecompose(const Polytope& a, const Polytope& b, const Lattice& l);

// A move (σ, λ, c) stands for c·([σ] - [σ + λ]). The moves returned sum to p.
// Throws NotZeroTiler unless p tiles at level zero.
std::vector<Piece> represent_zero_tiler(const GroupElement& p, const Lattice& l);

// Σ coeff·([σ] - [σ + shift]).
GroupElement replay(std::size_t dim, const std::vector<Piece>& moves);

struct CertificateCheck {
  bool ok = false;
  std::string failure;  // empty when ok
};

// Validates a certificate without trusting its builder: shifts in L, pieces
// and shifted pieces pairwise interior-disjoint, exact volume sums, and
// indicator agreement with a and b at `samples` random points per side.
CertificateCheck check_certificate(const DecompositionCertificate& cert, const Polytope& a,
                                   const Polytope& b, const Lattice& l, std::size_t samples,
                                   std::uint64_t seed);

}  // namespace polytile
