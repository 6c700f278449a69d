#pragma once

// Hadwiger functionals accumulated per flag orbit, and the decisions built
// on them: multi-tiling, equidecomposability, group-element equivalence.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "polytile/flags.hpp"
#include "polytile/geom.hpp"
#include "polytile/lattice.hpp"

namespace polytile {

struct HadwigerReport {
  std::size_t dim = 0;
  Lattice lattice;
  // Nonzero sums only; a missing key means the functional vanishes there.
  std::map<FlagOrbitKey, Rational> entries;

  bool all_vanish() const { return entries.empty(); }
  Rational at(const FlagOrbitKey& key) const;
};

struct AccumulateOptions {
  std::size_t threads = 1;
};

HadwigerReport hadwiger_accumulate(const GroupElement& p, const Lattice& l,
                                   const AccumulateOptions& options = {});

// Entries ordered by their serialized form (the report's output order).
std::vector<std::pair<FlagOrbitKey, Rational>> sorted_entries(const HadwigerReport& report);

struct AffineSubspace {
  QVector point;
  QMatrix directions;  // spanning vectors of the linear part
};

// An explicit r-flag: V_r ⊂ ... ⊂ V_{d-1} (levels[0] is V_r), and for each
// level a vector of V_{j+1}'s linear part pointing into the positive side.
struct FlagSpec {
  std::vector<AffineSubspace> levels;
  std::vector<QVector> positive_sides;
};

// H_Φ(p, L) for the orbit of the given flag, in the flag's own orientation.
// r-volumes are measured in the canonical basis of W_r. Throws InvalidFlag.
Rational h_at_flag(const GroupElement& p, const FlagSpec& flag, const Lattice& l);

struct TilingVerdict {
  bool tiles = false;
  std::optional<std::int64_t> level;
  std::optional<FlagOrbitKey> witness;
  Rational witness_value;
};

// Tiles iff every Hadwiger functional vanishes. On success the level is
// volume/det(L); a non-integer ratio raises InternalError.
TilingVerdict is_tiling(const GroupElement& p, const Lattice& l,
                        const AccumulateOptions& options = {});

struct EquivalenceVerdict {
  bool equivalent = false;
  bool volumes_equal = false;
  std::optional<FlagOrbitKey> witness;
  Rational witness_value;
};

EquivalenceVerdict group_equivalence(const GroupElement& p, const GroupElement& q,
                                     const Lattice& l, const AccumulateOptions& options = {});
bool group_equivalent(const GroupElement& p, const GroupElement& q, const Lattice& l);
bool equidecomposable(const Polytope& a, const Polytope& b, const Lattice& l);

}  // namespace polytile
