#pragma once

// Oracles that check the tiling equation without the Hadwiger machinery:
// exact multiplicities at random points, and the Fourier transform of the
// indicator on the dual lattice.

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "polytile/geom.hpp"
#include "polytile/lattice.hpp"

namespace polytile {

// Σ_{λ∈L} χ_p(x - λ), or nullopt when some x - λ lies on a simplex boundary.
std::optional<std::int64_t> multiplicity_at(const GroupElement& p, const Lattice& l, const QVector& x);

struct SampleReport {
  std::size_t samples = 0;
  std::size_t resampled_boundary = 0;
  std::map<std::int64_t, std::size_t> observed_levels;  // level -> count
  bool constant = false;
  std::optional<std::int64_t> level;
  // Points whose multiplicity differs from the most frequent one (at most
  // kMaxFailures kept).
  std::vector<std::pair<QVector, std::int64_t>> failures;

  static constexpr std::size_t kMaxFailures = 64;
};

struct SampleOptions {
  std::size_t threads = 1;
};

// n points with coordinates k/2^40 in the fundamental parallelepiped of L.
// Sample i draws from its own generator seeded by (seed, i), so the report
// does not depend on the thread count. Throws DegenerateInput after 1000
// consecutive boundary hits.
SampleReport sample_tiling(const GroupElement& p, const Lattice& l, std::size_t n, std::uint64_t seed,
                           const SampleOptions& options = {});

using Real = boost::multiprecision::mpfr_float;

struct Complex {
  Real re, im;
};

Real abs(const Complex& z);

// Working precision in decimal digits is digits + 20 guard digits. MPFR's
// default precision is process-wide, so Fourier evaluations are serialized
// internally.
Complex fourier_transform(const GroupElement& p, const QVector& xi, unsigned digits = 50);
Complex fourier_transform(const GroupElement& p, const std::vector<Real>& xi, unsigned digits = 50);

struct FourierReport {
  std::vector<QVector> frequencies;
  Real max_abs;
  std::optional<QVector> argmax;
  Real tol;
  bool pass = false;
};

struct FourierOptions {
  unsigned digits = 50;
  std::size_t threads = 1;
};

// |χ̂_p(ξ)| for every nonzero ξ = Σ c_i b*_i with |c_i| <= radius.
FourierReport fourier_check(const GroupElement& p, const Lattice& l, int radius, const Real& tol,
                            const FourierOptions& options = {});

}  // namespace polytile
