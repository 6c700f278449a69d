#pragma once

// Builders, random generators and small independent oracles shared by the
// test binaries.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "polytile/exact.hpp"
#include "polytile/geom.hpp"
#include "polytile/lattice.hpp"

namespace polytile::testing {

inline Rational Q(const char* text) { return parse_rational(text); }
inline Rational Q(long n, long d = 1) { return make_rational(n, d); }

inline QVector V(std::initializer_list<Rational> xs) { return QVector(xs); }

inline Simplex S(std::vector<QVector> vs) { return Simplex(std::move(vs)); }

inline QMatrix M(std::vector<QVector> rows) { return QMatrix(std::move(rows)); }

inline Lattice lattice(std::vector<QVector> rows) { return Lattice(QMatrix(std::move(rows))); }

// Kuhn triangulation of origin + [0,1]^d·basis: one simplex per permutation.
inline std::vector<Simplex> parallelepiped_simplices(const QMatrix& basis, const QVector& origin) {
  const std::size_t d = basis.rows();
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Simplex> out;
  do {
    std::vector<QVector> vs{origin};
    for (std::size_t i = 0; i < d; ++i) vs.push_back(vs.back() + basis.row(perm[i]));
    out.emplace_back(std::move(vs));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline Polytope parallelepiped(const QMatrix& basis, const QVector& origin) {
  return Polytope(basis.rows(), parallelepiped_simplices(basis, origin), Polytope::Validation::kSkip);
}

inline Polytope box(const QVector& lo, const QVector& hi) {
  const std::size_t d = lo.size();
  QMatrix diag(d, d);
  for (std::size_t i = 0; i < d; ++i) diag(i, i) = hi[i] - lo[i];
  return parallelepiped(diag, lo);
}

inline Polytope unit_cube(std::size_t d) { return box(zeros(d), QVector(d, Rational(1))); }

inline Polytope unit_triangle() {
  return Polytope(2, {S({V({0, 0}), V({1, 0}), V({0, 1})})});
}

inline Polytope polytope_of(std::vector<Simplex> ss) {
  const std::size_t d = ss.front().dim();
  return Polytope(d, std::move(ss));
}

inline Polytope concat(const Polytope& a, const Polytope& b) {
  std::vector<Simplex> all = a.simplices();
  all.insert(all.end(), b.simplices().begin(), b.simplices().end());
  return Polytope(a.dim(), std::move(all), Polytope::Validation::kSkip);
}

// ---------------------------------------------------------------------------
// Random data.

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Rational random_rational(Rng& rng, long max_num, long max_den) {
  return make_rational(uniform(rng, -max_num, max_num), uniform(rng, 1, max_den));
}

inline QVector random_vector(Rng& rng, std::size_t d, long max_num, long max_den) {
  QVector v(d);
  for (auto& x : v) x = random_rational(rng, max_num, max_den);
  return v;
}

inline Simplex random_simplex(Rng& rng, std::size_t d, long max_num = 6, long max_den = 3) {
  for (;;) {
    std::vector<QVector> vs;
    for (std::size_t i = 0; i <= d; ++i) vs.push_back(random_vector(rng, d, max_num, max_den));
    QMatrix edges(d);
    for (std::size_t i = 1; i <= d; ++i) edges.append_row(vs[i] - vs[0]);
    if (determinant(edges) != 0) return Simplex(std::move(vs));
  }
}

// Product of elementary integer row operations; determinant ±1.
inline QMatrix random_unimodular(Rng& rng, std::size_t d, int steps = 6) {
  QMatrix m = QMatrix::identity(d);
  for (int s = 0; s < steps && d > 1; ++s) {
    std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(d) - 1));
    std::size_t j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(d) - 2));
    if (j >= i) ++j;
    m.row(i) += Rational(uniform(rng, -2, 2)) * m.row(j);
  }
  if (uniform(rng, 0, 1)) m.row(0) = -m.row(0);
  return m;
}

inline Lattice random_lattice(Rng& rng, std::size_t d, long max_num = 3, long max_den = 2) {
  for (;;) {
    QMatrix b(d);
    for (std::size_t i = 0; i < d; ++i) b.append_row(random_vector(rng, d, max_num, max_den));
    if (determinant(b) != 0) return Lattice(std::move(b));
  }
}

inline QVector random_lattice_point(Rng& rng, const Lattice& l, long range) {
  QVector c(l.dim());
  for (auto& x : c) x = Rational(uniform(rng, -range, range));
  return l.point(c);
}

// Dyadic point in the box.
inline QVector random_point_in(Rng& rng, const BoundingBox& b, int bits = 30) {
  QVector x(b.lo.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    Rational u = make_rational(uniform(rng, 0, (1L << bits) - 1), 1L << bits);
    x[i] = b.lo[i] + u * (b.hi[i] - b.lo[i]);
  }
  return x;
}

// ---------------------------------------------------------------------------
// Oracles written without the library's geometry.

// Membership by Cramer's rule on the edge matrix, entries in v_0-relative
// coordinates; 1 inside, 0 outside, nullopt on the boundary.
inline std::optional<int> oracle_in_simplex(const Simplex& s, const QVector& x) {
  const std::size_t d = s.dim();
  QMatrix a(d);  // columns are edges
  for (std::size_t i = 0; i < d; ++i) {
    QVector r(d);
    for (std::size_t j = 0; j < d; ++j) r[j] = s.vertex(j + 1)[i] - s.vertex(0)[i];
    a.append_row(r);
  }
  const Rational det = determinant(a);
  const QVector rhs = x - s.vertex(0);
  Rational rest = 1;
  bool on_boundary = false;
  for (std::size_t j = 0; j < d; ++j) {
    QMatrix aj = a;
    for (std::size_t i = 0; i < d; ++i) aj(i, j) = rhs[i];
    Rational lambda = determinant(aj) / det;
    if (lambda < 0) return 0;
    if (lambda == 0) on_boundary = true;
    rest -= lambda;
  }
  if (rest < 0) return 0;
  if (rest == 0 || on_boundary) return std::nullopt;
  return 1;
}

inline std::optional<std::int64_t> oracle_indicator(const GroupElement& p, const QVector& x) {
  std::int64_t total = 0;
  for (const auto& t : p.terms()) {
    auto m = oracle_in_simplex(t.simplex, x);
    if (!m) return std::nullopt;
    total += t.coeff * *m;
  }
  return total;
}

// Shoelace area of a polygon given in cyclic order.
inline Rational shoelace(const std::vector<QVector>& cycle) {
  Rational twice = 0;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const QVector& a = cycle[i];
    const QVector& b = cycle[(i + 1) % cycle.size()];
    twice += a[0] * b[1] - a[1] * b[0];
  }
  return (twice < 0 ? -twice : twice) / 2;
}

// Indicator agreement of two group elements at n random non-boundary points
// of the union of their bounding boxes.
inline bool same_indicator(const GroupElement& a, const GroupElement& b, Rng& rng, int n = 1000) {
  auto ba = a.bounds(), bb = b.bounds();
  if (!ba && !bb) return true;
  BoundingBox box = ba ? *ba : *bb;
  if (ba && bb)
    for (std::size_t i = 0; i < box.lo.size(); ++i) {
      box.lo[i] = std::min(ba->lo[i], bb->lo[i]);
      box.hi[i] = std::max(ba->hi[i], bb->hi[i]);
    }
  int done = 0, tries = 0;
  while (done < n && tries < 100 * n) {
    ++tries;
    QVector x = random_point_in(rng, box);
    auto va = oracle_indicator(a, x), vb = oracle_indicator(b, x);
    if (!va || !vb) continue;
    if (*va != *vb) return false;
    ++done;
  }
  return done == n;
}

}  // namespace polytile::testing
