#include "polytile/flags.hpp"

#include <algorithm>
#include <string>

#include "polytile/errors.hpp"

namespace polytile {

std::vector<FaceChain> face_chains(const Simplex& s, std::size_t r) {
  const std::size_t d = s.dim();
  if (r >= d) throw Error("chain level r = " + std::to_string(r) + " out of range for d = " + std::to_string(d));
  std::vector<FaceChain> out;
  for (const auto& base : faces(s, r)) {
    std::vector<std::size_t> rest;
    for (std::size_t v = 0; v <= d; ++v)
      if (std::find(base.begin(), base.end(), v) == base.end()) rest.push_back(v);
    do {
      FaceChain c{&s, r, base};
      c.order.insert(c.order.end(), rest.begin(), rest.end());
      out.push_back(std::move(c));
    } while (std::next_permutation(rest.begin(), rest.end()));
  }
  return out;
}

QVector canonical_normal(const QMatrix& inner, const QMatrix& outer) {
  QMatrix gram(outer.rows());
  for (const auto& u : inner.row_list()) {
    QVector row(outer.rows());
    for (std::size_t k = 0; k < outer.rows(); ++k) row[k] = dot(u, outer.row(k));
    gram.append_row(std::move(row));
  }
  QMatrix ker = kernel_basis(gram);
  if (ker.rows() != 1) throw InternalError("subspaces of a flag are not of consecutive dimension");
  QVector n = primitive_integer(ker.row(0) * outer);
  for (const auto& q : n) {
    if (q == 0) continue;
    if (q < 0) n = -n;
    break;
  }
  return n;
}

DirectionFlag direction_flag_of(const FaceChain& c) {
  const std::size_t d = c.dim();
  const QVector& v0 = c.simplex->vertex(c.order[0]);
  DirectionFlag df;
  df.r = c.r;
  for (std::size_t j = c.r; j < d; ++j) {
    QMatrix span(d);
    for (std::size_t i = 1; i <= j; ++i) span.append_row(c.simplex->vertex(c.order[i]) - v0);
    df.bases.push_back(canonical_subspace_basis(span));
  }
  const QMatrix whole = QMatrix::identity(d);
  for (std::size_t j = c.r; j < d; ++j)
    df.normals.push_back(canonical_normal(df.basis(j), j + 1 < d ? df.basis(j + 1) : whole));
  return df;
}

namespace {

QVector centroid(const FaceChain& c, std::size_t j) {
  QVector sum = zeros(c.dim());
  for (std::size_t i = 0; i <= j; ++i) sum += c.simplex->vertex(c.order[i]);
  return make_rational(1, static_cast<long>(j + 1)) * sum;
}

}  // namespace

std::vector<int> epsilon_signs(const FaceChain& c, const DirectionFlag& df) {
  std::vector<int> eps;
  QVector lower = centroid(c, c.r);
  for (std::size_t j = c.r; j < c.dim(); ++j) {
    QVector upper = centroid(c, j + 1);
    int s = sign(dot(upper - lower, df.normal(j)));
    if (s == 0) throw InternalError("face chain has a vanishing side sign");
    eps.push_back(s);
    lower = std::move(upper);
  }
  return eps;
}

Rational relative_volume(const FaceChain& c, const QMatrix& basis) {
  const std::size_t r = c.r;
  if (r == 0) return 1;
  std::vector<std::size_t> pivots;
  for (const auto& row : basis.row_list()) {
    std::size_t p = 0;
    while (row[p] == 0) ++p;
    pivots.push_back(p);
  }
  const QVector& v0 = c.simplex->vertex(c.order[0]);
  QMatrix coords(r, r);
  for (std::size_t i = 1; i <= r; ++i) {
    QVector e = c.simplex->vertex(c.order[i]) - v0;
    for (std::size_t k = 0; k < r; ++k) coords(i - 1, k) = e[pivots[k]] / basis(k, pivots[k]);
  }
  Integer fact = 1;
  for (std::size_t i = 2; i <= r; ++i) fact *= static_cast<unsigned long>(i);
  return abs(determinant(coords)) / Rational(fact);
}

Rational relative_volume(const FaceChain& c) {
  QMatrix span(c.dim());
  const QVector& v0 = c.simplex->vertex(c.order[0]);
  for (std::size_t i = 1; i <= c.r; ++i) span.append_row(c.simplex->vertex(c.order[i]) - v0);
  return relative_volume(c, canonical_subspace_basis(span));
}

namespace {

const QVector& anchor_vertex(const FaceChain& c) {
  const QVector* best = &c.simplex->vertex(c.order[0]);
  for (std::size_t i = 1; i <= c.r; ++i) {
    const QVector& v = c.simplex->vertex(c.order[i]);
    if (v < *best) best = &v;
  }
  return *best;
}

Rational signed_value(std::int64_t coeff, const FaceChain& c, const DirectionFlag& df) {
  int prod = 1;
  for (int e : epsilon_signs(c, df)) prod *= e;
  return Rational(static_cast<long>(coeff * prod)) * relative_volume(c, df.basis(c.r));
}

}  // namespace

FlagOrbitKey orbit_key(const FaceChain& c, const Lattice& l) {
  DirectionFlag df = direction_flag_of(c);
  QVector anchor = reduce_mod(l, df.basis(c.r), anchor_vertex(c));
  return {std::move(df), std::move(anchor)};
}

ChainContribution chain_contribution(std::int64_t coeff, const FaceChain& c, const Lattice& l) {
  if (coeff == 0) throw Error("chain contribution with zero coefficient");
  FlagOrbitKey key = orbit_key(c, l);
  Rational value = signed_value(coeff, c, key.direction);
  return {std::move(key), std::move(value)};
}

// ---------------------------------------------------------------------------

const CosetReducer& FlagKeyer::reducer(const QMatrix& basis) {
  auto it = reducers_.find(basis);
  if (it == reducers_.end())
    it = reducers_.emplace(basis, std::make_unique<CosetReducer>(lattice_, basis)).first;
  return *it->second;
}

FlagOrbitKey FlagKeyer::key(const FaceChain& c, const DirectionFlag& df) {
  QVector anchor = reducer(df.basis(c.r)).reduce(anchor_vertex(c));
  return {df, std::move(anchor)};
}

ChainContribution FlagKeyer::contribution(std::int64_t coeff, const FaceChain& c) {
  DirectionFlag df = direction_flag_of(c);
  Rational value = signed_value(coeff, c, df);
  return {key(c, df), std::move(value)};
}

}  // namespace polytile
