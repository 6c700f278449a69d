#include "polytile/lattice.hpp"

#include <utility>

#include "polytile/errors.hpp"

namespace polytile {

Lattice::Lattice(QMatrix basis) : basis_(std::move(basis)) {
  if (basis_.rows() != basis_.cols() || basis_.rows() == 0)
    throw DegenerateInput("lattice basis must be a nonempty square matrix");
  auto inv = inverse(basis_);
  if (!inv) throw DegenerateInput("lattice basis is singular");
  inverse_ = std::move(*inv);
  det_ = abs(determinant(basis_));
}

Lattice Lattice::integer(std::size_t d) { return Lattice(QMatrix::identity(d)); }

Rational det_lattice(const Lattice& l) { return l.det(); }

Lattice dual_basis(const Lattice& l) { return Lattice(l.inverse_basis().transpose()); }

bool contains(const Lattice& l, const QVector& v) { return is_integral(l.coordinates(v)); }

bool same_lattice(const Lattice& a, const Lattice& b) {
  if (a.dim() != b.dim()) return false;
  for (const auto& r : a.basis().row_list())
    if (!contains(b, r)) return false;
  for (const auto& r : b.basis().row_list())
    if (!contains(a, r)) return false;
  return true;
}

// ---------------------------------------------------------------------------

CosetReducer::CosetReducer(const Lattice& l, const QMatrix& w_basis)
    : basis_(l.basis()), inverse_(l.inverse_basis()) {
  const std::size_t d = l.dim();
  if (w_basis.cols() != d) throw DimensionMismatch("subspace dimension does not match lattice");
  direction_ = canonical_subspace_basis(w_basis);

  QMatrix w_coords(d);
  for (const auto& r : direction_.row_list()) w_coords.append_row(r * inverse_);
  Echelon e = rref(w_coords);
  w_echelon_ = std::move(e.matrix);
  w_pivots_ = std::move(e.pivots);
  std::vector<bool> is_pivot(d, false);
  for (auto p : w_pivots_) is_pivot[p] = true;
  for (std::size_t j = 0; j < d; ++j)
    if (!is_pivot[j]) complement_.push_back(j);

  scale_ = 1;
  QMatrix gens(complement_.size());
  for (std::size_t i = 0; i < d; ++i) gens.append_row(residual(unit_vector(d, i)));
  Integer den = common_denominator(gens);
  scale_ = Rational(den);
  QMatrix scaled(complement_.size());
  for (const auto& r : gens.row_list()) scaled.append_row(scale_ * r);
  box_ = hnf_basis(scaled);
  if (box_.rows() != complement_.size())
    throw InternalError("projected lattice is not full rank on the complement");
}

QVector CosetReducer::residual(const QVector& coords) const {
  QVector z = coords;
  for (std::size_t i = 0; i < w_pivots_.size(); ++i) {
    Rational f = z[w_pivots_[i]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < z.size(); ++j) z[j] -= f * w_echelon_(i, j);
  }
  QVector y(complement_.size());
  for (std::size_t j = 0; j < complement_.size(); ++j) y[j] = scale_ * z[complement_[j]];
  return y;
}

QVector CosetReducer::reduce(const QVector& v) const {
  QVector y = residual(v * inverse_);
  for (std::size_t i = 0; i < box_.rows(); ++i) {
    Integer t = floor(y[i] / box_(i, i));
    if (t == 0) continue;
    Rational tq(t);
    for (std::size_t j = i; j < y.size(); ++j) y[j] -= tq * box_(i, j);
  }
  QVector coords = zeros(basis_.rows());
  for (std::size_t j = 0; j < complement_.size(); ++j) coords[complement_[j]] = y[j] / scale_;
  return coords * basis_;
}

bool CosetReducer::contains(const QVector& v) const { return is_zero(reduce(v)); }

bool coset_contains(const Lattice& l, const QMatrix& w_basis, const QVector& v) {
  return CosetReducer(l, w_basis).contains(v);
}

QVector reduce_mod(const Lattice& l, const QMatrix& w_basis, const QVector& v) {
  return CosetReducer(l, w_basis).reduce(v);
}

// ---------------------------------------------------------------------------

std::vector<QVector> enumerate_in_box(const Lattice& l, const QVector& lo, const QVector& hi) {
  const std::size_t d = l.dim();
  if (lo.size() != d || hi.size() != d) throw DimensionMismatch("box dimension mismatch");
  for (std::size_t i = 0; i < d; ++i)
    if (lo[i] > hi[i]) throw Error("enumerate_in_box: lo exceeds hi");

  // Integer coordinate ranges from the images of the 2^d box corners.
  std::vector<Integer> cmin(d), cmax(d);
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    QVector corner(d);
    for (std::size_t i = 0; i < d; ++i) corner[i] = (mask >> i) & 1 ? hi[i] : lo[i];
    QVector c = l.coordinates(corner);
    for (std::size_t i = 0; i < d; ++i) {
      Integer f = ceil(c[i]), g = floor(c[i]);
      if (mask == 0 || f < cmin[i]) cmin[i] = f;
      if (mask == 0 || g > cmax[i]) cmax[i] = g;
    }
  }
  std::vector<QVector> out;
  for (std::size_t i = 0; i < d; ++i)
    if (cmin[i] > cmax[i]) return out;

  std::vector<Integer> c = cmin;
  while (true) {
    QVector coords(d);
    for (std::size_t i = 0; i < d; ++i) coords[i] = Rational(c[i]);
    QVector p = l.point(coords);
    bool inside = true;
    for (std::size_t i = 0; i < d && inside; ++i) inside = lo[i] <= p[i] && p[i] <= hi[i];
    if (inside) out.push_back(std::move(p));
    // Odometer with the last coordinate fastest: lexicographic order.
    std::size_t k = d;
    while (k > 0) {
      --k;
      if (c[k] < cmax[k]) {
        ++c[k];
        break;
      }
      c[k] = cmin[k];
      if (k == 0) return out;
    }
  }
}

}  // namespace polytile
