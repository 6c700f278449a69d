#pragma once

// Exact scalars, vectors, matrices and the rational/integer linear algebra
// that the rest of the library is built on.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polytile {

using Integer = mpz_class;
// gmpxx keeps mpq_class canonical (reduced, positive denominator) as long as
// values are built through its arithmetic or through make_rational().
using Rational = mpq_class;
using QVector = std::vector<Rational>;

Rational make_rational(long num, long den = 1);
Rational make_rational(const Integer& num, const Integer& den);

// "num/den", denominator omitted when it is 1.
std::string to_string(const Rational& q);
// Accepts "a", "-a", "a/b" (reduced on parse). Throws ParseError.
Rational parse_rational(std::string_view text);

bool is_integer(const Rational& q);
Integer floor(const Rational& q);
Integer ceil(const Rational& q);
int sign(const Rational& q);

// ---------------------------------------------------------------------------
// QVector helpers.

QVector zeros(std::size_t n);
QVector unit_vector(std::size_t n, std::size_t i);
QVector operator+(const QVector& a, const QVector& b);
QVector operator-(const QVector& a, const QVector& b);
QVector operator-(const QVector& a);
QVector operator*(const Rational& s, const QVector& a);
QVector& operator+=(QVector& a, const QVector& b);
QVector& operator-=(QVector& a, const QVector& b);
Rational dot(const QVector& a, const QVector& b);
bool is_zero(const QVector& v);
bool is_integral(const QVector& v);
// Scales a nonzero vector to the primitive integer vector on the same ray.
QVector primitive_integer(const QVector& v);
std::string to_string(const QVector& v);

// ---------------------------------------------------------------------------

class QMatrix {
 public:
  QMatrix() = default;
  explicit QMatrix(std::size_t cols) : cols_(cols) {}
  QMatrix(std::size_t rows, std::size_t cols);
  // All rows must have the same length.
  QMatrix(std::vector<QVector> rows, std::size_t cols);
  explicit QMatrix(std::vector<QVector> rows);

  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_.empty(); }

  const QVector& row(std::size_t i) const { return rows_[i]; }
  QVector& row(std::size_t i) { return rows_[i]; }
  const std::vector<QVector>& row_list() const { return rows_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  Rational& operator()(std::size_t i, std::size_t j) { return rows_[i][j]; }

  void append_row(QVector r);
  QMatrix transpose() const;

  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }
  friend bool operator<(const QMatrix& a, const QMatrix& b) {
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return a.rows_ < b.rows_;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<QVector> rows_;
};

QMatrix operator*(const QMatrix& a, const QMatrix& b);
// Matrix times column vector.
QVector operator*(const QMatrix& a, const QVector& x);
// Row vector times matrix.
QVector operator*(const QVector& x, const QMatrix& a);

// Reduced row echelon form over Q.
struct Echelon {
  QMatrix matrix;                     // nonzero rows only
  std::vector<std::size_t> pivots;    // pivot column of each row
};
Echelon rref(const QMatrix& m);

std::size_t rank(const QMatrix& m);
// Requires a square matrix.
Rational determinant(const QMatrix& m);
std::optional<QMatrix> inverse(const QMatrix& m);

// One exact solution of a·x = b (free variables set to zero), or nullopt when
// the system is inconsistent.
std::optional<QVector> solve_linear(const QMatrix& a, const QVector& b);

// Basis of the right null space {x : a·x = 0}, one row per free column of the
// reduced echelon form, with a 1 in that free column.
QMatrix kernel_basis(const QMatrix& a);

// Row-style Hermite normal form of an integer matrix: upper echelon, positive
// pivots, entries above each pivot reduced into [0, pivot). Zero rows are
// kept at the bottom, so the result has the input's shape.
QMatrix hnf(const QMatrix& m);

// Nonzero rows of hnf(m).
QMatrix hnf_basis(const QMatrix& m);

// Canonical basis of the row space: reduced echelon rows, each scaled to a
// primitive integer vector with positive leading entry.
QMatrix canonical_subspace_basis(const QMatrix& spanning);

// Least common multiple of all denominators in the matrix.
Integer common_denominator(const QMatrix& m);

std::string to_string(const QMatrix& m);

}  // namespace polytile
