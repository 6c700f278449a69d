#include "polytile/exact.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "polytile/errors.hpp"

namespace polytile {

Rational make_rational(long num, long den) {
  if (den == 0) throw Error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool parse_integer(std::string_view s, Integer& out, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  }
  std::string digits(s.substr(s[0] == '+' ? 1 : 0));
  return out.set_str(digits, 10) == 0;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  Integer num, den = 1;
  bool ok = false;
  if (slash == std::string_view::npos) {
    ok = parse_integer(text, num, true);
  } else {
    ok = parse_integer(text.substr(0, slash), num, true) &&
         parse_integer(text.substr(slash + 1), den, false);
  }
  if (!ok) throw ParseError("invalid rational '" + std::string(text) + "'");
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return make_rational(num, den);
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

int sign(const Rational& q) { return sgn(q); }

QVector zeros(std::size_t n) { return QVector(n, Rational(0)); }

QVector unit_vector(std::size_t n, std::size_t i) {
  QVector v = zeros(n);
  v[i] = 1;
  return v;
}

QVector operator+(const QVector& a, const QVector& b) {
  QVector r(a);
  r += b;
  return r;
}

QVector operator-(const QVector& a, const QVector& b) {
  QVector r(a);
  r -= b;
  return r;
}

QVector operator-(const QVector& a) {
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

QVector operator*(const Rational& s, const QVector& a) {
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

QVector& operator+=(QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

QVector& operator-=(QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

Rational dot(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

bool is_integral(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return is_integer(q); });
}

QVector primitive_integer(const QVector& v) {
  Integer den = 1;
  for (const auto& q : v) den = lcm(den, Integer(q.get_den()));
  Integer g = 0;
  std::vector<Integer> ints(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    ints[i] = v[i].get_num() * (den / v[i].get_den());
    g = gcd(g, ints[i]);
  }
  if (g == 0) throw InternalError("primitive_integer of zero vector");
  QVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(Integer(ints[i] / g));
  return r;
}

std::string to_string(const QVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

// ---------------------------------------------------------------------------

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : cols_(cols), rows_(rows, zeros(cols)) {}

QMatrix::QMatrix(std::vector<QVector> rows, std::size_t cols)
    : cols_(cols), rows_(std::move(rows)) {
  for (const auto& r : rows_) {
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix rows");
  }
}

QMatrix::QMatrix(std::vector<QVector> rows)
    : QMatrix(rows, rows.empty() ? 0 : rows.front().size()) {}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

void QMatrix::append_row(QVector r) {
  if (r.size() != cols_) throw DimensionMismatch("row length mismatch");
  rows_.push_back(std::move(r));
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows());
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = rows_[i][j];
  return t;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
  QMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
    }
  return r;
}

QVector operator*(const QMatrix& a, const QVector& x) {
  if (a.cols() != x.size()) throw DimensionMismatch("matrix-vector shape mismatch");
  QVector r = zeros(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) r[i] = dot(a.row(i), x);
  return r;
}

QVector operator*(const QVector& x, const QMatrix& a) {
  if (a.rows() != x.size()) throw DimensionMismatch("vector-matrix shape mismatch");
  QVector r = zeros(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) r[j] += x[i] * a(i, j);
  }
  return r;
}

Echelon rref(const QMatrix& m) {
  std::vector<QVector> rows = m.row_list();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Rational inv = 1 / rows[r][c];
    for (std::size_t j = c; j < m.cols(); ++j) rows[r][j] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = c; j < m.cols(); ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return {QMatrix(std::move(rows), m.cols()), std::move(pivots)};
}

std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

Rational determinant(const QMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of non-square matrix");
  std::vector<QVector> a = m.row_list();
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  Echelon e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.matrix(i, n + j);
  return inv;
}

std::optional<QVector> solve_linear(const QMatrix& a, const QVector& b) {
  if (a.rows() != b.size()) throw DimensionMismatch("solve_linear shape mismatch");
  QMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  Echelon e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  QVector x = zeros(a.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.matrix(i, a.cols());
  return x;
}

QMatrix kernel_basis(const QMatrix& a) {
  Echelon e = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  QMatrix k(a.cols());
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector v = zeros(a.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.matrix(i, f);
    k.append_row(std::move(v));
  }
  return k;
}

QMatrix hnf(const QMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      if (!is_integer(m(i, j))) throw Error("hnf requires an integer matrix");
      a[i][j] = m(i, j).get_num();
    }

  auto row_combine = [&](std::size_t i, std::size_t k, const Integer& p, const Integer& q,
                         const Integer& r, const Integer& s) {
    // (row_i, row_k) <- (p*row_i + q*row_k, r*row_i + s*row_k)
    for (std::size_t j = 0; j < cols; ++j) {
      Integer x = p * a[i][j] + q * a[k][j];
      Integer y = r * a[i][j] + s * a[k][j];
      a[i][j] = std::move(x);
      a[k][j] = std::move(y);
    }
  };

  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[r], a[p]);
    for (std::size_t k = r + 1; k < rows; ++k) {
      if (a[k][c] == 0) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[r][c].get_mpz_t(),
                 a[k][c].get_mpz_t());
      Integer u = a[r][c] / g, v = a[k][c] / g;
      // Unimodular: det [[s, t], [-v, u]] = s*u + t*v = 1.
      row_combine(r, k, s, t, -v, u);
    }
    if (a[r][c] < 0)
      for (std::size_t j = 0; j < cols; ++j) a[r][j] = -a[r][j];
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
    }
    ++r;
  }

  QMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = Rational(a[i][j]);
  return out;
}

QMatrix hnf_basis(const QMatrix& m) {
  QMatrix h = hnf(m);
  QMatrix out(m.cols());
  for (const auto& row : h.row_list())
    if (!is_zero(row)) out.append_row(row);
  return out;
}

QMatrix canonical_subspace_basis(const QMatrix& spanning) {
  Echelon e = rref(spanning);
  QMatrix out(spanning.cols());
  for (const auto& row : e.matrix.row_list()) out.append_row(primitive_integer(row));
  return out;
}

Integer common_denominator(const QMatrix& m) {
  Integer den = 1;
  for (const auto& row : m.row_list())
    for (const auto& q : row) den = lcm(den, Integer(q.get_den()));
  return den;
}

std::string to_string(const QMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += ", ";
    s += to_string(m.row(i));
  }
  return s + "]";
}

}  // namespace polytile
