#include "polytile/verify.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include <boost/math/constants/constants.hpp>

#include "polytile/errors.hpp"

namespace polytile {

namespace {

// Solves a·x = b for square a by Gaussian elimination; nullopt if singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t m = b.size();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    while (piv < m && a[piv][col] == 0) ++piv;
    if (piv == m) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < m; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(m);
  for (std::size_t i = 0; i < m; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// Integer points of the bounded polytope {c : <n_i, c> <= o_i}, visited
// slice by slice. The range of c_k with c_0..c_{k-1} fixed is read off the
// vertices of the slice, found by solving every square subsystem.
class IntegerPoints {
 public:
  explicit IntegerPoints(std::vector<Halfspace> hs) : hs_(std::move(hs)), d_(hs_.front().normal.size()) {}

  template <class F>
  void visit(F&& f) {
    std::vector<long> c(d_);
    recurse(0, c, f);
  }

 private:
  template <class F>
  void recurse(std::size_t k, std::vector<long>& c, F& f) {
    if (k == d_) {
      f(c);
      return;
    }
    auto range = slice_range(k, c);
    if (!range) return;
    for (long t = ceil(range->first).get_si(), hi = floor(range->second).get_si(); t <= hi; ++t) {
      c[k] = t;
      recurse(k + 1, c, f);
    }
  }

  std::optional<std::pair<Rational, Rational>> slice_range(std::size_t k, const std::vector<long>& c) const {
    const std::size_t m = d_ - k, n = hs_.size();
    std::vector<Rational> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      rhs[i] = hs_[i].offset;
      for (std::size_t j = 0; j < k; ++j) rhs[i] -= hs_[i].normal[j] * c[j];
    }
    std::optional<std::pair<Rational, Rational>> out;
    std::vector<std::size_t> pick(m);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
      std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m));
      std::vector<Rational> b(m);
      for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t j = 0; j < m; ++j) a[r][j] = hs_[pick[r]].normal[k + j];
        b[r] = rhs[pick[r]];
      }
      if (auto x = solve_square(std::move(a), std::move(b))) {
        bool feasible = true;
        for (std::size_t i = 0; i < n && feasible; ++i) {
          Rational lhs = 0;
          for (std::size_t j = 0; j < m; ++j) lhs += hs_[i].normal[k + j] * (*x)[j];
          feasible = lhs <= rhs[i];
        }
        if (feasible) {
          const Rational& v = (*x)[0];
          if (!out) out.emplace(v, v);
          else {
            if (v < out->first) out->first = v;
            if (v > out->second) out->second = v;
          }
        }
      }
      // next m-subset of {0..n-1}
      std::size_t i = m;
      while (i > 0 && pick[i - 1] == n - m + i - 1) --i;
      if (i == 0) return out;
      ++pick[i - 1];
      for (std::size_t j = i; j < m; ++j) pick[j] = pick[j - 1] + 1;
    }
  }

  std::vector<Halfspace> hs_;
  std::size_t d_;
};

// Works in lattice coordinates, where L is Z^d: the shifts c with y - c in a
// simplex are the integer points of the reflected, shifted simplex.
class MultiplicityCounter {
 public:
  MultiplicityCounter(const GroupElement& p, const Lattice& l) : l_(l) {
    for (const auto& t : p.terms()) {
      std::vector<QVector> vs;
      for (const auto& v : t.simplex.vertices()) vs.push_back(l.coordinates(v));
      Simplex s(std::move(vs));
      facets_.push_back(ConvexCell::of(s).facets());
      simplices_.push_back(std::move(s));
      coeffs_.push_back(t.coeff);
    }
  }

  std::optional<std::int64_t> operator()(const QVector& x) const {
    const QVector y = l_.coordinates(x);
    std::int64_t total = 0;
    bool boundary = false;
    for (std::size_t i = 0; i < simplices_.size() && !boundary; ++i) {
      // y - c ∈ s  ⟺  <-n, c> <= o - <n, y> for every facet (n, o) of s
      std::vector<Halfspace> hs;
      for (const auto& h : facets_[i]) hs.push_back({-h.normal, h.offset - dot(h.normal, y)});
      IntegerPoints(std::move(hs)).visit([&](const std::vector<long>& c) {
        if (boundary) return;
        QVector z = y;
        for (std::size_t j = 0; j < z.size(); ++j) z[j] -= c[j];
        switch (point_location(simplices_[i], z)) {
          case Location::kInterior:
            total += coeffs_[i];
            break;
          case Location::kBoundary:
            boundary = true;
            break;
          case Location::kOutside:
            break;
        }
      });
    }
    if (boundary) return std::nullopt;
    return total;
  }

 private:
  const Lattice& l_;
  std::vector<Simplex> simplices_;
  std::vector<std::vector<Halfspace>> facets_;
  std::vector<std::int64_t> coeffs_;
};

constexpr int kDyadicBits = 40;
constexpr std::size_t kMaxConsecutiveBoundary = 1000;

struct Sample {
  QVector point;
  std::int64_t value = 0;
  std::size_t boundary_hits = 0;
};

Sample draw(const MultiplicityCounter& count, const Lattice& l, std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<std::uint64_t> dist(0, (std::uint64_t{1} << kDyadicBits) - 1);
  const Rational denom(Integer(1) << kDyadicBits);
  Sample s;
  for (;;) {
    QVector u(l.dim());
    for (auto& c : u) c = Rational(static_cast<unsigned long>(dist(rng))) / denom;
    QVector x = l.point(u);
    if (auto m = count(x)) {
      s.point = std::move(x);
      s.value = *m;
      return s;
    }
    if (++s.boundary_hits >= kMaxConsecutiveBoundary)
      throw DegenerateInput("1000 consecutive sample points landed on simplex boundaries");
  }
}

}  // namespace

std::optional<std::int64_t> multiplicity_at(const GroupElement& p, const Lattice& l, const QVector& x) {
  if (p.dim() != l.dim() || x.size() != l.dim()) throw DimensionMismatch("multiplicity_at dimension mismatch");
  return MultiplicityCounter(p, l)(x);
}

SampleReport sample_tiling(const GroupElement& p, const Lattice& l, std::size_t n, std::uint64_t seed,
                           const SampleOptions& options) {
  if (p.dim() != l.dim()) throw DimensionMismatch("group element and lattice dimensions differ");
  if (n == 0) throw DegenerateInput("sample count must be positive");
  MultiplicityCounter count(p, l);
  std::vector<Sample> samples(n);
  const std::size_t workers = std::max<std::size_t>(1, std::min(options.threads, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) samples[i] = draw(count, l, seed, i);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < n; i += workers) samples[i] = draw(count, l, seed, i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  SampleReport report;
  report.samples = n;
  for (const auto& s : samples) {
    report.resampled_boundary += s.boundary_hits;
    ++report.observed_levels[s.value];
  }
  auto mode = std::max_element(report.observed_levels.begin(), report.observed_levels.end(),
                               [](const auto& a, const auto& b) { return a.second < b.second; });
  for (const auto& s : samples)
    if (s.value != mode->first && report.failures.size() < SampleReport::kMaxFailures)
      report.failures.emplace_back(s.point, s.value);
  report.constant = report.observed_levels.size() == 1;
  if (report.constant) report.level = mode->first;
  return report;
}

// ---------------------------------------------------------------------------

namespace {

std::mutex precision_mutex;

class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits) : lock_(precision_mutex), saved_(Real::default_precision()) {
    Real::default_precision(digits + 20);
  }
  ~PrecisionScope() { Real::default_precision(saved_); }

 private:
  std::lock_guard<std::mutex> lock_;
  unsigned saved_;
};

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Complex operator*(const Real& k, const Complex& a) { return {k * a.re, k * a.im}; }

Complex inverse(const Complex& a) {
  Real n = a.re * a.re + a.im * a.im;
  return {a.re / n, -a.im / n};
}

Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

// χ̂ of one simplex from its sorted nodes t_j = <ξ, v_j>. same[j] says whether
// t_j and t_{j+1} coincide.
Complex simplex_transform(const std::vector<Real>& t, const std::vector<bool>& same, const Rational& vol) {
  using boost::multiprecision::cos;
  using boost::multiprecision::sin;
  const std::size_t n = t.size();
  const std::size_t d = n - 1;
  const Real two_pi = 2 * boost::math::constants::pi<Real>();
  const Complex w{Real(0), -two_pi};  // f' = w f for f(t) = e^{-2πit}

  std::vector<std::size_t> cluster(n, 0);
  for (std::size_t j = 1; j < n; ++j) cluster[j] = same[j - 1] ? cluster[j - 1] : j;

  std::vector<Complex> f(n);
  for (std::size_t j = 0; j < n; ++j) f[j] = {cos(two_pi * t[j]), -sin(two_pi * t[j])};

  std::vector<Complex> w_pow(n);  // w^k / k!
  w_pow[0] = {Real(1), Real(0)};
  for (std::size_t k = 1; k < n; ++k) w_pow[k] = Real(1) / Real(k) * (w_pow[k - 1] * w);

  // Row `len` of the divided-difference table, overwritten in place.
  std::vector<Complex> dd = f;
  for (std::size_t len = 1; len <= d; ++len)
    for (std::size_t i = 0; i + len < n; ++i) {
      const std::size_t j = i + len;
      if (cluster[i] == cluster[j])
        dd[i] = w_pow[len] * f[i];
      else
        dd[i] = Real(1) / (t[j] - t[i]) * (dd[i + 1] - dd[i]);
    }

  Complex scale = inverse(w_pow[d]);  // d! / w^d
  return to_real(vol) * (scale * dd[0]);
}

Complex transform_rational(const GroupElement& p, const QVector& xi) {
  Complex total{Real(0), Real(0)};
  for (const auto& term : p.terms()) {
    std::vector<Rational> nodes;
    for (const auto& v : term.simplex.vertices()) nodes.push_back(dot(xi, v));
    std::sort(nodes.begin(), nodes.end());
    // e^{-2πit} is 1-periodic: shifting every node by an integer is exact.
    const Rational base(floor(nodes.front()));
    std::vector<Real> t;
    std::vector<bool> same;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      t.push_back(to_real(nodes[j] - base));
      if (j > 0) same.push_back(nodes[j] == nodes[j - 1]);
    }
    Complex c = simplex_transform(t, same, simplex_volume(term.simplex));
    total = total + Real(term.coeff) * c;
  }
  return total;
}

}  // namespace

Real abs(const Complex& z) { return boost::multiprecision::sqrt(z.re * z.re + z.im * z.im); }

Complex fourier_transform(const GroupElement& p, const QVector& xi, unsigned digits) {
  if (xi.size() != p.dim()) throw DimensionMismatch("frequency has the wrong dimension");
  PrecisionScope scope(digits);
  return transform_rational(p, xi);
}

Complex fourier_transform(const GroupElement& p, const std::vector<Real>& xi, unsigned digits) {
  if (xi.size() != p.dim()) throw DimensionMismatch("frequency has the wrong dimension");
  PrecisionScope scope(digits);
  const Real cluster_eps("1e-40");
  Complex total{Real(0), Real(0)};
  for (const auto& term : p.terms()) {
    std::vector<Real> t;
    for (const auto& v : term.simplex.vertices()) {
      Real s = 0;
      for (std::size_t i = 0; i < xi.size(); ++i) s += Real(xi[i]) * to_real(v[i]);
      t.push_back(s);
    }
    std::sort(t.begin(), t.end());
    const Real base = boost::multiprecision::floor(t.front());
    std::vector<bool> same;
    for (std::size_t j = 0; j < t.size(); ++j) {
      t[j] -= base;
      if (j > 0) {
        same.push_back(boost::multiprecision::abs(t[j] - t[j - 1]) < cluster_eps);
        if (same.back()) t[j] = t[j - 1];
      }
    }
    total = total + Real(term.coeff) * simplex_transform(t, same, simplex_volume(term.simplex));
  }
  return total;
}

FourierReport fourier_check(const GroupElement& p, const Lattice& l, int radius, const Real& tol,
                            const FourierOptions& options) {
  if (p.dim() != l.dim()) throw DimensionMismatch("group element and lattice dimensions differ");
  if (radius < 1) throw DegenerateInput("radius must be at least 1");
  const std::size_t d = l.dim();
  const Lattice dual = dual_basis(l);

  FourierReport report;
  std::vector<long> c(d, -radius);
  for (;;) {
    if (std::any_of(c.begin(), c.end(), [](long x) { return x != 0; })) {
      QVector coords(d);
      for (std::size_t i = 0; i < d; ++i) coords[i] = Rational(c[i]);
      report.frequencies.push_back(dual.point(coords));
    }
    std::size_t i = d;
    while (i > 0 && c[i - 1] == radius) c[--i] = -radius;
    if (i == 0) break;
    ++c[i - 1];
  }

  PrecisionScope scope(options.digits);
  const std::size_t n = report.frequencies.size();
  std::vector<Real> values(n);
  const std::size_t workers = std::max<std::size_t>(1, std::min(options.threads, n));
  auto work = [&](std::size_t w) {
    for (std::size_t k = w; k < n; k += workers) values[k] = abs(transform_rational(p, report.frequencies[k]));
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  report.max_abs = 0;
  for (std::size_t k = 0; k < n; ++k)
    if (!report.argmax || values[k] > report.max_abs) {
      report.max_abs = values[k];
      report.argmax = report.frequencies[k];
    }
  report.tol = tol;
  report.pass = report.max_abs <= tol;
  return report;
}

}  // namespace polytile
