#include "polytile/decomp.hpp"

#include <random>
#include <set>
#include <string>

#include "polytile/errors.hpp"
#include "polytile/invariants.hpp"
#include "polytile/io.hpp"

namespace polytile {

namespace {

ConvexCell shifted(const ConvexCell& c, const QVector& v) {
  std::vector<Halfspace> hs;
  for (const auto& h : c.facets()) hs.push_back({h.normal, h.offset + dot(h.normal, v)});
  return ConvexCell(c.dim(), std::move(hs));
}

// A simplex in lattice coordinates, where L becomes Z^d.
struct Located {
  std::vector<QVector> vertices;
  ConvexCell cell;
  QVector lo, hi;
};

Located locate(const Simplex& s, const Lattice& l) {
  std::vector<QVector> vs;
  for (const auto& v : s.vertices()) vs.push_back(l.coordinates(v));
  ConvexCell cell = ConvexCell::of(Simplex(vs));
  BoundingBox box = cell.bounds();
  return {std::move(vs), std::move(cell), std::move(box.lo), std::move(box.hi)};
}

// Some facet of s or of t - c has the other simplex on its closed outer side.
bool separated(const Located& s, const Located& t, const QVector& c) {
  for (const auto& h : s.cell.facets()) {
    const Rational shift = dot(h.normal, c);
    bool all_out = true;
    for (const auto& v : t.vertices) all_out = all_out && dot(h.normal, v) - shift >= h.offset;
    if (all_out) return true;
  }
  for (const auto& h : t.cell.facets()) {
    const Rational offset = h.offset - dot(h.normal, c);
    bool all_out = true;
    for (const auto& v : s.vertices) all_out = all_out && dot(h.normal, v) >= offset;
    if (all_out) return true;
  }
  return false;
}

// Integer vectors c with vol(s ∩ (t - c)) > 0, added to `out`.
void collect_overlaps(const Located& s, const Located& t, std::set<QVector>& out) {
  const std::size_t d = s.lo.size();
  std::vector<long> lo(d), hi(d);
  for (std::size_t j = 0; j < d; ++j) {
    lo[j] = floor(t.lo[j] - s.hi[j]).get_si() + 1;
    hi[j] = ceil(t.hi[j] - s.lo[j]).get_si() - 1;
    if (lo[j] > hi[j]) return;
  }
  std::vector<long> cur = lo;
  for (;;) {
    QVector c(d);
    for (std::size_t j = 0; j < d; ++j) c[j] = Rational(cur[j]);
    if (!out.count(c) && !separated(s, t, c) && s.cell.intersect(shifted(t.cell, -c)).full_dimensional())
      out.insert(std::move(c));
    std::size_t j = 0;
    while (j < d && cur[j] == hi[j]) cur[j] = lo[j], ++j;
    if (j == d) return;
    ++cur[j];
  }
}

// Integer vectors c with g + c in the closed simplex t, added to `out`.
void collect_landings(const QVector& g, const Located& t, std::set<QVector>& out) {
  const std::size_t d = g.size();
  std::vector<long> lo(d), hi(d);
  for (std::size_t j = 0; j < d; ++j) {
    lo[j] = ceil(t.lo[j] - g[j]).get_si();
    hi[j] = floor(t.hi[j] - g[j]).get_si();
    if (lo[j] > hi[j]) return;
  }
  std::vector<long> cur = lo;
  for (;;) {
    QVector c(d);
    for (std::size_t j = 0; j < d; ++j) c[j] = Rational(cur[j]);
    QVector x = g + c;
    bool inside = true;
    for (const auto& h : t.cell.facets()) inside = inside && h.contains(x);
    if (inside) out.insert(std::move(c));
    std::size_t j = 0;
    while (j < d && cur[j] == hi[j]) cur[j] = lo[j], ++j;
    if (j == d) return;
    ++cur[j];
  }
}

std::vector<Located> locate_all(const Polytope& p, const Lattice& l) {
  std::vector<Located> out;
  for (const auto& s : p.simplices()) out.push_back(locate(s, l));
  return out;
}

std::vector<QVector> points_of(const std::set<QVector>& coords, const Lattice& l) {
  std::vector<QVector> out;
  for (const auto& c : coords) out.push_back(l.point(c));
  return out;
}

}  // namespace

std::vector<QVector> overlap_set(const Polytope& a, const Polytope& b, const Lattice& l) {
  if (a.dim() != b.dim() || a.dim() != l.dim()) throw DimensionMismatch("overlap_set dimension mismatch");
  std::vector<Located> lb = locate_all(b, l);
  std::set<QVector> found;
  for (const auto& s : locate_all(a, l))
    for (const auto& t : lb) collect_overlaps(s, t, found);
  return points_of(found, l);
}

DecompositionCertificate equidecompose(const Polytope& a, const Polytope& b, const Lattice& l) {
  EquivalenceVerdict v = group_equivalence(GroupElement::of(a), GroupElement::of(b), l);
  if (!v.volumes_equal)
    throw NotEquidecomposable("volumes differ: " + to_string(volume(a)) + " vs " + to_string(volume(b)));
  if (!v.equivalent)
    throw NotEquidecomposable("Hadwiger functional differs (value " + to_string(v.witness_value) +
                              ") at " + io::serialize(*v.witness));

  auto cells_of = [](const Polytope& p) {
    std::vector<ConvexCell> out;
    for (const auto& s : p.simplices()) out.push_back(ConvexCell::of(s));
    return out;
  };
  // Leftovers stay as convex cells; triangulating them between rounds makes
  // the piece count explode.
  auto minus = [](std::vector<ConvexCell> cells, const ConvexCell& cut) {
    std::vector<ConvexCell> out;
    for (auto& c : cells)
      for (auto& piece : c.subtract(cut)) out.push_back(std::move(piece));
    return out;
  };

  DecompositionCertificate cert;
  std::vector<ConvexCell> rest_a, rest_b = cells_of(b);
  const std::vector<Located> lb = locate_all(b, l);
  // Whole simplices of a that a single shift moves inside what is left of b.
  for (const auto& s : a.simplices()) {
    const Rational vol = simplex_volume(s);
    bool moved = false;
    // s + λ inside b puts the centroid of s + λ in some simplex of b
    const Located ls = locate(s, l);
    QVector g = zeros(a.dim());
    for (const auto& v : ls.vertices) g += v;
    g = make_rational(1, static_cast<long>(ls.vertices.size())) * g;
    std::set<QVector> shifts;
    for (const auto& t : lb) collect_landings(g, t, shifts);
    for (const auto& lambda : points_of(shifts, l)) {
      ConvexCell target = ConvexCell::of(s.translated(lambda));
      BoundingBox tb = target.bounds();
      Rational covered = 0;
      for (const auto& e : rest_b)
        if (e.bounds().overlaps(tb)) {
          ConvexCell common = e.intersect(target);
          if (common.full_dimensional()) covered += common.volume();
        }
      if (covered != vol) continue;
      cert.pieces.push_back({s, lambda, 1});
      rest_b = minus(std::move(rest_b), target);
      moved = true;
      break;
    }
    if (!moved) rest_a.push_back(ConvexCell::of(s));
  }
  if (rest_a.empty() && rest_b.empty()) return cert;
  for (const auto& lambda : overlap_set(a, b, l)) {
    if (rest_a.empty()) break;
    std::vector<ConvexCell> b_back;
    for (const auto& e : rest_b) b_back.push_back(shifted(e, -lambda));
    std::vector<BoundingBox> a_boxes, b_boxes;
    for (const auto& c : rest_a) a_boxes.push_back(c.bounds());
    for (const auto& e : b_back) b_boxes.push_back(e.bounds());

    std::vector<ConvexCell> next_a, next_b;
    for (std::size_t i = 0; i < rest_a.size(); ++i) {
      std::vector<ConvexCell> left{rest_a[i]};
      for (std::size_t j = 0; j < b_back.size(); ++j) {
        if (!a_boxes[i].overlaps(b_boxes[j])) continue;
        ConvexCell common = rest_a[i].intersect(b_back[j]);
        if (!common.full_dimensional()) continue;
        for (auto& piece : common.triangulate()) cert.pieces.push_back({std::move(piece), lambda, 1});
        left = minus(std::move(left), b_back[j]);
      }
      for (auto& c : left) next_a.push_back(std::move(c));
    }
    for (std::size_t j = 0; j < b_back.size(); ++j) {
      std::vector<ConvexCell> left{b_back[j]};
      for (std::size_t i = 0; i < rest_a.size(); ++i)
        if (a_boxes[i].overlaps(b_boxes[j])) left = minus(std::move(left), rest_a[i]);
      for (const auto& c : left) next_b.push_back(shifted(c, lambda));
    }
    rest_a = std::move(next_a);
    rest_b = std::move(next_b);
  }
  if (!rest_a.empty() || !rest_b.empty()) throw InternalError("equidecomposition stalled with leftover volume");
  return cert;
}

GroupElement replay(std::size_t dim, const std::vector<Piece>& moves) {
  GroupElement g(dim);
  for (const auto& m : moves) {
    g.add(m.coeff, m.simplex);
    g.add(-m.coeff, m.simplex.translated(m.shift));
  }
  return g;
}

std::vector<Piece> represent_zero_tiler(const GroupElement& p, const Lattice& l) {
  TilingVerdict verdict = is_tiling(p, l);
  if (!verdict.tiles || *verdict.level != 0)
    throw NotZeroTiler(verdict.tiles ? "tiles at level " + std::to_string(*verdict.level)
                                     : "does not tile: nonzero Hadwiger functional");
  if (p.empty()) return {};

  const std::size_t d = p.dim();
  const QVector& step = l.basis().row(0);
  const QVector probe = dual_basis(l).basis().row(0);  // <step, probe> = 1
  bool first = true;
  Rational lo, hi;
  for (const auto& t : p.terms())
    for (const auto& v : t.simplex.vertices()) {
      Rational x = dot(v, probe);
      if (first || x < lo) lo = x;
      if (first || x > hi) hi = x;
      first = false;
    }
  // Copies spaced by `spread` steps have disjoint projections onto `probe`.
  Rational spread(floor(hi - lo) + 1);

  std::vector<Piece> moves;
  std::vector<Simplex> pos, neg;
  for (const auto& t : p.terms()) {
    auto& side = t.coeff > 0 ? pos : neg;
    const int sgn = t.coeff > 0 ? 1 : -1;
    for (std::int64_t c = 0; c < (t.coeff > 0 ? t.coeff : -t.coeff); ++c) {
      QVector shift = Rational(static_cast<long>(side.size())) * spread * step;
      if (!side.empty()) moves.push_back({t.simplex, shift, sgn});
      side.push_back(t.simplex.translated(shift));
    }
  }
  Polytope a(d, std::move(pos), Polytope::Validation::kSkip);
  Polytope b(d, std::move(neg), Polytope::Validation::kSkip);
  DecompositionCertificate cert = equidecompose(a, b, l);
  for (auto& piece : cert.pieces) moves.push_back(std::move(piece));
  return moves;
}

// ---------------------------------------------------------------------------

namespace {

// Uniform dyadic point in the box.
QVector random_point(const BoundingBox& box, std::mt19937_64& rng) {
  constexpr int kBits = 40;
  std::uniform_int_distribution<std::uint64_t> dist(0, (std::uint64_t{1} << kBits) - 1);
  QVector x(box.lo.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    Rational u(static_cast<unsigned long>(dist(rng)));
    u /= Rational(Integer(1) << kBits);
    x[i] = box.lo[i] + u * (box.hi[i] - box.lo[i]);
  }
  return x;
}

std::string pairwise_disjoint(const std::vector<Simplex>& simplices, const char* what) {
  for (std::size_t i = 0; i < simplices.size(); ++i)
    for (std::size_t j = i + 1; j < simplices.size(); ++j)
      if (intersection_volume(simplices[i], simplices[j]) != 0)
        return std::string(what) + " " + std::to_string(i) + " and " + std::to_string(j) + " overlap";
  return {};
}

std::string indicator_agreement(const GroupElement& target, const GroupElement& cover,
                                std::size_t samples, std::mt19937_64& rng, const char* side) {
  auto box = target.bounds();
  if (!box) return {};
  std::size_t done = 0, misses = 0;
  while (done < samples) {
    QVector x = random_point(*box, rng);
    auto want = indicator_value(target, x);
    auto got = indicator_value(cover, x);
    if (!want || !got) {
      if (++misses > 1000 + samples) return std::string(side) + ": too many boundary samples";
      continue;
    }
    if (*want != *got)
      return std::string(side) + ": indicator mismatch at " + to_string(x);
    ++done;
  }
  return {};
}

}  // namespace

CertificateCheck check_certificate(const DecompositionCertificate& cert, const Polytope& a,
                                   const Polytope& b, const Lattice& l, std::size_t samples,
                                   std::uint64_t seed) {
  const std::size_t d = a.dim();
  std::vector<Simplex> source, target;
  Rational vol_pieces = 0;
  for (const auto& p : cert.pieces) {
    if (!contains(l, p.shift)) return {false, "shift " + to_string(p.shift) + " is not in L"};
    source.push_back(p.simplex);
    target.push_back(p.simplex.translated(p.shift));
    vol_pieces += simplex_volume(p.simplex);
  }
  if (vol_pieces != volume(a)) return {false, "piece volumes do not sum to vol(A)"};
  if (vol_pieces != volume(b)) return {false, "piece volumes do not sum to vol(B)"};
  if (auto e = pairwise_disjoint(source, "pieces"); !e.empty()) return {false, e};
  if (auto e = pairwise_disjoint(target, "shifted pieces"); !e.empty()) return {false, e};

  std::mt19937_64 rng(seed);
  if (auto e = indicator_agreement(GroupElement::of(a),
                                   GroupElement::of(Polytope(d, source, Polytope::Validation::kSkip)),
                                   samples, rng, "A");
      !e.empty())
    return {false, e};
  if (auto e = indicator_agreement(GroupElement::of(b),
                                   GroupElement::of(Polytope(d, target, Polytope::Validation::kSkip)),
                                   samples, rng, "B");
      !e.empty())
    return {false, e};
  return {true, {}};
}

}  // namespace polytile
