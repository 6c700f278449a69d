#include "polytile/geom.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "polytile/errors.hpp"

namespace polytile {

namespace {

std::size_t affine_rank(const std::vector<const QVector*>& pts) {
  if (pts.size() <= 1) return 0;
  QMatrix diffs(pts.front()->size());
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.append_row(*pts[i] - *pts.front());
  return rank(diffs);
}

std::size_t affine_rank(const std::vector<QVector>& pts) {
  std::vector<const QVector*> refs;
  refs.reserve(pts.size());
  for (const auto& p : pts) refs.push_back(&p);
  return affine_rank(refs);
}

Rational factorial(std::size_t n) {
  Integer f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
  return Rational(f);
}

// Positive rescaling so the normal is a primitive integer vector.
Halfspace normalized(Halfspace h) {
  Integer den = 1;
  for (const auto& q : h.normal) den = lcm(den, Integer(q.get_den()));
  Integer g = 0;
  for (const auto& q : h.normal) g = gcd(g, Integer(q.get_num() * (den / q.get_den())));
  if (g == 0) throw InternalError("halfspace with zero normal");
  Rational scale = make_rational(den, g);
  for (auto& q : h.normal) q *= scale;
  h.offset *= scale;
  return h;
}

std::vector<std::size_t> intersection_of(const std::vector<std::size_t>& a,
                                         const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Simplex

Simplex::Simplex(std::vector<QVector> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) throw InvalidSimplex("a simplex needs at least 2 vertices");
  const std::size_t d = vertices_.size() - 1;
  for (const auto& v : vertices_) {
    if (v.size() != d)
      throw InvalidSimplex("simplex in R^" + std::to_string(d) + " needs " +
                           std::to_string(d + 1) + " vertices of length " + std::to_string(d));
  }
  QMatrix edges(d);
  for (std::size_t i = 1; i <= d; ++i) edges.append_row(vertices_[i] - vertices_[0]);
  if (determinant(edges) == 0) throw InvalidSimplex("degenerate simplex (affinely dependent vertices)");
}

Simplex Simplex::translated(const QVector& shift) const {
  std::vector<QVector> vs;
  vs.reserve(vertices_.size());
  for (const auto& v : vertices_) vs.push_back(v + shift);
  return Simplex(std::move(vs), Trusted{});
}

Simplex Simplex::sorted() const {
  std::vector<QVector> vs = vertices_;
  std::sort(vs.begin(), vs.end());
  return Simplex(std::move(vs), Trusted{});
}

Rational simplex_volume(const Simplex& s) {
  const std::size_t d = s.dim();
  QMatrix edges(d);
  for (std::size_t i = 1; i <= d; ++i) edges.append_row(s.vertex(i) - s.vertex(0));
  Rational det = determinant(edges);
  return abs(det) / factorial(d);
}

std::vector<std::vector<std::size_t>> faces(const Simplex& s, std::size_t j) {
  const std::size_t n = s.dim() + 1;
  if (j > s.dim()) throw Error("face dimension " + std::to_string(j) + " out of range");
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(j + 1), true);
  do {
    std::vector<std::size_t> f;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) f.push_back(i);
    out.push_back(std::move(f));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

QVector barycentric(const Simplex& s, const QVector& x) {
  const std::size_t d = s.dim();
  if (x.size() != d) throw DimensionMismatch("point dimension does not match simplex");
  QMatrix a(d, d);
  for (std::size_t i = 1; i <= d; ++i)
    for (std::size_t r = 0; r < d; ++r) a(r, i - 1) = s.vertex(i)[r] - s.vertex(0)[r];
  auto sol = solve_linear(a, x - s.vertex(0));
  if (!sol) throw InternalError("barycentric solve failed on a valid simplex");
  QVector lambda(d + 1);
  Rational rest = 1;
  for (std::size_t i = 0; i < d; ++i) {
    lambda[i + 1] = (*sol)[i];
    rest -= (*sol)[i];
  }
  lambda[0] = rest;
  return lambda;
}

Location point_location(const Simplex& s, const QVector& x) {
  bool on_boundary = false;
  for (const auto& c : barycentric(s, x)) {
    int sg = sign(c);
    if (sg < 0) return Location::kOutside;
    if (sg == 0) on_boundary = true;
  }
  return on_boundary ? Location::kBoundary : Location::kInterior;
}

bool BoundingBox::overlaps(const BoundingBox& o) const {
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (!(lo[i] < o.hi[i] && o.lo[i] < hi[i])) return false;
  return true;
}

bool BoundingBox::contains(const QVector& x) const {
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  return true;
}

BoundingBox bounding_box(const Simplex& s) {
  BoundingBox b{s.vertex(0), s.vertex(0)};
  for (const auto& v : s.vertices())
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] < b.lo[i]) b.lo[i] = v[i];
      if (v[i] > b.hi[i]) b.hi[i] = v[i];
    }
  return b;
}

namespace {

std::optional<BoundingBox> merge_bounds(std::optional<BoundingBox> acc, const BoundingBox& b) {
  if (!acc) return b;
  for (std::size_t i = 0; i < b.lo.size(); ++i) {
    if (b.lo[i] < acc->lo[i]) acc->lo[i] = b.lo[i];
    if (b.hi[i] > acc->hi[i]) acc->hi[i] = b.hi[i];
  }
  return acc;
}

}  // namespace

// ---------------------------------------------------------------------------
// Polytope

Polytope::Polytope(std::size_t dim, std::vector<Simplex> simplices, Validation validation)
    : dim_(dim), simplices_(std::move(simplices)) {
  for (const auto& s : simplices_)
    if (s.dim() != dim_) throw DimensionMismatch("simplex dimension does not match polytope");
  if (validation == Validation::kSkip) return;
  std::vector<BoundingBox> boxes;
  boxes.reserve(simplices_.size());
  for (const auto& s : simplices_) boxes.push_back(bounding_box(s));
  for (std::size_t i = 0; i < simplices_.size(); ++i)
    for (std::size_t j = i + 1; j < simplices_.size(); ++j) {
      if (!boxes[i].overlaps(boxes[j])) continue;
      if (intersection_volume(simplices_[i], simplices_[j]) > 0)
        throw InvariantViolation("simplices " + std::to_string(i) + " and " + std::to_string(j) +
                                 " overlap with positive volume");
    }
}

Polytope Polytope::translated(const QVector& shift) const {
  std::vector<Simplex> out;
  out.reserve(simplices_.size());
  for (const auto& s : simplices_) out.push_back(s.translated(shift));
  return Polytope(dim_, std::move(out), Validation::kSkip);
}

std::optional<BoundingBox> Polytope::bounds() const {
  std::optional<BoundingBox> acc;
  for (const auto& s : simplices_) acc = merge_bounds(std::move(acc), bounding_box(s));
  return acc;
}

std::vector<QVector> Polytope::distinct_vertices() const {
  std::set<QVector> seen;
  for (const auto& s : simplices_)
    for (const auto& v : s.vertices()) seen.insert(v);
  return {seen.begin(), seen.end()};
}

Rational volume(const Polytope& p) {
  Rational v = 0;
  for (const auto& s : p.simplices()) v += simplex_volume(s);
  return v;
}

// ---------------------------------------------------------------------------
// GroupElement

GroupElement::GroupElement(std::size_t dim, std::vector<Term> terms) : dim_(dim) {
  for (auto& t : terms) add(t.coeff, t.simplex);
}

GroupElement GroupElement::of(const Polytope& p, std::int64_t coeff) {
  GroupElement g(p.dim());
  for (const auto& s : p.simplices()) g.add(coeff, s);
  return g;
}

void GroupElement::add(std::int64_t coeff, const Simplex& s) {
  if (s.dim() != dim_) throw DimensionMismatch("term dimension does not match group element");
  if (coeff == 0) return;
  terms_.push_back({coeff, s});
}

GroupElement GroupElement::translated(const QVector& shift) const {
  GroupElement g(dim_);
  for (const auto& t : terms_) g.terms_.push_back({t.coeff, t.simplex.translated(shift)});
  return g;
}

std::optional<BoundingBox> GroupElement::bounds() const {
  std::optional<BoundingBox> acc;
  for (const auto& t : terms_) acc = merge_bounds(std::move(acc), bounding_box(t.simplex));
  return acc;
}

GroupElement& GroupElement::operator+=(const GroupElement& other) {
  if (other.dim_ != dim_) throw DimensionMismatch("group elements of different dimension");
  for (const auto& t : other.terms_) terms_.push_back(t);
  return *this;
}

GroupElement& GroupElement::operator-=(const GroupElement& other) {
  if (other.dim_ != dim_) throw DimensionMismatch("group elements of different dimension");
  for (const auto& t : other.terms_) terms_.push_back({-t.coeff, t.simplex});
  return *this;
}

GroupElement GroupElement::operator-() const { return GroupElement(dim_) - *this; }

GroupElement operator*(std::int64_t k, const GroupElement& a) {
  GroupElement g(a.dim_);
  if (k == 0) return g;
  for (const auto& t : a.terms_) g.terms_.push_back({k * t.coeff, t.simplex});
  return g;
}

Rational volume(const GroupElement& p) {
  Rational v = 0;
  for (const auto& t : p.terms()) v += Rational(static_cast<long>(t.coeff)) * simplex_volume(t.simplex);
  return v;
}

std::optional<std::int64_t> indicator_value(const GroupElement& p, const QVector& x) {
  std::int64_t value = 0;
  for (const auto& t : p.terms()) {
    if (!bounding_box(t.simplex).contains(x)) continue;
    switch (point_location(t.simplex, x)) {
      case Location::kInterior: value += t.coeff; break;
      case Location::kBoundary: return std::nullopt;
      case Location::kOutside: break;
    }
  }
  return value;
}

// ---------------------------------------------------------------------------
// ConvexCell

ConvexCell::ConvexCell(std::size_t dim, std::vector<Halfspace> halfspaces) : dim_(dim) {
  for (auto& h : halfspaces) {
    if (h.normal.size() != dim_) throw DimensionMismatch("halfspace dimension mismatch");
    h = normalized(std::move(h));
  }
  enumerate_vertices(std::move(halfspaces));
}

void ConvexCell::enumerate_vertices(std::vector<Halfspace> candidates) {
  std::vector<Halfspace> hs;
  for (auto& h : candidates)
    if (std::find(hs.begin(), hs.end(), h) == hs.end()) hs.push_back(std::move(h));

  std::set<QVector> found;
  const std::size_t n = hs.size();
  if (n >= dim_) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(dim_), true);
    do {
      QMatrix a(dim_);
      QVector b;
      for (std::size_t i = 0; i < n; ++i)
        if (pick[i]) {
          a.append_row(hs[i].normal);
          b.push_back(hs[i].offset);
        }
      if (rank(a) < dim_) continue;
      auto x = solve_linear(a, b);
      if (!x) continue;
      if (std::all_of(hs.begin(), hs.end(), [&](const Halfspace& h) { return h.contains(*x); }))
        found.insert(*x);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }

  std::vector<QVector> verts(found.begin(), found.end());
  full_dim_ = verts.size() > dim_ && affine_rank(verts) == dim_;
  if (!full_dim_) {
    halfspaces_ = std::move(hs);
    vertices_ = std::move(verts);
    tight_.assign(vertices_.size(), {});
    return;
  }
  // Keep facet-defining halfspaces only.
  std::vector<Halfspace> facets;
  for (auto& h : hs) {
    std::vector<const QVector*> on;
    for (const auto& v : verts)
      if (dot(h.normal, v) == h.offset) on.push_back(&v);
    if (on.size() >= dim_ && affine_rank(on) == dim_ - 1) facets.push_back(std::move(h));
  }
  halfspaces_ = std::move(facets);
  vertices_ = std::move(verts);
  tight_.assign(vertices_.size(), {});
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    for (std::size_t f = 0; f < halfspaces_.size(); ++f)
      if (dot(halfspaces_[f].normal, vertices_[v]) == halfspaces_[f].offset) tight_[v].push_back(f);
}

ConvexCell ConvexCell::of(const Simplex& s) {
  const std::size_t d = s.dim();
  ConvexCell cell(d, {});
  std::vector<std::size_t> order(d + 1);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return s.vertex(a) < s.vertex(b); });
  // Facet i is opposite vertex order[i].
  for (std::size_t i = 0; i <= d; ++i) {
    QMatrix diffs(d);
    const QVector* base = nullptr;
    for (std::size_t j = 0; j <= d; ++j) {
      if (j == i) continue;
      if (!base) {
        base = &s.vertex(order[j]);
      } else {
        diffs.append_row(s.vertex(order[j]) - *base);
      }
    }
    QVector n = kernel_basis(diffs).row(0);
    Rational off = dot(n, *base);
    if (dot(n, s.vertex(order[i])) > off) {
      n = -n;
      off = -off;
    }
    cell.halfspaces_.push_back(normalized({std::move(n), std::move(off)}));
  }
  for (std::size_t v = 0; v <= d; ++v) {
    cell.vertices_.push_back(s.vertex(order[v]));
    std::vector<std::size_t> tight;
    for (std::size_t f = 0; f <= d; ++f)
      if (f != v) tight.push_back(f);
    cell.tight_.push_back(std::move(tight));
  }
  cell.full_dim_ = true;
  return cell;
}

ConvexCell ConvexCell::clipped(const Halfspace& raw) const {
  ConvexCell empty(dim_, {});
  if (!full_dim_) return empty;
  Halfspace h = normalized(raw);
  std::vector<Rational> slack(vertices_.size());
  bool any_in = false, any_out = false;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    slack[v] = dot(h.normal, vertices_[v]) - h.offset;
    if (slack[v] < 0) any_in = true;
    if (slack[v] > 0) any_out = true;
  }
  if (!any_out) return *this;
  if (!any_in) return empty;

  const std::size_t new_index = halfspaces_.size();
  std::vector<QVector> verts;
  std::vector<std::vector<std::size_t>> tight;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (slack[v] > 0) continue;
    verts.push_back(vertices_[v]);
    tight.push_back(tight_[v]);
    if (slack[v] == 0) tight.back().push_back(new_index);
  }
  for (std::size_t u = 0; u < vertices_.size(); ++u) {
    if (slack[u] >= 0) continue;
    for (std::size_t w = 0; w < vertices_.size(); ++w) {
      if (slack[w] <= 0) continue;
      auto common = intersection_of(tight_[u], tight_[w]);
      if (common.size() + 1 < dim_) continue;
      if (dim_ > 1) {
        QMatrix normals(dim_);
        for (auto f : common) normals.append_row(halfspaces_[f].normal);
        if (rank(normals) != dim_ - 1) continue;
      }
      Rational t = slack[u] / (slack[u] - slack[w]);
      verts.push_back(vertices_[u] + t * (vertices_[w] - vertices_[u]));
      common.push_back(new_index);
      tight.push_back(std::move(common));
    }
  }

  ConvexCell out(dim_, {});
  std::vector<Halfspace> hs = halfspaces_;
  hs.push_back(std::move(h));
  // Drop halfspaces that no longer support a facet, then reindex.
  std::vector<std::ptrdiff_t> remap(hs.size(), -1);
  for (std::size_t f = 0; f < hs.size(); ++f) {
    std::vector<const QVector*> on;
    for (std::size_t v = 0; v < verts.size(); ++v)
      if (std::binary_search(tight[v].begin(), tight[v].end(), f) ||
          std::find(tight[v].begin(), tight[v].end(), f) != tight[v].end())
        on.push_back(&verts[v]);
    if (on.size() >= dim_ && affine_rank(on) == dim_ - 1) {
      remap[f] = static_cast<std::ptrdiff_t>(out.halfspaces_.size());
      out.halfspaces_.push_back(hs[f]);
    }
  }
  std::vector<std::size_t> order(verts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return verts[a] < verts[b]; });
  for (auto v : order) {
    std::vector<std::size_t> t;
    for (auto f : tight[v])
      if (remap[f] >= 0) t.push_back(static_cast<std::size_t>(remap[f]));
    std::sort(t.begin(), t.end());
    out.vertices_.push_back(std::move(verts[v]));
    out.tight_.push_back(std::move(t));
  }
  out.full_dim_ = true;
  return out;
}

ConvexCell ConvexCell::intersect(const ConvexCell& other) const {
  if (!full_dim_ || !other.full_dim_ || !bounds().overlaps(other.bounds()))
    return ConvexCell(dim_, {});
  ConvexCell cur = *this;
  for (const auto& h : other.halfspaces_) {
    cur = cur.clipped(h);
    if (!cur.full_dim_) break;
  }
  return cur;
}

std::vector<ConvexCell> ConvexCell::subtract(const ConvexCell& other) const {
  if (!full_dim_) return {};
  if (!other.full_dim_ || !bounds().overlaps(other.bounds())) return {*this};
  if (!intersect(other).full_dim_) return {*this};
  std::vector<ConvexCell> out;
  ConvexCell cur = *this;
  for (const auto& h : other.halfspaces_) {
    ConvexCell slab = cur.clipped(h.flipped());
    if (slab.full_dim_) out.push_back(std::move(slab));
    cur = cur.clipped(h);
    if (!cur.full_dim_) break;
  }
  return out;
}

std::vector<Simplex> ConvexCell::triangulate() const {
  std::vector<Simplex> out;
  if (!full_dim_) return out;

  std::vector<std::size_t> prefix;
  auto fan = [&](auto&& self, const std::vector<std::size_t>& face, std::size_t k) -> void {
    // Vertices are stored in lexicographic order, so face[0] is the apex.
    const std::size_t apex = face.front();
    if (k == 0) {
      std::vector<QVector> vs;
      for (auto i : prefix) vs.push_back(vertices_[i]);
      vs.push_back(vertices_[apex]);
      out.push_back(Simplex(std::move(vs), Simplex::Trusted{}));
      return;
    }
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t f = 0; f < halfspaces_.size(); ++f) {
      std::vector<std::size_t> sub;
      for (auto v : face)
        if (std::find(tight_[v].begin(), tight_[v].end(), f) != tight_[v].end()) sub.push_back(v);
      if (sub.size() < k || sub.size() == face.size() || sub.front() == apex) continue;
      if (!seen.insert(sub).second) continue;
      std::vector<const QVector*> pts;
      for (auto v : sub) pts.push_back(&vertices_[v]);
      if (affine_rank(pts) != k - 1) continue;
      prefix.push_back(apex);
      self(self, sub, k - 1);
      prefix.pop_back();
    }
  };
  std::vector<std::size_t> all(vertices_.size());
  std::iota(all.begin(), all.end(), 0);
  fan(fan, all, dim_);
  return out;
}

Rational ConvexCell::volume() const {
  Rational v = 0;
  for (const auto& s : triangulate()) v += simplex_volume(s);
  return v;
}

BoundingBox ConvexCell::bounds() const {
  if (vertices_.empty()) return {zeros(dim_), zeros(dim_)};
  BoundingBox b{vertices_.front(), vertices_.front()};
  for (const auto& v : vertices_)
    for (std::size_t i = 0; i < dim_; ++i) {
      if (v[i] < b.lo[i]) b.lo[i] = v[i];
      if (v[i] > b.hi[i]) b.hi[i] = v[i];
    }
  return b;
}

// ---------------------------------------------------------------------------
// Boolean operations on simplices and polytopes

Polytope intersect_convex(const Simplex& s, const Simplex& t) {
  if (s.dim() != t.dim()) throw DimensionMismatch("intersecting simplices of different dimension");
  Polytope empty(s.dim());
  if (!bounding_box(s).overlaps(bounding_box(t))) return empty;
  ConvexCell c = ConvexCell::of(s).intersect(ConvexCell::of(t));
  return Polytope(s.dim(), c.triangulate(), Polytope::Validation::kSkip);
}

Rational intersection_volume(const Simplex& s, const Simplex& t) {
  if (!bounding_box(s).overlaps(bounding_box(t))) return 0;
  ConvexCell c = ConvexCell::of(s).intersect(ConvexCell::of(t));
  return c.full_dimensional() ? c.volume() : Rational(0);
}

Polytope intersect(const Polytope& a, const Polytope& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("intersecting polytopes of different dimension");
  std::vector<Simplex> out;
  std::vector<BoundingBox> bb;
  for (const auto& t : b.simplices()) bb.push_back(bounding_box(t));
  for (const auto& s : a.simplices()) {
    BoundingBox sb = bounding_box(s);
    ConvexCell sc = ConvexCell::of(s);
    for (std::size_t j = 0; j < b.simplices().size(); ++j) {
      if (!sb.overlaps(bb[j])) continue;
      for (auto& piece : sc.intersect(ConvexCell::of(b.simplices()[j])).triangulate())
        out.push_back(std::move(piece));
    }
  }
  return Polytope(a.dim(), std::move(out), Polytope::Validation::kSkip);
}

Polytope subtract(const Polytope& a, const Polytope& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("subtracting polytopes of different dimension");
  std::vector<ConvexCell> cells;
  for (const auto& s : a.simplices()) cells.push_back(ConvexCell::of(s));
  for (const auto& t : b.simplices()) {
    ConvexCell tc = ConvexCell::of(t);
    BoundingBox tb = tc.bounds();
    std::vector<ConvexCell> next;
    for (auto& c : cells) {
      if (!c.bounds().overlaps(tb)) {
        next.push_back(std::move(c));
        continue;
      }
      for (auto& piece : c.subtract(tc)) next.push_back(std::move(piece));
    }
    cells = std::move(next);
  }
  std::vector<Simplex> out;
  for (const auto& c : cells)
    for (auto& s : c.triangulate()) out.push_back(std::move(s));
  return Polytope(a.dim(), std::move(out), Polytope::Validation::kSkip);
}

GroupElement canonicalize(const GroupElement& p) {
  struct Cell {
    ConvexCell cell;
    std::int64_t coeff;
  };
  std::vector<Cell> cells;
  for (const auto& term : p.terms()) {
    ConvexCell sc = ConvexCell::of(term.simplex);
    BoundingBox sb = sc.bounds();
    std::vector<ConvexCell> rest{sc};
    std::vector<Cell> next;
    for (auto& c : cells) {
      if (!c.cell.bounds().overlaps(sb)) {
        next.push_back(std::move(c));
        continue;
      }
      ConvexCell both = c.cell.intersect(sc);
      if (!both.full_dimensional()) {
        next.push_back(std::move(c));
        continue;
      }
      for (auto& piece : c.cell.subtract(sc)) next.push_back({std::move(piece), c.coeff});
      next.push_back({std::move(both), c.coeff + term.coeff});
      std::vector<ConvexCell> rest_next;
      for (const auto& r : rest)
        for (auto& piece : r.subtract(c.cell)) rest_next.push_back(std::move(piece));
      rest = std::move(rest_next);
    }
    for (auto& r : rest) next.push_back({std::move(r), term.coeff});
    cells = std::move(next);
  }

  std::vector<Term> terms;
  for (const auto& c : cells) {
    if (c.coeff == 0) continue;
    for (auto& s : c.cell.triangulate()) terms.push_back({c.coeff, std::move(s)});
  }
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    if (a.coeff != b.coeff) return a.coeff < b.coeff;
    return a.simplex < b.simplex;
  });
  return GroupElement(p.dim(), std::move(terms));
}

// ---------------------------------------------------------------------------
// Convex hull (d <= 3)

ConvexHull convex_hull_structure(const std::vector<QVector>& input) {
  if (input.empty()) throw DegenerateInput("convex hull of no points");
  const std::size_t d = input.front().size();
  for (const auto& p : input)
    if (p.size() != d) throw DimensionMismatch("hull points of mixed dimension");
  if (d == 0) throw DegenerateInput("convex hull in dimension 0");
  if (d > 3) throw UnsupportedDimension("convex hull supports d <= 3, got d = " + std::to_string(d));

  std::set<QVector> unique(input.begin(), input.end());
  std::vector<QVector> pts(unique.begin(), unique.end());
  if (affine_rank(pts) != d) throw DegenerateInput("hull points do not span R^" + std::to_string(d));

  std::vector<Halfspace> planes;
  const std::size_t n = pts.size();
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(d), true);
  do {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) idx.push_back(i);
    QMatrix diffs(d);
    for (std::size_t i = 1; i < idx.size(); ++i) diffs.append_row(pts[idx[i]] - pts[idx[0]]);
    QMatrix ker = kernel_basis(diffs);
    if (ker.rows() != 1) continue;
    QVector normal = ker.row(0);
    Rational off = dot(normal, pts[idx[0]]);
    bool below = false, above = false;
    for (const auto& p : pts) {
      Rational v = dot(normal, p);
      if (v < off) below = true;
      if (v > off) above = true;
      if (below && above) break;
    }
    if (below && above) continue;
    Halfspace h = above ? Halfspace{-normal, -off} : Halfspace{normal, off};
    h = normalized(std::move(h));
    if (std::find(planes.begin(), planes.end(), h) == planes.end()) planes.push_back(std::move(h));
  } while (std::prev_permutation(pick.begin(), pick.end()));

  ConvexCell cell(d, std::move(planes));
  ConvexHull hull;
  hull.dim = d;
  hull.vertices = cell.vertices();
  for (std::size_t f = 0; f < cell.facets().size(); ++f) {
    HullFacet facet{cell.facets()[f], {}};
    for (std::size_t v = 0; v < hull.vertices.size(); ++v) {
      const auto& t = cell.incidences()[v];
      if (std::find(t.begin(), t.end(), f) != t.end()) facet.vertices.push_back(v);
    }
    hull.facets.push_back(std::move(facet));
  }
  if (d >= 2) {
    for (std::size_t u = 0; u < hull.vertices.size(); ++u)
      for (std::size_t w = u + 1; w < hull.vertices.size(); ++w) {
        auto common = intersection_of(cell.incidences()[u], cell.incidences()[w]);
        if (common.size() + 1 < d) continue;
        QMatrix normals(d);
        for (auto f : common) normals.append_row(cell.facets()[f].normal);
        if (rank(normals) == d - 1) hull.edges.emplace_back(u, w);
      }
  }
  hull.triangulation = Polytope(d, cell.triangulate(), Polytope::Validation::kSkip);
  return hull;
}

Polytope convex_hull(const std::vector<QVector>& points) {
  return convex_hull_structure(points).triangulation;
}

}  // namespace polytile
