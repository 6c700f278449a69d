#include "polytile/criteria.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "polytile/errors.hpp"

namespace polytile {

IntervalSet::IntervalSet(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  std::sort(intervals_.begin(), intervals_.end(), [](const Interval& x, const Interval& y) { return x.a < y.a; });
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (!(intervals_[i].a < intervals_[i].b))
      throw DegenerateInput("interval [" + to_string(intervals_[i].a) + ", " + to_string(intervals_[i].b) +
                            "] is empty");
    if (i > 0 && intervals_[i].a < intervals_[i - 1].b)
      throw DegenerateInput("intervals overlap at " + to_string(intervals_[i].a));
  }
}

IntervalSet IntervalSet::of(const Polytope& p) {
  if (p.dim() != 1) throw DimensionMismatch("interval sets live in dimension 1");
  std::vector<Interval> pieces;
  for (const auto& s : p.simplices()) {
    Rational x = s.vertex(0)[0], y = s.vertex(1)[0];
    pieces.push_back(x < y ? Interval{x, y} : Interval{y, x});
  }
  IntervalSet sorted(std::move(pieces));
  std::vector<Interval> merged;
  for (const auto& iv : sorted.intervals_) {
    if (!merged.empty() && merged.back().b == iv.a)
      merged.back().b = iv.b;
    else
      merged.push_back(iv);
  }
  return IntervalSet(std::move(merged));
}

namespace {

std::int64_t level_of(const Rational& vol, const Lattice& l) {
  Rational k = vol / l.det();
  if (!is_integer(k) || !k.get_num().fits_slong_p())
    throw InternalError("criterion holds but volume/det = " + to_string(k) + " is not an integer");
  return k.get_num().get_si();
}

CriterionResult finish(CriterionResult r, const Rational& vol, const Lattice& l) {
  r.holds = r.failures.empty();
  if (r.holds) r.level = level_of(vol, l);
  return r;
}

QVector centroid(const std::vector<QVector>& pts) {
  QVector c(pts.front().size());
  for (const auto& p : pts) c += p;
  return (Rational(1) / Rational(static_cast<unsigned long>(pts.size()))) * c;
}

bool centrally_symmetric(std::vector<QVector> pts) {
  const QVector c2 = Rational(2) * centroid(pts);
  std::vector<QVector> reflected;
  for (const auto& p : pts) reflected.push_back(c2 - p);
  std::sort(pts.begin(), pts.end());
  std::sort(reflected.begin(), reflected.end());
  return pts == reflected;
}

QMatrix line_direction(const QVector& v) {
  QMatrix m(v.size());
  m.append_row(v);
  return m;
}

std::string segment_string(const QVector& p, const QVector& q) {
  return "[" + to_string(p) + ", " + to_string(q) + "]";
}

ConvexHull convex_input(const Polytope& p, std::size_t dim, const char* what) {
  if (p.dim() != dim) throw DimensionMismatch(std::string(what) + " needs dimension " + std::to_string(dim));
  if (p.empty()) throw DegenerateInput("empty polytope");
  ConvexHull hull = convex_hull_structure(p.distinct_vertices());
  if (volume(hull.triangulation) != volume(p)) throw HypothesisNotMet("polytope is not convex");
  return hull;
}

// Hull vertices of a polygon in counterclockwise order.
std::vector<QVector> polygon_cycle(const ConvexHull& hull) {
  const std::size_t n = hull.vertices.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [u, w] : hull.edges) {
    adj[u].push_back(w);
    adj[w].push_back(u);
  }
  auto cross = [](const QVector& a, const QVector& b) -> Rational { return a[0] * b[1] - a[1] * b[0]; };
  const QVector& v0 = hull.vertices[0];
  std::size_t next = adj[0][0];
  if (cross(hull.vertices[adj[0][0]] - v0, hull.vertices[adj[0][1]] - v0) < 0) next = adj[0][1];
  std::vector<QVector> cycle{v0};
  std::size_t prev = 0, cur = next;
  while (cur != 0) {
    cycle.push_back(hull.vertices[cur]);
    std::size_t step = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
    prev = cur;
    cur = step;
  }
  return cycle;
}

// Lexicographically smaller endpoint first.
std::pair<QVector, QVector> ordered(QVector p, QVector q) {
  if (q < p) std::swap(p, q);
  return {std::move(p), std::move(q)};
}

}  // namespace

CriterionResult tiles_1d(const IntervalSet& s, const Lattice& l) {
  if (l.dim() != 1) throw DimensionMismatch("tiles_1d needs a lattice in R");
  const QMatrix none(1);
  std::multiset<Rational> lefts, rights;
  Rational length = 0;
  for (const auto& iv : s.intervals()) {
    lefts.insert(reduce_mod(l, none, {iv.a})[0]);
    rights.insert(reduce_mod(l, none, {iv.b})[0]);
    length += iv.b - iv.a;
  }
  CriterionResult r;
  if (lefts != rights) {
    std::vector<Rational> only_left, only_right;
    std::set_difference(lefts.begin(), lefts.end(), rights.begin(), rights.end(), std::back_inserter(only_left));
    std::set_difference(rights.begin(), rights.end(), lefts.begin(), lefts.end(), std::back_inserter(only_right));
    std::string msg = "left endpoint residues without a matching right endpoint:";
    for (const auto& x : only_left) msg += " " + to_string(x);
    msg += "; right endpoint residues without a match:";
    for (const auto& x : only_right) msg += " " + to_string(x);
    r.failures.push_back(msg);
  }
  return finish(std::move(r), length, l);
}

CriterionResult bolle(const Polytope& p, const Lattice& l) {
  ConvexHull hull = convex_input(p, 2, "bolle");
  CriterionResult r;
  if (!centrally_symmetric(hull.vertices)) {
    r.failures.push_back("polygon is not centrally symmetric");
    return finish(std::move(r), volume(p), l);
  }
  std::vector<QVector> cycle = polygon_cycle(hull);
  const std::size_t n = cycle.size();
  for (std::size_t i = 0; i < n / 2; ++i) {
    auto [p0, q0] = ordered(cycle[i], cycle[(i + 1) % n]);
    auto [p1, q1] = ordered(cycle[i + n / 2], cycle[(i + n / 2 + 1) % n]);
    const QVector e = q0 - p0;
    const QVector tau = p1 - p0;
    const std::string name = "edge " + segment_string(p0, q0) + " / " + segment_string(p1, q1);
    if (!coset_contains(l, line_direction(e), tau))
      r.failures.push_back(name + ": condition (i) fails, no lattice translate puts them on one line");
    if (!contains(l, e) && !contains(l, tau))
      r.failures.push_back(name + ": condition (ii) fails, edge vector and carrying vector " + to_string(tau) +
                           " are both outside L");
  }
  return finish(std::move(r), volume(p), l);
}

namespace {

struct BoundaryEdge {
  QVector p, q;  // lexicographically ordered endpoints
  QVector direction;  // primitive, first nonzero entry positive
};

// Maximal boundary segments of a polygon given by a triangulation. Each
// triangle contributes its counterclockwise edges; on every line the signed
// coverage of interior edges cancels and what remains is the boundary.
std::vector<BoundaryEdge> boundary_edges(const Polytope& p) {
  struct Line {
    std::vector<std::pair<Rational, int>> events;  // parameter, coverage change
  };
  std::map<std::pair<QVector, Rational>, Line> lines;
  for (const auto& s : p.simplices()) {
    std::vector<QVector> v = s.vertices();
    QVector ab = v[1] - v[0], ac = v[2] - v[0];
    if (ab[0] * ac[1] - ab[1] * ac[0] < 0) std::swap(v[1], v[2]);
    for (std::size_t k = 0; k < 3; ++k) {
      const QVector& a = v[k];
      const QVector& b = v[(k + 1) % 3];
      QVector u = primitive_integer(b - a);
      int orient = 1;
      if (u[0] < 0 || (u[0] == 0 && u[1] < 0)) {
        u = -u;
        orient = -1;
      }
      QVector nrm{-u[1], u[0]};
      Line& line = lines[{u, dot(nrm, a)}];
      Rational ta = dot(u, a), tb = dot(u, b);
      if (tb < ta) std::swap(ta, tb);
      line.events.emplace_back(ta, orient);
      line.events.emplace_back(tb, -orient);
    }
  }

  std::vector<BoundaryEdge> out;
  for (auto& [key, line] : lines) {
    const QVector& u = key.first;
    const QVector nrm{-u[1], u[0]};
    const Rational uu = dot(u, u);
    auto at = [&](const Rational& t) { return (Rational(1) / uu) * (t * u + key.second * nrm); };
    std::sort(line.events.begin(), line.events.end());
    int coverage = 0;
    std::optional<Rational> start;
    int start_cov = 0;
    for (std::size_t i = 0; i < line.events.size();) {
      const Rational t = line.events[i].first;
      while (i < line.events.size() && line.events[i].first == t) coverage += line.events[i++].second;
      if (start && coverage != start_cov) {
        auto [a, b] = ordered(at(*start), at(t));
        out.push_back({a, b, u});
        start.reset();
      }
      if (!start && coverage != 0) {
        if (coverage != 1 && coverage != -1) throw InternalError("boundary coverage beyond one layer");
        start = t;
        start_cov = coverage;
      }
    }
  }
  return out;
}

}  // namespace

CriterionResult kolountzakis(const Polytope& p, const Lattice& l) {
  if (p.dim() != 2) throw DimensionMismatch("kolountzakis needs dimension 2");
  if (p.empty()) throw DegenerateInput("empty polytope");
  std::vector<BoundaryEdge> edges = boundary_edges(p);
  std::map<QVector, std::vector<std::size_t>> by_direction;
  for (std::size_t i = 0; i < edges.size(); ++i) by_direction[edges[i].direction].push_back(i);
  for (const auto& [dir, group] : by_direction)
    if (group.size() > 2)
      throw HypothesisNotMet(std::to_string(group.size()) + " mutually parallel edges with direction " +
                             to_string(dir));

  CriterionResult r;
  for (const auto& e : edges) {
    const std::string name = "edge " + segment_string(e.p, e.q);
    const auto& group = by_direction[e.direction];
    if (group.size() < 2) {
      r.failures.push_back(name + ": condition (i) fails, no parallel edge");
      continue;
    }
    const BoundaryEdge& partner = edges[group[0]].p == e.p && edges[group[0]].q == e.q ? edges[group[1]]
                                                                                      : edges[group[0]];
    const QVector vec = e.q - e.p;
    if (partner.q - partner.p != vec) {
      r.failures.push_back(name + ": condition (i) fails, parallel edge " + segment_string(partner.p, partner.q) +
                           " has a different length");
      continue;
    }
    const QVector tau = partner.p - e.p;
    if (!coset_contains(l, line_direction(vec), tau))
      r.failures.push_back(name + ": condition (ii) fails, no lattice translate is collinear with " +
                           segment_string(partner.p, partner.q));
    if (!contains(l, vec) && !contains(l, tau))
      r.failures.push_back(name + ": condition (iii) fails, edge vector and carrying vector " + to_string(tau) +
                           " are both outside L");
  }
  return finish(std::move(r), volume(p), l);
}

namespace {

std::vector<QVector> facet_points(const ConvexHull& hull, const HullFacet& f) {
  std::vector<QVector> pts;
  for (auto v : f.vertices) pts.push_back(hull.vertices[v]);
  return pts;
}

// Symmetry of the polytope and of each facet; failures appended to r.
bool symmetry_checks(const ConvexHull& hull, CriterionResult& r) {
  if (!centrally_symmetric(hull.vertices)) {
    r.failures.push_back("polytope is not centrally symmetric");
    return false;
  }
  bool ok = true;
  for (std::size_t f = 0; f < hull.facets.size(); ++f)
    if (!centrally_symmetric(facet_points(hull, hull.facets[f]))) {
      r.failures.push_back("facet with normal " + to_string(hull.facets[f].plane.normal) +
                           " is not centrally symmetric");
      ok = false;
    }
  return ok;
}

}  // namespace

CriterionResult frames_3d(const Polytope& p, const Lattice& l) {
  ConvexHull hull = convex_input(p, 3, "frames_3d");
  CriterionResult r;
  if (!symmetry_checks(hull, r)) return finish(std::move(r), volume(p), l);

  const QVector center2 = Rational(2) * centroid(hull.vertices);
  std::map<std::vector<QVector>, std::size_t> facet_of;  // sorted vertex set -> facet
  for (std::size_t f = 0; f < hull.facets.size(); ++f) {
    auto pts = facet_points(hull, hull.facets[f]);
    std::sort(pts.begin(), pts.end());
    facet_of[pts] = f;
  }

  using Segment = std::pair<QVector, QVector>;
  std::set<std::pair<std::set<Segment>, std::pair<std::size_t, std::size_t>>> seen;
  for (std::size_t f = 0; f < hull.facets.size(); ++f) {
    const auto pts = facet_points(hull, hull.facets[f]);
    std::vector<QVector> opposite;
    for (const auto& x : pts) opposite.push_back(center2 - x);
    std::sort(opposite.begin(), opposite.end());
    const std::size_t g = facet_of.at(opposite);
    const QVector c = centroid(pts);
    const QVector tau1 = centroid(opposite) - c;

    QMatrix plane(3);
    for (std::size_t i = 1; i < pts.size(); ++i) plane.append_row(pts[i] - pts[0]);
    plane = canonical_subspace_basis(plane);
    const bool cond1 = coset_contains(l, plane, tau1);

    const std::set<std::size_t> in_facet(hull.facets[f].vertices.begin(), hull.facets[f].vertices.end());
    for (auto [u, w] : hull.edges) {
      if (!in_facet.count(u) || !in_facet.count(w)) continue;
      auto [a, b] = ordered(hull.vertices[u], hull.vertices[w]);
      auto [a2, b2] = ordered(Rational(2) * c - a, Rational(2) * c - b);
      const QVector tau2 = a2 - a;
      const QVector vec = b - a;
      std::set<Segment> quad{{a, b}, {a + tau1, b + tau1}, {a2, b2}, {a2 + tau1, b2 + tau1}};
      if (!seen.insert({quad, {std::min(f, g), std::max(f, g)}}).second) continue;

      const std::string name = "frame on edge " + segment_string(a, b) + " (tau' = " + to_string(tau1) +
                               ", tau'' = " + to_string(tau2) + ")";
      if (!cond1)
        r.failures.push_back(name + ": condition (i) fails, no lattice translate puts the facets on one plane");
      const QMatrix line = line_direction(vec);
      if (!coset_contains(l, line, tau1) && !coset_contains(l, line, tau2))
        r.failures.push_back(name + ": condition (ii) fails, no lattice translate of the edge is collinear with "
                                    "e' or e''");
      if (!contains(l, vec) && !contains(l, tau1) && !contains(l, tau2)) {
        bool all = true;
        for (int s1 : {1, -1})
          for (int s2 : {1, -1})
            all = all && contains(l, vec + Rational(s1) * tau1 + Rational(s2) * tau2);
        if (!all)
          r.failures.push_back(name + ": condition (iii) fails, e, tau', tau'' are outside L and not all of "
                                      "e ± tau' ± tau'' are in L");
      }
    }
  }
  return finish(std::move(r), volume(p), l);
}

CriterionResult grs_sufficient(const Polytope& p, const Lattice& l, bool relaxed) {
  if (p.dim() < 1 || p.dim() > 3) throw UnsupportedDimension("grs_sufficient supports d <= 3");
  ConvexHull hull = convex_input(p, p.dim(), "grs_sufficient");
  CriterionResult r;
  if (!symmetry_checks(hull, r)) return finish(std::move(r), volume(p), l);
  if (!relaxed) {
    for (const auto& v : hull.vertices)
      if (!contains(l, v)) r.failures.push_back("vertex " + to_string(v) + " is not in L");
  } else {
    const QVector t = centroid(hull.vertices);
    for (const auto& f : hull.facets) {
      QVector lambda = Rational(2) * (t - centroid(facet_points(hull, f)));
      if (!contains(l, lambda))
        r.failures.push_back("facet with normal " + to_string(f.plane.normal) + ": 2(t - t_F) = " +
                             to_string(lambda) + " is not in L");
    }
  }
  return finish(std::move(r), volume(p), l);
}

}  // namespace polytile
