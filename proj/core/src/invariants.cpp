#include "polytile/invariants.hpp"

#include <algorithm>
#include <string>
#include <thread>
#include <utility>

#include "polytile/errors.hpp"
#include "polytile/io.hpp"

namespace polytile {

Rational HadwigerReport::at(const FlagOrbitKey& key) const {
  auto it = entries.find(key);
  return it == entries.end() ? Rational(0) : it->second;
}

namespace {

using Sums = std::map<FlagOrbitKey, Rational>;

void accumulate_terms(const std::vector<Term>& terms, std::size_t begin, std::size_t end,
                      const Lattice& l, Sums& sums) {
  FlagKeyer keyer(l);
  for (std::size_t t = begin; t < end; ++t) {
    const Term& term = terms[t];
    for (std::size_t r = 0; r < term.simplex.dim(); ++r)
      for (const auto& chain : face_chains(term.simplex, r)) {
        ChainContribution c = keyer.contribution(term.coeff, chain);
        sums[std::move(c.key)] += c.value;
      }
  }
}

}  // namespace

HadwigerReport hadwiger_accumulate(const GroupElement& p, const Lattice& l,
                                   const AccumulateOptions& options) {
  if (p.dim() != l.dim()) throw DimensionMismatch("group element and lattice dimensions differ");
  const auto& terms = p.terms();
  const std::size_t workers = std::max<std::size_t>(1, std::min(options.threads, terms.size()));

  std::vector<Sums> partial(workers);
  if (workers == 1) {
    accumulate_terms(terms, 0, terms.size(), l, partial[0]);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (terms.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      std::size_t begin = w * chunk, end = std::min(terms.size(), begin + chunk);
      pool.emplace_back([&, w, begin, end] { accumulate_terms(terms, begin, end, l, partial[w]); });
    }
    for (auto& t : pool) t.join();
  }

  HadwigerReport report{p.dim(), l, std::move(partial[0])};
  for (std::size_t w = 1; w < workers; ++w)
    for (auto& [key, value] : partial[w]) report.entries[key] += value;
  // Prune only after the full reduction so the result is order independent.
  std::erase_if(report.entries, [](const auto& kv) { return kv.second == 0; });
  return report;
}

std::vector<std::pair<FlagOrbitKey, Rational>> sorted_entries(const HadwigerReport& report) {
  std::vector<std::pair<std::string, std::pair<FlagOrbitKey, Rational>>> keyed;
  for (const auto& [key, value] : report.entries) keyed.push_back({io::serialize(key), {key, value}});
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<FlagOrbitKey, Rational>> out;
  out.reserve(keyed.size());
  for (auto& k : keyed) out.push_back(std::move(k.second));
  return out;
}

Rational h_at_flag(const GroupElement& p, const FlagSpec& flag, const Lattice& l) {
  const std::size_t d = p.dim();
  if (l.dim() != d) throw DimensionMismatch("group element and lattice dimensions differ");
  const std::size_t levels = flag.levels.size();
  if (levels == 0 || levels > d) throw InvalidFlag("a flag needs between 1 and d levels");
  if (flag.positive_sides.size() != levels)
    throw InvalidFlag("one positive-side vector is required per level");
  const std::size_t r = d - levels;

  DirectionFlag df;
  df.r = r;
  for (std::size_t i = 0; i < levels; ++i) {
    const auto& level = flag.levels[i];
    if (level.point.size() != d || level.directions.cols() != d)
      throw InvalidFlag("flag level " + std::to_string(i) + " has the wrong ambient dimension");
    QMatrix basis = canonical_subspace_basis(level.directions);
    if (basis.rows() != r + i)
      throw InvalidFlag("flag level " + std::to_string(i) + " should have dimension " +
                        std::to_string(r + i));
    df.bases.push_back(std::move(basis));
  }
  const QMatrix whole = QMatrix::identity(d);
  for (std::size_t i = 0; i < levels; ++i) {
    const QMatrix& outer = i + 1 < levels ? df.bases[i + 1] : whole;
    QMatrix both = outer;
    for (const auto& row : df.bases[i].row_list()) both.append_row(row);
    if (rank(both) != outer.rows()) throw InvalidFlag("flag levels are not nested");
    if (i + 1 < levels) {
      QMatrix with_offset = outer;
      with_offset.append_row(flag.levels[i].point - flag.levels[i + 1].point);
      if (rank(with_offset) != outer.rows()) throw InvalidFlag("flag levels are not nested");
    }
    df.normals.push_back(canonical_normal(df.bases[i], outer));
  }

  int flips = 1;
  for (std::size_t i = 0; i < levels; ++i) {
    const QVector& side = flag.positive_sides[i];
    if (side.size() != d) throw InvalidFlag("positive-side vector has the wrong dimension");
    const QMatrix& outer = i + 1 < levels ? df.bases[i + 1] : whole;
    QMatrix check = outer;
    check.append_row(side);
    if (rank(check) != outer.rows()) throw InvalidFlag("positive-side vector leaves the next level");
    int s = sign(dot(side, df.normals[i]));
    if (s == 0) throw InvalidFlag("positive-side vector lies in its own level");
    flips *= s;
  }

  FlagOrbitKey key{df, reduce_mod(l, df.bases[0], flag.levels[0].point)};
  return Rational(flips) * hadwiger_accumulate(p, l).at(key);
}

TilingVerdict is_tiling(const GroupElement& p, const Lattice& l, const AccumulateOptions& options) {
  HadwigerReport report = hadwiger_accumulate(p, l, options);
  TilingVerdict verdict;
  if (!report.all_vanish()) {
    auto first = sorted_entries(report).front();
    verdict.witness = std::move(first.first);
    verdict.witness_value = std::move(first.second);
    return verdict;
  }
  Rational level = volume(p) / l.det();
  if (!is_integer(level) || !level.get_num().fits_slong_p())
    throw InternalError("all Hadwiger functionals vanish but volume/det = " + to_string(level) +
                        " is not an integer");
  verdict.tiles = true;
  verdict.level = level.get_num().get_si();
  return verdict;
}

EquivalenceVerdict group_equivalence(const GroupElement& p, const GroupElement& q, const Lattice& l,
                                     const AccumulateOptions& options) {
  if (p.dim() != q.dim()) throw DimensionMismatch("group elements of different dimension");
  EquivalenceVerdict v;
  v.volumes_equal = volume(p) == volume(q);
  HadwigerReport report = hadwiger_accumulate(p - q, l, options);
  if (!report.all_vanish()) {
    auto first = sorted_entries(report).front();
    v.witness = std::move(first.first);
    v.witness_value = std::move(first.second);
  }
  v.equivalent = v.volumes_equal && report.all_vanish();
  return v;
}

bool group_equivalent(const GroupElement& p, const GroupElement& q, const Lattice& l) {
  return group_equivalence(p, q, l).equivalent;
}

bool equidecomposable(const Polytope& a, const Polytope& b, const Lattice& l) {
  return group_equivalent(GroupElement::of(a), GroupElement::of(b), l);
}

}  // namespace polytile
