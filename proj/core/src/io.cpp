#include "polytile/io.hpp"

#include <string>

#include "polytile/errors.hpp"

namespace polytile::io {

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const QVector& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

Json to_json(const QMatrix& m) {
  Json a = Json::array();
  for (const auto& r : m.row_list()) a.push_back(to_json(r));
  return a;
}

Json to_json(const Simplex& s) {
  Json a = Json::array();
  for (const auto& v : s.vertices()) a.push_back(to_json(v));
  return a;
}

Json to_json(const Polytope& p) {
  Json simplices = Json::array();
  for (const auto& s : p.simplices()) simplices.push_back(to_json(s));
  return {{"dim", p.dim()}, {"simplices", std::move(simplices)}};
}

Json to_json(const GroupElement& g) {
  Json terms = Json::array();
  for (const auto& t : g.terms()) terms.push_back({{"coeff", t.coeff}, {"simplex", to_json(t.simplex)}});
  return {{"dim", g.dim()}, {"terms", std::move(terms)}};
}

Json to_json(const Lattice& l) { return {{"basis", to_json(l.basis())}}; }

Json to_json(const FlagOrbitKey& key) {
  Json direction = Json::array();
  for (const auto& b : key.direction.bases) direction.push_back(to_json(b));
  Json normals = Json::array();
  for (const auto& n : key.direction.normals) normals.push_back(to_json(n));
  return {{"r", key.direction.r},
          {"direction", std::move(direction)},
          {"normals", std::move(normals)},
          {"anchor", to_json(key.anchor)}};
}

std::string serialize(const FlagOrbitKey& key) { return to_json(key).dump(); }

Json to_json(const HadwigerReport& report) {
  Json entries = Json::array();
  for (const auto& [key, value] : sorted_entries(report))
    entries.push_back({{"key", to_json(key)}, {"value", to_json(value)}});
  return entries;
}

Json to_json(const TilingVerdict& verdict) {
  Json j = {{"tiles", verdict.tiles}};
  if (verdict.level) j["level"] = *verdict.level;
  if (verdict.witness) {
    j["witness"] = to_json(*verdict.witness);
    j["witness_value"] = to_json(verdict.witness_value);
  }
  return j;
}

// ---------------------------------------------------------------------------

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  throw ParseError(path + ": expected a rational string or an integer");
}

QVector vector_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array of rationals");
  QVector v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(rational_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

QMatrix matrix_from_json(const Json& j, std::size_t cols, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array of rows");
  QMatrix m(cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string at = path + "[" + std::to_string(i) + "]";
    QVector row = vector_from_json(j[i], at);
    if (row.size() != cols)
      throw ParseError(at + ": expected " + std::to_string(cols) + " entries, got " +
                       std::to_string(row.size()));
    m.append_row(std::move(row));
  }
  return m;
}

Simplex simplex_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ParseError(path + ": expected an array of vertices");
  std::vector<QVector> vs;
  for (std::size_t i = 0; i < j.size(); ++i)
    vs.push_back(vector_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  try {
    return Simplex(std::move(vs));
  } catch (const InvalidSimplex& e) {
    throw InvalidSimplex(path + ": " + e.what());
  }
}

namespace {

std::size_t dim_from_json(const Json& j) {
  if (!j.contains("dim") || !j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0)
    throw ParseError("$.dim: expected a positive integer");
  return j["dim"].get<std::size_t>();
}

void check_dim(const Simplex& s, std::size_t dim, const std::string& path) {
  if (s.dim() != dim)
    throw DimensionMismatch(path + ": simplex has dimension " + std::to_string(s.dim()) +
                            ", document declares " + std::to_string(dim));
}

}  // namespace

Polytope polytope_from_json(const Json& j, Polytope::Validation validation) {
  if (!j.is_object()) throw ParseError("$: expected an object");
  std::size_t dim = dim_from_json(j);
  if (!j.contains("simplices") || !j["simplices"].is_array())
    throw ParseError("$.simplices: expected an array");
  std::vector<Simplex> simplices;
  for (std::size_t i = 0; i < j["simplices"].size(); ++i) {
    std::string path = "$.simplices[" + std::to_string(i) + "]";
    simplices.push_back(simplex_from_json(j["simplices"][i], path));
    check_dim(simplices.back(), dim, path);
  }
  return Polytope(dim, std::move(simplices), validation);
}

GroupElement group_element_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("$: expected an object");
  std::size_t dim = dim_from_json(j);
  if (!j.contains("terms") || !j["terms"].is_array()) throw ParseError("$.terms: expected an array");
  GroupElement g(dim);
  for (std::size_t i = 0; i < j["terms"].size(); ++i) {
    const Json& t = j["terms"][i];
    std::string path = "$.terms[" + std::to_string(i) + "]";
    if (!t.is_object() || !t.contains("coeff") || !t["coeff"].is_number_integer())
      throw ParseError(path + ".coeff: expected an integer");
    if (!t.contains("simplex")) throw ParseError(path + ".simplex: missing");
    Simplex s = simplex_from_json(t["simplex"], path + ".simplex");
    check_dim(s, dim, path + ".simplex");
    g.add(t["coeff"].get<std::int64_t>(), s);
  }
  return g;
}

Lattice lattice_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("basis") || !j["basis"].is_array() || j["basis"].empty())
    throw ParseError("$.basis: expected a nonempty array of rows");
  const Json& b = j["basis"];
  if (!b[0].is_array()) throw ParseError("$.basis[0]: expected an array");
  QMatrix m = matrix_from_json(b, b[0].size(), "$.basis");
  if (m.rows() != m.cols()) throw ParseError("$.basis: basis must be square");
  return Lattice(std::move(m));
}

Document document_from_json(const Json& j, const ParseOptions& options) {
  if (!j.is_object()) throw ParseError("$: expected an object");
  if (j.contains("basis")) return lattice_from_json(j);
  if (j.contains("terms")) return group_element_from_json(j);
  if (j.contains("simplices"))
    return polytope_from_json(j, options.skip_validation ? Polytope::Validation::kSkip
                                                         : Polytope::Validation::kCheck);
  throw ParseError("$: document has none of \"basis\", \"terms\", \"simplices\"");
}

Document parse_document(std::string_view text, const ParseOptions& options) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return document_from_json(j, options);
}

GroupElement as_group_element(const Document& doc) {
  if (const auto* p = std::get_if<Polytope>(&doc)) return GroupElement::of(*p);
  if (const auto* g = std::get_if<GroupElement>(&doc)) return *g;
  throw ParseError("expected a polytope or group element document, got a lattice");
}

}  // namespace polytile::io
