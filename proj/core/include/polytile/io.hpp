#pragma once

// JSON documents for every core type. Rationals travel as "num/den" strings
// so values stay exact end to end.

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <variant>

#include "polytile/exact.hpp"
#include "polytile/flags.hpp"
#include "polytile/geom.hpp"
#include "polytile/invariants.hpp"
#include "polytile/lattice.hpp"

namespace polytile::io {

using Json = nlohmann::json;

Json to_json(const Rational& q);
Json to_json(const QVector& v);
Json to_json(const QMatrix& m);
Json to_json(const Simplex& s);
Json to_json(const Polytope& p);
Json to_json(const GroupElement& g);
Json to_json(const Lattice& l);
Json to_json(const FlagOrbitKey& key);
Json to_json(const HadwigerReport& report);
Json to_json(const TilingVerdict& verdict);

// Compact single-line form of a key; the report's sort order.
std::string serialize(const FlagOrbitKey& key);

// Parsing. Errors are ParseError (with a path like "simplices[2][0][1]") or
// the validation errors of the constructed type.
Rational rational_from_json(const Json& j, const std::string& path = "$");
QVector vector_from_json(const Json& j, const std::string& path = "$");
QMatrix matrix_from_json(const Json& j, std::size_t cols, const std::string& path = "$");
Simplex simplex_from_json(const Json& j, const std::string& path = "$");
Polytope polytope_from_json(const Json& j, Polytope::Validation validation = Polytope::Validation::kCheck);
GroupElement group_element_from_json(const Json& j);
Lattice lattice_from_json(const Json& j);

using Document = std::variant<Polytope, GroupElement, Lattice>;

struct ParseOptions {
  bool skip_validation = false;
};

// Dispatches on the top-level keys: "basis" → Lattice, "terms" → GroupElement,
// "simplices" → Polytope.
Document parse_document(std::string_view text, const ParseOptions& options = {});
Document document_from_json(const Json& j, const ParseOptions& options = {});

// Promotes a Polytope document to [P]; a Lattice document is an error.
GroupElement as_group_element(const Document& doc);

}  // namespace polytile::io
