#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "banarith/disks.hpp"
#include "banarith/error.hpp"
#include "banarith/homology.hpp"
#include "banarith/nuclear.hpp"
#include "banarith/scalars.hpp"
#include "banarith/spaces.hpp"

namespace banarith::io {

using Json = nlohmann::json;

/// Canonical "num/den" string.
Json to_json(const Rational& q);
/// Accepts "n/d" strings, integer strings and JSON integers. Floats are rejected.
Rational rational_from(const Json& j, const std::string& where);
/// JSON integer when it fits in 64 bits, decimal string otherwise.
Json to_json(const Integer& n);
Integer integer_from(const Json& j, const std::string& where);
long long_from(const Json& j, const std::string& where);
std::vector<Rational> rationals_from(const Json& j, const std::string& where);
Json to_json(const std::vector<Rational>& v);

/// Parameterless rings serialize as their name; others as an object with "kind".
Json to_json(const BaseRing& ring);
BaseRing ring_from(const Json& j);

/// {"ring", "num", "den"}, or the digit form for p-adic scalars.
Json to_json(const Scalar& s);
Scalar scalar_from(const Json& j);

/// Exact values serialize as a single "num/den" string; enclosures as {"lower", "upper"}.
Json to_json(const NormValue& v);
NormValue norm_from(const Json& j);

Json to_json(const TailRule& rule);
TailRule tail_rule_from(const Json& j);
Json to_json(const WeightFunction& w);
/// Accepts a "num/den" constant, an array of values from index 0, or
/// {"table": [{"idx", "val"}], "values", "first", "tail"}.
WeightFunction weight_function_from(const Json& j);

Json to_json(const SpaceDescriptor& d);
SpaceDescriptor space_from(const Json& j);
Json to_json(const WeightedSeqElement& v);
WeightedSeqElement seq_element_from(const Json& j);

Json to_json(const PolydiskAlgebra& a);
PolydiskAlgebra algebra_from(const Json& j);
Json to_json(const Series& f);
Series series_from(const Json& j);
Json to_json(const SeriesFamily& v);
SeriesFamily family_from(const Json& j);

/// {"rows", "cols", "entries": row-major "num/den"}.
Json to_json(const Matrix& m);
Matrix matrix_from(const Json& j);

Json to_json(const BoundedMap& m);
BoundedMap bounded_map_from(const Json& j);
Json to_json(const NuclearCert& c);
/// Rejects certificates whose stored L disagrees with their terms and tail.
NuclearCert cert_from(const Json& j);
Json to_json(const SeriesVerdict& v);

Json to_json(const ChainComplex& k);
ChainComplex complex_from(const Json& j);
FiniteDiagram diagram_from(const Json& j);
TowerDiagram tower_from(const Json& j);
/// Explicit tuples, or the shorthands {"identity": {...}} and {"localization": {...}}.
CoverSpec cover_from(const Json& j);

struct Position {
  std::size_t byte = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

Position position_of(const std::string& text, std::size_t byte);

Json error_document(ErrorKind kind, const std::string& message, const std::optional<Position>& position = std::nullopt);

/// Stable text form: two-space indentation, sorted keys, trailing newline.
std::string dump(const Json& j);

}  // namespace banarith::io
