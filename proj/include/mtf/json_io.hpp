#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "mtf/branching.hpp"
#include "mtf/coding.hpp"
#include "mtf/enumeration.hpp"
#include "mtf/forest.hpp"

namespace mtf {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kForestSchema = "mtf.forest/1";
inline constexpr std::string_view kCodingSchema = "mtf.coding/1";
inline constexpr std::string_view kLawSchema = "mtf.law/1";
inline constexpr std::string_view kSignatureSchema = "mtf.signature/1";

/// Throws SchemaError unless j["schema"] equals `expected`.
void require_schema(const Json& j, std::string_view expected);

/// {"schema", "d", "trees": [{"color", "children": [...]}]}, colors 1-based.
Json forest_to_json(const TypedForest& f);
TypedForest forest_from_json(const Json& j);

/// Coding sequence plus the root type sequence needed to decode it.
struct CodingDocument {
  CodingSequence x;
  std::optional<RootTypeSequence> root_types;
};

/// {"schema", "d", "lengths", "increments": per type, a list of d-vectors,
/// "root_types" (optional, 1-based)}.
Json coding_to_json(const CodingSequence& x, const std::optional<RootTypeSequence>& c = std::nullopt);
CodingDocument coding_from_json(const Json& j);

/// {"schema", "d", "nu": [{"z1,...,zd": "p/q"}, ...]}.
Json law_to_json(const OffspringLaw& law);
OffspringLaw law_from_json(const Json& j);

/// A signature with the optional data some formulas need.
struct SignatureDocument {
  Signature sig;
  std::optional<IndegreeTuple> indegree;
  std::optional<Census> census;
  /// Single-type degree sequence for the labeled degree formula.
  std::optional<IntVec> degrees;
};

/// {"schema", "roots", "sizes", "offdiag", optional "indegree", "census"
/// (list of {"type", "offspring", "count"}) and "degrees"}. Types 1-based.
Json signature_to_json(const SignatureDocument& doc);
SignatureDocument signature_from_json(const Json& j);

/// Parses a comma-separated integer list such as "1,0,2".
IntVec parse_int_list(std::string_view text);
std::string format_int_list(const IntVec& v);

Json read_json_file(const std::string& path);
/// Two-space indented dump followed by a newline.
std::string render(const Json& j);

}  // namespace mtf
