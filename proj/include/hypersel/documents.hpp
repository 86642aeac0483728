#pragma once

// JSON documents for structures, partial selections, families, models and
// family systems. Readers are strict: unknown fields, wrong types and
// malformed fractions raise kMalformedDocument; semantic violations raise
// the library's usual codes. Writers emit subsets in ground order and
// choices in subset-rank order.

#include <string>

#include <nlohmann/json.hpp>

#include "hypersel/chains.hpp"
#include "hypersel/extension.hpp"
#include "hypersel/selection.hpp"
#include "hypersel/vietoris.hpp"

namespace hypersel {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "hypersel";
inline constexpr const char* kToolVersion = "0.1.0";

Json to_json(const SelectionStructure& s);
SelectionStructure selection_from_json(const Json& doc);

Json to_json(const PartialSelection& f);
PartialSelection partial_selection_from_json(const Json& doc);

Json to_json(const OpenFamily& family);
OpenFamily family_from_json(const Json& doc);

Json to_json(const ModelSpace& model);
ModelSpace model_from_json(const Json& doc);

Json to_json(const FamilySystem& system);
FamilySystem system_from_json(const Json& doc);

/// Subset as its sorted label list.
Json subset_to_json(const GroundSet& ground, Subset s);

Json parse_document(const std::string& text);

}  // namespace hypersel
