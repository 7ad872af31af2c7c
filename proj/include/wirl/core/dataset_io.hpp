#pragma once

#include <string>

#include "wirl/core/dataset.hpp"

#include <json.hpp>

namespace wirl::core {

/// Dataset file format: a JSON document with top-level `dim`, `variant`
/// ("flat" | "quad"), `metadata` {seed, generator, optional phi0, optional
/// b0} and `samples`, each {state_id, problem (tagged by "type"),
/// expert_feature}. Quad-valued vectors serialize as {"mat": packed upper
/// triangle, "vec": [...]}. Numbers round-trip exactly.
std::string serialize_dataset(const Dataset& dataset);

/// Inverse of serialize_dataset; malformed input raises ParseError with
/// the offending field in the message.
Dataset parse_dataset(const std::string& text);

/// Checks that every expert feature is attainable in its problem: equal
/// (within 1e-9 componentwise) to a listed element's embedding, or a
/// feasible selection's feature sum for knapsacks (brute force up to 20
/// items; larger instances are accepted with metadata.feasibility_unverified
/// set). Returns the dataset, with the flag possibly updated.
Dataset validate_dataset(const Dataset& dataset);

nlohmann::ordered_json param_to_json(const ParamVector& p);
ParamVector param_from_json(const nlohmann::json& j, Variant expected, int dim);

/// FNV-1a over the serialized bytes, as "fnv1a:<hex>".
std::string dataset_hash(const Dataset& dataset);

}  // namespace wirl::core
