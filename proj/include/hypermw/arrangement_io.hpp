#pragma once

// Arrangement files: {"field": "Q" | "GF(p)", "dim": N,
// "hyperplanes": [["c0", "c1", ..., "cN"], ...]}, entries as strings or
// integers. The export document bundles the arrangement with its basis,
// ranks, circuit relations and degree-one products.

#include <string>

#include <json.hpp>

#include "hypermw/arrangement.hpp"

namespace hypermw {

Arrangement arrangement_from_json(const nlohmann::json& j);
/// Accepts either an arrangement document or an export document.
Arrangement load_arrangement(const std::string& path);
nlohmann::json arrangement_to_json(const Arrangement& a);
void save_arrangement(const Arrangement& a, const std::string& path);

nlohmann::json export_json(const Arrangement& a);

} // namespace hypermw
