#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "sahlq/algebra.hpp"
#include "sahlq/duality.hpp"
#include "sahlq/fomodel.hpp"

namespace sahlq {

// Accepts {elements, leq} or {elements, meet}; optional tables join, imp,
// fus (n×n), neg, box, dia (n) and constants zero, one (index or name). An
// FL_e file carries fus and may omit imp, which is then derived.
FiniteAlgebra algebra_from_json(const nlohmann::json& j);
nlohmann::ordered_json algebra_to_json(const FiniteAlgebra& a);

FinitePoset poset_from_json(const nlohmann::json& j);  // {n, leq, labels?}
nlohmann::ordered_json poset_to_json(const FinitePoset& p);

// {dom: [..], map: {"x": y, ...}} between the given posets; a list of [x, y]
// pairs is accepted for map too.
PartialMap partial_map_from_json(const nlohmann::json& j, const FinitePoset& src, const FinitePoset& dst);
nlohmann::ordered_json partial_map_to_json(const PartialMap& p);

nlohmann::json read_json_file(const std::string& path);
FiniteAlgebra load_algebra(const std::string& path);

// Stable FNV-1a digest used for report inputs and enumeration cache keys.
std::string fnv1a_hex(const std::string& data);
std::string enumeration_cache_key(const EnumerationConfig& cfg);

}  // namespace sahlq
