#pragma once

// JSON encodings of surfaces, classes, collections, helices and quivers.
// Readers throw Error{input, ...} on malformed documents.

#include <json.hpp>
#include <string>

#include "hx/web.hpp"

namespace hx {

using Json = nlohmann::json;

Json to_json(const Surface& s);
Json to_json(const ChernClass& v);
Json to_json(const ExcObject& e);
Json to_json(const Collection& c);
Json to_json(const Helix& h);
Json to_json(const BlockStructure& b);
Json to_json(const Levelling& phi);
Json to_json(const BMatrix& b);
Json to_json(const Quiver& q);
Json to_json(const HeightFunction& hf);
Json to_json(const CrossCheck& report);
Json to_json(const WebGraph& web);

Surface surface_from_json(const Json& j);
ChernClass class_from_json(const Json& j, const Surface& s);
ExcObject object_from_json(const Json& j, const Surface& s);
// Accepts Collection or Helix documents; validates exceptionality.
Collection collection_from_json(const Json& j);
Helix helix_from_json(const Json& j);
BlockStructure blocks_from_json(const Json& j);
BMatrix bmatrix_from_json(const Json& j);

Json parse_json(const std::string& text);

std::string web_to_dot(const WebGraph& web);

}  // namespace hx
