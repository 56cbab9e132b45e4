#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gkz/arith.hpp"
#include "gkz/paving.hpp"
#include "gkz/polytope.hpp"

namespace gkz {

using Json = nlohmann::ordered_json;

// Parses a file; malformed or empty input throws SchemaError carrying the
// byte position reported by the parser.
Json read_json_file(const std::string& path);
Json parse_json_text(const std::string& text);

// {"dim": g, "vertices": [[int,...],...]}; integers may also be given as
// decimal strings.
PolytopePtr parse_polytope(const Json& doc);
// {"cells": [[point-index,...],...]}, indices into the sorted lattice points.
Paving parse_paving(const Json& doc, const PolytopePtr& q);

Json to_json(const Rational& q);  // "num/den"
Json to_json(const Integer& n);   // a number when it fits in 64 bits
Json to_json(const RatVec& v);
Json to_json(const IntVec& v);
Json to_json(const std::vector<std::size_t>& v);
Json to_json(const Paving& p);    // {"cells": ...}

template <class T>
Json to_json_list(const std::vector<T>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

}  // namespace gkz
