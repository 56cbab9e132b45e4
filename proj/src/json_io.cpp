#include "gkz/json_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "gkz/errors.hpp"

namespace gkz {

namespace {

Integer parse_integer(const Json& v, const std::string& where) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Integer(std::to_string(v.get<std::uint64_t>()));
    return Integer(std::to_string(v.get<std::int64_t>()));
  }
  if (v.is_string()) {
    Integer n;
    if (n.set_str(v.get<std::string>(), 10) != 0) throw SchemaError(where + ": not an integer");
    return n;
  }
  throw SchemaError(where + ": expected an integer");
}

const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object()) throw SchemaError("input: expected a JSON object");
  auto it = doc.find(name);
  if (it == doc.end()) throw SchemaError(std::string("input: missing field '") + name + "'");
  return *it;
}

}  // namespace

Json parse_json_text(const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos)
    throw SchemaError("empty input at byte 0");
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

PolytopePtr parse_polytope(const Json& doc) {
  const Json& dim = field(doc, "dim");
  if (!dim.is_number_integer() || dim.get<std::int64_t>() < 1)
    throw SchemaError("dim: expected a positive integer");
  auto g = static_cast<std::size_t>(dim.get<std::int64_t>());
  const Json& verts = field(doc, "vertices");
  if (!verts.is_array() || verts.empty()) throw SchemaError("vertices: expected a nonempty array");
  std::vector<IntVec> pts;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const Json& v = verts[i];
    std::string where = "vertices[" + std::to_string(i) + "]";
    if (!v.is_array() || v.size() != g) throw SchemaError(where + ": expected " + std::to_string(g) + " coordinates");
    IntVec p;
    for (std::size_t j = 0; j < g; ++j) p.push_back(parse_integer(v[j], where + "[" + std::to_string(j) + "]"));
    pts.push_back(std::move(p));
  }
  try {
    return make_polytope(pts);
  } catch (const PreconditionError& e) {
    throw SchemaError(std::string("vertices: ") + e.what());
  }
}

Paving parse_paving(const Json& doc, const PolytopePtr& q) {
  const Json& cells = field(doc, "cells");
  if (!cells.is_array() || cells.empty()) throw SchemaError("cells: expected a nonempty array");
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Json& c = cells[i];
    std::string where = "cells[" + std::to_string(i) + "]";
    if (!c.is_array() || c.empty()) throw SchemaError(where + ": expected a nonempty array");
    std::vector<std::size_t> cell;
    for (const auto& x : c) {
      if (!x.is_number_integer() || x.get<std::int64_t>() < 0 ||
          static_cast<std::size_t>(x.get<std::int64_t>()) >= q->size())
        throw SchemaError(where + ": point index out of range");
      cell.push_back(static_cast<std::size_t>(x.get<std::int64_t>()));
    }
    out.push_back(std::move(cell));
  }
  try {
    return Paving::from_cells(q, out);
  } catch (const InvalidPaving& e) {
    throw SchemaError(std::string("cells: ") + e.what());
  } catch (const PreconditionError& e) {
    throw SchemaError(std::string("cells: ") + e.what());
  }
}

Json to_json(const Rational& q) { return to_fraction_string(q); }

Json to_json(const Integer& n) {
  if (n.fits_slong_p()) return static_cast<std::int64_t>(n.get_si());
  return n.get_str();
}

Json to_json(const RatVec& v) { return to_json_list(v); }
Json to_json(const IntVec& v) { return to_json_list(v); }

Json to_json(const std::vector<std::size_t>& v) {
  Json out = Json::array();
  for (auto x : v) out.push_back(x);
  return out;
}

Json to_json(const Paving& p) {
  Json cells = Json::array();
  for (const auto& c : p.cells()) cells.push_back(to_json(c.vertices));
  return Json{{"cells", cells}};
}

}  // namespace gkz
