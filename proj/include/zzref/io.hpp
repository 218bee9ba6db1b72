#pragma once

// JSON module files. Two shapes share the header fields "n" and "type":
//   {"n": 3, "type": "><", "matrices": {"prime": 2, "dims": [...], "maps": [[...], ...]}}
//   {"n": 3, "type": "><", "diagram": [[b, d, multiplicity], ...]}
// Maps are row-major entry lists oriented as the type says.

#include <zzref/error.hpp>
#include <zzref/linalg.hpp>
#include <zzref/orientation.hpp>
#include <zzref/persistence_diagram.hpp>
#include <zzref/zigzag_module.hpp>

#include <json.hpp>

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace zzref {

using Json = nlohmann::ordered_json;
using ModuleFile = std::variant<ZigzagModule, SymbolicModule>;

namespace detail {

inline const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  return j.at(key);
}

template <class T>
T read_as(const Json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline long long read_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
  return j.get<long long>();
}

}  // namespace detail

/// Validates and converts a parsed JSON document.
inline ModuleFile module_from_json(const Json& j, Field default_field = Field{}) {
  if (!j.is_object()) throw ParseError("module file: top level must be an object");
  const long long n = detail::read_int(detail::require(j, "n", "module file"), "field 'n'");
  const auto type_str = detail::read_as<std::string>(detail::require(j, "type", "module file"), "field 'type'");
  if (n < 2) throw ParseError("field 'n': length must be >= 2");
  if (static_cast<long long>(type_str.size()) != n - 1)
    throw ParseError("field 'type': length " + std::to_string(type_str.size()) + " but n - 1 = " +
                     std::to_string(n - 1));
  OrientationVector type = OrientationVector::parse(type_str);

  const bool has_m = j.contains("matrices"), has_d = j.contains("diagram");
  if (has_m == has_d) throw ParseError("module file: exactly one of 'matrices' or 'diagram' is required");

  if (has_d) {
    const Json& pts = j.at("diagram");
    if (!pts.is_array()) throw ParseError("field 'diagram': expected an array");
    PersistenceDiagram d(static_cast<int>(n));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::string where = "field 'diagram[" + std::to_string(i) + "]'";
      const Json& p = pts[i];
      if (!p.is_array() || p.size() != 3) throw ParseError(where + ": expected [b, d, multiplicity]");
      const long long b = detail::read_int(p[0], where), e = detail::read_int(p[1], where),
                      m = detail::read_int(p[2], where);
      if (b < 1 || b > e || e > n) throw ParseError(where + ": need 1 <= b <= d <= n");
      if (m < 1) throw ParseError(where + ": multiplicity must be >= 1");
      d.add(Interval{static_cast<int>(b), static_cast<int>(e)}, static_cast<std::size_t>(m));
    }
    return SymbolicModule{std::move(type), std::move(d)};
  }

  const Json& mj = j.at("matrices");
  if (!mj.is_object()) throw ParseError("field 'matrices': expected an object");
  Field field = default_field;
  if (mj.contains("prime")) {
    const long long p = detail::read_int(mj.at("prime"), "field 'matrices.prime'");
    if (p < 2 || p > Field::kMaxPrime || !Field::is_prime(static_cast<Field::value_type>(p)))
      throw ParseError("field 'matrices.prime': " + std::to_string(p) + " is not a supported prime");
    field = Field(static_cast<Field::value_type>(p));
  }
  const Json& dj = detail::require(mj, "dims", "field 'matrices'");
  if (!dj.is_array() || static_cast<long long>(dj.size()) != n)
    throw ParseError("field 'matrices.dims': expected " + std::to_string(n) + " entries");
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < dj.size(); ++i) {
    const long long v = detail::read_int(dj[i], "field 'matrices.dims[" + std::to_string(i) + "]'");
    if (v < 0) throw ParseError("field 'matrices.dims[" + std::to_string(i) + "]': negative dimension");
    dims.push_back(static_cast<std::size_t>(v));
  }
  const Json& maps_j = detail::require(mj, "maps", "field 'matrices'");
  if (!maps_j.is_array() || static_cast<long long>(maps_j.size()) != n - 1)
    throw ParseError("field 'matrices.maps': expected " + std::to_string(n - 1) + " matrices");
  std::vector<Matrix> maps;
  for (int i = 1; i < n; ++i) {
    const std::string where = "field 'matrices.maps[" + std::to_string(i - 1) + "]'";
    const std::size_t a = dims[static_cast<std::size_t>(i - 1)], b = dims[static_cast<std::size_t>(i)];
    const std::size_t rows = type[i] == Arrow::forward ? b : a;
    const std::size_t cols = type[i] == Arrow::forward ? a : b;
    const Json& entries = maps_j[static_cast<std::size_t>(i - 1)];
    if (!entries.is_array() || entries.size() != rows * cols)
      throw ParseError(where + ": expected " + std::to_string(rows * cols) + " row-major entries for a " +
                       std::to_string(rows) + "x" + std::to_string(cols) + " map");
    std::vector<long long> vals;
    for (std::size_t e = 0; e < entries.size(); ++e) vals.push_back(detail::read_int(entries[e], where));
    maps.push_back(Matrix::from_entries(rows, cols, vals, field));
  }
  return ZigzagModule(std::move(type), std::move(dims), std::move(maps), field);
}

inline ModuleFile parse_module_text(const std::string& text, Field default_field = Field{}) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return module_from_json(j, default_field);
}

inline ModuleFile parse_module_file(const std::string& path, Field default_field = Field{}) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_module_text(ss.str(), default_field);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline Json to_json(const SymbolicModule& s) {
  Json j;
  j["n"] = s.length();
  j["type"] = s.type.str();
  Json pts = Json::array();
  for (const auto& p : s.diagram.points()) pts.push_back({p.interval.birth, p.interval.death, p.multiplicity});
  j["diagram"] = std::move(pts);
  return j;
}

inline Json to_json(const ZigzagModule& v) {
  Json j;
  j["n"] = v.length();
  j["type"] = v.type().str();
  Json m;
  m["prime"] = v.field().prime();
  m["dims"] = std::vector<std::size_t>(v.dims().begin(), v.dims().end());
  Json maps = Json::array();
  for (const auto& mat : v.maps()) maps.push_back(std::vector<Field::value_type>(mat.entries().begin(), mat.entries().end()));
  m["maps"] = std::move(maps);
  j["matrices"] = std::move(m);
  return j;
}

inline Json to_json(const ModuleFile& f) {
  return std::visit([](const auto& x) { return to_json(x); }, f);
}

/// Canonical text form: two-space indent, trailing newline.
inline std::string serialize(const ModuleFile& f) { return to_json(f).dump(2) + "\n"; }

}  // namespace zzref
