#pragma once

// JSON artifacts.
//
//   element   "a" | [x, y] | {"inl": x} | {"inr": x} | {"<arg key>": value, ...}
//   degree    "p/q" (written in lowest terms); input also takes "0.25" and 0, 1
//   object    {"U": [..], "X": [..], "alpha": [[deg, ..], ..], "orientation": "standard"}
//   morphism  {"f": {u: v, ..}, "g": {y: x, ..}}      endpoints supplied separately
//   net       {"events": [..], "conditions": [..], "pre": [[..]], "post": [[..]]}
//   simulation{"f": {e: e', ..}, "F": {b': b, ..}}
//   marking   {"marking": {b: deg, ..}}
//   frame     {"elements": [..], "le": [[a, b], ..], "top": t, "bottom": z}
//   system    frame fields plus {"points": [..], "sat": [[..], ..]}
//
// Map tables and markings are keyed by Element::key(). Errors carry the byte
// offset (syntax) or a JSON pointer (schema).

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dialnet/dialectica.hpp"
#include "dialnet/error.hpp"
#include "dialnet/finset.hpp"
#include "dialnet/fnets.hpp"
#include "dialnet/simulator.hpp"
#include "dialnet/toposys.hpp"

namespace dialnet::io {

using Json = nlohmann::ordered_json;

inline Json parse(std::string_view text, const std::string& source = "<input>") {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(source + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

inline Json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

/// Canonical text: two-space indent, trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path + ": cannot write file");
  out << dump(j);
}

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw ParseError((path.empty() ? std::string("/") : path) + ": " + what);
}

inline const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

inline const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

inline std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }
inline std::string child(const std::string& path, std::string_view key) { return path + "/" + std::string(key); }

/// Element key -> index over a whole carrier.
class KeyIndex {
public:
  explicit KeyIndex(const FinSet& s) : set_(s) {
    for (std::size_t i = 0; i < s.size(); ++i) index_.emplace(s.element(i).key(), i);
  }
  std::size_t at(const std::string& key, const std::string& path, const char* what) const {
    const auto it = index_.find(key);
    if (it == index_.end()) fail(path, std::string("unknown ") + what + " '" + key + "'");
    return it->second;
  }
  const FinSet& set() const { return set_; }

private:
  FinSet set_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace detail

// ---------------------------------------------------------------- scalars

inline Element element_from_json(const Json& j, const std::string& path = "") {
  if (j.is_string()) return Element::atom(j.get<std::string>());
  if (j.is_array()) {
    if (j.size() != 2) detail::fail(path, "a pair element needs exactly two entries");
    return Element::pair(element_from_json(j[0], detail::child(path, 0)),
                         element_from_json(j[1], detail::child(path, 1)));
  }
  if (j.is_object()) {
    if (j.size() == 1 && j.contains("inl")) return Element::inl(element_from_json(j["inl"], path + "/inl"));
    if (j.size() == 1 && j.contains("inr")) return Element::inr(element_from_json(j["inr"], path + "/inr"));
    std::vector<std::pair<Element, Element>> entries;
    for (const auto& [k, v] : j.items()) {
      entries.emplace_back(Element::atom(k), element_from_json(v, detail::child(path, k)));
    }
    return Element::table(std::move(entries));
  }
  detail::fail(path, "expected an element (string, pair, injection or table)");
}

inline Json element_to_json(const Element& e) {
  switch (e.kind()) {
    case Element::Kind::atom:
      return e.name();
    case Element::Kind::pair:
      return Json::array({element_to_json(e.first()), element_to_json(e.second())});
    case Element::Kind::inl:
      return Json{{"inl", element_to_json(e.payload())}};
    case Element::Kind::inr:
      return Json{{"inr", element_to_json(e.payload())}};
    case Element::Kind::table: {
      Json out = Json::object();
      for (std::size_t k = 0; k < e.table_size(); ++k) out[e.table_arg(k).key()] = element_to_json(e.table_value(k));
      return out;
    }
  }
  return nullptr;
}

inline Degree degree_from_json(const Json& j, const std::string& path = "") {
  try {
    if (j.is_string()) return Degree::parse(j.get<std::string>());
    if (j.is_number_unsigned() || j.is_number_integer()) {
      const auto v = j.get<std::int64_t>();
      return Degree(v, 1);
    }
  } catch (const DegreeError& e) {
    throw DegreeError((path.empty() ? std::string("/") : path) + ": " + e.what());
  }
  detail::fail(path, "expected a degree string such as \"1/2\"");
}

inline Json degree_to_json(Degree d) { return d.str(); }

inline FinSet carrier_from_json(const Json& j, const std::string& path) {
  detail::array(j, path);
  std::vector<Element> elems;
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < j.size(); ++i) {
    elems.push_back(element_from_json(j[i], detail::child(path, i)));
    if (!seen.emplace(elems.back().key(), i).second) {
      detail::fail(detail::child(path, i), "duplicate element '" + elems.back().key() + "'");
    }
  }
  return FinSet(std::move(elems));
}

inline Json carrier_to_json(const FinSet& s) {
  Json out = Json::array();
  for (std::size_t i = 0; i < s.size(); ++i) out.push_back(element_to_json(s.element(i)));
  return out;
}

inline std::vector<Degree> matrix_from_json(const Json& j, std::size_t rows, std::size_t cols,
                                            const std::string& path) {
  detail::array(j, path);
  if (j.size() != rows) {
    detail::fail(path, "expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
  }
  std::vector<Degree> out;
  out.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto rp = detail::child(path, r);
    const Json& row = detail::array(j[r], rp);
    if (row.size() != cols) {
      detail::fail(rp, "expected " + std::to_string(cols) + " entries, found " + std::to_string(row.size()));
    }
    for (std::size_t c = 0; c < cols; ++c) out.push_back(degree_from_json(row[c], detail::child(rp, c)));
  }
  return out;
}

inline Json matrix_to_json(std::span<const Degree> m, std::size_t rows, std::size_t cols) {
  Json out = Json::array();
  for (std::size_t r = 0; r < rows; ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < cols; ++c) row.push_back(degree_to_json(m[r * cols + c]));
    out.push_back(std::move(row));
  }
  return out;
}

/// A total table {key: value} from `domain` to `codomain`.
inline FinMap map_from_json(const Json& j, const FinSet& domain, const FinSet& codomain, const std::string& path) {
  if (!j.is_object()) detail::fail(path, "expected a map table object");
  const detail::KeyIndex dom(domain), cod(codomain);
  std::vector<std::optional<std::size_t>> table(domain.size());
  for (const auto& [k, v] : j.items()) {
    const auto kp = detail::child(path, k);
    const std::size_t i = dom.at(k, kp, "argument");
    if (table[i]) detail::fail(kp, "argument given twice");
    table[i] = cod.at(element_from_json(v, kp).key(), kp, "value");
  }
  std::vector<std::size_t> out(domain.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!table[i]) detail::fail(path, "no value for argument '" + domain.element(i).key() + "'");
    out[i] = *table[i];
  }
  return FinMap(domain, codomain, std::move(out));
}

inline Json map_to_json(const FinMap& f) {
  Json out = Json::object();
  for (std::size_t i = 0; i < f.domain().size(); ++i) {
    out[f.domain().element(i).key()] = element_to_json(f.codomain().element(f(i)));
  }
  return out;
}

// ---------------------------------------------------------------- Dialectica

inline DialObject object_from_json(const Json& j) {
  const FinSet u = carrier_from_json(detail::field(j, "U", ""), "/U");
  const FinSet x = carrier_from_json(detail::field(j, "X", ""), "/X");
  Orientation o = Orientation::standard;
  if (j.contains("orientation")) {
    const Json& oj = j["orientation"];
    if (!oj.is_string()) detail::fail("/orientation", "expected \"standard\" or \"opposite\"");
    try {
      o = parse_orientation(oj.get<std::string>());
    } catch (const Error& e) {
      detail::fail("/orientation", e.what());
    }
  }
  return DialObject(u, x, matrix_from_json(detail::field(j, "alpha", ""), u.size(), x.size(), "/alpha"), o);
}

inline Json object_to_json(const DialObject& a) {
  Json out = Json::object();
  out["U"] = carrier_to_json(a.left());
  out["X"] = carrier_to_json(a.right());
  out["alpha"] = matrix_to_json(a.relation(), a.left().size(), a.right().size());
  out["orientation"] = std::string(to_string(a.orientation()));
  return out;
}

/// (f : U -> V, g : Y -> X) of a morphism file between the given objects.
inline std::pair<FinMap, FinMap> morphism_maps_from_json(const Json& j, const DialObject& a, const DialObject& b) {
  return {map_from_json(detail::field(j, "f", ""), a.left(), b.left(), "/f"),
          map_from_json(detail::field(j, "g", ""), b.right(), a.right(), "/g")};
}

inline Json morphism_to_json(const DialMorphism& m) {
  Json out = Json::object();
  out["f"] = map_to_json(m.f());
  out["g"] = map_to_json(m.g());
  return out;
}

// ---------------------------------------------------------------- nets

inline FuzzyNet net_from_json(const Json& j) {
  const FinSet e = carrier_from_json(detail::field(j, "events", ""), "/events");
  const FinSet b = carrier_from_json(detail::field(j, "conditions", ""), "/conditions");
  return FuzzyNet(e, b, matrix_from_json(detail::field(j, "pre", ""), e.size(), b.size(), "/pre"),
                  matrix_from_json(detail::field(j, "post", ""), e.size(), b.size(), "/post"));
}

inline Json net_to_json(const FuzzyNet& n) {
  Json out = Json::object();
  out["events"] = carrier_to_json(n.events());
  out["conditions"] = carrier_to_json(n.conditions());
  out["pre"] = matrix_to_json(n.pre_fibre().relation(), n.events().size(), n.conditions().size());
  out["post"] = matrix_to_json(n.post_fibre().relation(), n.events().size(), n.conditions().size());
  return out;
}

/// (f : E -> E', F : B' -> B) of a simulation file between the given nets.
inline std::pair<FinMap, FinMap> simulation_maps_from_json(const Json& j, const FuzzyNet& n, const FuzzyNet& m) {
  return {map_from_json(detail::field(j, "f", ""), n.events(), m.events(), "/f"),
          map_from_json(detail::field(j, "F", ""), m.conditions(), n.conditions(), "/F")};
}

inline Json simulation_to_json(const NetMorphism& m) {
  Json out = Json::object();
  out["f"] = map_to_json(m.events_map());
  out["F"] = map_to_json(m.conditions_map());
  return out;
}

inline Marking marking_from_json(const Json& j, const FinSet& conditions) {
  const Json& mj = detail::field(j, "marking", "");
  if (!mj.is_object()) detail::fail("/marking", "expected an object keyed by condition");
  const detail::KeyIndex idx(conditions);
  std::vector<std::optional<Degree>> vals(conditions.size());
  for (const auto& [k, v] : mj.items()) {
    const auto kp = detail::child("/marking", k);
    vals[idx.at(k, kp, "condition")] = degree_from_json(v, kp);
  }
  std::vector<Degree> out(conditions.size());
  for (std::size_t b = 0; b < out.size(); ++b) {
    if (!vals[b]) detail::fail("/marking", "no degree for condition '" + conditions.element(b).key() + "'");
    out[b] = *vals[b];
  }
  return Marking(conditions, std::move(out));
}

inline Json marking_to_json(const Marking& m) {
  Json inner = Json::object();
  for (std::size_t b = 0; b < m.size(); ++b) inner[m.conditions().element(b).key()] = degree_to_json(m[b]);
  return inner;
}

/// One JSON line per step.
inline Json trace_step_to_json(std::size_t step, const FuzzyNet& n, const TraceStep& s) {
  Json out = Json::object();
  out["step"] = step;
  out["event"] = element_to_json(n.events().element(s.event));
  out["enabledness"] = degree_to_json(s.enabledness);
  out["marking"] = marking_to_json(s.marking_after);
  return out;
}

// ---------------------------------------------------------------- topology

/// Parses a frame; `le` lists generating pairs and is closed reflexively and
/// transitively before validation.
inline Frame frame_from_json(const Json& j) {
  const FinSet elems = carrier_from_json(detail::field(j, "elements", ""), "/elements");
  const detail::KeyIndex idx(elems);
  const std::size_t n = elems.size();
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) le[a][a] = true;
  const Json& pairs = detail::array(detail::field(j, "le", ""), "/le");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto p = detail::child("/le", i);
    if (!pairs[i].is_array() || pairs[i].size() != 2) detail::fail(p, "expected a pair [a, b] meaning a <= b");
    le[idx.at(element_from_json(pairs[i][0], p).key(), p, "open")]
      [idx.at(element_from_json(pairs[i][1], p).key(), p, "open")] = true;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (le[a][k] && le[k][b]) le[a][b] = true;
      }
    }
  }
  Frame fr(elems, le);
  for (const char* key : {"top", "bottom"}) {
    if (!j.contains(key)) continue;
    const std::string p = std::string("/") + key;
    const std::size_t given = idx.at(element_from_json(j[key], p).key(), p, "open");
    const std::size_t actual = std::string_view(key) == "top" ? fr.top() : fr.bottom();
    if (given != actual) detail::fail(p, "does not match the order, which gives '" + fr.name(actual) + "'");
  }
  return fr;
}

/// A system before the axioms are checked.
struct RawSystem {
  FinSet points;
  Frame frame;
  std::vector<Degree> sat;
};

inline RawSystem raw_system_from_json(const Json& j) {
  RawSystem s;
  s.frame = frame_from_json(j);
  s.points = carrier_from_json(detail::field(j, "points", ""), "/points");
  s.sat = matrix_from_json(detail::field(j, "sat", ""), s.points.size(), s.frame.size(), "/sat");
  return s;
}

/// Throws InvalidSystem if the axioms fail.
inline FuzzyTopSystem system_from_json(const Json& j) {
  auto raw = raw_system_from_json(j);
  return FuzzyTopSystem(std::move(raw.points), std::move(raw.frame), std::move(raw.sat));
}

}  // namespace dialnet::io
