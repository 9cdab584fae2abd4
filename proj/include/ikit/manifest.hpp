#pragma once

// JSON manifests: typed decoding of every structure kind, canonical
// re-encoding, and the check runner behind the `ikit` tool.
//
//   { "kind": ..., "name": ..., "body": {...}, "checks": [...] }
//
// Canonical text is the encoder's output dumped with two-space indent,
// sorted keys and a trailing newline; decode followed by encode reproduces
// a canonical file byte for byte.

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ikit/adjunction.hpp"
#include "ikit/error.hpp"
#include "ikit/fuzzy.hpp"
#include "ikit/interior.hpp"
#include "ikit/kuratowski.hpp"
#include "ikit/order.hpp"
#include "ikit/set_subobjects.hpp"
#include "ikit/sieve.hpp"

namespace ikit::manifest {

using json = nlohmann::json;
using NamePair = std::pair<std::string, std::string>;
using Names = std::vector<std::string>;

// ---------------------------------------------------------------------------
// Body types

struct LatticeSpec {
  enum class Form { Chain, Powerset, Explicit, Catalog };
  Form form = Form::Chain;
  Names elements;             // chain order, powerset ground, or explicit carrier
  std::vector<NamePair> leq;  // Explicit only
  std::string catalog;        // Catalog only: "m3" or "n5"
};

struct PosetBody {
  Names elements;
  std::vector<NamePair> leq;
};

struct MonotoneMapBody {
  LatticeSpec dom, cod;
  std::vector<NamePair> map;
  std::optional<std::vector<NamePair>> partner;  // candidate right adjoint of map
};

struct FunctionBody {
  Names dom, cod;
  std::vector<NamePair> map;
};

struct InteriorBody {
  LatticeSpec carrier;
  std::vector<NamePair> table;
};

using SieveNames = Names;
using SieveTable = std::map<std::string, std::vector<std::pair<SieveNames, SieveNames>>>;

struct SieveInteriorBody {
  RawCategory category;
  std::variant<std::string, SieveTable> family;  // "discrete", "trivial" or tables
  std::optional<Names> e_morphisms;
};

struct GLMonoidBody {
  LatticeSpec carrier;
  std::variant<std::string, std::vector<std::array<std::string, 3>>> tensor;  // "min", "lukasiewicz"
};

struct FuzzyEntry {
  Names set;
  std::string level;
  Names value;
};

struct FuzzyInteriorBody {
  GLMonoidBody monoid;
  Names ground;
  std::variant<std::string, std::vector<FuzzyEntry>> table;  // "identity", "collapse"
  std::optional<std::string> i7;                             // "constant" or "fixpoint"
};

struct SetTopologyBody {
  Names ground;
  std::vector<Names> opens;
};

struct SiteTopologyBody {
  RawCategory category;
  std::map<std::string, std::vector<SieveNames>> covers;
  std::optional<Names> e_morphisms;
};

using Body = std::variant<PosetBody, LatticeSpec, MonotoneMapBody, FunctionBody, InteriorBody,
                          RawCategory, SieveInteriorBody, GLMonoidBody, FuzzyInteriorBody,
                          SetTopologyBody, SiteTopologyBody>;

struct Manifest {
  std::string kind;
  std::string name;
  Body body;
  Names checks;
};

inline const std::vector<std::string>& kinds() {
  static const std::vector<std::string> k{"poset",         "lattice",        "monotone-map",
                                          "function",      "interior",       "category",
                                          "sieve-interior", "gl-monoid",     "fuzzy-interior",
                                          "topology-candidate"};
  return k;
}

// ---------------------------------------------------------------------------
// Decoding

namespace detail {

/// A JSON value together with its JSON-pointer path, for error messages.
class Node {
 public:
  Node(const json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(0, expected + " at " + (path_.empty() ? std::string("/") : path_));
  }

  const json& raw() const { return *j_; }
  const std::string& path() const { return path_; }

  bool is_object() const { return j_->is_object(); }
  bool is_string() const { return j_->is_string(); }

  void require_keys(const std::set<std::string>& required,
                    const std::set<std::string>& optional = {}) const {
    if (!j_->is_object()) fail("object");
    for (const auto& k : required)
      if (!j_->contains(k)) fail("key \"" + k + "\"");
    for (const auto& [k, v] : j_->items())
      if (!required.count(k) && !optional.count(k)) fail("no key \"" + k + "\"");
  }

  Node operator[](const std::string& key) const {
    if (!j_->is_object() || !j_->contains(key)) fail("key \"" + key + "\"");
    return Node(j_->at(key), path_ + "/" + key);
  }
  std::optional<Node> optional(const std::string& key) const {
    if (!j_->contains(key)) return std::nullopt;
    return (*this)[key];
  }

  std::string str() const {
    if (!j_->is_string()) fail("string");
    return j_->get<std::string>();
  }

  std::vector<Node> items() const {
    if (!j_->is_array()) fail("array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < j_->size(); ++i)
      out.emplace_back(j_->at(i), path_ + "/" + std::to_string(i));
    return out;
  }

  Names strings() const {
    Names out;
    for (const auto& n : items()) out.push_back(n.str());
    return out;
  }

  Names tuple(std::size_t arity) const {
    auto s = strings();
    if (s.size() != arity) fail("array of " + std::to_string(arity) + " strings");
    return s;
  }

  std::vector<NamePair> pairs() const {
    std::vector<NamePair> out;
    for (const auto& n : items()) {
      auto t = n.tuple(2);
      out.emplace_back(t[0], t[1]);
    }
    return out;
  }

 private:
  const json* j_;
  std::string path_;
};

inline LatticeSpec decode_lattice(const Node& n) {
  if (!n.is_object()) n.fail("lattice object");
  LatticeSpec s;
  if (n.raw().contains("chain")) {
    n.require_keys({"chain"});
    s.form = LatticeSpec::Form::Chain;
    s.elements = n["chain"].strings();
  } else if (n.raw().contains("powerset")) {
    n.require_keys({"powerset"});
    s.form = LatticeSpec::Form::Powerset;
    s.elements = n["powerset"].strings();
  } else if (n.raw().contains("catalog")) {
    n.require_keys({"catalog"});
    s.form = LatticeSpec::Form::Catalog;
    s.catalog = n["catalog"].str();
    if (s.catalog != "m3" && s.catalog != "n5") n["catalog"].fail("\"m3\" or \"n5\"");
  } else {
    n.require_keys({"elements", "leq"});
    s.form = LatticeSpec::Form::Explicit;
    s.elements = n["elements"].strings();
    s.leq = n["leq"].pairs();
  }
  return s;
}

inline RawCategory decode_category(const Node& n) {
  n.require_keys({"objects", "morphisms", "identities", "compose"});
  RawCategory r;
  r.objects = n["objects"].strings();
  for (const auto& m : n["morphisms"].items()) {
    auto t = m.tuple(3);
    r.morphisms.push_back({t[0], t[1], t[2]});
  }
  r.identities = n["identities"].pairs();
  for (const auto& m : n["compose"].items()) {
    auto t = m.tuple(3);
    r.compose.push_back({t[0], t[1], t[2]});
  }
  return r;
}

inline std::map<std::string, std::vector<SieveNames>> decode_covers(const Node& n) {
  if (!n.is_object()) n.fail("object keyed by object name");
  std::map<std::string, std::vector<SieveNames>> out;
  for (const auto& [k, v] : n.raw().items()) {
    auto& list = out[k];
    for (const auto& s : n[k].items()) list.push_back(s.strings());
  }
  return out;
}

inline GLMonoidBody decode_monoid(const Node& n) {
  n.require_keys({"carrier", "tensor"});
  GLMonoidBody b;
  b.carrier = decode_lattice(n["carrier"]);
  auto t = n["tensor"];
  if (t.is_string()) {
    b.tensor = t.str();
  } else {
    std::vector<std::array<std::string, 3>> rows;
    for (const auto& r : t.items()) {
      auto v = r.tuple(3);
      rows.push_back({v[0], v[1], v[2]});
    }
    b.tensor = std::move(rows);
  }
  return b;
}

inline Body decode_body(const std::string& kind, const Node& n) {
  if (kind == "poset") {
    n.require_keys({"elements", "leq"});
    return PosetBody{n["elements"].strings(), n["leq"].pairs()};
  }
  if (kind == "lattice") return decode_lattice(n);
  if (kind == "monotone-map") {
    n.require_keys({"dom", "cod", "map"}, {"partner"});
    MonotoneMapBody b{decode_lattice(n["dom"]), decode_lattice(n["cod"]), n["map"].pairs(), {}};
    if (auto p = n.optional("partner")) b.partner = p->pairs();
    return b;
  }
  if (kind == "function") {
    n.require_keys({"dom", "cod", "map"});
    return FunctionBody{n["dom"].strings(), n["cod"].strings(), n["map"].pairs()};
  }
  if (kind == "interior") {
    n.require_keys({"carrier", "table"});
    return InteriorBody{decode_lattice(n["carrier"]), n["table"].pairs()};
  }
  if (kind == "category") return decode_category(n);
  if (kind == "sieve-interior") {
    n.require_keys({"category", "family"}, {"e_morphisms"});
    SieveInteriorBody b;
    b.category = decode_category(n["category"]);
    auto f = n["family"];
    if (f.is_string()) {
      b.family = f.str();
      if (f.str() != "discrete" && f.str() != "trivial") f.fail("\"discrete\" or \"trivial\"");
    } else {
      if (!f.is_object()) f.fail("object keyed by object name");
      SieveTable t;
      for (const auto& [k, v] : f.raw().items())
        for (const auto& row : f[k].items()) {
          auto cells = row.items();
          if (cells.size() != 2) row.fail("[sieve, interior sieve]");
          t[k].emplace_back(cells[0].strings(), cells[1].strings());
        }
      b.family = std::move(t);
    }
    if (auto e = n.optional("e_morphisms")) b.e_morphisms = e->strings();
    return b;
  }
  if (kind == "gl-monoid") return decode_monoid(n);
  if (kind == "fuzzy-interior") {
    n.require_keys({"monoid", "ground", "table"}, {"i7"});
    FuzzyInteriorBody b;
    b.monoid = decode_monoid(n["monoid"]);
    b.ground = n["ground"].strings();
    auto t = n["table"];
    if (t.is_string()) {
      b.table = t.str();
      if (t.str() != "identity" && t.str() != "collapse") t.fail("\"identity\" or \"collapse\"");
    } else {
      std::vector<FuzzyEntry> rows;
      for (const auto& row : t.items()) {
        auto cells = row.items();
        if (cells.size() != 3) row.fail("[fuzzy set, level, fuzzy set]");
        rows.push_back({cells[0].strings(), cells[1].str(), cells[2].strings()});
      }
      b.table = std::move(rows);
    }
    if (auto r = n.optional("i7")) {
      b.i7 = r->str();
      if (*b.i7 != "constant" && *b.i7 != "fixpoint") r->fail("\"constant\" or \"fixpoint\"");
    }
    return b;
  }
  if (kind == "topology-candidate") {
    if (n.is_object() && n.raw().contains("category")) {
      n.require_keys({"category", "covers"}, {"e_morphisms"});
      SiteTopologyBody b{decode_category(n["category"]), decode_covers(n["covers"]), {}};
      if (auto e = n.optional("e_morphisms")) b.e_morphisms = e->strings();
      return b;
    }
    n.require_keys({"ground", "opens"});
    SetTopologyBody b{n["ground"].strings(), {}};
    for (const auto& o : n["opens"].items()) b.opens.push_back(o.strings());
    return b;
  }
  throw InputError("UnknownKind", kind);
}

inline std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace detail

inline Manifest decode(const json& j) {
  detail::Node root(j, "");
  root.require_keys({"kind", "name", "body", "checks"});
  Manifest m;
  m.kind = root["kind"].str();
  bool known = false;
  for (const auto& k : kinds()) known = known || k == m.kind;
  if (!known) root["kind"].fail("one of the manifest kinds");
  m.name = root["name"].str();
  m.body = detail::decode_body(m.kind, root["body"]);
  m.checks = root["checks"].strings();
  return m;
}

inline Manifest parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(detail::line_of(text, e.byte == 0 ? 0 : e.byte - 1), "well-formed JSON");
  }
  return decode(j);
}

// ---------------------------------------------------------------------------
// Encoding

namespace detail {

inline json encode_pairs(const std::vector<NamePair>& ps) {
  json a = json::array();
  for (const auto& [x, y] : ps) a.push_back({x, y});
  return a;
}

inline json encode_lattice(const LatticeSpec& s) {
  switch (s.form) {
    case LatticeSpec::Form::Chain: return {{"chain", s.elements}};
    case LatticeSpec::Form::Powerset: return {{"powerset", s.elements}};
    case LatticeSpec::Form::Catalog: return {{"catalog", s.catalog}};
    case LatticeSpec::Form::Explicit: break;
  }
  return {{"elements", s.elements}, {"leq", encode_pairs(s.leq)}};
}

inline json encode_category(const RawCategory& r) {
  json morphisms = json::array(), compose = json::array();
  for (const auto& a : r.morphisms) morphisms.push_back({a.name, a.dom, a.cod});
  for (const auto& c : r.compose) compose.push_back({c.g, c.f, c.gf});
  return {{"objects", r.objects},
          {"morphisms", morphisms},
          {"identities", encode_pairs(r.identities)},
          {"compose", compose}};
}

inline json encode_monoid(const GLMonoidBody& b) {
  json t;
  if (const auto* s = std::get_if<std::string>(&b.tensor)) {
    t = *s;
  } else {
    t = json::array();
    for (const auto& r : std::get<1>(b.tensor)) t.push_back({r[0], r[1], r[2]});
  }
  return {{"carrier", encode_lattice(b.carrier)}, {"tensor", t}};
}

struct BodyEncoder {
  json operator()(const PosetBody& b) const {
    return {{"elements", b.elements}, {"leq", encode_pairs(b.leq)}};
  }
  json operator()(const LatticeSpec& s) const { return encode_lattice(s); }
  json operator()(const MonotoneMapBody& b) const {
    json j{{"dom", encode_lattice(b.dom)}, {"cod", encode_lattice(b.cod)},
           {"map", encode_pairs(b.map)}};
    if (b.partner) j["partner"] = encode_pairs(*b.partner);
    return j;
  }
  json operator()(const FunctionBody& b) const {
    return {{"dom", b.dom}, {"cod", b.cod}, {"map", encode_pairs(b.map)}};
  }
  json operator()(const InteriorBody& b) const {
    return {{"carrier", encode_lattice(b.carrier)}, {"table", encode_pairs(b.table)}};
  }
  json operator()(const RawCategory& r) const { return encode_category(r); }
  json operator()(const SieveInteriorBody& b) const {
    json family;
    if (const auto* s = std::get_if<std::string>(&b.family)) {
      family = *s;
    } else {
      family = json::object();
      for (const auto& [o, rows] : std::get<SieveTable>(b.family)) {
        json a = json::array();
        for (const auto& [s, v] : rows) a.push_back({s, v});
        family[o] = a;
      }
    }
    json j{{"category", encode_category(b.category)}, {"family", family}};
    if (b.e_morphisms) j["e_morphisms"] = *b.e_morphisms;
    return j;
  }
  json operator()(const GLMonoidBody& b) const { return encode_monoid(b); }
  json operator()(const FuzzyInteriorBody& b) const {
    json table;
    if (const auto* s = std::get_if<std::string>(&b.table)) {
      table = *s;
    } else {
      table = json::array();
      for (const auto& e : std::get<1>(b.table)) table.push_back({e.set, e.level, e.value});
    }
    json j{{"monoid", encode_monoid(b.monoid)}, {"ground", b.ground}, {"table", table}};
    if (b.i7) j["i7"] = *b.i7;
    return j;
  }
  json operator()(const SetTopologyBody& b) const {
    json opens = json::array();
    for (const auto& o : b.opens) opens.push_back(o);
    return {{"ground", b.ground}, {"opens", opens}};
  }
  json operator()(const SiteTopologyBody& b) const {
    json covers = json::object();
    for (const auto& [o, list] : b.covers) {
      json a = json::array();
      for (const auto& s : list) a.push_back(s);
      covers[o] = a;
    }
    json j{{"category", encode_category(b.category)}, {"covers", covers}};
    if (b.e_morphisms) j["e_morphisms"] = *b.e_morphisms;
    return j;
  }
};

}  // namespace detail

inline json encode(const Manifest& m) {
  return {{"kind", m.kind},
          {"name", m.name},
          {"body", std::visit(detail::BodyEncoder{}, m.body)},
          {"checks", m.checks}};
}

/// Two-space indent, keys sorted (nlohmann's default object ordering),
/// trailing newline.
inline std::string canonical_text(const json& j) { return j.dump(2) + "\n"; }

inline std::string format(const Manifest& m) { return canonical_text(encode(m)); }

// ---------------------------------------------------------------------------
// Building library structures

inline LatticePtr build_lattice(const LatticeSpec& s) {
  switch (s.form) {
    case LatticeSpec::Form::Chain: return chain_lattice(s.elements);
    case LatticeSpec::Form::Powerset: return powerset_lattice(s.elements);
    case LatticeSpec::Form::Catalog: return s.catalog == "m3" ? diamond_m3() : pentagon_n5();
    case LatticeSpec::Form::Explicit: break;
  }
  return as_complete_lattice(validate_poset(s.elements, s.leq));
}

/// A total table over `dom` from (element, value) name pairs.
inline std::vector<Elem> table_from_pairs(const CompleteLattice& dom, const CompleteLattice& cod,
                                          const std::vector<NamePair>& pairs) {
  std::vector<Elem> t(dom.size(), dom.size() + cod.size());
  std::vector<bool> seen(dom.size(), false);
  for (const auto& [x, y] : pairs) {
    const Elem ix = dom.index(x);
    if (seen[ix]) throw InputError("DuplicateAssignment", x);
    seen[ix] = true;
    t[ix] = cod.index(y);
  }
  for (Elem x = 0; x < dom.size(); ++x)
    if (!seen[x]) throw InputError("PartialFunction", dom.name(x));
  return t;
}

inline MonotoneMap map_from_pairs(const LatticePtr& dom, const LatticePtr& cod,
                                  const std::vector<NamePair>& pairs) {
  return MonotoneMap(dom, cod, table_from_pairs(*dom, *cod, pairs));
}

inline json map_to_json(const MonotoneMap& m) {
  json a = json::array();
  for (Elem x = 0; x < m.dom()->size(); ++x) a.push_back({m.dom()->name(x), m.cod()->name(m(x))});
  return a;
}

inline json lattice_to_json(const CompleteLattice& l) {
  std::vector<NamePair> leq;
  for (Elem a = 0; a < l.size(); ++a)
    for (Elem b = 0; b < l.size(); ++b)
      if (l.leq(a, b)) leq.emplace_back(l.name(a), l.name(b));
  return {{"elements", l.names()}, {"leq", detail::encode_pairs(leq)}};
}

inline GLMonoid build_monoid(const GLMonoidBody& b) {
  auto l = build_lattice(b.carrier);
  if (const auto* s = std::get_if<std::string>(&b.tensor)) {
    if (*s == "min") return min_monoid(l);
    if (*s != "lukasiewicz") throw InputError("UnknownTensor", *s);
    if (b.carrier.form != LatticeSpec::Form::Chain)
      throw InputError("UnknownTensor", "lukasiewicz needs a chain carrier");
    return lukasiewicz_monoid(l);
  }
  const std::size_t n = l->size();
  std::vector<Elem> t(n * n, n);
  for (const auto& r : std::get<1>(b.tensor)) {
    const Elem a = l->index(r[0]), c = l->index(r[1]);
    if (t[a * n + c] != n) throw InputError("DuplicateAssignment", r[0] + " (x) " + r[1]);
    t[a * n + c] = l->index(r[2]);
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem c = 0; c < n; ++c)
      if (t[a * n + c] == n)
        throw InputError("PartialFunction", l->name(a) + " (x) " + l->name(c));
  return GLMonoid(l, std::move(t));
}

inline FuzzySet fuzzy_from_names(const FuzzySpace& sp, const Names& values) {
  if (values.size() != sp.ground().size())
    throw InputError("TableShape", "fuzzy set needs one level per ground point");
  std::vector<Elem> v;
  for (const auto& s : values) v.push_back(sp.levels().index(s));
  return sp.encode(v);
}

inline json fuzzy_to_json(const FuzzySpace& sp, FuzzySet f) {
  json a = json::array();
  for (Elem v : sp.values(f)) a.push_back(sp.levels().name(v));
  return a;
}

inline FuzzyInterior build_fuzzy_interior(const FuzzyInteriorBody& b) {
  auto space = std::make_shared<const FuzzySpace>(
      std::make_shared<const GLMonoid>(build_monoid(b.monoid)), b.ground);
  const auto& sp = *space;
  const std::size_t k = sp.levels().size();
  std::vector<FuzzySet> table(sp.size() * k);
  if (const auto* s = std::get_if<std::string>(&b.table)) {
    for (FuzzySet f = 0; f < sp.size(); ++f)
      for (Elem a = 0; a < k; ++a) {
        const bool keep = *s == "identity" || a == sp.levels().bottom() || f == sp.top();
        table[f * k + a] = keep ? f : sp.bottom();
      }
    return FuzzyInterior(space, std::move(table));
  }
  std::vector<bool> seen(table.size(), false);
  for (const auto& e : std::get<1>(b.table)) {
    const std::size_t p = fuzzy_from_names(sp, e.set) * k + sp.levels().index(e.level);
    if (seen[p]) throw InputError("DuplicateAssignment", "fuzzy interior entry");
    seen[p] = true;
    table[p] = fuzzy_from_names(sp, e.value);
  }
  for (std::size_t p = 0; p < seen.size(); ++p)
    if (!seen[p])
      throw InputError("PartialFunction",
                       sp.name(p / k) + " at level " + sp.levels().name(p % k));
  return FuzzyInterior(space, std::move(table));
}

inline Sieve sieve_from_names(const FinCategory& c, Obj at, const SieveNames& names) {
  Sieve s{at, {}};
  for (const auto& n : names) s.arrows.push_back(c.morphism_index(n));
  std::sort(s.arrows.begin(), s.arrows.end());
  if (std::adjacent_find(s.arrows.begin(), s.arrows.end()) != s.arrows.end())
    throw InputError("DuplicateElement", "morphism repeated in a sieve");
  if (!is_sieve(c, s)) throw InputError("NotASieve", format_set(names));
  return s;
}

inline json sieve_to_json(const FinCategory& c, const Sieve& s) {
  json a = json::array();
  for (Mor m : s.arrows) a.push_back(c.morphism_name(m));
  return a;
}

inline json covers_to_json(const FinCategory& c, const GrothTopology& j) {
  json out = json::object();
  for (Obj o = 0; o < c.object_count(); ++o) {
    json a = json::array();
    for (const auto& s : j.covers[o]) a.push_back(sieve_to_json(c, s));
    out[c.object_name(o)] = a;
  }
  return out;
}

inline SieveInteriorFamily build_family(const FinCategory& c, const SieveInteriorBody& b,
                                        const std::vector<SieveLattice>& lattices) {
  if (const auto* s = std::get_if<std::string>(&b.family))
    return *s == "discrete" ? discrete_family(lattices) : trivial_family(lattices);
  const auto& table = std::get<SieveTable>(b.family);
  for (const auto& [o, rows] : table) c.object_index(o);
  SieveInteriorFamily fam;
  for (Obj o = 0; o < c.object_count(); ++o) {
    const auto& sl = lattices[o];
    auto it = table.find(c.object_name(o));
    if (it == table.end()) throw InputError("PartialFunction", "no table at " + c.object_name(o));
    std::vector<Elem> t(sl.sieves.size(), sl.sieves.size());
    for (const auto& [from, to] : it->second) {
      const Elem i = sl.index_of(sieve_from_names(c, o, from));
      if (t[i] != sl.sieves.size()) throw InputError("DuplicateAssignment", format_set(from));
      t[i] = sl.index_of(sieve_from_names(c, o, to));
    }
    for (Elem i = 0; i < t.size(); ++i)
      if (t[i] == sl.sieves.size())
        throw InputError("PartialFunction", sieve_name(c, sl.sieves[i]) + " at " + c.object_name(o));
    fam.at.emplace_back(sl.lattice, std::move(t));
  }
  return fam;
}

inline std::set<Mor> e_class(const FinCategory& c, const std::optional<Names>& names) {
  if (!names) throw InputError("MissingField", "check_e_premise needs e_morphisms");
  std::set<Mor> out;
  for (const auto& n : *names) out.insert(c.morphism_index(n));
  return out;
}

// ---------------------------------------------------------------------------
// Running checks

struct RunOptions {
  std::optional<std::size_t> max_size;  // overrides every enumeration cap
  std::size_t cap(std::size_t fallback) const { return max_size.value_or(fallback); }
};

enum class Outcome { Pass, Fail, Cap };

struct CheckResult {
  std::string name;
  Outcome outcome = Outcome::Pass;
  Verdict verdict;
  std::string cap_message;
  std::optional<json> output;
};

struct Report {
  std::vector<CheckResult> checks;

  std::size_t passed() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.outcome == Outcome::Pass;
    return n;
  }
  std::size_t failed() const { return checks.size() - passed(); }

  /// 0 all pass, 1 some verdict failed, 3 no failure but a cap was hit.
  int exit_code() const {
    bool cap = false;
    for (const auto& c : checks) {
      if (c.outcome == Outcome::Fail) return 1;
      cap = cap || c.outcome == Outcome::Cap;
    }
    return cap ? 3 : 0;
  }

  json to_json() const {
    json a = json::array();
    for (const auto& c : checks) {
      json e{{"name", c.name}};
      switch (c.outcome) {
        case Outcome::Pass: e["verdict"] = "pass"; break;
        case Outcome::Fail:
          e["verdict"] = "fail";
          e["law"] = c.verdict.law;
          e["witness"] = c.verdict.witness;
          break;
        case Outcome::Cap:
          e["verdict"] = "cap-exceeded";
          e["witness"] = Names{c.cap_message};
          break;
      }
      if (c.output) e["output"] = *c.output;
      a.push_back(std::move(e));
    }
    return {{"checks", a}, {"summary", {{"passed", passed()}, {"failed", failed()}}}};
  }

  std::string to_text() const {
    std::string out;
    for (const auto& c : checks) {
      out += c.name + ": ";
      switch (c.outcome) {
        case Outcome::Pass: out += "pass"; break;
        case Outcome::Fail: out += "FAIL " + c.verdict.to_string(); break;
        case Outcome::Cap: out += "CAP " + c.cap_message; break;
      }
      out += "\n";
      if (c.output) out += "  output: " + c.output->dump() + "\n";
    }
    out += "summary: " + std::to_string(passed()) + " passed, " + std::to_string(failed()) +
           " failed\n";
    return out;
  }
};

/// What a single check produces: a verdict and, for constructions, the
/// constructed object in input-format JSON.
struct Step {
  Verdict verdict;
  std::optional<json> output;
};

namespace detail {

using StepFn = std::function<Step()>;
using CheckTable = std::vector<std::pair<std::string, StepFn>>;

inline Step verdict_only(Verdict v) { return {std::move(v), std::nullopt}; }
inline Step built(json out) { return {Verdict::pass(), std::move(out)}; }

struct TableBuilder {
  const RunOptions& opts;

  CheckTable operator()(const PosetBody& b) const {
    return {{"validate_poset",
             [&b] { return built(lattice_to_json_poset(validate_poset(b.elements, b.leq))); }},
            {"as_complete_lattice", [&b] {
               return built(lattice_to_json(*as_complete_lattice(validate_poset(b.elements, b.leq))));
             }}};
  }

  static json lattice_to_json_poset(const FinPoset& p) {
    std::vector<NamePair> leq;
    for (Elem a = 0; a < p.size(); ++a)
      for (Elem c = 0; c < p.size(); ++c)
        if (p.leq(a, c)) leq.emplace_back(p.name(a), p.name(c));
    return {{"elements", p.names()}, {"leq", encode_pairs(leq)}};
  }

  CheckTable operator()(const LatticeSpec& s) const {
    return {{"as_complete_lattice", [&s] { return built(lattice_to_json(*build_lattice(s))); }}};
  }

  CheckTable operator()(const MonotoneMapBody& b) const {
    const auto& o = opts;
    auto map = [&b] {
      return map_from_pairs(build_lattice(b.dom), build_lattice(b.cod), b.map);
    };
    auto pair = [&b, map] {
      auto phi = map();
      if (!b.partner) throw InputError("MissingField", "this check needs a partner map");
      return AdjointPair{phi, map_from_pairs(phi.cod(), phi.dom(), *b.partner)};
    };
    return {
        {"check_monotone", [map] { return verdict_only(check_monotone(map())); }},
        {"preserves_meets",
         [map, &o] { return verdict_only(preserves_meets(map(), o.cap(kDefaultSubsetCap))); }},
        {"preserves_joins",
         [map, &o] { return verdict_only(preserves_joins(map(), o.cap(kDefaultSubsetCap))); }},
        {"synthesize_left_adjoint",
         [map, &o] {
           return built({{"map", map_to_json(synthesize_left_adjoint(map(), o.cap(kDefaultSubsetCap)))}});
         }},
        {"synthesize_right_adjoint",
         [map, &o] {
           return built({{"map", map_to_json(synthesize_right_adjoint(map(), o.cap(kDefaultSubsetCap)))}});
         }},
        {"is_adjoint_pair",
         [pair] {
           auto p = pair();
           return verdict_only(is_adjoint_pair(p.left, p.right));
         }},
        {"check_preservation",
         [pair, &o] { return verdict_only(check_preservation(pair(), o.cap(kDefaultSubsetCap))); }},
    };
  }

  CheckTable operator()(const FunctionBody& b) const {
    const auto& o = opts;
    auto fn = [&b] { return FinFunction::from_pairs(b.dom, b.cod, b.map); };
    return {
        {"triple_of",
         [fn] {
           auto t = triple_of(fn());
           return built({{"existential", map_to_json(t.existential)},
                         {"inverse", map_to_json(t.inverse)},
                         {"universal", map_to_json(t.universal)}});
         }},
        {"check_preservation",
         [fn, &o] {
           auto t = triple_of(fn());
           const std::size_t cap = o.cap(kDefaultSubsetCap);
           if (auto v = check_preservation({t.existential, t.inverse}, cap); !v)
             return verdict_only(v);
           return verdict_only(check_preservation({t.inverse, t.universal}, cap));
         }},
        {"check_mono_epi_laws",
         [fn] {
           auto r = check_mono_epi_laws(fn());
           Verdict v;
           for (const LawReport* l : {&r.preimage_of_empty, &r.image_of_empty,
                                      &r.preimage_of_image, &r.image_of_preimage})
             if (l->applies && !l->conclusion) {
               v = l->conclusion;
               break;
             }
           return Step{v, json{{"injective", r.injective}, {"surjective", r.surjective}}};
         }},
    };
  }

  CheckTable operator()(const InteriorBody& b) const {
    auto op = [&b] {
      auto l = build_lattice(b.carrier);
      return InteriorOp(l, table_from_pairs(*l, *l, b.table));
    };
    return {
        {"check_interior", [op] { return verdict_only(check_interior(op())); }},
        {"check_kuratowski", [op] { return verdict_only(check_kuratowski(op())); }},
        {"open_elements",
         [op] {
           auto i = op();
           json a = json::array();
           for (Elem e : open_elements(i)) a.push_back(i.carrier()->name(e));
           return built(a);
         }},
        {"topology_from_interior",
         [op] {
           auto t = topology_from_interior(op());
           json opens = json::array();
           for (Subset s : t.opens) {
             Names items;
             for (std::size_t x = 0; x < t.ground.size(); ++x)
               if (has_bit(s, x)) items.push_back(t.ground[x]);
             opens.push_back(items);
           }
           return built({{"ground", t.ground}, {"opens", opens}});
         }},
    };
  }

  CheckTable operator()(const RawCategory& r) const {
    const auto& o = opts;
    return {
        {"validate_category",
         [&r] {
           validate_category(r);
           return verdict_only(Verdict::pass());
         }},
        {"all_sieves",
         [&r, &o] {
           auto c = validate_category(r);
           json out = json::object();
           for (Obj x = 0; x < c.object_count(); ++x) {
             json a = json::array();
             for (const auto& s : all_sieves(c, x, o.cap(kDefaultSieveCap))) a.push_back(sieve_to_json(c, s));
             out[c.object_name(x)] = a;
           }
           return built(out);
         }},
        {"maximal_sieve",
         [&r] {
           auto c = validate_category(r);
           json out = json::object();
           for (Obj x = 0; x < c.object_count(); ++x)
             out[c.object_name(x)] = sieve_to_json(c, maximal_sieve(c, x));
           return built(out);
         }},
    };
  }

  CheckTable operator()(const SieveInteriorBody& b) const {
    const auto& o = opts;
    struct Ctx {
      FinCategory c;
      std::vector<SieveLattice> lattices;
      SieveInteriorFamily fam;
    };
    auto ctx = [&b, &o] {
      auto c = validate_category(b.category);
      auto ls = sieve_lattices(c, o.cap(kDefaultSieveCap));
      auto fam = build_family(c, b, ls);
      return Ctx{std::move(c), std::move(ls), std::move(fam)};
    };
    return {
        {"check_sieve_interior",
         [ctx] {
           auto x = ctx();
           return verdict_only(check_sieve_interior(x.c, x.fam, x.lattices));
         }},
        {"open_sieve_topology",
         [ctx] {
           auto x = ctx();
           return built(covers_to_json(x.c, open_sieve_topology(x.c, x.fam, x.lattices)));
         }},
        {"check_grothendieck",
         [ctx, &o] {
           auto x = ctx();
           return verdict_only(check_grothendieck(
               x.c, open_sieve_topology(x.c, x.fam, x.lattices), o.cap(kDefaultSieveCap)));
         }},
        {"check_e_premise",
         [ctx, &b] {
           auto x = ctx();
           return verdict_only(check_e_premise(x.c, open_sieve_topology(x.c, x.fam, x.lattices),
                                               e_class(x.c, b.e_morphisms)));
         }},
    };
  }

  CheckTable operator()(const GLMonoidBody& b) const {
    const auto& o = opts;
    return {{"check_gl_monoid",
             [&b, &o] { return verdict_only(check_gl_monoid(build_monoid(b), o.cap(kDefaultSubsetCap))); }}};
  }

  CheckTable operator()(const FuzzyInteriorBody& b) const {
    const auto& o = opts;
    auto options = [&b, &o] {
      FuzzyOptions f;
      f.cap = o.cap(kDefaultFuzzyCap);
      if (b.i7 && *b.i7 == "fixpoint") f.i7 = I7Reading::FixpointOnFamily;
      return f;
    };
    auto grades = [](const FuzzyTopology& t) {
      json a = json::array();
      for (FuzzySet f = 0; f < t.space->size(); ++f)
        a.push_back({fuzzy_to_json(*t.space, f), t.space->levels().name(t.grade[f])});
      return a;
    };
    return {
        {"check_gl_monoid",
         [&b, &o] {
           return verdict_only(check_gl_monoid(build_monoid(b.monoid), o.cap(kDefaultSubsetCap)));
         }},
        {"check_fuzzy_interior",
         [&b, options] { return verdict_only(check_fuzzy_interior(build_fuzzy_interior(b), options())); }},
        {"fuzzy_topology_from_interior",
         [&b, options, grades] {
           return built(grades(fuzzy_topology_from_interior(build_fuzzy_interior(b), options())));
         }},
        {"check_fuzzy_topology",
         [&b, options] {
           const auto opt = options();
           auto t = fuzzy_topology_from_interior(build_fuzzy_interior(b), opt);
           return verdict_only(check_fuzzy_topology(t, opt.cap));
         }},
    };
  }

  CheckTable operator()(const SetTopologyBody& b) const {
    auto topo = [&b] {
      std::map<std::string, std::size_t> idx;
      for (std::size_t i = 0; i < b.ground.size(); ++i)
        if (!idx.emplace(b.ground[i], i).second) throw InputError("DuplicateElement", b.ground[i]);
      if (b.ground.size() > 8) throw CapExceeded("topology-candidate", b.ground.size(), 8);
      std::vector<Subset> opens;
      for (const auto& o : b.opens) {
        Subset s = 0;
        for (const auto& x : o) {
          auto it = idx.find(x);
          if (it == idx.end()) throw InputError("UnknownElement", x);
          s |= Subset{1} << it->second;
        }
        opens.push_back(s);
      }
      return Topology(b.ground, std::move(opens));
    };
    return {
        {"check_topology", [topo] { return verdict_only(check_topology(topo())); }},
        {"interior_from_topology",
         [topo] {
           auto i = interior_from_topology(topo());
           json a = json::array();
           for (Elem m = 0; m < i.carrier()->size(); ++m)
             a.push_back({i.carrier()->name(m), i.carrier()->name(i(m))});
           return built(a);
         }},
    };
  }

  CheckTable operator()(const SiteTopologyBody& b) const {
    const auto& o = opts;
    auto site = [&b] {
      auto c = validate_category(b.category);
      GrothTopology j;
      j.covers.resize(c.object_count());
      for (const auto& [name, list] : b.covers) {
        const Obj x = c.object_index(name);
        for (const auto& s : list) j.covers[x].push_back(sieve_from_names(c, x, s));
      }
      return std::make_pair(std::move(c), std::move(j));
    };
    return {
        {"check_grothendieck",
         [site, &o] {
           auto [c, j] = site();
           return verdict_only(check_grothendieck(c, j, o.cap(kDefaultSieveCap)));
         }},
        {"check_e_premise",
         [site, &b] {
           auto [c, j] = site();
           return verdict_only(check_e_premise(c, j, e_class(c, b.e_morphisms)));
         }},
    };
  }
};

}  // namespace detail

/// Check names accepted for a manifest, in documentation order.
inline Names available_checks(const Manifest& m) {
  RunOptions opts;
  Names out;
  for (const auto& [name, fn] : std::visit(detail::TableBuilder{opts}, m.body)) out.push_back(name);
  return out;
}

/// Runs the requested checks in order. Unknown check names are rejected
/// before anything runs (InputError UnknownCheck). LawViolation becomes a
/// failing verdict and CapExceeded a cap outcome; InputError propagates.
inline Report run(const Manifest& m, const RunOptions& opts = {}) {
  const auto table = std::visit(detail::TableBuilder{opts}, m.body);
  std::vector<const detail::StepFn*> steps;
  for (const auto& name : m.checks) {
    const detail::StepFn* fn = nullptr;
    for (const auto& [n, f] : table)
      if (n == name) fn = &f;
    if (!fn) throw InputError("UnknownCheck", name);
    steps.push_back(fn);
  }
  Report r;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    CheckResult c;
    c.name = m.checks[i];
    try {
      auto s = (*steps[i])();
      c.verdict = std::move(s.verdict);
      c.output = std::move(s.output);
      c.outcome = c.verdict ? Outcome::Pass : Outcome::Fail;
    } catch (const LawViolation& e) {
      c.verdict = e.verdict();
      c.outcome = Outcome::Fail;
    } catch (const CapExceeded& e) {
      c.cap_message = e.what();
      c.outcome = Outcome::Cap;
    }
    r.checks.push_back(std::move(c));
  }
  return r;
}

}  // namespace ikit::manifest
