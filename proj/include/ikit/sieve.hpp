#pragma once

// Small finite categories given by composition tables, sieves (right
// ideals of morphisms with a common codomain), interior operators on sieve
// lattices, and Grothendieck-topology checks for the open sieves.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ikit/adjunction.hpp"
#include "ikit/error.hpp"
#include "ikit/interior.hpp"
#include "ikit/order.hpp"

namespace ikit {

/// Category as written in an input file, before validation.
struct RawCategory {
  struct Arrow {
    std::string name, dom, cod;
  };
  struct Composite {
    std::string g, f, gf;  // g . f = gf
  };

  std::vector<std::string> objects;
  std::vector<Arrow> morphisms;
  std::vector<std::pair<std::string, std::string>> identities;  // object, morphism
  std::vector<Composite> compose;
};

using Obj = std::size_t;
using Mor = std::size_t;

class FinCategory {
 public:
  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t morphism_count() const noexcept { return names_.size(); }
  const std::string& object_name(Obj o) const { return objects_.at(o); }
  const std::string& morphism_name(Mor m) const { return names_.at(m); }
  Obj object_index(const std::string& n) const { return lookup(object_lookup_, n); }
  Mor morphism_index(const std::string& n) const { return lookup(morphism_lookup_, n); }

  Obj dom(Mor m) const { return dom_[m]; }
  Obj cod(Mor m) const { return cod_[m]; }
  Mor identity(Obj o) const { return identity_[o]; }
  bool composable(Mor g, Mor f) const { return cod_[f] == dom_[g]; }
  /// g . f; requires composable(g, f).
  Mor compose(Mor g, Mor f) const { return *comp_[g * morphism_count() + f]; }

  /// Morphisms with codomain o, in declaration order.
  const std::vector<Mor>& into(Obj o) const { return into_[o]; }

  const RawCategory& raw() const noexcept { return raw_; }

 private:
  friend FinCategory validate_category(const RawCategory& raw);

  static std::size_t lookup(const std::unordered_map<std::string, std::size_t>& m,
                            const std::string& n) {
    auto it = m.find(n);
    if (it == m.end()) throw InputError("UnknownName", n);
    return it->second;
  }

  RawCategory raw_;
  std::vector<std::string> objects_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> object_lookup_;
  std::unordered_map<std::string, std::size_t> morphism_lookup_;
  std::vector<Obj> dom_, cod_;
  std::vector<Mor> identity_;
  std::vector<std::optional<Mor>> comp_;
  std::vector<std::vector<Mor>> into_;
};

/// Checks, in order: composition defined on exactly the composable pairs,
/// identity laws, composites having the right domain and codomain, and
/// associativity. The first failure is thrown as a LawViolation
/// (CompositionClosure(g,f), IdentityLaw(f), Associativity(f,g,h)).
inline FinCategory validate_category(const RawCategory& raw) {
  FinCategory c;
  c.raw_ = raw;
  for (const auto& o : raw.objects) {
    if (!c.object_lookup_.emplace(o, c.objects_.size()).second)
      throw InputError("DuplicateObject", o);
    c.objects_.push_back(o);
  }
  if (c.objects_.empty()) throw InputError("EmptyCategory", "no objects");
  c.into_.resize(c.objects_.size());
  for (const auto& a : raw.morphisms) {
    if (!c.morphism_lookup_.emplace(a.name, c.names_.size()).second)
      throw InputError("DuplicateMorphism", a.name);
    c.names_.push_back(a.name);
    c.dom_.push_back(c.object_index(a.dom));
    c.cod_.push_back(c.object_index(a.cod));
    c.into_[c.cod_.back()].push_back(c.names_.size() - 1);
  }
  const std::size_t n = c.names_.size();

  c.identity_.assign(c.objects_.size(), n);
  for (const auto& [o, m] : raw.identities) {
    const Obj oi = c.object_index(o);
    const Mor mi = c.morphism_index(m);
    if (c.identity_[oi] != n) throw InputError("DuplicateIdentity", o);
    if (c.dom_[mi] != oi || c.cod_[mi] != oi) throw LawViolation("IdentityLaw", {m});
    c.identity_[oi] = mi;
  }
  for (Obj o = 0; o < c.objects_.size(); ++o)
    if (c.identity_[o] == n) throw InputError("MissingIdentity", c.objects_[o]);

  c.comp_.assign(n * n, std::nullopt);
  for (const auto& e : raw.compose) {
    const Mor g = c.morphism_index(e.g);
    const Mor f = c.morphism_index(e.f);
    const Mor gf = c.morphism_index(e.gf);
    if (!c.composable(g, f)) throw LawViolation("CompositionClosure", {e.g, e.f});
    if (c.comp_[g * n + f]) throw InputError("DuplicateComposite", e.g + " . " + e.f);
    c.comp_[g * n + f] = gf;
  }
  for (Mor g = 0; g < n; ++g)
    for (Mor f = 0; f < n; ++f)
      if (c.composable(g, f) && !c.comp_[g * n + f])
        throw LawViolation("CompositionClosure", {c.names_[g], c.names_[f]});

  for (Mor f = 0; f < n; ++f)
    if (c.compose(c.identity(c.cod(f)), f) != f || c.compose(f, c.identity(c.dom(f))) != f)
      throw LawViolation("IdentityLaw", {c.names_[f]});

  for (Mor g = 0; g < n; ++g)
    for (Mor f = 0; f < n; ++f) {
      if (!c.composable(g, f)) continue;
      const Mor gf = c.compose(g, f);
      if (c.dom(gf) != c.dom(f) || c.cod(gf) != c.cod(g))
        throw LawViolation("CompositionClosure", {c.names_[g], c.names_[f]});
    }

  for (Mor f = 0; f < n; ++f)
    for (Mor g = 0; g < n; ++g) {
      if (!c.composable(g, f)) continue;
      for (Mor h = 0; h < n; ++h) {
        if (!c.composable(h, g)) continue;
        if (c.compose(h, c.compose(g, f)) != c.compose(c.compose(h, g), f))
          throw LawViolation("Associativity", {c.names_[f], c.names_[g], c.names_[h]});
      }
    }
  return c;
}

/// Objects a, b; morphisms id_a, id_b and u: a -> b.
inline RawCategory arrow_category_raw() {
  RawCategory r;
  r.objects = {"a", "b"};
  r.morphisms = {{"id_a", "a", "a"}, {"id_b", "b", "b"}, {"u", "a", "b"}};
  r.identities = {{"a", "id_a"}, {"b", "id_b"}};
  r.compose = {{"id_a", "id_a", "id_a"}, {"id_b", "id_b", "id_b"},
               {"u", "id_a", "u"}, {"id_b", "u", "u"}};
  return r;
}

/// The category of a finite poset: one morphism x -> y exactly when x <= y,
/// named id_x for identities and x_y otherwise.
inline RawCategory poset_category_raw(const FinPoset& p) {
  RawCategory r;
  r.objects = p.names();
  auto arrow = [&](Elem x, Elem y) {
    return x == y ? "id_" + p.name(x) : p.name(x) + "_" + p.name(y);
  };
  for (Elem x = 0; x < p.size(); ++x) r.identities.emplace_back(p.name(x), arrow(x, x));
  for (Elem x = 0; x < p.size(); ++x)
    for (Elem y = 0; y < p.size(); ++y)
      if (p.leq(x, y)) r.morphisms.push_back({arrow(x, y), p.name(x), p.name(y)});
  for (Elem x = 0; x < p.size(); ++x)
    for (Elem y = 0; y < p.size(); ++y)
      for (Elem z = 0; z < p.size(); ++z)
        if (p.leq(x, y) && p.leq(y, z)) r.compose.push_back({arrow(y, z), arrow(x, y), arrow(x, z)});
  return r;
}

/// a -> b -> c -> ... as a poset category with n objects.
inline RawCategory chain_category_raw(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  return poset_category_raw(validate_poset(std::move(names), [](Elem x, Elem y) { return x <= y; }));
}

/// A set of morphisms into `at`, stored as sorted morphism indices.
struct Sieve {
  Obj at = 0;
  std::vector<Mor> arrows;

  bool contains(Mor m) const {
    return std::binary_search(arrows.begin(), arrows.end(), m);
  }
  bool operator==(const Sieve&) const = default;
  auto operator<=>(const Sieve&) const = default;
};

inline std::string sieve_name(const FinCategory& c, const Sieve& s) {
  std::vector<std::string> names;
  for (Mor m : s.arrows) names.push_back(c.morphism_name(m));
  return format_set(names);
}

/// Right-ideal check: every arrow ends at `at`, and f in S, cod g = dom f
/// imply f . g in S.
inline bool is_sieve(const FinCategory& c, const Sieve& s) {
  for (Mor f : s.arrows) {
    if (c.cod(f) != s.at) return false;
    for (Mor g : c.into(c.dom(f)))
      if (!s.contains(c.compose(f, g))) return false;
  }
  return true;
}

inline constexpr std::size_t kDefaultSieveCap = 16;

/// Every sieve at o. Candidates are subsets of into(o) visited in
/// increasing bitmask order over into(o)'s declaration order.
inline std::vector<Sieve> all_sieves(const FinCategory& c, Obj o,
                                     std::size_t cap = kDefaultSieveCap) {
  const auto& arrows = c.into(o);
  if (arrows.size() > cap) throw CapExceeded("all_sieves", arrows.size(), cap);
  std::vector<Sieve> out;
  for (Mask m = 0; m < (Mask{1} << arrows.size()); ++m) {
    Sieve s{o, {}};
    for (std::size_t i = 0; i < arrows.size(); ++i)
      if (has_bit(m, i)) s.arrows.push_back(arrows[i]);
    std::sort(s.arrows.begin(), s.arrows.end());
    if (is_sieve(c, s)) out.push_back(std::move(s));
  }
  return out;
}

/// t_o: every morphism with codomain o.
inline Sieve maximal_sieve(const FinCategory& c, Obj o) {
  Sieve s{o, c.into(o)};
  std::sort(s.arrows.begin(), s.arrows.end());
  return s;
}

/// h*(S) = { g | cod g = dom h, h . g in S }.
inline Sieve pullback_sieve(const FinCategory& c, Mor h, const Sieve& s) {
  if (s.at != c.cod(h))
    throw InputError("ObjectMismatch", "sieve is not on the codomain of " + c.morphism_name(h));
  Sieve out{c.dom(h), {}};
  for (Mor g : c.into(c.dom(h)))
    if (s.contains(c.compose(h, g))) out.arrows.push_back(g);
  std::sort(out.arrows.begin(), out.arrows.end());
  return out;
}

/// The sieves at one object as a complete lattice under inclusion
/// (meet = intersection, join = union). Element i is sieves[i].
struct SieveLattice {
  Obj at = 0;
  std::vector<Sieve> sieves;
  LatticePtr lattice;

  Elem index_of(const Sieve& s) const {
    auto it = index.find(s.arrows);
    if (s.at != at || it == index.end()) throw InputError("NotASieve", "not a sieve at this object");
    return it->second;
  }

  std::map<std::vector<Mor>, Elem> index;
};

inline SieveLattice sieve_lattice(const FinCategory& c, Obj o,
                                  std::size_t cap = kDefaultSieveCap) {
  SieveLattice sl;
  sl.at = o;
  sl.sieves = all_sieves(c, o, cap);
  for (Elem i = 0; i < sl.sieves.size(); ++i) sl.index.emplace(sl.sieves[i].arrows, i);
  std::vector<std::string> names;
  for (const auto& s : sl.sieves) names.push_back(sieve_name(c, s));
  const auto& sv = sl.sieves;
  sl.lattice = as_complete_lattice(validate_poset(std::move(names), [&](Elem a, Elem b) {
    return std::includes(sv[b].arrows.begin(), sv[b].arrows.end(), sv[a].arrows.begin(),
                         sv[a].arrows.end());
  }));
  return sl;
}

inline std::vector<SieveLattice> sieve_lattices(const FinCategory& c,
                                                std::size_t cap = kDefaultSieveCap) {
  std::vector<SieveLattice> out;
  for (Obj o = 0; o < c.object_count(); ++o) out.push_back(sieve_lattice(c, o, cap));
  return out;
}

/// h* as a map from the sieve lattice at cod h to the one at dom h.
inline MonotoneMap pullback_map(const FinCategory& c, Mor h,
                                const std::vector<SieveLattice>& lattices) {
  const auto& from = lattices.at(c.cod(h));
  const auto& to = lattices.at(c.dom(h));
  std::vector<Elem> t(from.sieves.size());
  for (Elem i = 0; i < t.size(); ++i) t[i] = to.index_of(pullback_sieve(c, h, from.sieves[i]));
  return MonotoneMap(from.lattice, to.lattice, std::move(t));
}

/// The action of h on sieve lattices; both adjoints of h* are synthesized
/// from the generic adjunction machinery.
inline MorphismAction pullback_action(const FinCategory& c, Mor h,
                                      const std::vector<SieveLattice>& lattices) {
  return MorphismAction::from_inverse(pullback_map(c, h, lattices));
}

/// One interior operator per object on that object's sieve lattice.
struct SieveInteriorFamily {
  std::vector<InteriorOp> at;
};

inline SieveInteriorFamily discrete_family(const std::vector<SieveLattice>& lattices) {
  SieveInteriorFamily f;
  for (const auto& sl : lattices) f.at.push_back(discrete_op(sl.lattice));
  return f;
}

inline SieveInteriorFamily trivial_family(const std::vector<SieveLattice>& lattices) {
  SieveInteriorFamily f;
  for (const auto& sl : lattices) f.at.push_back(trivial_op(sl.lattice));
  return f;
}

/// The three interior axioms at every object; the witness is prefixed with
/// the object name.
inline Verdict check_sieve_interior(const FinCategory& c, const SieveInteriorFamily& fam,
                                    const std::vector<SieveLattice>& lattices) {
  if (fam.at.size() != c.object_count())
    throw InputError("TableShape", "one operator per object expected");
  for (Obj o = 0; o < c.object_count(); ++o) {
    if (!same_lattice(fam.at[o].carrier(), lattices.at(o).lattice))
      throw InputError("CarrierMismatch", "operator at " + c.object_name(o) +
                                              " is not on its sieve lattice");
    if (auto v = check_interior(fam.at[o]); !v) {
      v.witness.insert(v.witness.begin(), c.object_name(o));
      return v;
    }
  }
  return Verdict::pass();
}

/// Candidate covering sieves per object.
struct GrothTopology {
  std::vector<std::vector<Sieve>> covers;

  bool covers_with(Obj o, const Sieve& s) const {
    const auto& v = covers.at(o);
    return std::find(v.begin(), v.end(), s) != v.end();
  }
};

/// J(o) = sieves fixed by the operator at o.
inline GrothTopology open_sieve_topology(const FinCategory& c, const SieveInteriorFamily& fam,
                                         const std::vector<SieveLattice>& lattices) {
  GrothTopology j;
  for (Obj o = 0; o < c.object_count(); ++o) {
    j.covers.emplace_back();
    for (Elem e : open_elements(fam.at.at(o))) j.covers.back().push_back(lattices.at(o).sieves[e]);
  }
  return j;
}

/// Maximality, stability and transitivity, checked exhaustively.
///   Maximality(o, t_o)
///   Stability(S, h, h*S)
///   Transitivity(S, R): every h in S pulls R back into J, yet R is not in J
inline Verdict check_grothendieck(const FinCategory& c, const GrothTopology& j,
                                  std::size_t cap = kDefaultSieveCap) {
  if (j.covers.size() != c.object_count())
    throw InputError("TableShape", "one cover set per object expected");
  for (Obj o = 0; o < c.object_count(); ++o)
    for (const auto& s : j.covers[o])
      if (s.at != o || !is_sieve(c, s))
        throw InputError("NotASieve", sieve_name(c, s) + " at " + c.object_name(o));

  for (Obj o = 0; o < c.object_count(); ++o) {
    const Sieve top = maximal_sieve(c, o);
    if (!j.covers_with(o, top))
      return Verdict::fail("Maximality", {c.object_name(o), sieve_name(c, top)});
  }
  for (Obj o = 0; o < c.object_count(); ++o)
    for (const auto& s : j.covers[o])
      for (Mor h : c.into(o)) {
        const Sieve back = pullback_sieve(c, h, s);
        if (!j.covers_with(c.dom(h), back))
          return Verdict::fail("Stability",
                               {sieve_name(c, s), c.morphism_name(h), sieve_name(c, back)});
      }
  for (Obj o = 0; o < c.object_count(); ++o) {
    const auto candidates = all_sieves(c, o, cap);
    for (const auto& s : j.covers[o])
      for (const auto& r : candidates) {
        if (j.covers_with(o, r)) continue;
        bool locally_covered = true;
        for (Mor h : s.arrows)
          if (!j.covers_with(c.dom(h), pullback_sieve(c, h, r))) {
            locally_covered = false;
            break;
          }
        if (locally_covered)
          return Verdict::fail("Transitivity", {sieve_name(c, s), sieve_name(c, r)});
      }
  }
  return Verdict::pass();
}

/// Optional side condition: every covering sieve contains at least one
/// morphism from a user-declared class `e_morphisms`.
inline Verdict check_e_premise(const FinCategory& c, const GrothTopology& j,
                               const std::set<Mor>& e_morphisms) {
  for (Obj o = 0; o < j.covers.size(); ++o)
    for (const auto& s : j.covers[o]) {
      bool found = false;
      for (Mor m : s.arrows) found = found || e_morphisms.count(m) != 0;
      if (!found) return Verdict::fail("NoEMorphism", {c.object_name(o), sieve_name(c, s)});
    }
  return Verdict::pass();
}

}  // namespace ikit
