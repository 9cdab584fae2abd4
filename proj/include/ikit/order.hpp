#pragma once

// Finite posets, complete lattices and maps between them. Every other
// module computes on these tables.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ikit/error.hpp"

namespace ikit {

/// Index of an element in its carrier's canonical (declaration) order.
using Elem = std::size_t;

/// A set of elements of one carrier as a bitmask; bit i is element i.
using Mask = std::uint64_t;

/// Exhaustive subset checks (preservation of all meets/joins) iterate
/// 2^|L| subsets and refuse lattices above this size unless told otherwise.
inline constexpr std::size_t kDefaultSubsetCap = 12;

inline bool has_bit(Mask m, std::size_t i) { return (m >> i) & 1U; }

class FinPoset {
 public:
  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(Elem e) const { return names_.at(e); }

  Elem index(const std::string& name) const {
    auto it = lookup_.find(name);
    if (it == lookup_.end()) throw InputError("UnknownElement", name);
    return it->second;
  }
  bool contains(const std::string& name) const {
    return lookup_.count(name) != 0;
  }

  bool leq(Elem a, Elem b) const { return leq_[a * size() + b] != 0; }

  bool operator==(const FinPoset& other) const {
    return names_ == other.names_ && leq_ == other.leq_;
  }

 private:
  friend FinPoset validate_poset(std::vector<std::string>,
                                 std::vector<std::uint8_t>);

  std::vector<std::string> names_;
  std::unordered_map<std::string, Elem> lookup_;
  std::vector<std::uint8_t> leq_;
};

/// Validates a relation given as a row-major |E|x|E| membership table.
/// Throws LawViolation naming the first violated poset law.
inline FinPoset validate_poset(std::vector<std::string> elements,
                               std::vector<std::uint8_t> leq) {
  const std::size_t n = elements.size();
  if (n == 0) throw InputError("EmptyCarrier", "a poset needs an element");
  if (leq.size() != n * n)
    throw InputError("RelationShape", "leq table must be |E|x|E|");

  FinPoset p;
  for (Elem i = 0; i < n; ++i) {
    if (!p.lookup_.emplace(elements[i], i).second)
      throw InputError("DuplicateElement", elements[i]);
  }
  p.names_ = std::move(elements);
  p.leq_ = std::move(leq);

  for (Elem x = 0; x < n; ++x)
    if (!p.leq(x, x)) throw LawViolation("ReflexivityViolation", {p.name(x)});
  for (Elem x = 0; x < n; ++x)
    for (Elem y = x + 1; y < n; ++y)
      if (p.leq(x, y) && p.leq(y, x))
        throw LawViolation("AntisymmetryViolation", {p.name(x), p.name(y)});
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      if (!p.leq(x, y)) continue;
      for (Elem z = 0; z < n; ++z)
        if (p.leq(y, z) && !p.leq(x, z))
          throw LawViolation("TransitivityViolation",
                             {p.name(x), p.name(y), p.name(z)});
    }
  return p;
}

/// Pair-list form: each (a, b) means a <= b. Nothing is added implicitly,
/// reflexive pairs included.
inline FinPoset validate_poset(
    std::vector<std::string> elements,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  const std::size_t n = elements.size();
  std::unordered_map<std::string, Elem> lookup;
  for (Elem i = 0; i < n; ++i) lookup.emplace(elements[i], i);
  std::vector<std::uint8_t> leq(n * n, 0);
  for (const auto& [a, b] : pairs) {
    auto ia = lookup.find(a);
    auto ib = lookup.find(b);
    if (ia == lookup.end()) throw InputError("UnknownElement", a);
    if (ib == lookup.end()) throw InputError("UnknownElement", b);
    leq[ia->second * n + ib->second] = 1;
  }
  return validate_poset(std::move(elements), std::move(leq));
}

inline FinPoset validate_poset(std::vector<std::string> elements,
                               const std::function<bool(Elem, Elem)>& leq) {
  const std::size_t n = elements.size();
  std::vector<std::uint8_t> table(n * n, 0);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) table[a * n + b] = leq(a, b) ? 1 : 0;
  return validate_poset(std::move(elements), std::move(table));
}

class CompleteLattice;
using LatticePtr = std::shared_ptr<const CompleteLattice>;

/// A finite poset in which every subset has a meet and a join. Binary
/// tables are precomputed; n-ary meets and joins fold them.
class CompleteLattice {
 public:
  const FinPoset& poset() const noexcept { return poset_; }
  std::size_t size() const noexcept { return poset_.size(); }
  const std::vector<std::string>& names() const noexcept {
    return poset_.names();
  }
  const std::string& name(Elem e) const { return poset_.name(e); }
  Elem index(const std::string& n) const { return poset_.index(n); }
  bool leq(Elem a, Elem b) const { return poset_.leq(a, b); }

  Elem top() const noexcept { return top_; }
  Elem bottom() const noexcept { return bottom_; }
  Elem meet(Elem a, Elem b) const { return meet_[a * size() + b]; }
  Elem join(Elem a, Elem b) const { return join_[a * size() + b]; }

  template <typename Range>
  Elem meet_all(const Range& xs) const {
    Elem acc = top_;
    for (Elem x : xs) acc = meet(acc, x);
    return acc;
  }
  template <typename Range>
  Elem join_all(const Range& xs) const {
    Elem acc = bottom_;
    for (Elem x : xs) acc = join(acc, x);
    return acc;
  }
  Elem meet_mask(Mask s) const {
    Elem acc = top_;
    for (; s; s &= s - 1) acc = meet(acc, std::countr_zero(s));
    return acc;
  }
  Elem join_mask(Mask s) const {
    Elem acc = bottom_;
    for (; s; s &= s - 1) acc = join(acc, std::countr_zero(s));
    return acc;
  }

  /// Set when the lattice was built as the powerset of a finite set; then
  /// element index i is the subset with bitmask i.
  const std::optional<std::vector<std::string>>& ground() const noexcept {
    return ground_;
  }

  std::string subset_name(Mask s) const {
    std::vector<std::string> items;
    for (Elem i = 0; i < size(); ++i)
      if (has_bit(s, i)) items.push_back(name(i));
    return format_set(items);
  }

  bool operator==(const CompleteLattice& other) const {
    return poset_ == other.poset_;
  }

 private:
  friend LatticePtr as_complete_lattice(FinPoset p);
  friend LatticePtr powerset_lattice(std::vector<std::string> ground);

  FinPoset poset_;
  Elem top_ = 0;
  Elem bottom_ = 0;
  std::vector<Elem> meet_;
  std::vector<Elem> join_;
  std::optional<std::vector<std::string>> ground_;
};

inline bool same_lattice(const LatticePtr& a, const LatticePtr& b) {
  return a == b || (a && b && *a == *b);
}

/// Builds meet/join tables. A binary meet is the greatest lower bound; a
/// binary join is the meet of all upper bounds. For a finite non-empty
/// poset, binary meets and joins give every subset a bound, so the first
/// failing pair (in canonical order, meet checked before join) is the
/// reported NotALattice witness.
inline LatticePtr as_complete_lattice(FinPoset p) {
  const std::size_t n = p.size();
  auto glb = [&](const std::vector<Elem>& lower) -> std::optional<Elem> {
    for (Elem c : lower) {
      bool greatest = true;
      for (Elem d : lower)
        if (!p.leq(d, c)) {
          greatest = false;
          break;
        }
      if (greatest) return c;
    }
    return std::nullopt;
  };

  std::vector<Elem> meet(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a; b < n; ++b) {
      std::vector<Elem> lower;
      for (Elem c = 0; c < n; ++c)
        if (p.leq(c, a) && p.leq(c, b)) lower.push_back(c);
      auto m = glb(lower);
      if (!m)
        throw LawViolation("NotALattice",
                           {format_set({p.name(a), p.name(b)}), "meet"});
      meet[a * n + b] = meet[b * n + a] = *m;
    }

  auto meet_of = [&](const std::vector<Elem>& xs) {
    Elem acc = xs.front();
    for (Elem x : xs) acc = meet[acc * n + x];
    return acc;
  };

  std::vector<Elem> join(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a; b < n; ++b) {
      std::vector<Elem> upper;
      for (Elem c = 0; c < n; ++c)
        if (p.leq(a, c) && p.leq(b, c)) upper.push_back(c);
      if (upper.empty())
        throw LawViolation("NotALattice",
                           {format_set({p.name(a), p.name(b)}), "join"});
      join[a * n + b] = join[b * n + a] = meet_of(upper);
    }

  auto lattice = std::make_shared<CompleteLattice>();
  Elem top = 0;
  Elem bottom = 0;
  for (Elem x = 0; x < n; ++x) {
    top = join[top * n + x];
    bottom = meet[bottom * n + x];
  }
  lattice->poset_ = std::move(p);
  lattice->top_ = top;
  lattice->bottom_ = bottom;
  lattice->meet_ = std::move(meet);
  lattice->join_ = std::move(join);
  return lattice;
}

/// The lattice of all subsets of `ground`, ordered by inclusion. Element i
/// is the subset whose bitmask is i, named like "{a,b}".
inline LatticePtr powerset_lattice(std::vector<std::string> ground) {
  constexpr std::size_t kMaxGround = 8;
  if (ground.size() > kMaxGround)
    throw CapExceeded("powerset_lattice", ground.size(), kMaxGround);
  const std::size_t n = std::size_t{1} << ground.size();
  std::vector<std::string> names;
  names.reserve(n);
  for (Mask m = 0; m < n; ++m) {
    std::vector<std::string> items;
    for (std::size_t i = 0; i < ground.size(); ++i)
      if (has_bit(m, i)) items.push_back(ground[i]);
    names.push_back(format_set(items));
  }
  auto p = validate_poset(std::move(names), [](Elem a, Elem b) {
    return (a & ~b) == 0;
  });
  auto built = as_complete_lattice(std::move(p));
  auto lattice = std::make_shared<CompleteLattice>(*built);
  lattice->ground_ = std::move(ground);
  return lattice;
}

inline LatticePtr chain_lattice(std::vector<std::string> names) {
  return as_complete_lattice(
      validate_poset(std::move(names), [](Elem a, Elem b) { return a <= b; }));
}

/// Chain 0 < 1 < ... < n-1 with decimal names.
inline LatticePtr chain_lattice(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return chain_lattice(std::move(names));
}

/// The diamond: 0 < a, b, c < 1 with a, b, c pairwise incomparable.
inline LatticePtr diamond_m3() {
  std::vector<std::string> names{"0", "a", "b", "c", "1"};
  return as_complete_lattice(validate_poset(names, [](Elem x, Elem y) {
    return x == y || x == 0 || y == 4;
  }));
}

/// The pentagon: 0 < a < b < 1 and 0 < c < 1, c incomparable to a and b.
inline LatticePtr pentagon_n5() {
  std::vector<std::string> names{"0", "a", "b", "c", "1"};
  return as_complete_lattice(validate_poset(names, [](Elem x, Elem y) {
    return x == y || x == 0 || y == 4 || (x == 1 && y == 2);
  }));
}

/// A table from one lattice to another. Monotonicity is a checked property
/// (check_monotone), not a construction invariant, so that non-monotone
/// inputs can be diagnosed.
class MonotoneMap {
 public:
  MonotoneMap(LatticePtr dom, LatticePtr cod, std::vector<Elem> table)
      : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
    if (table_.size() != dom_->size())
      throw InputError("TableShape", "map table must cover the domain");
    for (Elem y : table_)
      if (y >= cod_->size())
        throw InputError("TableShape", "map value outside the codomain");
  }

  static MonotoneMap identity(const LatticePtr& l) {
    std::vector<Elem> t(l->size());
    for (Elem i = 0; i < t.size(); ++i) t[i] = i;
    return MonotoneMap(l, l, std::move(t));
  }

  static MonotoneMap constant(const LatticePtr& dom, const LatticePtr& cod,
                              Elem value) {
    return MonotoneMap(dom, cod, std::vector<Elem>(dom->size(), value));
  }

  Elem operator()(Elem x) const { return table_[x]; }
  const LatticePtr& dom() const noexcept { return dom_; }
  const LatticePtr& cod() const noexcept { return cod_; }
  const std::vector<Elem>& table() const noexcept { return table_; }

  bool operator==(const MonotoneMap& other) const {
    return table_ == other.table_ && same_lattice(dom_, other.dom_) &&
           same_lattice(cod_, other.cod_);
  }

 private:
  LatticePtr dom_;
  LatticePtr cod_;
  std::vector<Elem> table_;
};

/// g . f
inline MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
  if (!same_lattice(f.cod(), g.dom()))
    throw InputError("DomainMismatch", "compose: cod(f) != dom(g)");
  std::vector<Elem> t(f.dom()->size());
  for (Elem x = 0; x < t.size(); ++x) t[x] = g(f(x));
  return MonotoneMap(f.dom(), g.cod(), std::move(t));
}

inline Verdict check_monotone(const MonotoneMap& m) {
  const auto& d = *m.dom();
  const auto& c = *m.cod();
  for (Elem x = 0; x < d.size(); ++x)
    for (Elem y = 0; y < d.size(); ++y)
      if (d.leq(x, y) && !c.leq(m(x), m(y)))
        return Verdict::fail("NotMonotone", {d.name(x), d.name(y)});
  return Verdict::pass();
}

/// Calls `visit` with every monotone table dom -> cod. Elements are assigned along a linear extension of dom so
/// each candidate is pruned against everything already below it.
inline void for_each_monotone_map(
    const LatticePtr& dom, const LatticePtr& cod,
    const std::function<void(const MonotoneMap&)>& visit) {
  const std::size_t n = dom->size();
  const std::size_t k = cod->size();
  std::vector<Elem> order(n);
  for (Elem i = 0; i < n; ++i) order[i] = i;
  std::vector<std::size_t> below(n, 0);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (dom->leq(b, a)) ++below[a];
  std::stable_sort(order.begin(), order.end(),
                   [&](Elem a, Elem b) { return below[a] < below[b]; });

  std::vector<Elem> table(n, 0);
  std::vector<std::uint8_t> assigned(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == n) {
      visit(MonotoneMap(dom, cod, table));
      return;
    }
    const Elem x = order[depth];
    for (Elem v = 0; v < k; ++v) {
      bool ok = true;
      for (Elem y = 0; y < n && ok; ++y) {
        if (!assigned[y]) continue;
        if (dom->leq(y, x) && !cod->leq(table[y], v)) ok = false;
        if (dom->leq(x, y) && !cod->leq(v, table[y])) ok = false;
      }
      if (!ok) continue;
      table[x] = v;
      assigned[x] = 1;
      rec(depth + 1);
      assigned[x] = 0;
    }
  };
  rec(0);
}

}  // namespace ikit
