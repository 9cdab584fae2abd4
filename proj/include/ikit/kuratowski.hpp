#pragma once

// Kuratowski interior operators on powersets and the finite topologies they
// correspond to.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ikit/error.hpp"
#include "ikit/interior.hpp"
#include "ikit/order.hpp"
#include "ikit/set_subobjects.hpp"

namespace ikit {

/// A family of open subsets of a finite ground set, kept sorted by bitmask.
struct Topology {
  std::vector<std::string> ground;
  std::vector<Subset> opens;

  Topology() = default;
  Topology(std::vector<std::string> g, std::vector<Subset> o)
      : ground(std::move(g)), opens(std::move(o)) {
    std::sort(opens.begin(), opens.end());
    opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  }

  Subset full() const { return (Subset{1} << ground.size()) - 1; }
  bool is_open(Subset s) const {
    return std::binary_search(opens.begin(), opens.end(), s);
  }
  bool operator==(const Topology&) const = default;
};

/// Contains {} and X, closed under binary unions and intersections. On a
/// finite set, binary unions plus {} give closure under arbitrary unions.
inline Verdict check_topology(const Topology& t) {
  for (Subset s : t.opens)
    if (s & ~t.full()) throw InputError("NotASubset", "open set outside the ground set");
  if (!t.is_open(0)) return Verdict::fail("EmptyNotOpen", {"{}"});
  if (!t.is_open(t.full()))
    return Verdict::fail("GroundNotOpen", {subset_name(t.ground, t.full())});
  for (Subset a : t.opens)
    for (Subset b : t.opens) {
      if (!t.is_open(a | b))
        return Verdict::fail("UnionNotOpen",
                             {subset_name(t.ground, a), subset_name(t.ground, b)});
      if (!t.is_open(a & b))
        return Verdict::fail("IntersectionNotOpen",
                             {subset_name(t.ground, a), subset_name(t.ground, b)});
    }
  return Verdict::pass();
}

/// True when the carrier was built by powerset_lattice.
inline bool is_powerset_carrier(const CompleteLattice& l) {
  return l.ground().has_value();
}

/// Axioms in order: (1) i(X) = X, (2) i(A) <= A, (3) i(i(A)) = i(A),
/// (4) i(A & B) = i(A) & i(B), the last over all pairs.
inline Verdict check_kuratowski(const InteriorOp& i) {
  const auto& l = *i.carrier();
  if (!is_powerset_carrier(l))
    throw InputError("NotPowersetCarrier", "Kuratowski operators live on powersets");
  const Subset full = l.top();
  if (i(full) != full) return Verdict::fail("GroundFixed", {l.name(full), l.name(i(full))});
  for (Subset a = 0; a < l.size(); ++a)
    if ((i(a) & ~a) != 0) return Verdict::fail("Contraction", {l.name(a)});
  for (Subset a = 0; a < l.size(); ++a)
    if (i(i(a)) != i(a)) return Verdict::fail("Idempotence", {l.name(a)});
  for (Subset a = 0; a < l.size(); ++a)
    for (Subset b = 0; b < l.size(); ++b)
      if (i(a & b) != (i(a) & i(b)))
        return Verdict::fail("MeetPreservation", {l.name(a), l.name(b)});
  return Verdict::pass();
}

/// Opens are the fixpoints of i.
inline Topology topology_from_interior(const InteriorOp& i) {
  if (auto v = check_kuratowski(i); !v)
    throw LawViolation("NotKuratowski", [&] {
      auto w = v.witness;
      w.insert(w.begin(), v.law);
      return w;
    }());
  std::vector<Subset> opens;
  for (Elem m : open_elements(i)) opens.push_back(m);
  return Topology(*i.carrier()->ground(), std::move(opens));
}

/// i(A) = union of the opens contained in A.
inline InteriorOp interior_from_topology(const Topology& t) {
  if (auto v = check_topology(t); !v)
    throw LawViolation("NotATopology", [&] {
      auto w = v.witness;
      w.insert(w.begin(), v.law);
      return w;
    }());
  auto l = powerset_lattice(t.ground);
  std::vector<Elem> table(l->size(), 0);
  for (Subset a = 0; a < l->size(); ++a)
    for (Subset o : t.opens)
      if ((o & ~a) == 0) table[a] |= o;
  return InteriorOp(l, std::move(table));
}

inline constexpr std::size_t kDefaultTopologyCap = 4;

inline std::vector<std::string> numbered_ground(std::size_t n) {
  std::vector<std::string> g;
  for (std::size_t i = 1; i <= n; ++i) g.push_back(std::to_string(i));
  return g;
}

/// All topologies on `ground`, as sorted open-set lists in lexicographic
/// order. Subsets are decided in increasing bitmask order; {} and X are
/// forced in, a subset that is the union of two chosen opens is forced in,
/// and choosing a subset requires its intersections with earlier opens to
/// have been chosen.
inline std::vector<Topology> enumerate_topologies(std::vector<std::string> ground,
                                                  std::size_t cap = kDefaultTopologyCap) {
  if (ground.size() > cap) throw CapExceeded("enumerate_topologies", ground.size(), cap);
  const Subset full = (Subset{1} << ground.size()) - 1;
  std::vector<Subset> chosen{0};
  std::vector<Topology> out;

  std::function<void(Subset)> rec = [&](Subset s) {
    if (s == full) {
      chosen.push_back(full);
      out.emplace_back(ground, chosen);
      chosen.pop_back();
      return;
    }
    bool forced = false;
    for (std::size_t i = 0; i < chosen.size() && !forced; ++i)
      for (std::size_t j = i + 1; j < chosen.size() && !forced; ++j)
        if ((chosen[i] | chosen[j]) == s) forced = true;

    bool can_take = true;
    for (Subset a : chosen)
      if (!std::binary_search(chosen.begin(), chosen.end(), Subset(a & s))) {
        can_take = false;
        break;
      }
    if (can_take) {
      chosen.push_back(s);
      rec(s + 1);
      chosen.pop_back();
    }
    if (!forced) rec(s + 1);
  };
  if (full == 0) {
    out.emplace_back(ground, std::vector<Subset>{0});
    return out;
  }
  rec(1);
  std::sort(out.begin(), out.end(),
            [](const Topology& a, const Topology& b) { return a.opens < b.opens; });
  return out;
}

inline std::vector<Topology> enumerate_topologies(std::size_t n,
                                                  std::size_t cap = kDefaultTopologyCap) {
  return enumerate_topologies(numbered_ground(n), cap);
}

/// All Kuratowski operators on the powerset of `ground`: every interior
/// operator, filtered by check_kuratowski. Ordered by table.
inline constexpr std::size_t kDefaultKuratowskiCap = 3;

inline std::vector<InteriorOp> enumerate_kuratowski_ops(std::vector<std::string> ground,
                                                        std::size_t cap = kDefaultKuratowskiCap) {
  if (ground.size() > cap)
    throw CapExceeded("enumerate_kuratowski_ops", ground.size(), cap);
  auto l = powerset_lattice(std::move(ground));
  std::vector<InteriorOp> out;
  for_each_interior_op(l, [&](const InteriorOp& i) {
    if (check_kuratowski(i)) out.push_back(i);
  });
  std::sort(out.begin(), out.end(),
            [](const InteriorOp& a, const InteriorOp& b) { return a.table() < b.table(); });
  return out;
}

}  // namespace ikit
