#pragma once

// Brute-force reference implementations. Each works from raw order
// relations or raw tables only, never from the library routine it checks.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ikit/order.hpp"
#include "ikit/sieve.hpp"

namespace oracle {

using ikit::Elem;
using ikit::Mask;

/// Every vector t of length n with entries in [0, k), odometer order.
inline void all_tables(std::size_t n, std::size_t k,
                       const std::function<void(const std::vector<Elem>&)>& visit) {
  std::vector<Elem> t(n, 0);
  if (k == 0 && n > 0) return;
  while (true) {
    visit(t);
    std::size_t i = 0;
    while (i < n && ++t[i] == k) t[i++] = 0;
    if (i == n) return;
  }
}

/// Every vector t with t[i] in choices[i].
inline void all_choices(const std::vector<std::vector<Elem>>& choices,
                        const std::function<void(const std::vector<Elem>&)>& visit) {
  std::vector<std::size_t> pos(choices.size(), 0);
  std::vector<Elem> t(choices.size());
  for (const auto& c : choices)
    if (c.empty()) return;
  while (true) {
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = choices[i][pos[i]];
    visit(t);
    std::size_t i = 0;
    while (i < pos.size() && ++pos[i] == choices[i].size()) pos[i++] = 0;
    if (i == pos.size()) return;
  }
}

inline bool monotone(const ikit::CompleteLattice& d, const ikit::CompleteLattice& c,
                     const std::vector<Elem>& t) {
  for (Elem x = 0; x < d.size(); ++x)
    for (Elem y = 0; y < d.size(); ++y)
      if (d.leq(x, y) && !c.leq(t[x], t[y])) return false;
  return true;
}

/// Greatest lower bound of the elements in s, from leq alone.
inline std::optional<Elem> glb(const ikit::CompleteLattice& l, Mask s) {
  std::vector<Elem> lower;
  for (Elem c = 0; c < l.size(); ++c) {
    bool below = true;
    for (Elem x = 0; x < l.size(); ++x)
      if (ikit::has_bit(s, x) && !l.leq(c, x)) below = false;
    if (below) lower.push_back(c);
  }
  for (Elem c : lower) {
    bool greatest = true;
    for (Elem d : lower) greatest = greatest && l.leq(d, c);
    if (greatest) return c;
  }
  return std::nullopt;
}

inline std::optional<Elem> lub(const ikit::CompleteLattice& l, Mask s) {
  std::vector<Elem> upper;
  for (Elem c = 0; c < l.size(); ++c) {
    bool above = true;
    for (Elem x = 0; x < l.size(); ++x)
      if (ikit::has_bit(s, x) && !l.leq(x, c)) above = false;
    if (above) upper.push_back(c);
  }
  for (Elem c : upper) {
    bool least = true;
    for (Elem d : upper) least = least && l.leq(c, d);
    if (least) return c;
  }
  return std::nullopt;
}

/// t(glb S) = glb t(S) for every subset S, the empty one included.
inline bool preserves_all_meets(const ikit::CompleteLattice& d, const ikit::CompleteLattice& c,
                                const std::vector<Elem>& t) {
  for (Mask s = 0; s < (Mask{1} << d.size()); ++s) {
    Mask image = 0;
    for (Elem x = 0; x < d.size(); ++x)
      if (ikit::has_bit(s, x)) image |= Mask{1} << t[x];
    if (t[*glb(d, s)] != *glb(c, image)) return false;
  }
  return true;
}

inline bool preserves_all_joins(const ikit::CompleteLattice& d, const ikit::CompleteLattice& c,
                                const std::vector<Elem>& t) {
  for (Mask s = 0; s < (Mask{1} << d.size()); ++s) {
    Mask image = 0;
    for (Elem x = 0; x < d.size(); ++x)
      if (ikit::has_bit(s, x)) image |= Mask{1} << t[x];
    if (t[*lub(d, s)] != *lub(c, image)) return false;
  }
  return true;
}

/// phi: M -> N, psi: N -> M with phi(m) <= n iff m <= psi(n).
inline bool galois(const ikit::CompleteLattice& m, const ikit::CompleteLattice& n,
                   const std::vector<Elem>& phi, const std::vector<Elem>& psi) {
  for (Elem a = 0; a < m.size(); ++a)
    for (Elem b = 0; b < n.size(); ++b)
      if (n.leq(phi[a], b) != m.leq(a, psi[b])) return false;
  return true;
}

/// For psi: N -> M, phi(p) is the least q with p <= psi(q) when such a least
/// element exists for every p, and the result is a Galois partner.
inline std::optional<std::vector<Elem>> left_adjoint_by_search(const ikit::CompleteLattice& n,
                                                               const ikit::CompleteLattice& m,
                                                               const std::vector<Elem>& psi) {
  std::vector<Elem> phi(m.size());
  for (Elem p = 0; p < m.size(); ++p) {
    std::optional<Elem> least;
    for (Elem q = 0; q < n.size(); ++q) {
      if (!m.leq(p, psi[q])) continue;
      bool is_least = true;
      for (Elem r = 0; r < n.size(); ++r)
        if (m.leq(p, psi[r]) && !n.leq(q, r)) is_least = false;
      if (is_least) least = q;
    }
    if (!least) return std::nullopt;
    phi[p] = *least;
  }
  if (!galois(m, n, phi, psi)) return std::nullopt;
  return phi;
}

/// Contraction, monotonicity and top preservation, checked directly.
inline bool interior_axioms(const ikit::CompleteLattice& l, const std::vector<Elem>& t) {
  for (Elem a = 0; a < l.size(); ++a)
    if (!l.leq(t[a], a)) return false;
  if (!monotone(l, l, t)) return false;
  Elem top = 0;
  for (Elem a = 0; a < l.size(); ++a)
    if (l.leq(top, a)) top = a;
  return t[top] == top;
}

inline std::vector<std::vector<Elem>> brute_interior_ops(const ikit::CompleteLattice& l) {
  std::vector<std::vector<Elem>> out;
  all_tables(l.size(), l.size(), [&](const std::vector<Elem>& t) {
    if (interior_axioms(l, t)) out.push_back(t);
  });
  std::sort(out.begin(), out.end());
  return out;
}

/// Families of subsets of an n-set containing {} and X and closed under
/// pairwise union and intersection; every family is tried.
inline std::vector<std::vector<Mask>> brute_topologies(std::size_t n) {
  const std::size_t subsets = std::size_t{1} << n;
  const Mask full = subsets - 1;
  std::vector<std::vector<Mask>> out;
  for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << subsets); ++fam) {
    auto in = [&](Mask s) { return ((fam >> s) & 1U) != 0; };
    if (!in(0) || !in(full)) continue;
    bool ok = true;
    for (Mask a = 0; a < subsets && ok; ++a)
      for (Mask b = 0; b < subsets && ok; ++b)
        if (in(a) && in(b) && (!in(a | b) || !in(a & b))) ok = false;
    if (!ok) continue;
    std::vector<Mask> opens;
    for (Mask s = 0; s < subsets; ++s)
      if (in(s)) opens.push_back(s);
    out.push_back(opens);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Self-maps of P(n) with i(A) contained in A, filtered by the Kuratowski
/// axioms on bitmasks.
inline std::vector<std::vector<Elem>> brute_kuratowski(std::size_t n) {
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<std::vector<Elem>> choices(subsets);
  for (Mask a = 0; a < subsets; ++a)
    for (Mask b = 0; b < subsets; ++b)
      if ((b & ~a) == 0) choices[a].push_back(b);
  std::vector<std::vector<Elem>> out;
  all_choices(choices, [&](const std::vector<Elem>& t) {
    if (t[subsets - 1] != subsets - 1) return;
    for (Mask a = 0; a < subsets; ++a)
      if (t[t[a]] != t[a]) return;
    for (Mask a = 0; a < subsets; ++a)
      for (Mask b = 0; b < subsets; ++b)
        if (t[a & b] != (t[a] & t[b])) return;
    out.push_back(t);
  });
  std::sort(out.begin(), out.end());
  return out;
}

/// Sieves at `object` straight from the raw tables: subsets of all
/// morphisms whose members end at `object`, closed under precomposition by
/// looking up every listed composite. Result: sorted name sets.
inline std::set<std::set<std::string>> brute_sieves(const ikit::RawCategory& r,
                                                    const std::string& object) {
  std::set<std::set<std::string>> out;
  const std::size_t n = r.morphisms.size();
  for (Mask s = 0; s < (Mask{1} << n); ++s) {
    std::set<std::string> members;
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i)
      if (ikit::has_bit(s, i)) {
        members.insert(r.morphisms[i].name);
        ok = ok && r.morphisms[i].cod == object;
      }
    if (!ok) continue;
    for (const auto& c : r.compose)
      if (members.count(c.g) && !members.count(c.gf)) ok = false;
    if (ok) out.insert(members);
  }
  return out;
}

/// L-fuzzy interior axioms on a chain 0 < 1 < ... < k-1 with tensor `t`,
/// fuzzy sets as level vectors. I7 is read as: constant on a non-empty K
/// implies the same value at max K.
struct FuzzyModel {
  std::size_t k;                                // number of levels
  std::size_t x;                                // ground size
  std::function<std::size_t(std::size_t, std::size_t)> t;
  mutable std::vector<std::uint8_t> le_tab;
  mutable std::vector<std::size_t> tens_tab;

  std::size_t sets() const {
    std::size_t s = 1;
    for (std::size_t i = 0; i < x; ++i) s *= k;
    return s;
  }
  std::vector<std::size_t> vec(std::size_t f) const {
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < x; ++i, f /= k) v.push_back(f % k);
    return v;
  }
  std::size_t idx(const std::vector<std::size_t>& v) const {
    std::size_t f = 0;
    for (std::size_t i = v.size(); i-- > 0;) f = f * k + v[i];
    return f;
  }
  bool le(std::size_t f, std::size_t g) const {
    auto a = vec(f), b = vec(g);
    for (std::size_t i = 0; i < x; ++i)
      if (a[i] > b[i]) return false;
    return true;
  }
  std::size_t tens(std::size_t f, std::size_t g) const {
    auto a = vec(f), b = vec(g);
    for (std::size_t i = 0; i < x; ++i) a[i] = t(a[i], b[i]);
    return idx(a);
  }
  std::size_t top() const { return idx(std::vector<std::size_t>(x, k - 1)); }

  /// table[f * k + a]
  bool valid(const std::vector<std::size_t>& I) const {
    const std::size_t n = sets();
    if (le_tab.size() != n * n) {
      le_tab.assign(n * n, 0);
      tens_tab.assign(n * n, 0);
      for (std::size_t f = 0; f < n; ++f)
        for (std::size_t g = 0; g < n; ++g) {
          le_tab[f * n + g] = le(f, g);
          tens_tab[f * n + g] = tens(f, g);
        }
    }
    auto at = [&](std::size_t f, std::size_t a) { return I[f * k + a]; };
    auto leq = [&](std::size_t f, std::size_t g) { return le_tab[f * n + g] != 0; };
    for (std::size_t a = 0; a < k; ++a)
      if (at(top(), a) != top()) return false;
    for (std::size_t f = 0; f < n; ++f)
      if (at(f, 0) != f) return false;
    for (std::size_t f = 0; f < n; ++f)
      for (std::size_t a = 0; a < k; ++a) {
        if (!leq(at(f, a), f)) return false;
        if (!leq(at(f, a), at(at(f, a), a))) return false;
      }
    for (std::size_t f = 0; f < n; ++f)
      for (std::size_t g = 0; g < n; ++g)
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) {
            if (leq(g, f) && a <= b && !leq(at(g, b), at(f, a))) return false;
            if (!leq(tens_tab[at(f, a) * n + at(g, b)], at(tens_tab[f * n + g], t(a, b)))) return false;
          }
    for (std::size_t f = 0; f < n; ++f)
      for (Mask s = 1; s < (Mask{1} << k); ++s) {
        std::size_t hi = 0, first = k;
        bool constant = true;
        for (std::size_t a = 0; a < k; ++a)
          if (ikit::has_bit(s, a)) {
            if (first == k) first = a;
            constant = constant && at(f, a) == at(f, first);
            hi = a;
          }
        if (constant && at(f, hi) != at(f, first)) return false;
      }
    return true;
  }

  std::vector<std::size_t> grades(const std::vector<std::size_t>& I) const {
    std::vector<std::size_t> g(sets(), 0);
    for (std::size_t f = 0; f < sets(); ++f)
      for (std::size_t a = 0; a < k; ++a)
        if (le(f, I[f * k + a]) && a > g[f]) g[f] = a;
    return g;
  }
};

}  // namespace oracle
