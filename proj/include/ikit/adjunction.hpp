#pragma once

// Posetal adjunctions between finite complete lattices: verification,
// synthesis of the missing adjoint, and the preservation laws that every
// adjoint pair satisfies.

#include <cstddef>
#include <string>
#include <vector>

#include "ikit/error.hpp"
#include "ikit/order.hpp"

namespace ikit {

/// left -| right, i.e. left(m) <= n  iff  m <= right(n).
struct AdjointPair {
  MonotoneMap left;
  MonotoneMap right;
};

namespace detail {

inline void require_subset_cap(const CompleteLattice& l, std::size_t cap,
                               const char* what) {
  if (l.size() > cap) throw CapExceeded(what, l.size(), cap);
}

inline void require_opposed(const MonotoneMap& phi, const MonotoneMap& psi) {
  if (!same_lattice(phi.dom(), psi.cod()) || !same_lattice(phi.cod(), psi.dom()))
    throw InputError("DomainMismatch",
                     "expected phi: P -> Q and psi: Q -> P over the same lattices");
}

}  // namespace detail

/// Checks the Galois biconditional on every (m, n). The witness is the
/// first failing pair in canonical order.
inline Verdict is_adjoint_pair(const MonotoneMap& phi, const MonotoneMap& psi) {
  detail::require_opposed(phi, psi);
  const auto& p = *phi.dom();
  const auto& q = *phi.cod();
  for (Elem m = 0; m < p.size(); ++m)
    for (Elem n = 0; n < q.size(); ++n)
      if (q.leq(phi(m), n) != p.leq(m, psi(n)))
        return Verdict::fail("NotAdjoint", {p.name(m), q.name(n)});
  return Verdict::pass();
}

/// Checks f(meet S) == meet f(S) for every subset S of dom, the empty one
/// included (so f(top) == top). Subsets are visited in increasing bitmask
/// order; the witness is [S, f(meet S), meet f(S)].
inline Verdict preserves_meets(const MonotoneMap& f,
                               std::size_t cap = kDefaultSubsetCap) {
  const auto& d = *f.dom();
  const auto& c = *f.cod();
  detail::require_subset_cap(d, cap, "preserves_meets");
  const Mask count = Mask{1} << d.size();
  // Incremental tables: S = rest + lowest element.
  std::vector<Elem> dom_meet(count), img_meet(count);
  dom_meet[0] = d.top();
  img_meet[0] = c.top();
  for (Mask s = 0; s < count; ++s) {
    if (s) {
      const Mask low = s & (~s + 1);
      const Elem e = static_cast<Elem>(std::countr_zero(low));
      dom_meet[s] = d.meet(dom_meet[s ^ low], e);
      img_meet[s] = c.meet(img_meet[s ^ low], f(e));
    }
    if (f(dom_meet[s]) != img_meet[s])
      return Verdict::fail("MeetNotPreserved",
                           {d.subset_name(s), c.name(f(dom_meet[s])),
                            c.name(img_meet[s])});
  }
  return Verdict::pass();
}

/// Dual of preserves_meets; the empty subset demands f(bottom) == bottom.
inline Verdict preserves_joins(const MonotoneMap& f,
                               std::size_t cap = kDefaultSubsetCap) {
  const auto& d = *f.dom();
  const auto& c = *f.cod();
  detail::require_subset_cap(d, cap, "preserves_joins");
  const Mask count = Mask{1} << d.size();
  std::vector<Elem> dom_join(count), img_join(count);
  dom_join[0] = d.bottom();
  img_join[0] = c.bottom();
  for (Mask s = 0; s < count; ++s) {
    if (s) {
      const Mask low = s & (~s + 1);
      const Elem e = static_cast<Elem>(std::countr_zero(low));
      dom_join[s] = d.join(dom_join[s ^ low], e);
      img_join[s] = c.join(img_join[s ^ low], f(e));
    }
    if (f(dom_join[s]) != img_join[s])
      return Verdict::fail("JoinNotPreserved",
                           {d.subset_name(s), c.name(f(dom_join[s])),
                            c.name(img_join[s])});
  }
  return Verdict::pass();
}

/// For psi: Q -> P, phi(p) = meet { q | p <= psi(q) }. The result is the
/// left adjoint exactly when psi preserves all meets; otherwise throws
/// MeetNotPreserved with the first failing subset of Q.
inline MonotoneMap synthesize_left_adjoint(const MonotoneMap& psi,
                                           std::size_t cap = kDefaultSubsetCap) {
  const auto& q = *psi.dom();
  const auto& p = *psi.cod();
  std::vector<Elem> table(p.size());
  for (Elem x = 0; x < p.size(); ++x) {
    Elem acc = q.top();
    for (Elem y = 0; y < q.size(); ++y)
      if (p.leq(x, psi(y))) acc = q.meet(acc, y);
    table[x] = acc;
  }
  MonotoneMap phi(psi.cod(), psi.dom(), std::move(table));
  if (is_adjoint_pair(phi, psi)) return phi;
  auto witness = preserves_meets(psi, cap);
  if (witness) throw std::logic_error("meet-preserving map without left adjoint");
  throw LawViolation(std::move(witness));
}

/// For phi: P -> Q, psi(n) = join { m | phi(m) <= n }; throws
/// JoinNotPreserved when phi fails to preserve some join.
inline MonotoneMap synthesize_right_adjoint(const MonotoneMap& phi,
                                            std::size_t cap = kDefaultSubsetCap) {
  const auto& p = *phi.dom();
  const auto& q = *phi.cod();
  std::vector<Elem> table(q.size());
  for (Elem n = 0; n < q.size(); ++n) {
    Elem acc = p.bottom();
    for (Elem m = 0; m < p.size(); ++m)
      if (q.leq(phi(m), n)) acc = p.join(acc, m);
    table[n] = acc;
  }
  MonotoneMap psi(phi.cod(), phi.dom(), std::move(table));
  if (is_adjoint_pair(phi, psi)) return psi;
  auto witness = preserves_joins(phi, cap);
  if (witness) throw std::logic_error("join-preserving map without right adjoint");
  throw LawViolation(std::move(witness));
}

/// Confirms the consequences of adjointness: left preserves all joins,
/// right preserves all meets, left.right.left == left and
/// right.left.right == right. Running it on a non-adjoint pair is a
/// contract violation (PreconditionViolated).
inline Verdict check_preservation(const AdjointPair& pair,
                                  std::size_t cap = kDefaultSubsetCap) {
  const auto& phi = pair.left;
  const auto& psi = pair.right;
  if (auto adj = is_adjoint_pair(phi, psi); !adj)
    throw LawViolation("PreconditionViolated", adj.witness);

  if (auto v = preserves_joins(phi, cap); !v) return v;
  if (auto v = preserves_meets(psi, cap); !v) return v;
  const auto& p = *phi.dom();
  const auto& q = *phi.cod();
  for (Elem m = 0; m < p.size(); ++m)
    if (phi(psi(phi(m))) != phi(m))
      return Verdict::fail("LeftTriangle", {p.name(m)});
  for (Elem n = 0; n < q.size(); ++n)
    if (psi(phi(psi(n))) != psi(n))
      return Verdict::fail("RightTriangle", {q.name(n)});
  return Verdict::pass();
}

/// The four equivalent descriptions of an adjunction, evaluated
/// independently of each other.
struct AdjunctionCharacterizations {
  bool galois = false;        // left(m) <= n  iff  m <= right(n)
  bool left_formula = false;  // left monotone, left(m) = meet {n | m <= right(n)}
  bool right_formula = false; // right monotone, right(n) = join {m | left(m) <= n}
  bool unit_counit = false;   // both monotone, m <= right(left(m)), left(right(n)) <= n

  bool all_agree() const {
    return galois == left_formula && galois == right_formula &&
           galois == unit_counit;
  }
};

inline AdjunctionCharacterizations characterize(const MonotoneMap& phi,
                                                const MonotoneMap& psi) {
  detail::require_opposed(phi, psi);
  const auto& p = *phi.dom();
  const auto& q = *phi.cod();
  AdjunctionCharacterizations c;
  c.galois = static_cast<bool>(is_adjoint_pair(phi, psi));

  const bool phi_mono = static_cast<bool>(check_monotone(phi));
  const bool psi_mono = static_cast<bool>(check_monotone(psi));

  c.left_formula = phi_mono;
  for (Elem m = 0; m < p.size() && c.left_formula; ++m) {
    Elem acc = q.top();
    for (Elem n = 0; n < q.size(); ++n)
      if (p.leq(m, psi(n))) acc = q.meet(acc, n);
    c.left_formula = acc == phi(m);
  }

  c.right_formula = psi_mono;
  for (Elem n = 0; n < q.size() && c.right_formula; ++n) {
    Elem acc = p.bottom();
    for (Elem m = 0; m < p.size(); ++m)
      if (q.leq(phi(m), n)) acc = p.join(acc, m);
    c.right_formula = acc == psi(n);
  }

  c.unit_counit = phi_mono && psi_mono;
  for (Elem m = 0; m < p.size() && c.unit_counit; ++m)
    c.unit_counit = p.leq(m, psi(phi(m)));
  for (Elem n = 0; n < q.size() && c.unit_counit; ++n)
    c.unit_counit = q.leq(phi(psi(n)), n);
  return c;
}

}  // namespace ikit
