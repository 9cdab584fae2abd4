#pragma once

// Interior operators on finite complete lattices (contraction, monotonicity,
// top preserved; idempotence is not assumed), the pointwise lattice they
// form, continuity of morphism actions, initial operators and open
// elements.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ikit/adjunction.hpp"
#include "ikit/error.hpp"
#include "ikit/order.hpp"
#include "ikit/set_subobjects.hpp"

namespace ikit {

class InteriorOp {
 public:
  InteriorOp(LatticePtr carrier, std::vector<Elem> table)
      : carrier_(std::move(carrier)), table_(std::move(table)) {
    if (table_.size() != carrier_->size())
      throw InputError("TableShape", "interior table must cover the carrier");
    for (Elem v : table_)
      if (v >= carrier_->size())
        throw InputError("TableShape", "interior value outside the carrier");
  }

  Elem operator()(Elem m) const { return table_[m]; }
  const LatticePtr& carrier() const noexcept { return carrier_; }
  const std::vector<Elem>& table() const noexcept { return table_; }

  MonotoneMap as_map() const { return MonotoneMap(carrier_, carrier_, table_); }

  bool operator==(const InteriorOp& other) const {
    return table_ == other.table_ && same_lattice(carrier_, other.carrier_);
  }

 private:
  LatticePtr carrier_;
  std::vector<Elem> table_;
};

/// Axioms in order: Contraction, Monotonicity, UpperBound.
inline Verdict check_interior(const InteriorOp& i) {
  const auto& l = *i.carrier();
  for (Elem m = 0; m < l.size(); ++m)
    if (!l.leq(i(m), m)) return Verdict::fail("Contraction", {l.name(m)});
  for (Elem m = 0; m < l.size(); ++m)
    for (Elem k = 0; k < l.size(); ++k)
      if (l.leq(m, k) && !l.leq(i(m), i(k)))
        return Verdict::fail("Monotonicity", {l.name(m), l.name(k)});
  if (i(l.top()) != l.top())
    return Verdict::fail("UpperBound", {l.name(l.top()), l.name(i(l.top()))});
  return Verdict::pass();
}

/// Every element is its own interior; the largest interior operator.
inline InteriorOp discrete_op(const LatticePtr& l) {
  return InteriorOp(l, MonotoneMap::identity(l).table());
}

/// Everything below top collapses to bottom; the least interior operator.
inline InteriorOp trivial_op(const LatticePtr& l) {
  std::vector<Elem> t(l->size(), l->bottom());
  t[l->top()] = l->top();
  return InteriorOp(l, std::move(t));
}

namespace detail {
inline void require_shared_carrier(std::span<const InteriorOp> family) {
  if (family.empty())
    throw InputError("EmptyFamily", "operator family must be non-empty");
  for (const auto& i : family)
    if (!same_lattice(i.carrier(), family.front().carrier()))
      throw InputError("CarrierMismatch", "operators live on different lattices");
}
}  // namespace detail

inline InteriorOp join_ops(std::span<const InteriorOp> family) {
  detail::require_shared_carrier(family);
  const auto& l = family.front().carrier();
  std::vector<Elem> t(l->size(), l->bottom());
  for (const auto& i : family)
    for (Elem m = 0; m < t.size(); ++m) t[m] = l->join(t[m], i(m));
  return InteriorOp(l, std::move(t));
}

inline InteriorOp meet_ops(std::span<const InteriorOp> family) {
  detail::require_shared_carrier(family);
  const auto& l = family.front().carrier();
  std::vector<Elem> t(l->size(), l->top());
  for (const auto& i : family)
    for (Elem m = 0; m < t.size(); ++m) t[m] = l->meet(t[m], i(m));
  return InteriorOp(l, std::move(t));
}

/// Pointwise order i <= j.
inline bool le_ops(const InteriorOp& i, const InteriorOp& j) {
  if (!same_lattice(i.carrier(), j.carrier()))
    throw InputError("CarrierMismatch", "operators live on different lattices");
  const auto& l = *i.carrier();
  for (Elem m = 0; m < l.size(); ++m)
    if (!l.leq(i(m), j(m))) return false;
  return true;
}

/// How a morphism f: X -> Y acts on subobject lattices: image, inverse
/// image, and the right adjoint of inverse image. `source` is the lattice
/// of X, `target` the lattice of Y.
struct MorphismAction {
  MonotoneMap existential;  // Sub X -> Sub Y
  MonotoneMap inverse;      // Sub Y -> Sub X
  MonotoneMap universal;    // Sub X -> Sub Y

  static MorphismAction of(const AdjointTriple& t) {
    return {t.existential, t.inverse, t.universal};
  }
  static MorphismAction of(const FinFunction& f) { return of(triple_of(f)); }

  /// Builds both adjoints of an inverse-image map; throws when it fails to
  /// preserve joins or meets.
  static MorphismAction from_inverse(const MonotoneMap& inverse,
                                     std::size_t cap = kDefaultSubsetCap) {
    return {synthesize_left_adjoint(inverse, cap), inverse,
            synthesize_right_adjoint(inverse, cap)};
  }

  const LatticePtr& source() const noexcept { return inverse.cod(); }
  const LatticePtr& target() const noexcept { return inverse.dom(); }
};

/// The action of outer . inner, for inner: Z -> X and outer: X -> Y. Its
/// inverse image is inner^-1 . outer^-1.
inline MorphismAction compose_actions(const MorphismAction& outer,
                                      const MorphismAction& inner) {
  return {compose(outer.existential, inner.existential),
          compose(inner.inverse, outer.inverse),
          compose(outer.universal, inner.universal)};
}

namespace detail {
inline void require_action_carriers(const MorphismAction& a,
                                    const InteriorOp& ix,
                                    const InteriorOp& iy) {
  if (!same_lattice(a.source(), ix.carrier()) ||
      !same_lattice(a.target(), iy.carrier()))
    throw InputError("CarrierMismatch",
                     "action must map Sub Y (carrier of iY) to Sub X (carrier of iX)");
}
}  // namespace detail

/// f^-1(iY(m)) <= iX(f^-1(m)) for every m in Sub Y; the witness is the
/// first failing m.
inline Verdict is_continuous(const MorphismAction& a, const InteriorOp& ix,
                             const InteriorOp& iy) {
  detail::require_action_carriers(a, ix, iy);
  const auto& x = *ix.carrier();
  const auto& y = *iy.carrier();
  for (Elem m = 0; m < y.size(); ++m)
    if (!x.leq(a.inverse(iy(m)), ix(a.inverse(m))))
      return Verdict::fail("NotContinuous",
                           {y.name(m), x.name(a.inverse(iy(m))),
                            x.name(ix(a.inverse(m)))});
  return Verdict::pass();
}

/// f^-1 . iY . f_*, the coarsest interior operator on X for which the
/// action is continuous.
inline InteriorOp initial_interior(const MorphismAction& a, const InteriorOp& iy) {
  if (!same_lattice(a.target(), iy.carrier()))
    throw InputError("CarrierMismatch", "iY must live on the action's target");
  std::vector<Elem> t(a.source()->size());
  for (Elem m = 0; m < t.size(); ++m) t[m] = a.inverse(iy(a.universal(m)));
  return InteriorOp(a.source(), std::move(t));
}

/// For g: Z -> X, f: X -> Y and iX = initial_interior(f, iY):
///   g continuous (iZ, iX)  iff  f . g continuous (iZ, iY).
/// Fails with [lhs, rhs] when the two sides disagree.
inline Verdict check_initiality(const MorphismAction& zx, const MorphismAction& xy,
                                const InteriorOp& iz, const InteriorOp& iy) {
  if (!same_lattice(zx.target(), xy.source()))
    throw InputError("CarrierMismatch", "actions are not composable");
  const InteriorOp ix = initial_interior(xy, iy);
  const bool inner = static_cast<bool>(is_continuous(zx, iz, ix));
  const bool composite =
      static_cast<bool>(is_continuous(compose_actions(xy, zx), iz, iy));
  if (inner != composite)
    return Verdict::fail("InitialityBiconditional",
                         {inner ? "g continuous" : "g not continuous",
                          composite ? "f.g continuous" : "f.g not continuous"});
  return Verdict::pass();
}

/// Fixpoints of the operator, in canonical order.
inline std::vector<Elem> open_elements(const InteriorOp& i) {
  std::vector<Elem> out;
  for (Elem m = 0; m < i.carrier()->size(); ++m)
    if (i(m) == m) out.push_back(m);
  return out;
}

/// Preimages of iY-open elements are iX-open. Requires continuity; a
/// discontinuous action is reported as PreconditionViolated.
inline Verdict check_open_stability(const MorphismAction& a, const InteriorOp& ix,
                                    const InteriorOp& iy) {
  if (auto c = is_continuous(a, ix, iy); !c)
    throw LawViolation("PreconditionViolated", c.witness);
  const auto& y = *iy.carrier();
  const auto& x = *ix.carrier();
  for (Elem n : open_elements(iy)) {
    const Elem pre = a.inverse(n);
    if (ix(pre) != pre)
      return Verdict::fail("OpenNotStable", {y.name(n), x.name(pre)});
  }
  return Verdict::pass();
}

/// Visits every interior operator on `l`. Elements are assigned along a
/// linear extension; each candidate value c for m satisfies c <= m and
/// t(k) <= c for every already-assigned k <= m.
inline void for_each_interior_op(const LatticePtr& l,
                                 const std::function<void(const InteriorOp&)>& visit) {
  const std::size_t n = l->size();
  std::vector<Elem> order(n);
  std::vector<std::size_t> below(n, 0);
  for (Elem a = 0; a < n; ++a) {
    order[a] = a;
    for (Elem b = 0; b < n; ++b)
      if (l->leq(b, a)) ++below[a];
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](Elem a, Elem b) { return below[a] < below[b]; });

  std::vector<Elem> table(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == n) {
      visit(InteriorOp(l, table));
      return;
    }
    const Elem m = order[depth];
    if (m == l->top()) {
      // Everything assigned so far lies below top and is therefore <= top.
      table[m] = m;
      rec(depth + 1);
      return;
    }
    for (Elem c = 0; c < n; ++c) {
      if (!l->leq(c, m)) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const Elem k = order[d];
        if (l->leq(k, m) && !l->leq(table[k], c)) ok = false;
      }
      if (!ok) continue;
      table[m] = c;
      rec(depth + 1);
    }
  };
  rec(0);
}

inline std::vector<InteriorOp> enumerate_interior_ops(const LatticePtr& l,
                                                      std::size_t cap = kDefaultSubsetCap) {
  if (l->size() > cap) throw CapExceeded("enumerate_interior_ops", l->size(), cap);
  std::vector<InteriorOp> out;
  for_each_interior_op(l, [&](const InteriorOp& i) { out.push_back(i); });
  std::sort(out.begin(), out.end(), [](const InteriorOp& a, const InteriorOp& b) {
    return a.table() < b.table();
  });
  return out;
}

}  // namespace ikit
