#pragma once

// GL-monoids on finite lattices, L-fuzzy sets over a finite ground set,
// level-indexed fuzzy interior operators and the graded fuzzy topology
//   T(f) = join { a in L | f <= I(f, a) }.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ikit/error.hpp"
#include "ikit/order.hpp"

namespace ikit {

class GLMonoid {
 public:
  GLMonoid(LatticePtr carrier, std::vector<Elem> tensor)
      : carrier_(std::move(carrier)), tensor_(std::move(tensor)) {
    const std::size_t n = carrier_->size();
    if (tensor_.size() != n * n) throw InputError("TableShape", "tensor must be |L|x|L|");
    for (Elem v : tensor_)
      if (v >= n) throw InputError("TableShape", "tensor value outside the carrier");
  }

  const LatticePtr& carrier() const noexcept { return carrier_; }
  const CompleteLattice& lattice() const noexcept { return *carrier_; }
  std::size_t size() const noexcept { return carrier_->size(); }
  Elem tensor(Elem a, Elem b) const { return tensor_[a * size() + b]; }
  const std::vector<Elem>& tensor_table() const noexcept { return tensor_; }
  Elem unit() const noexcept { return carrier_->top(); }

 private:
  LatticePtr carrier_;
  std::vector<Elem> tensor_;
};

/// Laws in order: Commutativity, Associativity, Unit (top is neutral),
/// Isotone, JoinDistributivity (over every subset, so a (x) bottom =
/// bottom), Divisibility (a <= b implies a = b (x) c for some c).
inline Verdict check_gl_monoid(const GLMonoid& m, std::size_t cap = kDefaultSubsetCap) {
  const auto& l = m.lattice();
  const std::size_t n = l.size();
  auto nm = [&](Elem e) { return l.name(e); };
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (m.tensor(a, b) != m.tensor(b, a)) return Verdict::fail("Commutativity", {nm(a), nm(b)});
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        if (m.tensor(m.tensor(a, b), c) != m.tensor(a, m.tensor(b, c)))
          return Verdict::fail("Associativity", {nm(a), nm(b), nm(c)});
  for (Elem a = 0; a < n; ++a)
    if (m.tensor(m.unit(), a) != a) return Verdict::fail("Unit", {nm(a)});
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        if (l.leq(b, c) && !l.leq(m.tensor(a, b), m.tensor(a, c)))
          return Verdict::fail("Isotone", {nm(a), nm(b), nm(c)});
  if (n > cap) throw CapExceeded("check_gl_monoid", n, cap);
  for (Elem a = 0; a < n; ++a)
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
      Elem images = l.bottom();
      for (Mask r = s; r; r &= r - 1) images = l.join(images, m.tensor(a, std::countr_zero(r)));
      if (m.tensor(a, l.join_mask(s)) != images)
        return Verdict::fail("JoinDistributivity", {nm(a), l.subset_name(s)});
    }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      if (!l.leq(a, b)) continue;
      bool found = false;
      for (Elem c = 0; c < n && !found; ++c) found = m.tensor(b, c) == a;
      if (!found) return Verdict::fail("Divisibility", {nm(a), nm(b)});
    }
  return Verdict::pass();
}

/// "0", "1/2", "1" style names for k/(n-1).
inline std::vector<std::string> fraction_names(std::size_t n) {
  std::vector<std::string> names;
  const std::size_t d = n - 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == 0 || d == 0) {
      names.push_back(k == 0 ? "0" : "1");
      continue;
    }
    const std::size_t g = std::gcd(k, d);
    names.push_back(k == d ? "1" : std::to_string(k / g) + "/" + std::to_string(d / g));
  }
  return names;
}

/// (L, meet): the Heyting case; valid whenever L is distributive.
inline GLMonoid min_monoid(const LatticePtr& l) {
  std::vector<Elem> t(l->size() * l->size());
  for (Elem a = 0; a < l->size(); ++a)
    for (Elem b = 0; b < l->size(); ++b) t[a * l->size() + b] = l->meet(a, b);
  return GLMonoid(l, std::move(t));
}

inline GLMonoid min_chain(std::size_t n) { return min_monoid(chain_lattice(fraction_names(n))); }

/// a (x) b = max(0, a + b - top) on a chain whose element indices follow
/// the chain order: the MV case.
inline GLMonoid lukasiewicz_monoid(const LatticePtr& chain) {
  const std::size_t n = chain->size();
  for (Elem a = 0; a + 1 < n; ++a)
    if (!chain->leq(a, a + 1)) throw InputError("NotAChain", "elements must be listed bottom to top");
  std::vector<Elem> t(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) t[a * n + b] = a + b >= n - 1 ? a + b - (n - 1) : 0;
  return GLMonoid(chain, std::move(t));
}

/// Chain {0, 1/(n-1), ..., 1} with the Lukasiewicz tensor.
inline GLMonoid lukasiewicz_chain(std::size_t n) {
  return lukasiewicz_monoid(chain_lattice(fraction_names(n)));
}

using MonoidPtr = std::shared_ptr<const GLMonoid>;

/// Index of an L-fuzzy set: sum over ground points x of value(x) * |L|^x.
using FuzzySet = std::size_t;

inline constexpr std::size_t kDefaultFuzzyCap = 81;

/// All L-fuzzy sets on a finite ground set, with pointwise order, joins,
/// meets and tensor precomputed.
class FuzzySpace {
 public:
  static constexpr std::size_t kHardLimit = 1024;

  FuzzySpace(MonoidPtr monoid, std::vector<std::string> ground)
      : monoid_(std::move(monoid)), ground_(std::move(ground)) {
    const std::size_t k = monoid_->size();
    size_ = 1;
    for (std::size_t i = 0; i < ground_.size(); ++i) {
      size_ *= k;
      if (size_ > kHardLimit) throw CapExceeded("FuzzySpace", size_, kHardLimit);
    }
    values_.resize(size_);
    for (FuzzySet f = 0; f < size_; ++f) {
      FuzzySet r = f;
      for (std::size_t x = 0; x < ground_.size(); ++x) {
        values_[f].push_back(r % k);
        r /= k;
      }
    }
    const auto& l = monoid_->lattice();
    leq_.resize(size_ * size_);
    join_.resize(size_ * size_);
    meet_.resize(size_ * size_);
    tensor_.resize(size_ * size_);
    for (FuzzySet f = 0; f < size_; ++f)
      for (FuzzySet g = 0; g < size_; ++g) {
        bool le = true;
        std::vector<Elem> j(ground_.size()), m(ground_.size()), t(ground_.size());
        for (std::size_t x = 0; x < ground_.size(); ++x) {
          const Elem a = values_[f][x], b = values_[g][x];
          le = le && l.leq(a, b);
          j[x] = l.join(a, b);
          m[x] = l.meet(a, b);
          t[x] = monoid_->tensor(a, b);
        }
        leq_[f * size_ + g] = le;
        join_[f * size_ + g] = encode(j);
        meet_[f * size_ + g] = encode(m);
        tensor_[f * size_ + g] = encode(t);
      }
    top_ = constant(l.top());
    bottom_ = constant(l.bottom());
  }

  const GLMonoid& monoid() const noexcept { return *monoid_; }
  const MonoidPtr& monoid_ptr() const noexcept { return monoid_; }
  const CompleteLattice& levels() const noexcept { return monoid_->lattice(); }
  const std::vector<std::string>& ground() const noexcept { return ground_; }
  std::size_t size() const noexcept { return size_; }

  FuzzySet encode(const std::vector<Elem>& v) const {
    FuzzySet f = 0;
    for (std::size_t x = v.size(); x-- > 0;) f = f * monoid_->size() + v[x];
    return f;
  }
  const std::vector<Elem>& values(FuzzySet f) const { return values_[f]; }
  FuzzySet constant(Elem a) const { return encode(std::vector<Elem>(ground_.size(), a)); }

  bool leq(FuzzySet f, FuzzySet g) const { return leq_[f * size_ + g]; }
  FuzzySet join(FuzzySet f, FuzzySet g) const { return join_[f * size_ + g]; }
  FuzzySet meet(FuzzySet f, FuzzySet g) const { return meet_[f * size_ + g]; }
  FuzzySet tensor(FuzzySet f, FuzzySet g) const { return tensor_[f * size_ + g]; }
  FuzzySet top() const noexcept { return top_; }
  FuzzySet bottom() const noexcept { return bottom_; }

  std::string name(FuzzySet f) const {
    std::string out = "(";
    for (std::size_t x = 0; x < ground_.size(); ++x) {
      if (x) out += ",";
      out += levels().name(values_[f][x]);
    }
    return out + ")";
  }

 private:
  MonoidPtr monoid_;
  std::vector<std::string> ground_;
  std::size_t size_ = 1;
  std::vector<std::vector<Elem>> values_;
  std::vector<bool> leq_;
  std::vector<FuzzySet> join_, meet_, tensor_;
  FuzzySet top_ = 0, bottom_ = 0;
};

using FuzzySpacePtr = std::shared_ptr<const FuzzySpace>;

/// I: L^X x L -> L^X as a table indexed by f * |L| + level.
class FuzzyInterior {
 public:
  FuzzyInterior(FuzzySpacePtr space, std::vector<FuzzySet> table)
      : space_(std::move(space)), table_(std::move(table)) {
    if (table_.size() != space_->size() * space_->levels().size())
      throw InputError("TableShape", "fuzzy interior must cover L^X x L");
    for (FuzzySet v : table_)
      if (v >= space_->size()) throw InputError("TableShape", "value outside L^X");
  }

  FuzzySet operator()(FuzzySet f, Elem level) const {
    return table_[f * space_->levels().size() + level];
  }
  const FuzzySpacePtr& space() const noexcept { return space_; }
  const std::vector<FuzzySet>& table() const noexcept { return table_; }

 private:
  FuzzySpacePtr space_;
  std::vector<FuzzySet> table_;
};

/// How the level-continuity axiom (I7) is read.
///  - ConstantOnFamily: if I(f, a) = g for every a in a non-empty K, then
///    I(f, join K) = g.
///  - FixpointOnFamily: if I(f, a) = f for every a in K, then I(f, join K) = f.
enum class I7Reading { ConstantOnFamily, FixpointOnFamily };

struct FuzzyOptions {
  I7Reading i7 = I7Reading::ConstantOnFamily;
  std::size_t cap = kDefaultFuzzyCap;
};

inline Verdict check_fuzzy_interior(const FuzzyInterior& i, const FuzzyOptions& opts = {}) {
  const auto& sp = *i.space();
  const auto& l = sp.levels();
  const auto& m = sp.monoid();
  const std::size_t n = sp.size();
  const std::size_t k = l.size();
  if (n > opts.cap) throw CapExceeded("check_fuzzy_interior", n, opts.cap);
  auto fs = [&](FuzzySet f) { return sp.name(f); };
  auto lv = [&](Elem a) { return l.name(a); };

  // (I1) I(1_X, a) = 1_X
  for (Elem a = 0; a < k; ++a)
    if (i(sp.top(), a) != sp.top()) return Verdict::fail("I1", {fs(sp.top()), lv(a)});
  // (I2) I(g, b) <= I(f, a) whenever g <= f and a <= b
  for (FuzzySet g = 0; g < n; ++g)
    for (FuzzySet f = 0; f < n; ++f) {
      if (!sp.leq(g, f)) continue;
      for (Elem a = 0; a < k; ++a)
        for (Elem b = 0; b < k; ++b)
          if (l.leq(a, b) && !sp.leq(i(g, b), i(f, a)))
            return Verdict::fail("I2", {fs(g), lv(b), fs(f), lv(a)});
    }
  // (I3) I(f, a) (x) I(g, b) <= I(f (x) g, a (x) b)
  for (FuzzySet f = 0; f < n; ++f)
    for (Elem a = 0; a < k; ++a)
      for (FuzzySet g = 0; g < n; ++g)
        for (Elem b = 0; b < k; ++b)
          if (!sp.leq(sp.tensor(i(f, a), i(g, b)), i(sp.tensor(f, g), m.tensor(a, b))))
            return Verdict::fail("I3", {fs(f), lv(a), fs(g), lv(b)});
  // (I4) I(f, a) <= f
  for (FuzzySet f = 0; f < n; ++f)
    for (Elem a = 0; a < k; ++a)
      if (!sp.leq(i(f, a), f)) return Verdict::fail("I4", {fs(f), lv(a)});
  // (I5) I(f, a) <= I(I(f, a), a)
  for (FuzzySet f = 0; f < n; ++f)
    for (Elem a = 0; a < k; ++a)
      if (!sp.leq(i(f, a), i(i(f, a), a))) return Verdict::fail("I5", {fs(f), lv(a)});
  // (I6) I(f, bottom) = f
  for (FuzzySet f = 0; f < n; ++f)
    if (i(f, l.bottom()) != f) return Verdict::fail("I6", {fs(f)});
  // (I7) level continuity over every non-empty K
  if (k > kDefaultSubsetCap) throw CapExceeded("check_fuzzy_interior (I7)", k, kDefaultSubsetCap);
  for (FuzzySet f = 0; f < n; ++f)
    for (Mask s = 1; s < (Mask{1} << k); ++s) {
      const Elem first = static_cast<Elem>(std::countr_zero(s));
      const FuzzySet g = i(f, first);
      bool premise = opts.i7 == I7Reading::FixpointOnFamily ? g == f : true;
      for (Mask r = s; r && premise; r &= r - 1) premise = i(f, std::countr_zero(r)) == g;
      if (premise && i(f, l.join_mask(s)) != g)
        return Verdict::fail("I7", {fs(f), l.subset_name(s)});
    }
  return Verdict::pass();
}

/// Openness grade of every fuzzy set, indexed by FuzzySet.
struct FuzzyTopology {
  FuzzySpacePtr space;
  std::vector<Elem> grade;
};

inline FuzzyTopology fuzzy_topology_from_interior(const FuzzyInterior& i,
                                                  const FuzzyOptions& opts = {}) {
  if (auto v = check_fuzzy_interior(i, opts); !v) {
    auto w = v.witness;
    w.insert(w.begin(), v.law);
    throw LawViolation("NotAFuzzyInterior", std::move(w));
  }
  const auto& sp = *i.space();
  const auto& l = sp.levels();
  FuzzyTopology t{i.space(), std::vector<Elem>(sp.size(), l.bottom())};
  for (FuzzySet f = 0; f < sp.size(); ++f)
    for (Elem a = 0; a < l.size(); ++a)
      if (sp.leq(f, i(f, a))) t.grade[f] = l.join(t.grade[f], a);
  return t;
}

/// Laws in order:
///   TopGrade:    grade(1_X) = top
///   TensorGrade: grade(f (x) g) >= grade(f) (x) grade(g)
///   JoinGrade:   grade(join F) >= meet grade(F) for every family F.
/// JoinGrade is checked on the empty family and on pairs: for a fixed level
/// a, the sets graded >= a are closed under all finite joins once they
/// contain the bottom set and are closed under binary joins.
inline Verdict check_fuzzy_topology(const FuzzyTopology& t, std::size_t cap = kDefaultFuzzyCap) {
  const auto& sp = *t.space;
  const auto& l = sp.levels();
  const auto& m = sp.monoid();
  const std::size_t n = sp.size();
  if (n > cap) throw CapExceeded("check_fuzzy_topology", n, cap);
  if (t.grade.size() != n) throw InputError("TableShape", "grade must cover L^X");
  if (t.grade[sp.top()] != l.top())
    return Verdict::fail("TopGrade", {sp.name(sp.top()), l.name(t.grade[sp.top()])});
  for (FuzzySet f = 0; f < n; ++f)
    for (FuzzySet g = 0; g < n; ++g)
      if (!l.leq(m.tensor(t.grade[f], t.grade[g]), t.grade[sp.tensor(f, g)]))
        return Verdict::fail("TensorGrade", {sp.name(f), sp.name(g)});
  if (t.grade[sp.bottom()] != l.top())
    return Verdict::fail("JoinGrade", {"{}", sp.name(sp.bottom())});
  for (FuzzySet f = 0; f < n; ++f)
    for (FuzzySet g = 0; g < n; ++g)
      if (!l.leq(l.meet(t.grade[f], t.grade[g]), t.grade[sp.join(f, g)]))
        return Verdict::fail("JoinGrade", {format_set({sp.name(f), sp.name(g)})});
  return Verdict::pass();
}

/// Visits every table that passes check_fuzzy_interior. The search fixes
/// the entries pinned by I1 and I6, keeps I4 as a domain restriction, and
/// prunes on I2, I3 and I5 as soon as all entries of a constraint are
/// assigned; each complete table is confirmed with check_fuzzy_interior.
inline void for_each_fuzzy_interior(const FuzzySpacePtr& space, const FuzzyOptions& opts,
                                    const std::function<void(const FuzzyInterior&)>& visit) {
  const auto& sp = *space;
  const auto& l = sp.levels();
  const auto& m = sp.monoid();
  const std::size_t n = sp.size();
  const std::size_t k = l.size();
  if (n > opts.cap) throw CapExceeded("for_each_fuzzy_interior", n, opts.cap);
  auto pos = [k](FuzzySet f, Elem a) { return f * k + a; };

  std::vector<FuzzySet> table(n * k, 0);
  std::vector<std::uint8_t> assigned(n * k, 0);
  for (FuzzySet f = 0; f < n; ++f) {
    table[pos(f, l.bottom())] = f;
    assigned[pos(f, l.bottom())] = 1;
  }
  for (Elem a = 0; a < k; ++a) {
    if (assigned[pos(sp.top(), a)] && table[pos(sp.top(), a)] != sp.top()) return;
    table[pos(sp.top(), a)] = sp.top();
    assigned[pos(sp.top(), a)] = 1;
  }

  // Free positions ordered by (level rank, set rank) along linear extensions.
  auto rank = [](std::size_t count, const std::function<bool(std::size_t, std::size_t)>& le) {
    std::vector<std::size_t> r(count, 0);
    for (std::size_t a = 0; a < count; ++a)
      for (std::size_t b = 0; b < count; ++b)
        if (le(b, a)) ++r[a];
    return r;
  };
  const auto level_rank = rank(k, [&](std::size_t a, std::size_t b) { return l.leq(a, b); });
  const auto set_rank = rank(n, [&](std::size_t a, std::size_t b) { return sp.leq(a, b); });
  std::vector<std::size_t> free;
  for (std::size_t p = 0; p < n * k; ++p)
    if (!assigned[p]) free.push_back(p);
  std::stable_sort(free.begin(), free.end(), [&](std::size_t p, std::size_t q) {
    if (level_rank[p % k] != level_rank[q % k]) return level_rank[p % k] < level_rank[q % k];
    return set_rank[p / k] < set_rank[q / k];
  });

  auto consistent = [&](std::size_t p) {
    const FuzzySet f = p / k;
    const Elem a = p % k;
    const FuzzySet v = table[p];
    for (std::size_t q = 0; q < n * k; ++q) {
      if (!assigned[q] || q == p) continue;
      const FuzzySet g = q / k;
      const Elem b = q % k;
      const FuzzySet w = table[q];
      // I2 both ways.
      if (sp.leq(g, f) && l.leq(a, b) && !sp.leq(w, v)) return false;
      if (sp.leq(f, g) && l.leq(b, a) && !sp.leq(v, w)) return false;
      // I5 with p as the outer or inner application.
      if (b == a && w == f && !sp.leq(w, v)) return false;
      if (b == a && g == v && !sp.leq(v, w)) return false;
    }
    // I3 with p as a factor (paired with any assigned q, including p).
    for (std::size_t q = 0; q < n * k; ++q) {
      if (!assigned[q] && q != p) continue;
      const std::size_t target = pos(sp.tensor(f, q / k), m.tensor(a, q % k));
      if ((assigned[target] || target == p) &&
          !sp.leq(sp.tensor(v, table[q]), table[target]))
        return false;
    }
    // I3 with p as the target.
    for (std::size_t q = 0; q < n * k; ++q) {
      if (!assigned[q]) continue;
      for (std::size_t r = q; r < n * k; ++r) {
        if (!assigned[r]) continue;
        if (sp.tensor(q / k, r / k) != f || m.tensor(q % k, r % k) != a) continue;
        if (!sp.leq(sp.tensor(table[q], table[r]), v)) return false;
      }
    }
    return true;
  };

  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == free.size()) {
      FuzzyInterior candidate(space, table);
      if (check_fuzzy_interior(candidate, opts)) visit(candidate);
      return;
    }
    const std::size_t p = free[depth];
    const FuzzySet f = p / k;
    for (FuzzySet v = 0; v < n; ++v) {
      if (!sp.leq(v, f)) continue;
      table[p] = v;
      assigned[p] = 1;
      if (consistent(p)) rec(depth + 1);
      assigned[p] = 0;
    }
  };
  rec(0);
}

}  // namespace ikit
