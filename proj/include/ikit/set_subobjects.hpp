#pragma once

// Subsets along a finite function: direct image, preimage and universal
// image, forming the adjoint triple  exists_f -| f^-1 -| forall_f  between
// powerset lattices.

#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ikit/adjunction.hpp"
#include "ikit/error.hpp"
#include "ikit/order.hpp"

namespace ikit {

/// A subset of a finite set as a bitmask over its canonical order. This is
/// also the element index of the subset in powerset_lattice.
using Subset = Mask;

class FinFunction {
 public:
  FinFunction(std::vector<std::string> dom, std::vector<std::string> cod,
              std::vector<std::size_t> map)
      : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)) {
    if (map_.size() != dom_.size())
      throw InputError("TableShape", "function must be total on its domain");
    for (std::size_t y : map_)
      if (y >= cod_.size())
        throw InputError("TableShape", "function value outside the codomain");
  }

  /// From (x, f(x)) name pairs; every domain element must appear once.
  static FinFunction from_pairs(
      std::vector<std::string> dom, std::vector<std::string> cod,
      const std::vector<std::pair<std::string, std::string>>& pairs) {
    auto index_of = [](const std::vector<std::string>& v) {
      std::unordered_map<std::string, std::size_t> idx;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (!idx.emplace(v[i], i).second) throw InputError("DuplicateElement", v[i]);
      return idx;
    };
    auto di = index_of(dom);
    auto ci = index_of(cod);
    std::vector<std::size_t> map(dom.size(), cod.size());
    for (const auto& [x, y] : pairs) {
      auto ix = di.find(x);
      auto iy = ci.find(y);
      if (ix == di.end()) throw InputError("UnknownElement", x);
      if (iy == ci.end()) throw InputError("UnknownElement", y);
      if (map[ix->second] != cod.size())
        throw InputError("DuplicateAssignment", x);
      map[ix->second] = iy->second;
    }
    for (std::size_t i = 0; i < map.size(); ++i)
      if (map[i] == cod.size()) throw InputError("PartialFunction", dom[i]);
    return FinFunction(std::move(dom), std::move(cod), std::move(map));
  }

  static FinFunction identity(std::vector<std::string> set) {
    std::vector<std::size_t> map(set.size());
    for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;
    auto copy = set;
    return FinFunction(std::move(set), std::move(copy), std::move(map));
  }

  std::size_t operator()(std::size_t x) const { return map_[x]; }
  const std::vector<std::string>& dom() const noexcept { return dom_; }
  const std::vector<std::string>& cod() const noexcept { return cod_; }
  const std::vector<std::size_t>& map() const noexcept { return map_; }

  Subset dom_full() const { return (Subset{1} << dom_.size()) - 1; }
  Subset cod_full() const { return (Subset{1} << cod_.size()) - 1; }

  bool injective() const {
    Subset seen = 0;
    for (std::size_t y : map_) {
      if (has_bit(seen, y)) return false;
      seen |= Subset{1} << y;
    }
    return true;
  }
  bool surjective() const {
    Subset seen = 0;
    for (std::size_t y : map_) seen |= Subset{1} << y;
    return seen == cod_full();
  }

 private:
  std::vector<std::string> dom_;
  std::vector<std::string> cod_;
  std::vector<std::size_t> map_;
};

/// g . f
inline FinFunction compose(const FinFunction& g, const FinFunction& f) {
  if (f.cod() != g.dom())
    throw InputError("DomainMismatch", "compose: cod(f) != dom(g)");
  std::vector<std::size_t> map(f.dom().size());
  for (std::size_t x = 0; x < map.size(); ++x) map[x] = g(f(x));
  return FinFunction(f.dom(), g.cod(), std::move(map));
}

inline std::string subset_name(const std::vector<std::string>& set, Subset s) {
  std::vector<std::string> items;
  for (std::size_t i = 0; i < set.size(); ++i)
    if (has_bit(s, i)) items.push_back(set[i]);
  return format_set(items);
}

namespace detail {
inline void require_subset(Subset s, Subset full, const char* side) {
  if (s & ~full) throw InputError("NotASubset", side);
}
}  // namespace detail

/// { x in dom | f(x) in n }
inline Subset inverse_image(const FinFunction& f, Subset n) {
  detail::require_subset(n, f.cod_full(), "inverse_image: argument not in cod");
  Subset out = 0;
  for (std::size_t x = 0; x < f.dom().size(); ++x)
    if (has_bit(n, f(x))) out |= Subset{1} << x;
  return out;
}

/// { f(x) | x in m }
inline Subset direct_image(const FinFunction& f, Subset m) {
  detail::require_subset(m, f.dom_full(), "direct_image: argument not in dom");
  Subset out = 0;
  for (std::size_t x = 0; x < f.dom().size(); ++x)
    if (has_bit(m, x)) out |= Subset{1} << f(x);
  return out;
}

/// { y in cod | f^-1({y}) is contained in m }
inline Subset universal_image(const FinFunction& f, Subset m) {
  detail::require_subset(m, f.dom_full(), "universal_image: argument not in dom");
  Subset outside = 0;  // points of cod hit from outside m
  for (std::size_t x = 0; x < f.dom().size(); ++x)
    if (!has_bit(m, x)) outside |= Subset{1} << f(x);
  return f.cod_full() & ~outside;
}

struct AdjointTriple {
  MonotoneMap existential;  // P(dom) -> P(cod)
  MonotoneMap inverse;      // P(cod) -> P(dom)
  MonotoneMap universal;    // P(dom) -> P(cod)
};

/// Packages the three image maps between powerset lattices and verifies
/// existential -| inverse -| universal.
inline AdjointTriple triple_of(const FinFunction& f) {
  auto pd = powerset_lattice(f.dom());
  auto pc = powerset_lattice(f.cod());
  std::vector<Elem> ex(pd->size()), inv(pc->size()), uni(pd->size());
  for (Subset m = 0; m < pd->size(); ++m) {
    ex[m] = direct_image(f, m);
    uni[m] = universal_image(f, m);
  }
  for (Subset n = 0; n < pc->size(); ++n) inv[n] = inverse_image(f, n);
  AdjointTriple t{MonotoneMap(pd, pc, std::move(ex)),
                  MonotoneMap(pc, pd, std::move(inv)),
                  MonotoneMap(pd, pc, std::move(uni))};
  if (auto v = is_adjoint_pair(t.existential, t.inverse); !v)
    throw std::logic_error("direct image is not left adjoint: " + v.to_string());
  if (auto v = is_adjoint_pair(t.inverse, t.universal); !v)
    throw std::logic_error("universal image is not right adjoint: " + v.to_string());
  return t;
}

/// One row of the injection/surjection laws: whether its hypothesis holds
/// for this f, and if so whether the conclusion does.
struct LawReport {
  bool applies = false;
  Verdict conclusion;
};

/// The Sets reading of the mono/epi laws for images (M = injections,
/// E = surjections):
///   1. f injective  => f^-1({}) = {}
///   2. f surjective => f({}) = {}   (in Sets f({}) = {} for every f)
///   3. f injective  => f^-1(f(m)) = m for all m
///   4. f surjective => f(f^-1(n)) = n for all n
/// Conclusions are evaluated even when the hypothesis fails, so callers can
/// see that e.g. law 3 genuinely needs injectivity.
struct MonoEpiReport {
  bool injective = false;
  bool surjective = false;
  LawReport preimage_of_empty;
  LawReport image_of_empty;
  LawReport preimage_of_image;
  LawReport image_of_preimage;

  /// Every applicable law holds.
  bool holds() const {
    for (const LawReport* r : {&preimage_of_empty, &image_of_empty,
                               &preimage_of_image, &image_of_preimage})
      if (r->applies && !r->conclusion) return false;
    return true;
  }
};

inline MonoEpiReport check_mono_epi_laws(const FinFunction& f) {
  MonoEpiReport r;
  r.injective = f.injective();
  r.surjective = f.surjective();

  r.preimage_of_empty.applies = r.injective;
  if (inverse_image(f, 0) != 0)
    r.preimage_of_empty.conclusion = Verdict::fail(
        "PreimageOfEmpty", {subset_name(f.dom(), inverse_image(f, 0))});

  r.image_of_empty.applies = r.surjective;
  if (direct_image(f, 0) != 0)
    r.image_of_empty.conclusion = Verdict::fail(
        "ImageOfEmpty", {subset_name(f.cod(), direct_image(f, 0))});

  r.preimage_of_image.applies = r.injective;
  for (Subset m = 0; m <= f.dom_full(); ++m) {
    const Subset back = inverse_image(f, direct_image(f, m));
    if (back != m) {
      r.preimage_of_image.conclusion = Verdict::fail(
          "PreimageOfImage", {subset_name(f.dom(), m), subset_name(f.dom(), back)});
      break;
    }
  }

  r.image_of_preimage.applies = r.surjective;
  for (Subset n = 0; n <= f.cod_full(); ++n) {
    const Subset back = direct_image(f, inverse_image(f, n));
    if (back != n) {
      r.image_of_preimage.conclusion = Verdict::fail(
          "ImageOfPreimage", {subset_name(f.cod(), n), subset_name(f.cod(), back)});
      break;
    }
  }
  return r;
}

}  // namespace ikit
