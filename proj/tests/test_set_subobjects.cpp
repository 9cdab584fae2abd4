#include <gtest/gtest.h>

#include "ikit/set_subobjects.hpp"
#include "oracles.hpp"

using namespace ikit;

namespace {

FinFunction f123() {
  return FinFunction::from_pairs({"1", "2", "3"}, {"x", "y"}, {{"1", "x"}, {"2", "x"}, {"3", "y"}});
}

FinFunction constant12() { return FinFunction::from_pairs({"1", "2"}, {"x"}, {{"1", "x"}, {"2", "x"}}); }

/// Every function between sets of sizes 0..3 (domain) and 1..3 (codomain).
template <class F>
void for_each_small_function(F&& visit) {
  const std::vector<std::string> pool{"p", "q", "r"};
  const std::vector<std::string> cpool{"x", "y", "z"};
  for (std::size_t n = 0; n <= 3; ++n)
    for (std::size_t k = 1; k <= 3; ++k) {
      std::vector<std::string> dom(pool.begin(), pool.begin() + n);
      std::vector<std::string> cod(cpool.begin(), cpool.begin() + k);
      oracle::all_tables(n, k, [&](const std::vector<Elem>& t) { visit(FinFunction(dom, cod, t)); });
    }
}

}  // namespace

TEST(Images, InverseImage) {
  EXPECT_EQ(inverse_image(constant12(), 0b1), Subset{0b11});
  EXPECT_EQ(inverse_image(f123(), 0b01), Subset{0b011});
  EXPECT_EQ(inverse_image(f123(), 0), Subset{0});
  EXPECT_THROW(inverse_image(f123(), 0b100), InputError);
}

TEST(Images, DirectImage) {
  EXPECT_EQ(direct_image(f123(), 0b101), Subset{0b11});
  EXPECT_EQ(direct_image(f123(), 0), Subset{0});
  auto id = FinFunction::identity({"a", "b", "c"});
  for (Subset m = 0; m < 8; ++m) EXPECT_EQ(direct_image(id, m), m);
  EXPECT_THROW(direct_image(f123(), 0b1000), InputError);
}

TEST(Images, UniversalImage) {
  EXPECT_EQ(universal_image(f123(), 0b101), Subset{0b10});
  EXPECT_EQ(universal_image(f123(), 0b111), Subset{0b11});
  EXPECT_EQ(universal_image(constant12(), 0b01), Subset{0});
  EXPECT_THROW(universal_image(f123(), 0b1000), InputError);
}

TEST(Images, UniversalIsLargestWithPreimageInside) {
  for_each_small_function([](const FinFunction& f) {
    for (Subset m = 0; m <= f.dom_full(); ++m) {
      Subset best = 0;  // union of all n with f^-1(n) inside m
      for (Subset n = 0; n <= f.cod_full(); ++n)
        if ((inverse_image(f, n) & ~m) == 0) best |= n;
      EXPECT_EQ(universal_image(f, m), best);
    }
  });
}

TEST(Triple, IdentityTriple) {
  auto t = triple_of(FinFunction::identity({"a", "b"}));
  for (Elem s = 0; s < 4; ++s) {
    EXPECT_EQ(t.existential(s), s);
    EXPECT_EQ(t.inverse(s), s);
    EXPECT_EQ(t.universal(s), s);
  }
}

TEST(Triple, SurjectionTripleOracle) {
  auto t = triple_of(f123());
  const auto& d = *t.existential.dom();
  const auto& c = *t.existential.cod();
  EXPECT_TRUE(oracle::galois(d, c, t.existential.table(), t.inverse.table()));
  EXPECT_TRUE(oracle::galois(c, d, t.inverse.table(), t.universal.table()));
}

TEST(Triple, ConstantFunctionExistentialDiffersFromUniversal) {
  auto t = triple_of(constant12());
  EXPECT_NE(t.existential(0b01), t.universal(0b01));
  EXPECT_EQ(t.existential.cod()->name(t.existential(0b01)), "{x}");
  EXPECT_EQ(t.universal.cod()->name(t.universal(0b01)), "{}");
}

TEST(Triple, PreservationFormulas) {
  for_each_small_function([](const FinFunction& f) {
    auto t = triple_of(f);
    const auto& d = *t.existential.dom();
    const auto& c = *t.existential.cod();
    EXPECT_TRUE(oracle::preserves_all_joins(d, c, t.existential.table()));
    EXPECT_TRUE(oracle::preserves_all_meets(c, d, t.inverse.table()));
    EXPECT_TRUE(oracle::preserves_all_joins(c, d, t.inverse.table()));
    EXPECT_TRUE(oracle::preserves_all_meets(d, c, t.universal.table()));
    for (Subset m = 0; m <= f.dom_full(); ++m) {
      EXPECT_EQ(m & ~inverse_image(f, direct_image(f, m)), 0u);
      EXPECT_EQ(direct_image(f, inverse_image(f, direct_image(f, m))), direct_image(f, m));
    }
    for (Subset n = 0; n <= f.cod_full(); ++n)
      EXPECT_EQ(direct_image(f, inverse_image(f, n)) & ~n, 0u);
    if (f.injective()) {
      for (Subset a = 0; a <= f.dom_full(); ++a)
        for (Subset b = 0; b <= f.dom_full(); ++b)
          EXPECT_EQ(direct_image(f, a & b), direct_image(f, a) & direct_image(f, b));
    }
  });
}

TEST(MonoEpi, InjectionIntoTwo) {
  auto f = FinFunction::from_pairs({"1"}, {"x", "y"}, {{"1", "x"}});
  auto r = check_mono_epi_laws(f);
  EXPECT_TRUE(r.injective);
  EXPECT_FALSE(r.surjective);
  EXPECT_TRUE(r.preimage_of_image.applies);
  EXPECT_TRUE(r.preimage_of_image.conclusion);
  EXPECT_TRUE(r.holds());
}

TEST(MonoEpi, SurjectionOntoOne) {
  auto r = check_mono_epi_laws(constant12());
  EXPECT_TRUE(r.surjective);
  EXPECT_TRUE(r.image_of_preimage.applies);
  EXPECT_TRUE(r.image_of_preimage.conclusion);
  EXPECT_TRUE(r.holds());
}

TEST(MonoEpi, NonInjectiveConclusionNotAsserted) {
  auto r = check_mono_epi_laws(constant12());
  EXPECT_FALSE(r.preimage_of_image.applies);
  EXPECT_FALSE(r.preimage_of_image.conclusion);
  EXPECT_EQ(r.preimage_of_image.conclusion.witness, (std::vector<std::string>{"{1}", "{1,2}"}));
}

TEST(MonoEpi, HoldsForEverySmallFunction) {
  for_each_small_function([](const FinFunction& f) {
    auto r = check_mono_epi_laws(f);
    EXPECT_TRUE(r.holds());
    EXPECT_TRUE(r.image_of_empty.conclusion);
  });
}

TEST(FinFunctionErrors, FromPairs) {
  EXPECT_THROW(FinFunction::from_pairs({"1", "2"}, {"x"}, {{"1", "x"}}), InputError);
  EXPECT_THROW(FinFunction::from_pairs({"1"}, {"x"}, {{"1", "x"}, {"1", "x"}}), InputError);
  EXPECT_THROW(FinFunction::from_pairs({"1"}, {"x"}, {{"1", "w"}}), InputError);
  EXPECT_THROW(FinFunction::from_pairs({"1", "1"}, {"x"}, {{"1", "x"}}), InputError);
}
