// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance            run every criterion
//   acceptance <name>     run one criterion
//
// All criteria are exact; each has a wall-clock limit below.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ikit/adjunction.hpp"
#include "ikit/fuzzy.hpp"
#include "ikit/interior.hpp"
#include "ikit/kuratowski.hpp"
#include "ikit/manifest.hpp"
#include "ikit/set_subobjects.hpp"
#include "ikit/sieve.hpp"
#include "oracles.hpp"

using namespace ikit;
namespace fs = std::filesystem;

namespace {

/// Collects failure notes; a criterion passes when none were recorded.
struct Tally {
  std::vector<std::string> failures;
  std::size_t checked = 0;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok && failures.size() == 5) failures.push_back("...");
  }
};

struct Criterion {
  std::string name;
  double limit_seconds;
  std::function<void(Tally&)> body;
};

std::vector<LatticePtr> lattice_catalog() {
  return {chain_lattice(2),
          chain_lattice(3),
          chain_lattice(4),
          powerset_lattice({"a"}),
          powerset_lattice({"a", "b"}),
          powerset_lattice({"a", "b", "c"}),
          diamond_m3(),
          pentagon_n5()};
}

std::string label(const LatticePtr& l) {
  std::string s;
  for (const auto& n : l->names()) s += (s.empty() ? "" : ",") + n;
  return "[" + s + "]";
}

/// Every function between the two given sets.
std::vector<FinFunction> functions(const std::vector<std::string>& dom,
                                   const std::vector<std::string>& cod) {
  std::vector<FinFunction> out;
  oracle::all_tables(dom.size(), cod.size(),
                     [&](const std::vector<Elem>& t) { out.emplace_back(dom, cod, t); });
  return out;
}

void adjoint_synthesis(Tally& t) {
  const auto cat = lattice_catalog();
  for (const auto& dom : cat)
    for (const auto& cod : cat)
      for_each_monotone_map(dom, cod, [&](const MonotoneMap& f) {
        const std::string where = label(dom) + "->" + label(cod);
        const bool meets = oracle::preserves_all_meets(*dom, *cod, f.table());
        const bool joins = oracle::preserves_all_joins(*dom, *cod, f.table());
        t.expect(static_cast<bool>(preserves_meets(f)) == meets, "preserves_meets " + where);
        t.expect(static_cast<bool>(preserves_joins(f)) == joins, "preserves_joins " + where);

        bool left_ok = true;
        try {
          auto phi = synthesize_left_adjoint(f);
          t.expect(static_cast<bool>(is_adjoint_pair(phi, f)), "left pair " + where);
          t.expect(static_cast<bool>(check_preservation({phi, f})), "left preservation " + where);
          t.expect(oracle::galois(*cod, *dom, phi.table(), f.table()), "left galois " + where);
        } catch (const LawViolation&) {
          left_ok = false;
        }
        t.expect(left_ok == meets, "left synthesis iff meets " + where);
        t.expect(left_ok == oracle::left_adjoint_by_search(*dom, *cod, f.table()).has_value(),
                 "left synthesis iff search " + where);

        bool right_ok = true;
        try {
          auto psi = synthesize_right_adjoint(f);
          t.expect(static_cast<bool>(is_adjoint_pair(f, psi)), "right pair " + where);
          t.expect(static_cast<bool>(check_preservation({f, psi})), "right preservation " + where);
          t.expect(characterize(f, psi).all_agree(), "characterizations " + where);
        } catch (const LawViolation&) {
          right_ok = false;
        }
        t.expect(right_ok == joins, "right synthesis iff joins " + where);
      });
}

void sets_triple(Tally& t) {
  const std::vector<std::string> pool{"1", "2", "3"}, cpool{"x", "y", "z"};
  for (std::size_t n = 0; n <= 3; ++n)
    for (std::size_t k = 0; k <= 3; ++k)
      for (const auto& f : functions({pool.begin(), pool.begin() + n}, {cpool.begin(), cpool.begin() + k})) {
        const std::string where = std::to_string(n) + "->" + std::to_string(k);
        auto tr = triple_of(f);
        const auto& d = *tr.existential.dom();
        const auto& c = *tr.existential.cod();
        t.expect(static_cast<bool>(check_preservation({tr.existential, tr.inverse})), "exists-inverse " + where);
        t.expect(static_cast<bool>(check_preservation({tr.inverse, tr.universal})), "inverse-forall " + where);
        t.expect(oracle::galois(d, c, tr.existential.table(), tr.inverse.table()), "galois 1 " + where);
        t.expect(oracle::galois(c, d, tr.inverse.table(), tr.universal.table()), "galois 2 " + where);
        t.expect(oracle::preserves_all_joins(d, c, tr.existential.table()), "exists joins " + where);
        t.expect(oracle::preserves_all_meets(c, d, tr.inverse.table()) &&
                     oracle::preserves_all_joins(c, d, tr.inverse.table()),
                 "inverse both " + where);
        t.expect(oracle::preserves_all_meets(d, c, tr.universal.table()), "forall meets " + where);
        t.expect(check_mono_epi_laws(f).holds(), "mono/epi " + where);
      }
}

void interior_lattice(Tally& t) {
  auto l = powerset_lattice({"a", "b"});
  auto ops = enumerate_interior_ops(l);
  std::vector<std::vector<Elem>> tables;
  for (const auto& i : ops) tables.push_back(i.table());
  t.expect(tables == oracle::brute_interior_ops(*l), "enumeration equals brute-force filter");
  const auto d = discrete_op(l), tr = trivial_op(l);
  for (const auto& i : ops) {
    t.expect(le_ops(i, d), "discrete is maximal");
    t.expect(le_ops(tr, i), "trivial is minimal");
  }
  std::set<std::vector<Elem>> set(tables.begin(), tables.end());
  for (Mask s = 1; s < (Mask{1} << ops.size()); ++s) {
    std::vector<InteriorOp> fam;
    for (std::size_t k = 0; k < ops.size(); ++k)
      if (has_bit(s, k)) fam.push_back(ops[k]);
    const auto j = join_ops(fam), m = meet_ops(fam);
    t.expect(set.count(j.table()) && set.count(m.table()), "closed under joins and meets");
    for (const auto& i : fam) t.expect(le_ops(i, j) && le_ops(m, i), "bounds");
    // least upper bound among all operators
    for (const auto& u : ops) {
      bool upper = true, lower = true;
      for (const auto& i : fam) {
        upper = upper && le_ops(i, u);
        lower = lower && le_ops(u, i);
      }
      if (upper) t.expect(le_ops(j, u), "join is least");
      if (lower) t.expect(le_ops(u, m), "meet is greatest");
    }
  }
}

const std::vector<std::string> kX{"1", "2"}, kY{"x", "y"};

void initial_operator(Tally& t) {
  const std::vector<std::vector<std::string>> zs{{}, {"z1"}, {"z1", "z2"}};
  for (const auto& f : functions(kX, kY)) {
    auto xy = MorphismAction::of(f);
    const auto ix_all = enumerate_interior_ops(xy.source());
    for (const auto& iy : enumerate_interior_ops(xy.target())) {
      auto ix = initial_interior(xy, iy);
      t.expect(static_cast<bool>(check_interior(ix)), "initial is an interior operator");
      t.expect(static_cast<bool>(is_continuous(xy, ix, iy)), "initial is continuous");
      for (const auto& other : ix_all)
        if (is_continuous(xy, other, iy)) t.expect(le_ops(ix, other), "initial is coarsest");
      for (const auto& z : zs)
        for (const auto& g : functions(z, kX)) {
          auto zx = MorphismAction::of(g);
          for (const auto& iz : enumerate_interior_ops(zx.source()))
            t.expect(static_cast<bool>(check_initiality(zx, xy, iz, iy)), "initiality biconditional");
        }
    }
  }
}

void open_stability(Tally& t) {
  const std::vector<std::vector<std::string>> sets{{}, {"1"}, {"1", "2"}};
  for (const auto& x : sets)
    for (const auto& y : sets)
      for (const auto& f : functions(x, y)) {
        auto a = MorphismAction::of(f);
        for (const auto& ix : enumerate_interior_ops(a.source()))
          for (const auto& iy : enumerate_interior_ops(a.target())) {
            if (!is_continuous(a, ix, iy)) continue;
            t.expect(static_cast<bool>(check_open_stability(a, ix, iy)), "open preimage is open");
            for (Elem n : open_elements(iy))
              t.expect(ix(a.inverse(n)) == a.inverse(n), "open preimage is open (direct)");
          }
      }
}

void kuratowski_bijection(Tally& t) {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto tops = enumerate_topologies(n);
    auto ops = enumerate_kuratowski_ops(numbered_ground(n));
    t.expect(tops.size() == ops.size(), "counts agree at n=" + std::to_string(n));
    for (const auto& tp : tops) {
      auto i = interior_from_topology(tp);
      t.expect(static_cast<bool>(check_kuratowski(i)), "induced operator is Kuratowski");
      t.expect(topology_from_interior(i) == tp, "topology round trip");
    }
    for (const auto& i : ops)
      t.expect(interior_from_topology(topology_from_interior(i)) == i, "operator round trip");
    const auto brute = oracle::brute_topologies(n);
    t.expect(tops.size() == brute.size(), "oracle count at n=" + std::to_string(n));
    if (n == 3) t.expect(brute.size() == 29, "oracle count 29 at n=3");
  }
}

void sieve_calculus(Tally& t) {
  for (const auto& raw : {arrow_category_raw(), chain_category_raw(3)}) {
    auto c = validate_category(raw);
    const std::string cname = c.object_count() == 2 ? "category 2" : "3-chain";
    for (Obj o = 0; o < c.object_count(); ++o) {
      std::set<std::set<std::string>> got;
      for (const auto& s : all_sieves(c, o)) {
        std::set<std::string> names;
        for (Mor m : s.arrows) names.insert(c.morphism_name(m));
        got.insert(names);
      }
      t.expect(got == oracle::brute_sieves(raw, c.object_name(o)),
               "sieves match oracle at " + c.object_name(o) + " in " + cname);
    }
    for (Mor h = 0; h < c.morphism_count(); ++h)
      for (const auto& s : all_sieves(c, c.cod(h))) {
        t.expect(pullback_sieve(c, c.identity(c.cod(h)), s) == s, "identity pullback");
        for (Mor k : c.into(c.dom(h)))
          t.expect(pullback_sieve(c, c.compose(h, k), s) == pullback_sieve(c, k, pullback_sieve(c, h, s)),
                   "pullback functoriality");
      }
    auto ls = sieve_lattices(c);
    for (const auto& [fname, fam] : {std::pair{"trivial", trivial_family(ls)},
                                    std::pair{"discrete", discrete_family(ls)}}) {
      auto v = check_grothendieck(c, open_sieve_topology(c, fam, ls));
      t.expect(static_cast<bool>(v), std::string(fname) + " family in " + cname + ": " + v.to_string());
    }
  }
  auto c = validate_category(arrow_category_raw());
  const Obj b = c.object_index("b");
  GrothTopology corrupt;
  corrupt.covers = {{maximal_sieve(c, c.object_index("a"))},
                    {Sieve{b, {c.morphism_index("u")}}}};
  auto v = check_grothendieck(c, corrupt);
  t.expect(v.law == "Maximality" && v.witness == std::vector<std::string>{"b", "{id_b,u}"},
           "t_b removed: " + v.to_string());
}

void fuzzy_topology(Tally& t) {
  for (const auto& m : {min_chain(3), lukasiewicz_chain(3)}) {
    auto mp = std::make_shared<const GLMonoid>(m);
    t.expect(static_cast<bool>(check_gl_monoid(m)), "GL-monoid");
    for (std::size_t x = 0; x <= 2; ++x) {
      std::vector<std::string> ground;
      for (std::size_t i = 0; i < x; ++i) ground.push_back("p" + std::to_string(i));
      auto sp = std::make_shared<const FuzzySpace>(mp, ground);
      std::size_t count = 0;
      for_each_fuzzy_interior(sp, {}, [&](const FuzzyInterior& i) {
        ++count;
        t.expect(static_cast<bool>(check_fuzzy_interior(i)), "enumerated table is valid");
        auto top = fuzzy_topology_from_interior(i);
        auto v = check_fuzzy_topology(top);
        t.expect(static_cast<bool>(v), "induced fuzzy topology: " + v.to_string());
      });
      t.expect(count > 0, "some fuzzy interior exists");
    }
  }
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<int, std::string> tool(const std::string& args) {
  const std::string cmd = std::string(IKIT_TOOL) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int raw = pclose(p);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

void cli_contract(Tally& t) {
  using manifest::json;
  const fs::path root(IKIT_MANIFESTS);
  const auto expected = json::parse(slurp(root / "EXPECTED.json"));
  std::set<std::string> kinds_seen;
  for (const auto& e : fs::directory_iterator(root / "pass")) {
    const auto path = e.path().string();
    t.expect(tool("run " + path).first == 0, "pass manifest exits 0: " + path);
    kinds_seen.insert(manifest::parse(slurp(e.path())).kind);
  }
  for (const auto& k : manifest::kinds()) t.expect(kinds_seen.count(k) == 1, "example for kind " + k);

  std::size_t fails = 0;
  for (const auto& e : fs::directory_iterator(root / "fail")) {
    ++fails;
    const auto rel = "fail/" + e.path().filename().string();
    auto [status, out] = tool("run " + e.path().string() + " --report json");
    t.expect(status == 1, "counterexample exits 1: " + rel);
    if (!expected.contains(rel)) {
      t.expect(false, "no documented witness for " + rel);
      continue;
    }
    const auto& want = expected[rel];
    json report = json::parse(out, nullptr, false);
    bool found = false;
    if (!report.is_discarded())
      for (const auto& c : report["checks"])
        if (c["name"] == want["check"])
          found = c["verdict"] == "fail" && c["law"] == want["law"] && c["witness"] == want["witness"];
    t.expect(found, "documented witness for " + rel);
  }
  t.expect(fails == expected.size(), "every documented counterexample is shipped");

  for (const char* dir : {"pass", "fail"})
    for (const auto& e : fs::directory_iterator(root / dir)) {
      const auto text = slurp(e.path());
      t.expect(manifest::format(manifest::parse(text)) == text, "byte-identical round trip: " + e.path().string());
      t.expect(tool("fmt --check " + e.path().string()).first == 0, "fmt --check: " + e.path().string());
    }
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"adjoint_synthesis", 30, adjoint_synthesis},
      {"sets_triple", 10, sets_triple},
      {"interior_lattice", 30, interior_lattice},
      {"initial_operator", 60, initial_operator},
      {"open_stability", 10, open_stability},
      {"kuratowski_bijection", 60, kuratowski_bijection},
      {"sieve_calculus", 10, sieve_calculus},
      {"fuzzy_topology", 120, fuzzy_topology},
      {"cli_contract", 5, cli_contract},
  };
  return all;
}

bool run_one(const Criterion& c) {
  Tally t;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.body(t);
  } catch (const std::exception& e) {
    t.failures.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs <= c.limit_seconds;
  const bool ok = t.failures.empty() && in_time;
  std::printf("%s %s (%zu checks, %.2fs, limit %.0fs)\n", ok ? "PASS" : "FAIL", c.name.c_str(), t.checked,
              secs, c.limit_seconds);
  for (const auto& f : t.failures) std::printf("  %s\n", f.c_str());
  if (!in_time) std::printf("  over time limit\n");
  std::fflush(stdout);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  bool all_ok = true;
  bool matched = argc < 2;
  for (const auto& c : criteria()) {
    if (argc >= 2 && c.name != argv[1]) continue;
    matched = true;
    all_ok = run_one(c) && all_ok;
  }
  if (!matched) {
    std::fprintf(stderr, "unknown criterion: %s\n", argv[1]);
    return 2;
  }
  return all_ok ? 0 : 1;
}
