// ikit: run manifests, enumerate small structures, canonicalize files.
//
//   ikit run <file> [--max-size N] [--report json|text]
//   ikit enumerate <kind> <size> [--count-only] [--at OBJ] [--max-size N]
//   ikit fmt <file> [--check]
//
// Exit codes: 0 pass, 1 verdict failure, 2 input error, 3 cap exceeded.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ikit/manifest.hpp"

namespace {

using ikit::manifest::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ikit::InputError("UnreadableFile", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

std::size_t parse_count(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ikit::InputError("BadSize", s);
  return std::stoul(s);
}

/// chain-N, powerset-N, m3, n5, or a bare N meaning chain-N.
ikit::LatticePtr lattice_token(const std::string& t) {
  if (t == "m3") return ikit::diamond_m3();
  if (t == "n5") return ikit::pentagon_n5();
  if (starts_with(t, "chain-")) return ikit::chain_lattice(parse_count(t.substr(6)));
  if (starts_with(t, "powerset-"))
    return ikit::powerset_lattice(ikit::numbered_ground(parse_count(t.substr(9))));
  return ikit::chain_lattice(parse_count(t));
}

/// category-2 (or 2), chain-N, terminal (or 1).
ikit::FinCategory category_token(const std::string& t) {
  if (t == "category-2" || t == "2") return ikit::validate_category(ikit::arrow_category_raw());
  if (t == "terminal" || t == "1") return ikit::validate_category(ikit::chain_category_raw(1));
  if (starts_with(t, "chain-"))
    return ikit::validate_category(ikit::chain_category_raw(parse_count(t.substr(6))));
  throw ikit::InputError("UnknownCategory", t);
}

json op_json(const ikit::InteriorOp& i) {
  json a = json::array();
  for (ikit::Elem m = 0; m < i.carrier()->size(); ++m)
    a.push_back({i.carrier()->name(m), i.carrier()->name(i(m))});
  return a;
}

int enumerate(const std::string& kind, const std::string& size, bool count_only,
              const std::optional<std::string>& at, std::optional<std::size_t> max_size) {
  std::vector<std::string> lines;
  if (kind == "topologies") {
    for (const auto& t : ikit::enumerate_topologies(
             parse_count(size), max_size.value_or(ikit::kDefaultTopologyCap))) {
      json opens = json::array();
      for (auto s : t.opens) opens.push_back(ikit::subset_name(t.ground, s));
      lines.push_back(opens.dump());
    }
  } else if (kind == "kuratowski-ops") {
    for (const auto& i : ikit::enumerate_kuratowski_ops(
             ikit::numbered_ground(parse_count(size)),
             max_size.value_or(ikit::kDefaultKuratowskiCap)))
      lines.push_back(op_json(i).dump());
  } else if (kind == "interior-ops") {
    for (const auto& i : ikit::enumerate_interior_ops(
             lattice_token(size), max_size.value_or(ikit::kDefaultSubsetCap)))
      lines.push_back(op_json(i).dump());
  } else if (kind == "sieves") {
    const auto c = category_token(size);
    const std::size_t cap = max_size.value_or(ikit::kDefaultSieveCap);
    for (ikit::Obj o = 0; o < c.object_count(); ++o) {
      if (at && c.object_name(o) != *at) continue;
      for (const auto& s : ikit::all_sieves(c, o, cap))
        lines.push_back(json{{"at", c.object_name(o)},
                             {"arrows", ikit::manifest::sieve_to_json(c, s)}}
                            .dump());
    }
    if (at) c.object_index(*at);
  } else {
    throw ikit::InputError("UnknownKind", kind);
  }
  if (!count_only)
    for (const auto& l : lines) std::cout << l << "\n";
  std::cout << "count " << lines.size() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ikit: interior operators on finite structures"};
  app.require_subcommand(1);

  std::optional<std::size_t> max_size;
  std::string report = "text";
  std::string file;
  auto* run = app.add_subcommand("run", "run the checks listed in a manifest");
  run->add_option("file", file, "manifest path")->required();
  run->add_option("--max-size", max_size, "override enumeration caps");
  run->add_option("--report", report, "report format")->check(CLI::IsMember({"json", "text"}));

  std::string kind, size;
  bool count_only = false;
  std::optional<std::string> at;
  auto* en = app.add_subcommand("enumerate", "list small structures in canonical order");
  en->add_option("kind", kind, "topologies | interior-ops | kuratowski-ops | sieves")->required();
  en->add_option("size", size, "ground size, lattice token or category token")->required();
  en->add_flag("--count-only", count_only, "print only the count line");
  en->add_option("--at", at, "restrict sieves to one object");
  en->add_option("--max-size", max_size, "override the enumeration cap");

  bool check_only = false;
  auto* fmt = app.add_subcommand("fmt", "print a manifest in canonical form");
  fmt->add_option("file", file, "manifest path")->required();
  fmt->add_flag("--check", check_only, "exit 1 when the file is not canonical");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      ikit::manifest::RunOptions opts;
      opts.max_size = max_size;
      const auto m = ikit::manifest::parse(read_file(file));
      const auto r = ikit::manifest::run(m, opts);
      if (report == "json")
        std::cout << ikit::manifest::canonical_text(r.to_json());
      else
        std::cout << r.to_text();
      return r.exit_code();
    }
    if (*en) return enumerate(kind, size, count_only, at, max_size);
    if (*fmt) {
      const std::string text = read_file(file);
      const std::string canon = ikit::manifest::format(ikit::manifest::parse(text));
      if (check_only) return canon == text ? 0 : 1;
      std::cout << canon;
      return 0;
    }
  } catch (const ikit::CapExceeded& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const ikit::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ikit::InputError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ikit::LawViolation& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
