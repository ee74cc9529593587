#include "evco/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "evco/errors.hpp"
#include "evco/io.hpp"
#include "evco/minorants.hpp"

namespace evco {

namespace {

struct Options {
  std::string file;
  std::string point;
  std::string dual;
  std::string which = "eco";
  std::string suite;
  std::string family = "Mf";
  std::string out;
  std::uint64_t seed = 1;
  std::int64_t grid_resolution = 2;
  std::int64_t box_bound = 3;
  bool json = false;
  GenProfile gen;
  std::string gen_kind = "set";
  std::string gen_cone = "orthant";
};

std::string interval(const EPolyhedron& p) {
  const SupportValue hi = sup_linear(p, {1});
  const SupportValue lo = sup_linear(p, {-1});
  std::string s = lo.is_finite() ? (lo.attained ? "[" : "(") + to_display(-lo.value) : "(-inf";
  s += ",";
  s += hi.is_finite() ? to_display(hi.value) + (hi.attained ? "]" : ")") : "inf)";
  return s;
}

// A subset of Z for printing: intervals in one dimension, systems otherwise.
std::string format_values(const EUnion& u, std::size_t dim_z) {
  EUnion n = u.normalized();
  if (n.pieces.empty()) return "empty";
  std::string s;
  for (std::size_t i = 0; i < n.pieces.size(); ++i) {
    if (i) s += " | ";
    s += dim_z == 1 ? interval(n.pieces[i]) : "{" + to_string(n.pieces[i], map_names(0, dim_z)) + "}";
  }
  return s;
}

const SetValuedMap& need_map(const Instance& inst) {
  if (!inst.map) throw ParseError("this command needs a map or dual-suite instance");
  return *inst.map;
}

const EUnion& need_set(const Instance& inst) {
  if (!inst.set) throw ParseError("this command needs a set instance");
  return *inst.set;
}

void check_dim(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    throw DimensionMismatch(std::string(what) + ": expected " + std::to_string(expected) + " coordinates, got " +
                            std::to_string(got));
  }
}

int cmd_membership(const Options& o, std::ostream& out) {
  const Instance inst = load_instance(o.file);
  const RatVector p = parse_point(o.point);
  EUnion u;
  if (inst.set) {
    u = *inst.set;
  } else {
    const SetValuedMap& f = need_map(inst);
    u = build_epi(f).set;
  }
  check_dim(u.dim, p.size(), "point");
  u = u.normalized();
  if (u.contains_point(p)) {
    out << (o.json ? R"({"member":true})" : "true") << "\n";
    return kExitOk;
  }
  std::optional<RatVector> sep;
  if (u.pieces.size() <= 1) {
    if (u.pieces.empty()) {
      sep = zeros(u.dim);
    } else {
      sep = separate_point(u.pieces.front(), p)->functional;
    }
  } else if (auto m = eco_membership(u, p); !m.member) {
    sep = m.functional;
  }
  if (o.json) {
    Json j{{"member", false}};
    if (sep) j["separator"] = to_json(*sep);
    out << j.dump() << "\n";
  } else {
    out << "false";
    if (sep) out << ", separator " << to_string(*sep);
    out << "\n";
  }
  return kExitOk;
}

int cmd_hull(const Options& o, std::ostream& out) {
  const Instance inst = load_instance(o.file);
  std::vector<EPolyhedron> result;
  std::vector<std::string> names;
  if (inst.set) {
    const EUnion& u = *inst.set;
    names = default_names(u.dim);
    if (o.which == "eco") {
      result.push_back(eco_hull(u));
    } else if (o.which == "clconv") {
      result.push_back(closed_convex_hull(u));
    } else if (o.which == "cl") {
      for (const auto& p : u.normalized().pieces) result.push_back(remove_redundant(closure(p)));
    } else {
      throw ParseError("hull of a set: --which must be eco, cl or clconv");
    }
  } else {
    const SetValuedMap& f = need_map(inst);
    names = map_names(f.dim_x, f.dim_z);
    KEpigraph h;
    if (o.which == "keco" || o.which == "eco") {
      h = k_eco_hull(f);
    } else if (o.which == "clconv") {
      h = k_clconv_hull(f);
    } else if (o.which == "cl") {
      h = k_closed_hull(f);
    } else {
      throw ParseError("hull of a map: --which must be keco, cl or clconv");
    }
    result = h.set.pieces;
  }
  if (o.json) {
    Json arr = Json::array();
    for (const auto& p : result) {
      Json cs = Json::array();
      for (const auto& c : p.constraints) cs.push_back(to_json(c));
      arr.push_back(cs);
    }
    out << Json{{"pieces", arr}}.dump() << "\n";
    return kExitOk;
  }
  if (result.empty()) out << "empty\n";
  for (const auto& p : result) {
    if (p.is_canonical_empty()) {
      out << "empty\n";
      continue;
    }
    EPolyhedron sorted = p;
    std::sort(sorted.constraints.begin(), sorted.constraints.end(), lex_less);
    out << to_string(sorted, names) << "\n";
  }
  return kExitOk;
}

int cmd_conjugate(const Options& o, std::ostream& out) {
  const Instance inst = load_instance(o.file);
  const SetValuedMap& f = need_map(inst);
  std::vector<DualElement> duals;
  if (!o.dual.empty()) {
    duals.push_back(parse_dual(o.dual, f.dim_x, f.dim_z));
  } else {
    duals = inst.duals;
  }
  if (duals.empty()) throw ParseError("conjugate needs --dual or a dual-suite instance");
  Json arr = Json::array();
  for (const auto& w : duals) {
    const HalfspaceValue v = conjugate(f, w);
    if (o.json) {
      arr.push_back(Json{{"dual", to_json(w)}, {"conjugate", to_json(v)}});
    } else {
      out << to_string(v) << "\n";
    }
  }
  if (o.json) out << arr.dump() << "\n";
  return kExitOk;
}

int cmd_biconjugate(const Options& o, std::ostream& out) {
  const Instance inst = load_instance(o.file);
  const SetValuedMap& f = need_map(inst);
  const RatVector x = parse_point(o.point);
  check_dim(f.dim_x, x.size(), "point");
  std::vector<DualElement> duals = inst.duals;
  if (duals.empty()) duals = sample_duals(f, 16, o.seed);
  const BiconjugateResult b = biconjugate(f, duals, x);
  const bool contained = union_contains(b.outer, b.exact);
  if (o.json) {
    Json j;
    j["exact"] = format_values(b.exact, f.dim_z);
    j["outer"] = format_values(b.outer, f.dim_z);
    j["duals"] = duals.size() + b.certifying.size();
    j["outer_contains_exact"] = contained;
    out << j.dump() << "\n";
  } else {
    out << "exact: " << format_values(b.exact, f.dim_z) << "\n";
    out << "outer: " << format_values(b.outer, f.dim_z) << " (" << duals.size() + b.certifying.size() << " duals)\n";
  }
  return contained ? kExitOk : kExitCheckFailed;
}

void add_expectation(Report& r, const Instance& inst, bool e_convex) {
  if (!inst.expect.contains("e_convex")) return;
  const Json& want = inst.expect.at("e_convex");
  if (!want.is_boolean()) throw ParseError("expect.e_convex must be a boolean");
  r.add("fixture-expectation", want.get<bool>() == e_convex,
        std::string("expected e_convex = ") + (want.get<bool>() ? "true" : "false"));
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Instance inst = load_instance(o.file);
  Report r;
  if (o.suite == "minorants") {
    const SetValuedMap& f = need_map(inst);
    MinorantFamily fam;
    if (o.family == "Mf") {
      fam = MinorantFamily::Mf;
    } else if (o.family == "C") {
      fam = MinorantFamily::C;
    } else if (o.family == "E") {
      fam = MinorantFamily::E;
    } else {
      throw ParseError("--family must be Mf, C or E");
    }
    SamplingOptions so;
    so.seed = o.seed;
    so.grid_resolution = o.grid_resolution;
    so.box_bound = o.box_bound;
    r = verify_supremum_characterization(f, fam, so);
    add_expectation(r, inst, is_e_convex(build_epi(f).set).e_convex);
  } else if (o.suite == "biconjugation" || o.suite == "indicator") {
    BiconjugationOptions bo;
    bo.seed = o.seed;
    bo.grid_resolution = o.grid_resolution;
    bo.box_bound = o.box_bound;
    if (o.suite == "biconjugation") {
      const SetValuedMap& f = need_map(inst);
      r = verify_biconjugation(f, bo);
      add_expectation(r, inst, is_e_convex(build_epi(f).set).e_convex);
    } else {
      const EUnion& c = need_set(inst);
      r = indicator_suite(c, ConeK::nonnegative_orthant(1), bo);
      add_expectation(r, inst, is_e_convex(c).e_convex);
    }
  } else if (o.suite == "algebra") {
    need_set(inst);
    if (inst.operands.size() != 3) throw ParseError("the algebra suite needs three operands");
    const auto rep = verify_eco_associativity(inst.operands[0], inst.operands[1], inst.operands[2]);
    r.suite = "algebra";
    r.add("associative", rep.associative, "A [+] (B [+] C) = (A [+] B) [+] C");
    r.add("absorbs-inner-hull", rep.absorbs_inner_hull, "eco(A + eco B) = eco(A + B)");
  } else {
    throw ParseError("--suite must be minorants, biconjugation, indicator or algebra");
  }
  r.instance_id = o.file;
  if (o.json) {
    out << r.to_json().dump(2) << "\n";
  } else {
    out << r.summary();
  }
  return r.ok() ? kExitOk : kExitCheckFailed;
}

int cmd_gen(Options o, std::ostream& out) {
  o.gen.seed = o.seed;
  if (o.gen_kind == "set") {
    o.gen.kind = InstanceKind::Set;
  } else if (o.gen_kind == "map") {
    o.gen.kind = InstanceKind::Map;
  } else if (o.gen_kind == "dual-suite") {
    o.gen.kind = InstanceKind::DualSuite;
  } else {
    throw ParseError("--kind must be set, map or dual-suite");
  }
  if (o.gen_cone == "orthant") {
    o.gen.cone = ConeKind::Orthant;
  } else if (o.gen_cone == "simplicial") {
    o.gen.cone = ConeKind::Simplicial;
  } else {
    throw ParseError("--cone must be orthant or simplicial");
  }
  if (o.gen.dim == 0 || o.gen.dim_z == 0 || o.gen.constraints == 0) throw ParseError("dimensions must be positive");
  const std::string text = print_instance(generate_instance(o.gen));
  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ParseError("cannot write " + o.out);
    f << text;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact evenly convex analysis toolkit", "evco"};
  app.require_subcommand(1);
  Options o;
  auto* membership = app.add_subcommand("membership", "point membership with a separating functional");
  auto* hull = app.add_subcommand("hull", "H-representation of a hull");
  auto* conj = app.add_subcommand("conjugate", "c-conjugate at a dual element");
  auto* biconj = app.add_subcommand("biconjugate", "biconjugate value at a point");
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  auto* gen = app.add_subcommand("gen", "generate a seeded random instance");
  for (auto* sc : {membership, hull, conj, biconj, verify}) {
    sc->add_option("--file", o.file, "instance file")->required();
    sc->add_flag("--json", o.json, "machine-readable output");
  }
  membership->add_option("--point", o.point, "comma-separated coordinates")->required();
  biconj->add_option("--point", o.point, "comma-separated x coordinates")->required();
  biconj->add_option("--seed", o.seed, "seed for sampled duals");
  hull->add_option("--which", o.which, "eco | cl | clconv | keco");
  conj->add_option("--dual", o.dual, "xstar;ystar;zstar;alpha or a JSON record");
  verify->add_option("--suite", o.suite, "minorants | biconjugation | indicator | algebra")->required();
  verify->add_option("--family", o.family, "minorant family: Mf | C | E");
  verify->add_option("--seed", o.seed, "sampling seed");
  verify->add_option("--grid-resolution", o.grid_resolution, "grid points per unit")->check(CLI::PositiveNumber);
  verify->add_option("--box-bound", o.box_bound, "sampling box half-width")->check(CLI::PositiveNumber);
  gen->add_option("--seed", o.seed, "generator seed");
  gen->add_option("--kind", o.gen_kind, "set | map | dual-suite");
  gen->add_option("--dim", o.gen.dim, "dimension of X (or of the set)");
  gen->add_option("--dim-z", o.gen.dim_z, "dimension of Z");
  gen->add_option("--pieces", o.gen.pieces, "number of pieces");
  gen->add_option("--constraints", o.gen.constraints, "constraints per piece");
  gen->add_option("--cone", o.gen_cone, "orthant | simplicial");
  gen->add_option("--out", o.out, "output file (default stdout)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParseError;
  }

  try {
    if (membership->parsed()) return cmd_membership(o, out);
    if (hull->parsed()) return cmd_hull(o, out);
    if (conj->parsed()) return cmd_conjugate(o, out);
    if (biconj->parsed()) return cmd_biconjugate(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (gen->parsed()) return cmd_gen(o, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const DimensionMismatch& e) {
    err << "dimension mismatch: " << e.what() << "\n";
    return kExitDimensionMismatch;
  } catch (const UnsupportedInstance& e) {
    err << "unsupported instance: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const PreconditionViolated& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitParseError;
}

}  // namespace evco
