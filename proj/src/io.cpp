#include "evco/io.hpp"

#include <fstream>
#include <sstream>

#include "evco/errors.hpp"

namespace evco {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::size_t positive_size(const Json& j, const char* what) {
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0) {
    throw ParseError(std::string(what) + " must be a positive integer");
  }
  return j.get<std::size_t>();
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw ParseError(std::string("field \"") + key + "\" must be an array");
  return a;
}

EPolyhedron piece_from_json(const Json& j, std::size_t dim) {
  if (!j.is_array()) throw ParseError("a piece must be an array of constraints");
  EPolyhedron p(dim, {});
  for (const auto& c : j) {
    LinConstraint lc;
    lc.normal = vector_from_json(field(c, "normal"), dim);
    lc.bound = rational_from_json(field(c, "bound"));
    const Json& kind = field(c, "kind");
    if (kind == "strict") {
      lc.kind = ConstraintKind::Strict;
    } else if (kind == "weak") {
      lc.kind = ConstraintKind::Weak;
    } else {
      throw ParseError("constraint kind must be \"strict\" or \"weak\"");
    }
    p.constraints.push_back(std::move(lc));
  }
  return p;
}

Json piece_to_json(const EPolyhedron& p) {
  Json arr = Json::array();
  for (const auto& c : p.constraints) arr.push_back(to_json(c));
  return arr;
}

EUnion pieces_from_json(const Json& arr, std::size_t dim) {
  if (!arr.is_array()) throw ParseError("pieces must be an array");
  EUnion u(dim, {});
  for (const auto& p : arr) u.pieces.push_back(piece_from_json(p, dim));
  return u;
}

Json pieces_to_json(const EUnion& u) {
  Json arr = Json::array();
  for (const auto& p : u.pieces) arr.push_back(piece_to_json(p));
  return arr;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

}  // namespace

std::string to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::Set:
      return "set";
    case InstanceKind::Map:
      return "map";
    case InstanceKind::DualSuite:
      return "dual-suite";
  }
  return "?";
}

Json to_json(const Rational& r) { return to_string(r); }

Json to_json(const RatVector& v) {
  Json arr = Json::array();
  for (const auto& x : v) arr.push_back(to_json(x));
  return arr;
}

Json to_json(const LinConstraint& c) {
  Json j;
  j["normal"] = to_json(c.normal);
  j["bound"] = to_json(c.bound);
  j["kind"] = c.strict() ? "strict" : "weak";
  return j;
}

Json to_json(const EUnion& u) {
  Json j;
  j["dim"] = u.dim;
  j["pieces"] = pieces_to_json(u);
  return j;
}

Json to_json(const SetValuedMap& f) {
  Json j;
  j["dimX"] = f.dim_x;
  j["dimZ"] = f.dim_z;
  Json gens = Json::array();
  for (const auto& g : f.cone.generators) gens.push_back(to_json(g));
  j["cone"] = Json{{"generators", gens}};
  j["pieces"] = pieces_to_json(f.graph);
  j["full_value_points"] = pieces_to_json(f.full_value);
  return j;
}

Json to_json(const DualElement& w) {
  Json j;
  j["xstar"] = to_json(w.xstar);
  j["ystar"] = to_json(w.ystar);
  j["zstar"] = to_json(w.zstar);
  j["alpha"] = to_json(w.alpha);
  return j;
}

Json to_json(const HalfspaceValue& v) {
  Json j;
  j["zstar"] = to_json(v.zstar);
  switch (v.bound.kind) {
    case SupportValue::Kind::MinusInfinity:
      j["bound"] = "-inf";
      break;
    case SupportValue::Kind::PlusInfinity:
      j["bound"] = "+inf";
      break;
    case SupportValue::Kind::Finite:
      j["bound"] = to_json(v.bound.value);
      break;
  }
  j["sense"] = v.sense == ConstraintKind::Strict ? "strict" : "weak";
  j["negated"] = v.negated;
  j["value"] = to_string(v);
  return j;
}

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw ParseError("rationals must be \"p/q\" strings, got " + j.dump());
  return parse_rational(j.get<std::string>());
}

RatVector vector_from_json(const Json& j, std::size_t dim) {
  if (!j.is_array()) throw ParseError("expected an array of rationals, got " + j.dump());
  if (j.size() != dim) {
    throw DimensionMismatch("expected " + std::to_string(dim) + " coordinates, got " + std::to_string(j.size()));
  }
  RatVector v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

EUnion union_from_json(const Json& j) {
  const std::size_t dim = positive_size(field(j, "dim"), "dim");
  return pieces_from_json(field(j, "pieces"), dim);
}

SetValuedMap map_from_json(const Json& j) {
  const std::size_t n = positive_size(field(j, "dimX"), "dimX");
  const std::size_t m = positive_size(field(j, "dimZ"), "dimZ");
  const Json& cone = field(j, "cone");
  ConeK k;
  if (cone.contains("generators")) {
    std::vector<RatVector> gens;
    for (const auto& g : array_field(cone, "generators")) gens.push_back(vector_from_json(g, m));
    k = ConeK::from_generators(m, std::move(gens));
  } else if (cone.contains("constraints")) {
    std::vector<RatVector> rows;
    for (const auto& r : array_field(cone, "constraints")) rows.push_back(vector_from_json(r, m));
    k = ConeK::from_constraints(m, std::move(rows));
  } else {
    throw ParseError("cone needs \"generators\" or \"constraints\"");
  }
  EUnion graph = pieces_from_json(field(j, "pieces"), n + m);
  EUnion full(n, {});
  if (j.contains("full_value_points")) full = pieces_from_json(j.at("full_value_points"), n);
  return SetValuedMap(n, m, std::move(graph), std::move(k), std::move(full));
}

DualElement dual_from_json(const Json& j, std::size_t dim_x, std::size_t dim_z) {
  DualElement w;
  w.xstar = vector_from_json(field(j, "xstar"), dim_x);
  w.ystar = vector_from_json(field(j, "ystar"), dim_x);
  w.zstar = vector_from_json(field(j, "zstar"), dim_z);
  w.alpha = rational_from_json(field(j, "alpha"));
  return w;
}

bool Instance::operator==(const Instance& o) const {
  auto same_map = [](const std::optional<SetValuedMap>& a, const std::optional<SetValuedMap>& b) {
    if (a.has_value() != b.has_value()) return false;
    if (!a) return true;
    return a->dim_x == b->dim_x && a->dim_z == b->dim_z && a->graph.dim == b->graph.dim &&
           a->graph.pieces == b->graph.pieces && a->full_value.pieces == b->full_value.pieces && a->cone == b->cone;
  };
  auto same_union_syntax = [](const EUnion& a, const EUnion& b) { return a.dim == b.dim && a.pieces == b.pieces; };
  if (set.has_value() != o.set.has_value() || (set && !same_union_syntax(*set, *o.set))) return false;
  if (operands.size() != o.operands.size()) return false;
  for (std::size_t i = 0; i < operands.size(); ++i) {
    if (!same_union_syntax(operands[i], o.operands[i])) return false;
  }
  return version == o.version && kind == o.kind && seed == o.seed && same_map(map, o.map) && duals == o.duals &&
         expect == o.expect;
}

Instance parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  Instance inst;
  const Json& version = field(j, "version");
  if (!version.is_string() || version != "1") throw ParseError("unsupported instance version " + version.dump());
  const Json& kind = field(j, "kind");
  if (kind == "set") {
    inst.kind = InstanceKind::Set;
  } else if (kind == "map") {
    inst.kind = InstanceKind::Map;
  } else if (kind == "dual-suite") {
    inst.kind = InstanceKind::DualSuite;
  } else {
    throw ParseError("kind must be set, map or dual-suite, got " + kind.dump());
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw ParseError("seed must be a nonnegative integer");
    inst.seed = j.at("seed").get<std::uint64_t>();
  }
  if (inst.kind == InstanceKind::Set) {
    inst.set = union_from_json(field(j, "set"));
    if (j.contains("operands")) {
      for (const auto& o : j.at("operands")) {
        inst.operands.push_back(union_from_json(o));
        if (inst.operands.back().dim != inst.set->dim) throw DimensionMismatch("operand dimension");
      }
    }
  } else {
    inst.map = map_from_json(field(j, "map"));
  }
  if (inst.kind == InstanceKind::DualSuite) {
    for (const auto& d : array_field(j, "duals")) {
      inst.duals.push_back(dual_from_json(d, inst.map->dim_x, inst.map->dim_z));
      validate_dual(inst.duals.back(), inst.map->dim_x, inst.map->cone);
    }
  }
  if (j.contains("expect")) {
    if (!j.at("expect").is_object()) throw ParseError("expect must be an object");
    inst.expect = j.at("expect");
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

std::string print_instance(const Instance& inst) {
  Json j;
  j["version"] = inst.version;
  j["kind"] = to_string(inst.kind);
  if (inst.seed) j["seed"] = *inst.seed;
  if (inst.set) j["set"] = to_json(*inst.set);
  if (!inst.operands.empty()) {
    Json ops = Json::array();
    for (const auto& o : inst.operands) ops.push_back(to_json(o));
    j["operands"] = ops;
  }
  if (inst.map) j["map"] = to_json(*inst.map);
  if (inst.kind == InstanceKind::DualSuite) {
    Json ds = Json::array();
    for (const auto& w : inst.duals) ds.push_back(to_json(w));
    j["duals"] = ds;
  }
  if (!inst.expect.empty()) j["expect"] = inst.expect;
  return j.dump(2) + "\n";
}

RatVector parse_point(const std::string& text) {
  if (trim(text).empty()) throw ParseError("empty point");
  RatVector v;
  for (const auto& part : split(text, ',')) v.push_back(parse_rational(trim(part)));
  return v;
}

DualElement parse_dual(const std::string& text, std::size_t dim_x, std::size_t dim_z) {
  const std::string t = trim(text);
  if (!t.empty() && t.front() == '{') {
    try {
      return dual_from_json(Json::parse(t), dim_x, dim_z);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid dual JSON: ") + e.what());
    }
  }
  const auto parts = split(t, ';');
  if (parts.size() != 4) throw ParseError("a dual needs four ';'-separated parts: xstar;ystar;zstar;alpha");
  DualElement w{parse_point(parts[0]), parse_point(parts[1]), parse_point(parts[2]), parse_rational(trim(parts[3]))};
  if (w.xstar.size() != dim_x || w.ystar.size() != dim_x || w.zstar.size() != dim_z) {
    throw DimensionMismatch("dual element dimensions must be (" + std::to_string(dim_x) + ", " +
                            std::to_string(dim_x) + ", " + std::to_string(dim_z) + ")");
  }
  return w;
}

Instance generate_instance(const GenProfile& pr) {
  Rng rng(pr.seed);
  Instance inst;
  inst.kind = pr.kind;
  inst.seed = pr.seed;
  PolyProfile pp;
  pp.constraints = pr.constraints;
  pp.bounded = true;
  pp.box = 2;
  if (pr.kind == InstanceKind::Set) {
    pp.dim = pr.dim;
    EUnion u(pr.dim, {});
    for (std::size_t i = 0; i < pr.pieces; ++i) u.pieces.push_back(random_polyhedron(rng, pp));
    inst.set = std::move(u);
    return inst;
  }
  pp.dim = pr.dim + pr.dim_z;
  EUnion graph(pp.dim, {});
  for (std::size_t i = 0; i < pr.pieces; ++i) graph.pieces.push_back(random_polyhedron(rng, pp));
  inst.map = SetValuedMap(pr.dim, pr.dim_z, std::move(graph), make_cone(pr.cone, pr.dim_z));
  if (pr.kind == InstanceKind::DualSuite) inst.duals = sample_duals(*inst.map, 4, pr.seed);
  return inst;
}

}  // namespace evco
