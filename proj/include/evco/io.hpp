#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "evco/conjugation.hpp"
#include "evco/random.hpp"
#include "evco/setvalued.hpp"

namespace evco {

using Json = nlohmann::ordered_json;

enum class InstanceKind { Set, Map, DualSuite };
std::string to_string(InstanceKind k);

/// One instance file. "set" carries `set` (and `operands` for the algebra
/// suite), "map" carries `map`, "dual-suite" carries `map` and `duals`.
/// `expect` holds fixture annotations such as {"e_convex": false}.
struct Instance {
  std::string version = "1";
  InstanceKind kind = InstanceKind::Set;
  std::optional<std::uint64_t> seed;
  std::optional<EUnion> set;
  std::vector<EUnion> operands;
  std::optional<SetValuedMap> map;
  std::vector<DualElement> duals;
  Json expect = Json::object();

  bool operator==(const Instance& other) const;
};

/// Throws ParseError on malformed text or schema violations and
/// DimensionMismatch on inconsistent dimensions.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
/// Deterministic two-space-indented JSON with a trailing newline.
std::string print_instance(const Instance& inst);

Json to_json(const Rational& r);
Json to_json(const RatVector& v);
Json to_json(const LinConstraint& c);
Json to_json(const EUnion& u);
Json to_json(const SetValuedMap& f);
Json to_json(const DualElement& w);
Json to_json(const HalfspaceValue& v);

Rational rational_from_json(const Json& j);
RatVector vector_from_json(const Json& j, std::size_t dim);
EUnion union_from_json(const Json& j);
SetValuedMap map_from_json(const Json& j);
DualElement dual_from_json(const Json& j, std::size_t dim_x, std::size_t dim_z);

/// "1/2,-3" style comma-separated coordinates.
RatVector parse_point(const std::string& text);
/// A JSON dual record, or "xstar;ystar;zstar;alpha" with comma-separated
/// vectors, e.g. "0;0;-1;1".
DualElement parse_dual(const std::string& text, std::size_t dim_x, std::size_t dim_z);

struct GenProfile {
  std::uint64_t seed = 1;
  InstanceKind kind = InstanceKind::Set;
  std::size_t dim = 1;
  std::size_t dim_z = 1;
  std::size_t pieces = 2;
  std::size_t constraints = 3;
  ConeKind cone = ConeKind::Orthant;
};

/// Deterministic random instance; every piece is nonempty and bounded.
Instance generate_instance(const GenProfile& profile);

}  // namespace evco
