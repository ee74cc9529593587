#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evco/report.hpp"
#include "evco/setvalued.hpp"

namespace evco {

/// (x*, y*, z*, alpha) with z* in K* \ {0}.
struct DualElement {
  RatVector xstar;
  RatVector ystar;
  RatVector zstar;
  Rational alpha;
  bool operator==(const DualElement&) const = default;
};

/// Throws DimensionMismatch or PreconditionViolated (z* outside K* \ {0}).
void validate_dual(const DualElement& w, std::size_t dim_x, const ConeK& k);

/// sup over epi_K f of <x,x*> + <z,z*> when dom f lies in the open
/// half-space <x, y*> < alpha; PlusInfinity otherwise.
SupportValue sigma_f(const KEpigraph& e, const DualElement& w);
SupportValue sigma_f(const SetValuedMap& f, const DualElement& w);

/// 1 iff the supremum of the functional over c is attained; 0 when it is
/// not, including an unbounded supremum. Throws PreconditionViolated on an
/// empty set, where the flag is undefined.
int eta(const EUnion& c, const RatVector& functional);
int eta(const KEpigraph& e, const RatVector& xstar, const RatVector& zstar);

/// A = {z : <z, zstar> sense bound}, or -A when negated. bound = +inf makes
/// A = Z and bound = -inf makes A empty; with -Z = empty and -empty = Z.
/// The sense is Weak whenever the bound is infinite.
struct HalfspaceValue {
  RatVector zstar;
  SupportValue bound;
  ConstraintKind sense = ConstraintKind::Weak;
  bool negated = false;

  /// Sense from attainment: Weak iff attained (or infinite).
  static HalfspaceValue from_support(RatVector zstar, SupportValue bound, bool negated);

  bool is_empty() const;
  bool is_whole() const;
  EPolyhedron to_polyhedron() const;
  HalfspaceValue negation() const;
  bool operator==(const HalfspaceValue& other) const;
};

/// "(-inf,0]" style for one-dimensional values, constraint form otherwise.
std::string to_string(const HalfspaceValue& v);

/// f^c(w), recorded as the negation of {z : <z,z*> < or <= sigma_f(w)}.
HalfspaceValue conjugate(const SetValuedMap& f, const DualElement& w);

/// f^c(w) straight from the definition, for maps with finitely many domain
/// points: the union over x_i of f(x_i) + closed S(-x_i), whose e-convex hull
/// is a half-space. Throws PreconditionViolated when dom f is not finite.
HalfspaceValue conjugate_by_definition(const SetValuedMap& f, const DualElement& w);

/// One support point of a finitely supported g: g(w) = value.
struct DualSupport {
  DualElement w;
  EUnion value;
};

/// g^{c'}(x): empty unless <x, y*> < alpha on all of dom g; otherwise the
/// intersection over dom g of closed S(x) - g(w).
EUnion c_prime_conjugate(const std::vector<DualSupport>& g, const RatVector& x, std::size_t dim_z);

struct BiconjugateResult {
  EUnion exact;  // fiber of the K-e-convex hull
  EUnion outer;  // intersection over the sampled and certifying duals
  std::vector<DualElement> certifying;
};

/// f^{cc'}(x). `outside_z` lists z values with (x, z) outside the hull that
/// the outer approximation must exclude; a certifying dual is appended for
/// each, and one more when x is outside the hull's domain.
BiconjugateResult biconjugate(const SetValuedMap& f, const std::vector<DualElement>& duals, const RatVector& x,
                              const std::vector<RatVector>& outside_z = {}, const HullOptions& opts = {});

/// The epigraph of f^{cc'} rebuilt from sigma_f and eta over the original
/// epigraph, one dual per row of the K-e-convex hull.
KEpigraph biconjugate_epigraph(const SetValuedMap& f, const HullOptions& opts = {});

/// Duals drawn from epigraph normals, K* generators and half-spaces around
/// dom f, plus some outside dom sigma_f. Deterministic in the seed.
std::vector<DualElement> sample_duals(const SetValuedMap& f, std::size_t count, std::uint64_t seed);

struct BiconjugationOptions {
  std::size_t x_samples = 6;
  std::size_t z_samples = 4;
  std::size_t duals = 24;
  std::int64_t grid_resolution = 2;
  std::int64_t box_bound = 3;
  std::uint64_t seed = 1;
  HullOptions hull;
};

Report verify_biconjugation(const SetValuedMap& f, const BiconjugationOptions& opts = {});

/// The indicator map: K on C, empty off C.
SetValuedMap indicator_map(const EUnion& c, const ConeK& k);

Report indicator_suite(const EUnion& c, const ConeK& k, const BiconjugationOptions& opts = {});

}  // namespace evco
