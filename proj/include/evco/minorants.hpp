#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "evco/report.hpp"
#include "evco/setvalued.hpp"

namespace evco {

struct WholeSpace {
  bool operator==(const WholeSpace&) const = default;
};
/// {x : <x, ystar> < alpha}
struct OpenHalfspace {
  RatVector ystar;
  Rational alpha;
  bool operator==(const OpenHalfspace&) const = default;
};
using DomainSpec = std::variant<WholeSpace, OpenHalfspace, EPolyhedron>;

/// a(x) = {z : <x, xstar> + <z - ztilde, zstar> < 0} on the domain, empty
/// off it.
struct EAffineMap {
  RatVector xstar;
  RatVector zstar;
  RatVector ztilde;
  DomainSpec domain;
};

EPolyhedron domain_polyhedron(const DomainSpec& d, std::size_t dim_x);

/// a(x) in Q^dim_z: one strict row, or empty off the domain.
EUnion eval_eaffine(const EAffineMap& a, const RatVector& x);

/// epi_K a = graph of a: {<x,x*> + <z,z*> < <ztilde,z*>} intersected with
/// domain x Z.
EPolyhedron eaffine_epigraph(const EAffineMap& a);

/// a(x) <=_K f(x) for all x. Throws PreconditionViolated unless z* is in
/// K* \ {0}.
bool is_minorant(const EAffineMap& a, const SetValuedMap& f);
bool is_minorant(const EAffineMap& a, const KEpigraph& e, const ConeK& k);

enum class MinorantFamily { Mf, C, E };
std::string to_string(MinorantFamily f);

struct MinorantOptions {
  HullOptions hull;
  /// The e-convex set for family C; defaults to M_f.
  std::optional<EPolyhedron> c_domain;
};

/// A minorant in the requested family with z0 outside a(x0). Requires f to be
/// K-e-convex with f_K proper and (x0, z0) outside epi_K f; throws
/// PreconditionViolated otherwise.
EAffineMap separating_minorant(const SetValuedMap& f, const RatVector& x0z0, MinorantFamily family,
                               const MinorantOptions& opts = {});

/// Same construction against an explicit e-polyhedral K-epigraph.
EAffineMap separating_minorant(const EPolyhedron& epi, std::size_t dim_x, const ConeK& k, const RatVector& x0z0,
                               MinorantFamily family, const MinorantOptions& opts = {});

/// An e-affine map with the same (x*, z*, ztilde) whose open half-space
/// domain contains the domain of `a` and, when x0 lies outside that domain,
/// excludes x0. Intersecting these over all x0 recovers the domain of `a`.
EAffineMap eaffine_cover(const EAffineMap& a, std::size_t dim_x, const RatVector& x0);

struct SamplingOptions {
  std::size_t inside_samples = 10;
  std::size_t outside_samples = 10;
  std::int64_t grid_resolution = 2;
  std::int64_t box_bound = 3;
  std::uint64_t seed = 1;
  HullOptions hull;
};

/// Pointwise-supremum characterization: every constructed minorant keeps the
/// sampled inside points, and every sampled outside point is excluded by a
/// constructed minorant. Improper and non-e-convex maps are reported per
/// their expected behaviour.
Report verify_supremum_characterization(const SetValuedMap& f, MinorantFamily family,
                                        const SamplingOptions& opts = {});

}  // namespace evco
