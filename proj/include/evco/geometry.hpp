#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "evco/polyhedron.hpp"

namespace evco {

/// Finite union of e-polyhedra of a common dimension; generally not convex.
struct EUnion {
  std::size_t dim = 0;
  std::vector<EPolyhedron> pieces;

  EUnion() = default;
  EUnion(std::size_t d, std::vector<EPolyhedron> ps);
  explicit EUnion(EPolyhedron single);

  /// Pieces normalized, empty pieces dropped.
  EUnion normalized() const;
  bool contains_point(const RatVector& x) const;
  bool is_empty() const;
};

struct SeparationCertificate {
  RatVector functional;
  std::size_t violated_constraint_index = 0;
  std::size_t piece_index = 0;
};

/// For x0 outside the single piece, the normal of a violated constraint:
/// <x - x0, functional> < 0 on the whole piece. std::nullopt when x0 is in it.
std::optional<SeparationCertificate> separate_point(const EUnion& c, const RatVector& x0);
std::optional<SeparationCertificate> separate_point(const EPolyhedron& p, const RatVector& x0);

/// Exact check that <x, functional> < <x0, functional> for every x in every
/// piece: the supremum is below the level, or equal and not attained.
bool strictly_separates(const EUnion& c, const RatVector& x0, const RatVector& functional);

struct HullOptions {
  /// Multi-piece hulls are computed exactly up to this ambient dimension.
  std::size_t max_dim = 3;
  std::size_t max_faces = 4096;
  std::size_t max_dnf_pieces = 20000;
};

/// cl conv of the union as a weak system, via the homogenization cones of the
/// piece closures (summed, then sliced at t = 1). Canonical empty for the
/// empty union. Handles unbounded pieces.
EPolyhedron closed_convex_hull(const EUnion& c);

/// A nonempty face of a polyhedron given by a weak system: the rows tight on
/// the whole face, the exposing functional (sum of those rows) and its
/// maximum value, and a relative-interior point.
struct Face {
  std::vector<std::size_t> tight;
  RatVector exposing;
  Rational level;
  RatVector interior_point;
};

/// All nonempty faces (including the polyhedron itself), breadth first over
/// tight sets. Every face of a polyhedron is exposed.
std::vector<Face> enumerate_faces(const EPolyhedron& weak_system, std::size_t max_faces = 4096);

struct EcoMembership {
  bool member = false;
  /// For non-members: x* with <x - x0, x*> < 0 on the whole set.
  std::optional<RatVector> functional;
};

/// x0 is outside eco C iff it is outside cl conv C, or it lies on an exposed
/// face of cl conv C that misses C.
EcoMembership eco_membership(const EUnion& c, const RatVector& x0, const HullOptions& opts = {});

/// H-representation of eco C: the weak system of cl conv C plus one strict
/// cut per exposed face missing C, with redundant rows removed.
EPolyhedron eco_hull(const EUnion& c, const HullOptions& opts = {});

/// h minus the union, as a finite union (disjoint DNF expansion). Throws
/// UnsupportedInstance beyond max_pieces.
EUnion subtract(const EPolyhedron& h, const EUnion& u, std::size_t max_pieces = 20000);

/// inner is a subset of outer.
bool union_contains(const EUnion& outer, const EUnion& inner, std::size_t max_pieces = 20000);
bool same_union(const EUnion& a, const EUnion& b, std::size_t max_pieces = 20000);

/// a + b, projected from {(x, u) : u in a, x - u in b}.
EPolyhedron minkowski_sum(const EPolyhedron& a, const EPolyhedron& b);

/// A boxplus B = eco(A + B).
EPolyhedron boxplus(const EUnion& a, const EUnion& b, const HullOptions& opts = {});

struct AssociativityReport {
  bool associative = false;        // A [+] (B [+] C) == (A [+] B) [+] C
  bool absorbs_inner_hull = false; // eco(A + eco B) == eco(A + B)
  bool ok() const { return associative && absorbs_inner_hull; }
};
AssociativityReport verify_eco_associativity(const EUnion& a, const EUnion& b, const EUnion& c,
                                             const HullOptions& opts = {});

struct EConvexity {
  bool e_convex = false;
  /// A point of eco C outside C.
  std::optional<RatVector> counterexample;
};
EConvexity is_e_convex(const EUnion& c, const HullOptions& opts = {});

}  // namespace evco
