#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "evco/rational.hpp"

namespace evco {

enum class ConstraintKind { Strict, Weak };

/// <normal, x> < bound (Strict) or <normal, x> <= bound (Weak).
struct LinConstraint {
  RatVector normal;
  Rational bound;
  ConstraintKind kind = ConstraintKind::Weak;

  bool strict() const { return kind == ConstraintKind::Strict; }
  bool satisfied_by(const RatVector& x) const;
  /// The complement half-space: not(<a,x> < b) is <-a,x> <= -b and vice versa.
  LinConstraint negated() const;
  bool operator==(const LinConstraint&) const = default;
};

LinConstraint weak(RatVector normal, Rational bound);
LinConstraint strict(RatVector normal, Rational bound);

/// Finite conjunction of strict and weak affine inequalities in Q^dim.
/// An empty constraint list is the whole space.
struct EPolyhedron {
  std::size_t dim = 0;
  std::vector<LinConstraint> constraints;

  EPolyhedron() = default;
  EPolyhedron(std::size_t d, std::vector<LinConstraint> cs);

  static EPolyhedron whole(std::size_t dim);
  /// The canonical empty polyhedron: the single constraint 0.x <= -1.
  static EPolyhedron empty(std::size_t dim);

  bool is_canonical_empty() const;
  bool has_strict() const;
  /// Conjunction with more constraints of the same dimension.
  EPolyhedron with(const std::vector<LinConstraint>& more) const;
  EPolyhedron with(const LinConstraint& c) const;
  bool operator==(const EPolyhedron&) const = default;
};

/// Extended-real supremum with an attainment bit and, when attained, a
/// point that realizes it.
struct SupportValue {
  enum class Kind { MinusInfinity, Finite, PlusInfinity };
  Kind kind = Kind::MinusInfinity;
  Rational value;
  bool attained = false;
  std::optional<RatVector> witness;

  static SupportValue minus_infinity() { return {}; }
  static SupportValue plus_infinity() { return {Kind::PlusInfinity, 0, false, std::nullopt}; }
  static SupportValue finite(Rational v, bool attained, std::optional<RatVector> w = std::nullopt) {
    return {Kind::Finite, std::move(v), attained, std::move(w)};
  }

  bool is_finite() const { return kind == Kind::Finite; }
  /// Equality of (kind, value, attained); the witness is not compared.
  bool same_value(const SupportValue& other) const;
};

std::string to_string(const SupportValue& s);

struct Feasibility {
  bool nonempty = false;
  std::optional<RatVector> witness;
};

/// True iff x satisfies every constraint with its kind.
bool eval_membership(const EPolyhedron& p, const RatVector& x);

/// Decides the mixed strict/weak system through the capped shared-slack LP:
/// maximize t <= 1 with every strict row tightened to <a,x> + t <= b.
/// Nonempty iff the optimum is positive (or there is no strict row and the
/// weak system is feasible). The witness satisfies strict rows strictly.
Feasibility is_nonempty(const EPolyhedron& p);

/// sup over P of <x, c>, with attainment decided exactly.
SupportValue sup_linear(const EPolyhedron& p, const RatVector& c);

/// Every strict constraint turned weak; the canonical empty set when P is
/// empty (weakening an empty system can create points).
EPolyhedron closure(const EPolyhedron& p);

/// Q is a subset of P.
bool contains(const EPolyhedron& p, const EPolyhedron& q);

/// Mutual containment.
bool same_set(const EPolyhedron& p, const EPolyhedron& q);

/// The same inequality scaled by a positive factor so that the normal is a
/// primitive integer vector. Zero normals are returned unchanged.
LinConstraint primitive(const LinConstraint& c);

/// Cheap syntactic clean-up: zero-normal rows become a tautology (dropped) or
/// a contradiction (canonical empty); normals are scaled to primitive integer
/// vectors; rows with the same normal keep the tightest bound, strict winning
/// ties.
EPolyhedron normalize(const EPolyhedron& p);

/// normalize, then drop every constraint implied by the remaining ones
/// (decided by sup_linear), then sort lexicographically by normal.
EPolyhedron remove_redundant(const EPolyhedron& p);

/// A point in the relative interior of a weak system together with the
/// indices of its implicit equalities (rows tight on the whole set).
struct RelativeInterior {
  RatVector point;
  std::vector<std::size_t> implicit_equalities;
};
std::optional<RelativeInterior> relative_interior(const EPolyhedron& weak_system);

/// Fixes the coordinates listed in `fixed_indices` to `values` and returns
/// the system in the remaining coordinates (order preserved).
EPolyhedron substitute(const EPolyhedron& p, const std::vector<std::size_t>& fixed_indices,
                       const RatVector& values);

/// Embeds P into a larger space: coordinate i of P becomes coordinate
/// offset + i of the result.
EPolyhedron lift(const EPolyhedron& p, std::size_t new_dim, std::size_t offset);

std::string to_string(const LinConstraint& c, const std::vector<std::string>& names);
std::string to_string(const EPolyhedron& p, const std::vector<std::string>& names);
/// Names x, y, z for dimensions up to 3, x1..xn beyond.
std::vector<std::string> default_names(std::size_t dim);

bool lex_less(const LinConstraint& a, const LinConstraint& b);

}  // namespace evco
