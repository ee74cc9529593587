#pragma once

#include <cstddef>
#include <vector>

#include "evco/polyhedron.hpp"

namespace evco {

/// Closed polyhedral ordering cone K in Q^dim, kept in both forms:
/// K = {z : <a, z> <= 0 for every row a} = cone(generators).
struct ConeK {
  std::size_t dim = 0;
  std::vector<LinConstraint> constraints;  // weak, bound 0
  std::vector<RatVector> generators;
  bool pointed = false;

  /// Throws PreconditionViolated unless {0} != K != Q^dim.
  static ConeK from_generators(std::size_t dim, std::vector<RatVector> gens);
  static ConeK from_constraints(std::size_t dim, std::vector<RatVector> normals);
  static ConeK nonnegative_orthant(std::size_t dim);

  EPolyhedron as_polyhedron() const;
  bool contains(const RatVector& z) const;
  bool operator==(const ConeK& other) const;
};

/// K* = {z* : <z, z*> <= 0 for all z in K}, one row <g, z*> <= 0 per
/// generator g of K. Its generators are the constraint normals of K.
struct PolarCone {
  std::size_t dim = 0;
  std::vector<LinConstraint> constraints;
  std::vector<RatVector> generators;

  bool contains(const RatVector& zstar) const;
  /// z* in K* \ {0}.
  bool contains_nonzero(const RatVector& zstar) const;
};

PolarCone polar_cone(const ConeK& k);

}  // namespace evco
