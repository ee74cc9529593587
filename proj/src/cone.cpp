#include "evco/cone.hpp"

#include <algorithm>
#include <string>

#include "evco/errors.hpp"
#include "evco/fm.hpp"

namespace evco {

namespace {

// H-representation of cone(gens): project {(z, l) : z = sum l_j g_j, l >= 0} onto z.
std::vector<RatVector> cone_rows(std::size_t dim, const std::vector<RatVector>& gens) {
  const std::size_t width = dim + gens.size();
  EPolyhedron sys(width, {});
  for (std::size_t i = 0; i < dim; ++i) {
    RatVector n = unit(width, i);
    for (std::size_t j = 0; j < gens.size(); ++j) n[dim + j] = -gens[j][i];
    sys.constraints.push_back(weak(n, 0));
    sys.constraints.push_back(weak(negate(n), 0));
  }
  for (std::size_t j = 0; j < gens.size(); ++j) sys.constraints.push_back(weak(negate(unit(width, dim + j)), 0));
  EPolyhedron h = remove_redundant(project_prefix(sys, dim));
  std::vector<RatVector> rows;
  for (const auto& c : h.constraints) rows.push_back(c.normal);
  return rows;
}

ConeK finish(std::size_t dim, std::vector<RatVector> rows, std::vector<RatVector> gens) {
  ConeK k;
  k.dim = dim;
  for (auto& r : rows) {
    if (!is_zero(r)) k.constraints.push_back(weak(std::move(r), 0));
  }
  for (auto& g : gens) {
    if (!is_zero(g)) k.generators.push_back(std::move(g));
  }
  if (k.generators.empty()) throw PreconditionViolated("cone K must not be {0}");
  if (k.constraints.empty()) throw PreconditionViolated("cone K must not be the whole space");
  std::vector<RatVector> normals;
  for (const auto& c : k.constraints) normals.push_back(c.normal);
  k.pointed = rank(normals, dim) == dim;
  return k;
}

}  // namespace

ConeK ConeK::from_generators(std::size_t dim, std::vector<RatVector> gens) {
  if (dim == 0) throw PreconditionViolated("cone K needs a positive dimension");
  for (const auto& g : gens) {
    if (g.size() != dim) throw DimensionMismatch("cone generator dimension");
  }
  auto rows = cone_rows(dim, gens);
  return finish(dim, std::move(rows), std::move(gens));
}

ConeK ConeK::from_constraints(std::size_t dim, std::vector<RatVector> normals) {
  if (dim == 0) throw PreconditionViolated("cone K needs a positive dimension");
  for (const auto& a : normals) {
    if (a.size() != dim) throw DimensionMismatch("cone constraint dimension");
  }
  // K = {<a,z> <= 0} has K* = cone(a); the rows b of K* give K = cone(b).
  auto gens = cone_rows(dim, normals);
  return finish(dim, std::move(normals), std::move(gens));
}

ConeK ConeK::nonnegative_orthant(std::size_t dim) {
  std::vector<RatVector> gens;
  for (std::size_t i = 0; i < dim; ++i) gens.push_back(unit(dim, i));
  return from_generators(dim, std::move(gens));
}

EPolyhedron ConeK::as_polyhedron() const { return EPolyhedron(dim, constraints); }

bool ConeK::contains(const RatVector& z) const { return eval_membership(as_polyhedron(), z); }

bool ConeK::operator==(const ConeK& other) const {
  return dim == other.dim && same_set(as_polyhedron(), other.as_polyhedron());
}

PolarCone polar_cone(const ConeK& k) {
  PolarCone p;
  p.dim = k.dim;
  for (const auto& g : k.generators) p.constraints.push_back(weak(g, 0));
  for (const auto& c : k.constraints) p.generators.push_back(c.normal);
  return p;
}

bool PolarCone::contains(const RatVector& zstar) const {
  if (zstar.size() != dim) throw DimensionMismatch("polar cone membership");
  return std::all_of(constraints.begin(), constraints.end(),
                     [&](const LinConstraint& c) { return c.satisfied_by(zstar); });
}

bool PolarCone::contains_nonzero(const RatVector& zstar) const { return !is_zero(zstar) && contains(zstar); }

}  // namespace evco
