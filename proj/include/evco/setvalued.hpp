#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "evco/cone.hpp"
#include "evco/geometry.hpp"

namespace evco {

/// f : Q^dim_x -> subsets of Q^dim_z, given by its graph. Coordinates of the
/// graph are ordered (x-block, z-block). `full_value` is a region of Q^dim_x
/// where f(x) = Q^dim_z, which no constraint system in (x, z) can encode
/// together with an ordinary graph piece.
struct SetValuedMap {
  std::size_t dim_x = 0;
  std::size_t dim_z = 0;
  EUnion graph;
  EUnion full_value;
  ConeK cone;

  SetValuedMap(std::size_t dx, std::size_t dz, EUnion graph, ConeK cone, EUnion full_value = {});
};

/// {(x, z) : z in f(x) + K}.
struct KEpigraph {
  std::size_t dim_x = 0;
  std::size_t dim_z = 0;
  EUnion set;
};

KEpigraph build_epi(const SetValuedMap& f);

/// f_K(x0), empty pieces dropped.
EUnion fiber(const KEpigraph& e, const RatVector& x0);

/// Projection of every piece onto the x-block.
EUnion domain(const KEpigraph& e);

enum class Properness { Proper, EmptyEverywhere, TakesWholeSpace };
std::string to_string(Properness p);

Properness is_proper(const SetValuedMap& f, std::size_t max_pieces = 20000);
Properness is_proper(const KEpigraph& e, std::size_t max_pieces = 20000);

/// A <=_K B, i.e. B is a subset of A + K.
bool leq_K_at(const EUnion& a, const EUnion& b, const ConeK& k, std::size_t max_pieces = 20000);

/// epi_K of Kcl f: union of the piece closures.
KEpigraph k_closed_hull(const KEpigraph& e);
/// epi_K of Kcl conv f: cl conv of the epigraph.
KEpigraph k_clconv_hull(const KEpigraph& e);
/// epi_K of Keco f: eco of the epigraph.
KEpigraph k_eco_hull(const KEpigraph& e, const HullOptions& opts = {});

KEpigraph k_closed_hull(const SetValuedMap& f);
KEpigraph k_clconv_hull(const SetValuedMap& f);
KEpigraph k_eco_hull(const SetValuedMap& f, const HullOptions& opts = {});

/// The map whose graph is the given epigraph (same f_K).
SetValuedMap map_of(const KEpigraph& e, const ConeK& k);

/// Spot check: witness points of every piece, moved along each generator of
/// K, stay in the union.
bool absorbs_cone(const KEpigraph& e, const ConeK& k);

/// Names x, z for one-dimensional blocks, x1.., z1.. otherwise.
std::vector<std::string> map_names(std::size_t dim_x, std::size_t dim_z);

/// One affine piece of an extended-real function on Q^n.
struct ScalarPiece {
  enum class Kind { Finite, PlusInfinity, MinusInfinity };
  EPolyhedron domain;
  Kind kind = Kind::Finite;
  RatVector slope;  // Finite only
  Rational offset;  // Finite only
};

/// g(x) from the piece whose domain contains x; +inf off every domain.
struct ScalarFunction {
  std::size_t dim = 0;
  std::vector<ScalarPiece> pieces;
};

/// {(x, t) : t >= g(x)}, built directly from the pieces.
EUnion scalar_epigraph(const ScalarFunction& g);

/// f^s with K = Q_+: f^s(x) = {g(x)} where g is finite, Q where g = -inf,
/// empty where g = +inf. Throws PreconditionViolated on overlapping domains
/// or malformed pieces, and std::logic_error if the epigraphs disagree.
SetValuedMap scalar_embed(const ScalarFunction& g);

}  // namespace evco
