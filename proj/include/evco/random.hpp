#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "evco/cone.hpp"
#include "evco/polyhedron.hpp"
#include "evco/setvalued.hpp"

namespace evco {

/// Deterministic across platforms: mt19937_64 is fully specified and the
/// integer draw below avoids the implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  /// Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool chance(std::uint64_t num, std::uint64_t den) { return uniform(0, static_cast<std::int64_t>(den) - 1) < static_cast<std::int64_t>(num); }
  /// p/q with |p/q| <= max_abs and 1 <= q <= max_den.
  Rational rational(std::int64_t max_abs, std::int64_t max_den);
  RatVector vector(std::size_t dim, std::int64_t max_abs, std::int64_t max_den);
  /// Grid point with coordinates k/resolution in [-bound, bound].
  RatVector grid_point(std::size_t dim, std::int64_t resolution, std::int64_t bound);

 private:
  std::mt19937_64 eng_;
};

struct PolyProfile {
  std::size_t dim = 2;
  std::size_t constraints = 4;
  /// Probability (in percent) that a row is strict.
  std::uint64_t strict_percent = 50;
  /// Adds a strict-or-weak box |x_i| <= box so the piece is bounded.
  bool bounded = false;
  std::int64_t box = 3;
  std::int64_t max_den = 10;
};

/// Nonempty random e-polyhedron; resampled until is_nonempty holds.
EPolyhedron random_polyhedron(Rng& rng, const PolyProfile& profile);

enum class ConeKind { Orthant, Simplicial };
/// Q_+^m, or for m >= 2 the simplicial cone generated by e_1 and e_1 + e_2,..,
/// e_1 + e_m; for m = 1 both are Q_+.
ConeK make_cone(ConeKind kind, std::size_t dim_z);

/// Single-piece map whose K-epigraph is proper: the graph is a random
/// e-polyhedron in (x, z).
SetValuedMap random_econvex_map(Rng& rng, std::size_t dim_x, std::size_t dim_z, ConeKind cone,
                                std::size_t constraints = 3);

}  // namespace evco
