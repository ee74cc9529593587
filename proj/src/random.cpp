#include "evco/random.hpp"

#include <limits>

namespace evco {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(eng_());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t r;
  do {
    r = eng_();
  } while (r >= limit);
  return lo + static_cast<std::int64_t>(r % span);
}

Rational Rng::rational(std::int64_t max_abs, std::int64_t max_den) {
  const std::int64_t q = uniform(1, max_den);
  const std::int64_t p = uniform(-max_abs * q, max_abs * q);
  Rational r(static_cast<long>(p), static_cast<long>(q));
  r.canonicalize();
  return r;
}

RatVector Rng::vector(std::size_t dim, std::int64_t max_abs, std::int64_t max_den) {
  RatVector v;
  for (std::size_t i = 0; i < dim; ++i) v.push_back(rational(max_abs, max_den));
  return v;
}

RatVector Rng::grid_point(std::size_t dim, std::int64_t resolution, std::int64_t bound) {
  RatVector v;
  for (std::size_t i = 0; i < dim; ++i) {
    Rational r(static_cast<long>(uniform(-bound * resolution, bound * resolution)), static_cast<long>(resolution));
    r.canonicalize();
    v.push_back(r);
  }
  return v;
}

EPolyhedron random_polyhedron(Rng& rng, const PolyProfile& pr) {
  for (;;) {
    EPolyhedron p(pr.dim, {});
    for (std::size_t i = 0; i < pr.constraints; ++i) {
      RatVector a = rng.vector(pr.dim, 2, 1);
      if (is_zero(a)) a = unit(pr.dim, static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(pr.dim) - 1)));
      Rational b = rng.rational(2, pr.max_den);
      const bool s = rng.chance(pr.strict_percent, 100);
      p.constraints.push_back(s ? strict(std::move(a), b) : weak(std::move(a), b));
    }
    if (pr.bounded) {
      for (std::size_t i = 0; i < pr.dim; ++i) {
        const bool s = rng.chance(pr.strict_percent, 100);
        auto make = s ? strict : weak;
        p.constraints.push_back(make(unit(pr.dim, i), pr.box));
        p.constraints.push_back(make(negate(unit(pr.dim, i)), pr.box));
      }
    }
    if (is_nonempty(p).nonempty) return p;
  }
}

ConeK make_cone(ConeKind kind, std::size_t dim_z) {
  if (kind == ConeKind::Orthant || dim_z == 1) return ConeK::nonnegative_orthant(dim_z);
  std::vector<RatVector> gens{unit(dim_z, 0)};
  for (std::size_t i = 1; i < dim_z; ++i) {
    RatVector g = unit(dim_z, 0);
    g[i] = 1;
    gens.push_back(std::move(g));
  }
  return ConeK::from_generators(dim_z, std::move(gens));
}

SetValuedMap random_econvex_map(Rng& rng, std::size_t dim_x, std::size_t dim_z, ConeKind cone,
                                std::size_t constraints) {
  ConeK k = make_cone(cone, dim_z);
  PolyProfile pr;
  pr.dim = dim_x + dim_z;
  pr.constraints = constraints;
  pr.bounded = true;
  pr.box = 2;
  for (;;) {
    SetValuedMap f(dim_x, dim_z, EUnion(random_polyhedron(rng, pr)), k);
    if (is_proper(f) == Properness::Proper) return f;
  }
}

}  // namespace evco
