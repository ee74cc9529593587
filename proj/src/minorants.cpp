#include "evco/minorants.hpp"

#include <mutex>
#include <stdexcept>

#include "evco/errors.hpp"
#include "evco/fm.hpp"
#include "evco/parallel.hpp"
#include "evco/random.hpp"

namespace evco {

namespace {

// z with <z, zstar> = target, along the first coordinate where zstar is nonzero.
RatVector solve_ztilde(const RatVector& zstar, const Rational& target) {
  for (std::size_t i = 0; i < zstar.size(); ++i) {
    if (sgn(zstar[i]) != 0) {
      RatVector z = zeros(zstar.size());
      z[i] = target / zstar[i];
      return z;
    }
  }
  throw PreconditionViolated("z* must be nonzero");
}

void require_polar(const EAffineMap& a, const ConeK& k) {
  if (a.zstar.size() != k.dim) throw DimensionMismatch("e-affine map: z* dimension");
  if (!polar_cone(k).contains_nonzero(a.zstar)) {
    throw PreconditionViolated("e-affine map: z* must lie in K* \\ {0}, got " + to_string(a.zstar));
  }
}

std::string point_text(const RatVector& p) { return to_string(p); }

}  // namespace

EPolyhedron domain_polyhedron(const DomainSpec& d, std::size_t dim_x) {
  if (std::holds_alternative<WholeSpace>(d)) return EPolyhedron::whole(dim_x);
  if (const auto* h = std::get_if<OpenHalfspace>(&d)) {
    if (h->ystar.size() != dim_x) throw DimensionMismatch("open half-space domain");
    return EPolyhedron(dim_x, {strict(h->ystar, h->alpha)});
  }
  const auto& p = std::get<EPolyhedron>(d);
  if (p.dim != dim_x) throw DimensionMismatch("e-convex domain");
  return p;
}

EUnion eval_eaffine(const EAffineMap& a, const RatVector& x) {
  if (x.size() != a.xstar.size()) throw DimensionMismatch("eval_eaffine: point dimension");
  if (a.ztilde.size() != a.zstar.size()) throw DimensionMismatch("eval_eaffine: ztilde dimension");
  const std::size_t m = a.zstar.size();
  if (!eval_membership(domain_polyhedron(a.domain, x.size()), x)) return EUnion(m, {});
  return EUnion(EPolyhedron(m, {strict(a.zstar, dot(a.ztilde, a.zstar) - dot(x, a.xstar))}));
}

EPolyhedron eaffine_epigraph(const EAffineMap& a) {
  const std::size_t n = a.xstar.size(), m = a.zstar.size();
  EPolyhedron e = lift(domain_polyhedron(a.domain, n), n + m, 0);
  e.constraints.push_back(strict(concat(a.xstar, a.zstar), dot(a.ztilde, a.zstar)));
  return e;
}

bool is_minorant(const EAffineMap& a, const KEpigraph& e, const ConeK& k) {
  if (a.xstar.size() != e.dim_x) throw DimensionMismatch("is_minorant: x* dimension");
  require_polar(a, k);
  const EPolyhedron ea = eaffine_epigraph(a);
  for (const auto& p : e.set.pieces) {
    if (!contains(ea, p)) return false;
  }
  return true;
}

bool is_minorant(const EAffineMap& a, const SetValuedMap& f) { return is_minorant(a, build_epi(f), f.cone); }

std::string to_string(MinorantFamily f) {
  switch (f) {
    case MinorantFamily::Mf:
      return "Mf";
    case MinorantFamily::C:
      return "C";
    case MinorantFamily::E:
      return "E";
  }
  return "?";
}

EAffineMap separating_minorant(const EPolyhedron& epi, std::size_t dim_x, const ConeK& k, const RatVector& x0z0,
                               MinorantFamily family, const MinorantOptions& opts) {
  const std::size_t n = dim_x, m = k.dim;
  if (epi.dim != n + m || x0z0.size() != n + m) throw DimensionMismatch("separating_minorant");
  auto cert = separate_point(epi, x0z0);
  if (!cert) throw PreconditionViolated("point " + to_string(x0z0) + " lies in the K-epigraph");
  const RatVector x0 = slice(x0z0, 0, n), z0 = slice(x0z0, n, m);
  const EPolyhedron mf = project_prefix(epi, n);
  const PolarCone polar = polar_cone(k);

  EAffineMap a;
  a.xstar = slice(cert->functional, 0, n);
  a.zstar = slice(cert->functional, n, m);
  if (!is_zero(a.zstar)) {
    // Every valid inequality of a K-absorbing set has its z-part in K*.
    if (!polar.contains(a.zstar)) throw std::logic_error("separating functional outside K*");
    a.ztilde = solve_ztilde(a.zstar, dot(x0, a.xstar) + dot(z0, a.zstar));
    switch (family) {
      case MinorantFamily::Mf:
        a.domain = mf;
        break;
      case MinorantFamily::C: {
        EPolyhedron c = opts.c_domain.value_or(mf);
        if (!contains(c, mf)) throw PreconditionViolated("family C: the set must contain dom f");
        a.domain = c;
        break;
      }
      case MinorantFamily::E:
        a.domain = OpenHalfspace{zeros(n), 1};
        break;
    }
    return a;
  }

  // x0 is outside dom f_K: any z-row of the epigraph gives the values, the
  // domain excludes x0.
  const RatVector yx = a.xstar;
  const LinConstraint* zrow = nullptr;
  for (const auto& c : epi.constraints) {
    if (!is_zero(slice(c.normal, n, m))) {
      zrow = &c;
      break;
    }
  }
  if (zrow == nullptr) throw PreconditionViolated("f_K takes the whole space on its domain");
  a.xstar = slice(zrow->normal, 0, n);
  a.zstar = slice(zrow->normal, n, m);
  if (!polar.contains(a.zstar)) throw std::logic_error("epigraph row outside K*");
  a.ztilde = solve_ztilde(a.zstar, zrow->strict() ? zrow->bound : zrow->bound + 1);
  switch (family) {
    case MinorantFamily::Mf:
      a.domain = mf;
      break;
    case MinorantFamily::C:
      if (opts.c_domain && !eval_membership(*opts.c_domain, x0)) {
        if (!contains(*opts.c_domain, mf)) throw PreconditionViolated("family C: the set must contain dom f");
        a.domain = *opts.c_domain;
      } else {
        a.domain = mf;
      }
      break;
    case MinorantFamily::E:
      a.domain = OpenHalfspace{yx, dot(yx, x0)};
      break;
  }
  return a;
}

EAffineMap separating_minorant(const SetValuedMap& f, const RatVector& x0z0, MinorantFamily family,
                               const MinorantOptions& opts) {
  if (x0z0.size() != f.dim_x + f.dim_z) throw DimensionMismatch("separating_minorant: point dimension");
  const Properness pr = is_proper(f);
  if (pr != Properness::Proper) throw PreconditionViolated("separating_minorant needs f_K proper, got " + to_string(pr));
  KEpigraph e = build_epi(f);
  EUnion u = e.set.normalized();
  EPolyhedron h;
  if (u.pieces.size() == 1) {
    h = u.pieces.front();
  } else {
    if (!is_e_convex(u, opts.hull).e_convex) throw PreconditionViolated("f is not K-e-convex");
    h = eco_hull(u, opts.hull);
  }
  if (u.contains_point(x0z0)) throw PreconditionViolated("point " + to_string(x0z0) + " lies in the K-epigraph");
  return separating_minorant(h, f.dim_x, f.cone, x0z0, family, opts);
}

EAffineMap eaffine_cover(const EAffineMap& a, std::size_t dim_x, const RatVector& x0) {
  if (std::holds_alternative<OpenHalfspace>(a.domain)) return a;
  EAffineMap out = a;
  const EPolyhedron d = domain_polyhedron(a.domain, dim_x);
  if (auto cert = separate_point(d, x0)) {
    out.domain = OpenHalfspace{cert->functional, dot(cert->functional, x0)};
  } else {
    out.domain = OpenHalfspace{zeros(dim_x), 1};
  }
  return out;
}

Report verify_supremum_characterization(const SetValuedMap& f, MinorantFamily family, const SamplingOptions& opts) {
  Report r;
  r.suite = "minorants";
  r.instance_id = "family-" + to_string(family);
  const std::size_t n = f.dim_x, m = f.dim_z;
  const Properness pr = is_proper(f);
  const PolarCone polar = polar_cone(f.cone);
  r.notes.push_back("properness: " + to_string(pr));

  // A few maps of the family shape, used on the improper branches.
  std::vector<EAffineMap> probes;
  {
    Rng rng(opts.seed);
    for (const auto& g : polar.generators) {
      probes.push_back({rng.vector(n, 2, 3), g, rng.vector(m, 2, 3), WholeSpace{}});
      probes.push_back({zeros(n), g, zeros(m), OpenHalfspace{zeros(n), 1}});
    }
  }

  if (pr == Properness::EmptyEverywhere) {
    r.notes.push_back("f is empty everywhere: the minorant family is {f} by convention");
    bool all = true;
    for (const auto& a : probes) all = all && is_minorant(a, f);
    r.add("empty-map-minorized", all, "every e-affine map minorizes the empty map");
    return r;
  }
  if (pr == Properness::TakesWholeSpace) {
    bool none = true;
    for (const auto& a : probes) none = none && !is_minorant(a, f);
    r.add("no-minorant-for-whole-space-value", none, "f_K(x) = Z somewhere, so no e-affine map minorizes f");
    bool refused = false;
    try {
      separating_minorant(f, zeros(n + m), family);
    } catch (const PreconditionViolated&) {
      refused = true;
    }
    r.add("construction-refused", refused);
    return r;
  }

  const KEpigraph e = build_epi(f);
  const EUnion u = e.set.normalized();
  bool econvex = true;
  std::optional<RatVector> gap_point;
  EPolyhedron h;
  if (u.pieces.size() == 1) {
    h = u.pieces.front();
  } else {
    auto ec = is_e_convex(u, opts.hull);
    econvex = ec.e_convex;
    gap_point = ec.counterexample;
    h = eco_hull(u, opts.hull);
  }
  r.notes.push_back(econvex ? "f is K-e-convex" : "f is not K-e-convex");

  std::vector<RatVector> inside, outside;
  for (const auto& p : u.pieces) inside.push_back(*is_nonempty(p).witness);
  if (gap_point) outside.push_back(*gap_point);
  Rng rng(opts.seed);
  const std::size_t budget = 200 * (opts.inside_samples + opts.outside_samples + 1);
  for (std::size_t t = 0; t < budget; ++t) {
    if (inside.size() >= opts.inside_samples + u.pieces.size() && outside.size() >= opts.outside_samples) break;
    RatVector p = rng.grid_point(n + m, opts.grid_resolution, opts.box_bound);
    auto& bucket = u.contains_point(p) ? inside : outside;
    const std::size_t cap = (&bucket == &inside) ? opts.inside_samples + u.pieces.size() : opts.outside_samples;
    if (bucket.size() < cap) bucket.push_back(std::move(p));
  }

  MinorantOptions mo;
  mo.hull = opts.hull;
  std::vector<std::optional<EAffineMap>> built(outside.size());
  std::vector<Report> partial(outside.size());
  parallel_for(outside.size(), [&](std::size_t i) {
    const RatVector& p = outside[i];
    Report& pr_i = partial[i];
    const std::string w = point_text(p);
    if (eval_membership(h, p)) {
      // Outside epi_K f but inside its e-convex hull: no minorant can separate.
      Check c{"separation", false, !econvex, w, "inside the K-e-convex hull, no minorant separates it"};
      pr_i.checks.push_back(std::move(c));
      return;
    }
    EAffineMap a = separating_minorant(h, n, f.cone, p, family, mo);
    const RatVector x0 = slice(p, 0, n), z0 = slice(p, n, m);
    pr_i.add("excludes-point", !eval_eaffine(a, x0).contains_point(z0), "", w);
    pr_i.add("zstar-in-polar", polar.contains_nonzero(a.zstar), "", w);
    pr_i.add("is-minorant", is_minorant(a, e, f.cone), "", w);
    if (family != MinorantFamily::E) {
      EAffineMap cover = eaffine_cover(a, n, x0);
      bool ok = is_minorant(cover, e, f.cone) && !eval_eaffine(cover, x0).contains_point(z0);
      pr_i.add("e-affine-cover", ok, "", w);
    }
    built[i] = std::move(a);
  });
  for (const auto& p : partial) r.merge(p);

  std::size_t made = 0;
  for (const auto& a : built) made += a.has_value();
  r.notes.push_back(std::to_string(made) + " minorants constructed, " + std::to_string(inside.size()) +
                    " inside and " + std::to_string(outside.size()) + " outside points");
  for (const auto& p : inside) {
    bool kept = true;
    for (const auto& a : built) {
      if (a) kept = kept && eval_membership(eaffine_epigraph(*a), p);
    }
    r.add("keeps-inside-point", kept, "", point_text(p));
  }
  if (!econvex) {
    // The supremum of the minorants is the K-e-convex hull: points of the gap
    // stay inside every constructed minorant.
    for (const auto& p : outside) {
      if (!eval_membership(h, p)) continue;
      bool kept = true;
      for (const auto& a : built) {
        if (a) kept = kept && eval_membership(eaffine_epigraph(*a), p);
      }
      r.add("hull-gap-point-kept", kept, "", point_text(p));
    }
  }
  return r;
}

}  // namespace evco
