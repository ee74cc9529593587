#include "evco/conjugation.hpp"

#include <algorithm>
#include <stdexcept>

#include "evco/errors.hpp"
#include "evco/fm.hpp"
#include "evco/parallel.hpp"
#include "evco/random.hpp"

namespace evco {

namespace {

using Kind = SupportValue::Kind;

// Supremum of the union of two sets.
SupportValue max_support(const SupportValue& a, const SupportValue& b) {
  if (a.kind == Kind::PlusInfinity || b.kind == Kind::PlusInfinity) return SupportValue::plus_infinity();
  if (a.kind == Kind::MinusInfinity) return b;
  if (b.kind == Kind::MinusInfinity) return a;
  if (a.value > b.value) return a;
  if (b.value > a.value) return b;
  SupportValue out = a.attained ? a : b;
  out.attained = a.attained || b.attained;
  return out;
}

SupportValue union_sup(const EUnion& u, const RatVector& c) {
  SupportValue s = SupportValue::minus_infinity();
  for (const auto& p : u.pieces) s = max_support(s, sup_linear(p, c));
  return s;
}

SupportValue shifted(SupportValue s, const Rational& by) {
  if (s.is_finite()) s.value += by;
  return s;
}

// sup of <y*, x> over dom f is below alpha, or equal and unattained.
bool domain_inside(const KEpigraph& e, const DualElement& w) {
  const SupportValue s = union_sup(e.set, concat(w.ystar, zeros(e.dim_z)));
  if (s.kind == Kind::MinusInfinity) return true;
  if (s.kind == Kind::PlusInfinity) return false;
  return s.value < w.alpha || (s.value == w.alpha && !s.attained);
}

bool is_whole_union(const EUnion& u) {
  return union_contains(u, EUnion(EPolyhedron::whole(u.dim)));
}

// A dual whose Eq. (8) constraint at x excludes the point, taken from the
// row of the hull H that the point violates.
std::optional<DualElement> certifying_dual(const EPolyhedron& h, std::size_t n, std::size_t m, const PolarCone& polar,
                                           const RatVector& point) {
  auto cert = separate_point(h, point);
  if (!cert) return std::nullopt;
  RatVector ax = slice(cert->functional, 0, n), az = slice(cert->functional, n, m);
  if (!is_zero(az)) return DualElement{ax, zeros(n), az, 1};
  // x is outside dom: exclude it through the half-space, values from any z-row.
  for (const auto& c : h.constraints) {
    RatVector cz = slice(c.normal, n, m);
    if (!is_zero(cz) && polar.contains(cz)) {
      const RatVector x = slice(point, 0, n);
      return DualElement{slice(c.normal, 0, n), ax, cz, dot(ax, x)};
    }
  }
  return std::nullopt;
}

EUnion conjugate_value(const KEpigraph& e, const DualElement& w) {
  return EUnion(HalfspaceValue::from_support(w.zstar, sigma_f(e, w), true).to_polyhedron()).normalized();
}

}  // namespace

void validate_dual(const DualElement& w, std::size_t dim_x, const ConeK& k) {
  if (w.xstar.size() != dim_x || w.ystar.size() != dim_x || w.zstar.size() != k.dim) {
    throw DimensionMismatch("dual element dimensions must be (" + std::to_string(dim_x) + ", " +
                            std::to_string(dim_x) + ", " + std::to_string(k.dim) + ")");
  }
  if (!polar_cone(k).contains_nonzero(w.zstar)) {
    throw PreconditionViolated("dual element: z* must lie in K* \\ {0}, got " + to_string(w.zstar));
  }
}

SupportValue sigma_f(const KEpigraph& e, const DualElement& w) {
  if (w.xstar.size() != e.dim_x || w.ystar.size() != e.dim_x || w.zstar.size() != e.dim_z) {
    throw DimensionMismatch("sigma_f: dual element dimensions");
  }
  if (!domain_inside(e, w)) return SupportValue::plus_infinity();
  return union_sup(e.set, concat(w.xstar, w.zstar));
}

SupportValue sigma_f(const SetValuedMap& f, const DualElement& w) {
  validate_dual(w, f.dim_x, f.cone);
  return sigma_f(build_epi(f), w);
}

int eta(const EUnion& c, const RatVector& functional) {
  if (c.is_empty()) throw PreconditionViolated("eta is undefined on the empty set");
  const SupportValue s = union_sup(c, functional);
  return (s.is_finite() && s.attained) ? 1 : 0;
}

int eta(const KEpigraph& e, const RatVector& xstar, const RatVector& zstar) {
  return eta(e.set, concat(xstar, zstar));
}

HalfspaceValue HalfspaceValue::from_support(RatVector zstar, SupportValue bound, bool negated) {
  HalfspaceValue v;
  v.zstar = std::move(zstar);
  v.sense = (bound.is_finite() && !bound.attained) ? ConstraintKind::Strict : ConstraintKind::Weak;
  v.bound = std::move(bound);
  v.negated = negated;
  return v;
}

bool HalfspaceValue::is_empty() const {
  return negated ? bound.kind == Kind::PlusInfinity : bound.kind == Kind::MinusInfinity;
}

bool HalfspaceValue::is_whole() const {
  return negated ? bound.kind == Kind::MinusInfinity : bound.kind == Kind::PlusInfinity;
}

EPolyhedron HalfspaceValue::to_polyhedron() const {
  const std::size_t m = zstar.size();
  if (is_empty()) return EPolyhedron::empty(m);
  if (is_whole()) return EPolyhedron::whole(m);
  // -{z : <z,z*> < b} = {z : <z,-z*> < b}
  RatVector a = negated ? negate(zstar) : zstar;
  return EPolyhedron(m, {{std::move(a), bound.value, sense}});
}

HalfspaceValue HalfspaceValue::negation() const {
  HalfspaceValue v = *this;
  v.negated = !negated;
  return v;
}

bool HalfspaceValue::operator==(const HalfspaceValue& o) const {
  return zstar == o.zstar && bound.same_value(o.bound) && sense == o.sense && negated == o.negated;
}

std::string to_string(const HalfspaceValue& v) {
  if (v.is_empty()) return "empty";
  const std::size_t m = v.zstar.size();
  if (v.is_whole()) return m == 1 ? "(-inf,inf)" : "Z";
  if (m != 1) return "{" + to_string(v.to_polyhedron(), map_names(0, m)) + "}";
  const Rational c = v.negated ? Rational(-v.zstar[0]) : v.zstar[0];
  const Rational t = v.bound.value / c;
  const bool open = v.sense == ConstraintKind::Strict;
  if (sgn(c) > 0) return "(-inf," + to_display(t) + (open ? ")" : "]");
  return (open ? "(" : "[") + to_display(t) + ",inf)";
}

HalfspaceValue conjugate(const SetValuedMap& f, const DualElement& w) {
  return HalfspaceValue::from_support(w.zstar, sigma_f(f, w), true);
}

HalfspaceValue conjugate_by_definition(const SetValuedMap& f, const DualElement& w) {
  validate_dual(w, f.dim_x, f.cone);
  const std::size_t n = f.dim_x, m = f.dim_z;
  // Every graph piece and full-value piece must sit over a single point.
  auto point_of = [&](const EPolyhedron& p, std::size_t width) {
    RatVector x;
    for (std::size_t j = 0; j < n; ++j) {
      SupportValue hi = sup_linear(p, unit(width, j));
      SupportValue lo = sup_linear(p, negate(unit(width, j)));
      if (!hi.is_finite() || !lo.is_finite() || hi.value != -lo.value) {
        throw PreconditionViolated("conjugate_by_definition needs a map with finitely many domain points");
      }
      x.push_back(hi.value);
    }
    return x;
  };
  std::vector<std::pair<RatVector, SupportValue>> terms;
  for (const auto& p : f.graph.pieces) {
    if (!is_nonempty(p).nonempty) continue;
    RatVector x = point_of(p, n + m);
    // f(x_i) + closed S(-x_i) = {z : <z,z*> <= <x_i,x*> + sup_{f(x_i)} <.,z*>}
    SupportValue s = sup_linear(p, concat(zeros(n), w.zstar));
    terms.emplace_back(x, shifted(s, dot(x, w.xstar)));
  }
  for (const auto& d : f.full_value.pieces) {
    if (!is_nonempty(d).nonempty) continue;
    terms.emplace_back(point_of(d, n), SupportValue::plus_infinity());
  }
  for (const auto& [x, s] : terms) {
    if (!(dot(x, w.ystar) < w.alpha)) return HalfspaceValue::from_support(w.zstar, SupportValue::plus_infinity(), true);
  }
  SupportValue u = SupportValue::minus_infinity();
  for (const auto& [x, s] : terms) u = max_support(u, s);
  return HalfspaceValue::from_support(w.zstar, u, true);
}

EUnion c_prime_conjugate(const std::vector<DualSupport>& g, const RatVector& x, std::size_t dim_z) {
  EPolyhedron out = EPolyhedron::whole(dim_z);
  std::vector<const DualSupport*> dom;
  for (const auto& s : g) {
    if (s.value.dim != dim_z || s.w.zstar.size() != dim_z) throw DimensionMismatch("c_prime_conjugate: value dimension");
    if (s.w.xstar.size() != x.size() || s.w.ystar.size() != x.size()) {
      throw DimensionMismatch("c_prime_conjugate: dual dimension");
    }
    if (!s.value.is_empty()) dom.push_back(&s);
  }
  for (const auto* s : dom) {
    if (!(dot(x, s->w.ystar) < s->w.alpha)) return EUnion(dim_z, {});
  }
  for (const auto* s : dom) {
    if (is_whole_union(s->value)) return EUnion(dim_z, {});  // -Z is empty
    // closed S(x) - V = {z : <z,z*> <= -<x,x*> + sup_{-V} <.,z*>}
    const SupportValue sv = union_sup(s->value, negate(s->w.zstar));
    if (sv.kind == Kind::PlusInfinity) continue;
    const ConstraintKind kind = sv.attained ? ConstraintKind::Weak : ConstraintKind::Strict;
    out.constraints.push_back({s->w.zstar, sv.value - dot(x, s->w.xstar), kind});
  }
  if (!is_nonempty(out).nonempty) return EUnion(dim_z, {});
  return EUnion(normalize(out));
}

BiconjugateResult biconjugate(const SetValuedMap& f, const std::vector<DualElement>& duals, const RatVector& x,
                              const std::vector<RatVector>& outside_z, const HullOptions& opts) {
  const std::size_t n = f.dim_x, m = f.dim_z;
  if (x.size() != n) throw DimensionMismatch("biconjugate: point must live in Q^dim_x");
  const KEpigraph e = build_epi(f);
  const KEpigraph h = k_eco_hull(e, opts);
  const PolarCone polar = polar_cone(f.cone);
  BiconjugateResult r;
  r.exact = h.set.pieces.empty() ? EUnion(m, {}) : fiber(h, x);

  if (h.set.pieces.empty()) {
    // f is empty: any admissible dual has f^c = Z, which empties g^{c'}.
    if (!polar.generators.empty()) r.certifying.push_back({zeros(n), zeros(n), polar.generators.front(), 1});
  } else {
    const EPolyhedron& hp = h.set.pieces.front();
    if (r.exact.pieces.empty()) {
      if (auto w = certifying_dual(hp, n, m, polar, concat(x, zeros(m)))) r.certifying.push_back(*w);
    }
    for (const auto& z : outside_z) {
      if (z.size() != m) throw DimensionMismatch("biconjugate: outside point dimension");
      if (auto w = certifying_dual(hp, n, m, polar, concat(x, z))) r.certifying.push_back(*w);
    }
  }

  std::vector<DualSupport> g;
  std::vector<DualElement> all = duals;
  all.insert(all.end(), r.certifying.begin(), r.certifying.end());
  for (const auto& w : all) {
    validate_dual(w, n, f.cone);
    g.push_back({w, conjugate_value(e, w)});
  }
  r.outer = c_prime_conjugate(g, x, m);
  return r;
}

KEpigraph biconjugate_epigraph(const SetValuedMap& f, const HullOptions& opts) {
  const std::size_t n = f.dim_x, m = f.dim_z;
  const KEpigraph e = build_epi(f);
  const KEpigraph h = k_eco_hull(e, opts);
  KEpigraph out{n, m, EUnion(n + m, {})};
  if (h.set.pieces.empty()) return out;
  EPolyhedron rebuilt(n + m, {});
  for (const auto& c : h.set.pieces.front().constraints) {
    const RatVector ax = slice(c.normal, 0, n), az = slice(c.normal, n, m);
    if (is_zero(az)) {
      // An x-only row bounds dom f^{cc'}. A strict one is the admissibility
      // condition <x, y*> < alpha of the dual (0, a_x, z*, b); a weak one is
      // only reached by infinitely many such duals, so it is copied.
      rebuilt.constraints.push_back(c);
      continue;
    }
    const DualElement w{ax, zeros(n), az, 1};
    const SupportValue s = sigma_f(e, w);
    if (!s.is_finite()) throw std::logic_error("hull row with infinite support over the epigraph");
    rebuilt.constraints.push_back({c.normal, s.value, s.attained ? ConstraintKind::Weak : ConstraintKind::Strict});
  }
  if (is_nonempty(rebuilt).nonempty) out.set.pieces.push_back(remove_redundant(rebuilt));
  return out;
}

std::vector<DualElement> sample_duals(const SetValuedMap& f, std::size_t count, std::uint64_t seed) {
  const std::size_t n = f.dim_x, m = f.dim_z;
  const KEpigraph e = build_epi(f);
  const PolarCone polar = polar_cone(f.cone);
  Rng rng(seed);
  std::vector<RatVector> zs = polar.generators, xs;
  for (const auto& p : e.set.normalized().pieces) {
    for (const auto& c : p.constraints) {
      RatVector cz = slice(c.normal, n, m);
      if (polar.contains_nonzero(cz)) {
        zs.push_back(cz);
        xs.push_back(slice(c.normal, 0, n));
      }
    }
  }
  std::vector<DualElement> out;
  while (out.size() < count) {
    DualElement w;
    const std::size_t zi = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(zs.size()) - 1));
    w.zstar = zs[zi];
    if (rng.chance(1, 3)) {
      // a nonnegative combination of K* generators
      RatVector z = zeros(m);
      for (const auto& g : polar.generators) z = add(z, scale(Rational(rng.uniform(0, 3)), g));
      if (!is_zero(z)) w.zstar = z;
    }
    const bool from_rows = zi >= polar.generators.size() && rng.chance(1, 2);
    w.xstar = from_rows ? xs[zi - polar.generators.size()] : rng.vector(n, 2, 4);
    switch (rng.uniform(0, 3)) {
      case 0:
        w.ystar = zeros(n);
        w.alpha = 1;
        break;
      case 1:
        w.ystar = zeros(n);
        w.alpha = rng.chance(1, 2) ? Rational(0) : Rational(-1);
        break;
      default: {
        w.ystar = rng.vector(n, 2, 3);
        const SupportValue s = union_sup(e.set, concat(w.ystar, zeros(m)));
        const Rational shift = Rational(rng.uniform(-1, 1)) / 2;
        w.alpha = (s.is_finite() ? s.value : Rational(0)) + shift;
        break;
      }
    }
    out.push_back(std::move(w));
  }
  return out;
}

Report verify_biconjugation(const SetValuedMap& f, const BiconjugationOptions& opts) {
  const std::size_t n = f.dim_x, m = f.dim_z;
  Report r;
  r.suite = "biconjugation";
  r.instance_id = "seed-" + std::to_string(opts.seed);
  const Properness pr = is_proper(f);
  r.notes.push_back("properness: " + to_string(pr));
  const KEpigraph e = build_epi(f);
  const std::vector<DualElement> duals = sample_duals(f, opts.duals, opts.seed);
  Rng rng(opts.seed);

  std::vector<DualSupport> g;
  for (const auto& w : duals) g.push_back({w, conjugate_value(e, w)});

  // dom f^c = dom sigma_f on the sampled duals.
  bool dom_ok = true;
  for (const auto& w : duals) {
    const bool finite_sigma = sigma_f(e, w).kind != Kind::PlusInfinity;
    dom_ok = dom_ok && (finite_sigma == !conjugate(f, w).is_empty());
  }
  r.add("dom-conjugate-equals-dom-sigma", dom_ok);

  std::vector<RatVector> xs;
  for (std::size_t i = 0; i < opts.x_samples; ++i) xs.push_back(rng.grid_point(n, opts.grid_resolution, opts.box_bound));

  if (pr == Properness::EmptyEverywhere) {
    bool all_minus = true;
    for (const auto& w : duals) all_minus = all_minus && sigma_f(e, w).kind == Kind::MinusInfinity;
    r.add("sigma-minus-infinity", all_minus, "f is empty, so sigma_f = -inf");
    bool empty = true;
    for (const auto& x : xs) empty = empty && c_prime_conjugate(g, x, m).is_empty();
    r.add("biconjugate-empty", empty, "f empty implies f^{cc'} empty");
    return r;
  }
  if (pr == Properness::TakesWholeSpace) {
    bool none = true;
    for (const auto& w : duals) none = none && conjugate(f, w).is_empty();
    r.add("conjugate-empty", none, "f_K takes the value Z, so f^c is empty");
    bool whole = true;
    for (const auto& x : xs) whole = whole && is_whole_union(c_prime_conjugate(g, x, m));
    r.add("biconjugate-whole", whole, "f^{cc'} = Z everywhere");
    return r;
  }

  const KEpigraph h = k_eco_hull(e, opts.hull);
  const EUnion epi = e.set.normalized();
  bool econvex = true;
  std::optional<RatVector> witness_x;
  if (epi.pieces.size() > 1) {
    auto ec = is_e_convex(epi, opts.hull);
    econvex = ec.e_convex;
    if (ec.counterexample) witness_x = slice(*ec.counterexample, 0, n);
  }
  r.notes.push_back(econvex ? "f is K-e-convex" : "f is not K-e-convex");

  const KEpigraph rebuilt = biconjugate_epigraph(f, opts.hull);
  r.add("hull-identity", same_union(rebuilt.set, h.set), "epi f^{cc'} = epi of the K-e-convex hull");
  if (econvex) r.add("equals-epigraph", same_union(rebuilt.set, epi), "epi f^{cc'} = epi_K f");

  for (const auto& p : epi.pieces) xs.push_back(slice(*is_nonempty(p).witness, 0, n));
  if (witness_x) xs.push_back(*witness_x);
  const PolarCone polar = polar_cone(f.cone);
  std::vector<Report> parts(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    const RatVector& x = xs[i];
    Report& pr_i = parts[i];
    const std::string wx = to_string(x);
    Rng local(opts.seed * 7919 + i);
    std::vector<RatVector> outside;
    for (std::size_t t = 0; t < 50 * opts.z_samples && outside.size() < opts.z_samples; ++t) {
      RatVector z = local.grid_point(m, opts.grid_resolution, opts.box_bound);
      if (!h.set.contains_point(concat(x, z))) outside.push_back(std::move(z));
    }
    const BiconjugateResult b = biconjugate(f, duals, x, outside, opts.hull);
    const EUnion fk = fiber(e, x);
    pr_i.add("f_K-inside-biconjugate", union_contains(b.exact, fk), "", wx);
    const bool equal = same_union(b.exact, fk);
    if (econvex) {
      pr_i.add("biconjugate-equals-f_K", equal, "", wx);
    } else if (witness_x && x == *witness_x) {
      pr_i.add("strict-inclusion-at-witness", !equal, "f_K(x) is a proper subset of f^{cc'}(x)", wx);
    }
    pr_i.add("outer-contains-exact", union_contains(b.outer, b.exact), "", wx);
    bool excluded = true;
    for (const auto& z : outside) excluded = excluded && !b.outer.contains_point(z);
    if (b.exact.pieces.empty()) excluded = excluded && b.outer.pieces.empty();
    pr_i.add("certified-exclusion", excluded, std::to_string(outside.size()) + " outside values", wx);
    // Each exact fiber is one half-space system with normals in K*.
    bool structural = b.exact.pieces.size() <= 1;
    for (const auto& p : b.exact.pieces) {
      for (const auto& c : p.constraints) structural = structural && polar.contains(c.normal);
    }
    pr_i.add("fiber-e-convex-and-absorbing", structural, "", wx);
  });
  for (const auto& p : parts) r.merge(p);
  return r;
}

SetValuedMap indicator_map(const EUnion& c, const ConeK& k) {
  const std::size_t n = c.dim, m = k.dim;
  EUnion graph(n + m, {});
  for (const auto& p : c.pieces) {
    EPolyhedron piece = lift(p, n + m, 0);
    for (const auto& row : k.constraints) piece.constraints.push_back(weak(concat(zeros(n), row.normal), 0));
    graph.pieces.push_back(std::move(piece));
  }
  return SetValuedMap(n, m, std::move(graph), k);
}

Report indicator_suite(const EUnion& c, const ConeK& k, const BiconjugationOptions& opts) {
  const SetValuedMap delta = indicator_map(c, k);
  Report r = verify_biconjugation(delta, opts);
  r.suite = "indicator";

  const EPolyhedron hull = eco_hull(c, opts.hull);
  const SetValuedMap delta_hull = indicator_map(EUnion(hull), k);
  const KEpigraph keco = k_eco_hull(delta, opts.hull);
  const bool same = same_union(keco.set, build_epi(delta_hull).set);
  r.add("biconjugate-is-indicator-of-hull", same, "Delta^{cc'}_C = Delta_{eco C}");
  const bool rebuilt = same_union(biconjugate_epigraph(delta, opts.hull).set, build_epi(delta_hull).set);
  r.add("rebuilt-epigraph-is-indicator-of-hull", rebuilt);

  const bool set_ec = is_e_convex(c, opts.hull).e_convex;
  const bool map_ec = is_e_convex(build_epi(delta).set, opts.hull).e_convex;
  r.add("e-convex-iff", set_ec == map_ec, "Delta_C is K-e-convex iff C is e-convex");

  // Delta^c(w) = -{z : <z,z*> <= or < sup_C <x,x*>} when C lies in H^-.
  bool display = true;
  for (const auto& w : sample_duals(delta, opts.duals, opts.seed)) {
    const SupportValue gate = union_sup(c, w.ystar);
    const bool inside = gate.kind == Kind::MinusInfinity ||
                        (gate.is_finite() && (gate.value < w.alpha || (gate.value == w.alpha && !gate.attained)));
    const SupportValue s = inside ? union_sup(c, w.xstar) : SupportValue::plus_infinity();
    display = display && HalfspaceValue::from_support(w.zstar, s, true) == conjugate(delta, w);
  }
  r.add("conjugate-matches-indicator-display", display);
  return r;
}

}  // namespace evco
