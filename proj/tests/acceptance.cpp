// Acceptance suite: one PASS/FAIL line per criterion. Everything is exact
// rational arithmetic; the only tolerance is the wall-clock budget.
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>

#include "evco/cli.hpp"
#include "evco/conjugation.hpp"
#include "evco/errors.hpp"
#include "evco/fm.hpp"
#include "evco/io.hpp"
#include "evco/minorants.hpp"
#include "evco/parallel.hpp"
#include "evco/random.hpp"
#include "oracle.hpp"

using namespace evco;

namespace {

constexpr double kTimeLimitSeconds = 60.0;
constexpr int kGridPerAxis = 11;          // criterion 1 lift grid, [-5, 5]
constexpr int kApproachSteps = 3;         // eps = 1/2, 1/4, 1/8
constexpr std::size_t kOutsidePerMap = 10;

/// Thread-safe failure tally keeping the first witness.
class Tally {
 public:
  void check(bool ok, const std::function<std::string()>& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    std::lock_guard<std::mutex> lock(mu_);
    if (first_.empty()) first_ = what();
  }
  void fail(const std::string& what) {
    check(false, [&] { return what; });
  }
  std::size_t checks() const { return checks_; }
  std::size_t failures() const { return failures_; }
  std::string first() const { return first_; }

 private:
  std::atomic<std::size_t> checks_{0}, failures_{0};
  std::mutex mu_;
  std::string first_;
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome from_tally(const Tally& t, const std::string& extra = {}) {
  std::ostringstream s;
  s << t.checks() << " checks, " << t.failures() << " failures";
  if (!extra.empty()) s << "; " << extra;
  if (t.failures() > 0) s << "; first: " << t.first();
  return {t.failures() == 0 && t.checks() > 0, s.str()};
}

// Runs fn(i) in parallel; an exception counts as a failure of instance i.
void run_instances(std::size_t n, Tally& t, const std::function<void(std::size_t)>& fn) {
  parallel_for(n, [&](std::size_t i) {
    try {
      fn(i);
    } catch (const std::exception& e) {
      t.fail("instance " + std::to_string(i) + " threw: " + e.what());
    }
  });
}

std::string show(const EPolyhedron& p) { return to_string(p, default_names(p.dim)); }

std::vector<RatVector> grid(std::size_t dim, int lo, int hi) {
  std::vector<RatVector> out{{}};
  for (std::size_t d = 0; d < dim; ++d) {
    std::vector<RatVector> next;
    for (const auto& v : out) {
      for (int i = lo; i <= hi; ++i) {
        RatVector w = v;
        w.push_back(i);
        next.push_back(std::move(w));
      }
    }
    out = std::move(next);
  }
  return out;
}

// sup <., c> over p is below <x0, c>, or equal and not attained.
bool sup_below(const EPolyhedron& p, const RatVector& c, const Rational& level) {
  const auto s = sup_linear(p, c);
  if (s.kind == SupportValue::Kind::MinusInfinity) return true;
  if (!s.is_finite()) return false;
  return s.value < level || (s.value == level && !s.attained);
}

EPolyhedron open_iv(int a, int b) { return EPolyhedron(1, {strict({-1}, -a), strict({1}, b)}); }
EPolyhedron closed_iv(int a, int b) { return EPolyhedron(1, {weak({-1}, -a), weak({1}, b)}); }
EPolyhedron open_square() {
  return EPolyhedron(2, {strict({-1, 0}, 0), strict({0, -1}, 0), strict({1, 0}, 1), strict({0, 1}, 1)});
}
EPolyhedron corner() {
  return EPolyhedron(2, {weak({1, 0}, 1), weak({-1, 0}, -1), weak({0, 1}, 1), weak({0, -1}, -1)});
}

EUnion bounded_union(Rng& rng, std::size_t dim, std::size_t pieces, std::size_t constraints = 2) {
  PolyProfile pr;
  pr.dim = dim;
  pr.constraints = constraints;
  pr.bounded = true;
  pr.box = 2;
  EUnion u(dim, {});
  for (std::size_t i = 0; i < pieces; ++i) u.pieces.push_back(random_polyhedron(rng, pr));
  return u;
}

// ---------------------------------------------------------------- 1
Outcome core_soundness() {
  Tally t;
  run_instances(300, t, [&](std::size_t i) {
    Rng rng(i + 1);
    PolyProfile pr;
    pr.dim = static_cast<std::size_t>(rng.uniform(1, 3));
    pr.constraints = static_cast<std::size_t>(rng.uniform(1, 8));
    pr.bounded = false;
    const EPolyhedron p = random_polyhedron(rng, pr);
    const std::string id = "seed " + std::to_string(i + 1) + " " + show(p);

    if (pr.dim >= 2) {
      const auto k = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(pr.dim) - 1));
      const EPolyhedron proj = fm_eliminate(p, k);
      for (const auto& y : grid(pr.dim - 1, -(kGridPerAxis / 2), kGridPerAxis / 2)) {
        t.check(eval_membership(proj, y) == oracle::lift_exists(p, k, y),
                [&] { return id + ": FM disagrees with lift at " + to_string(y); });
      }
    }

    for (int d = 0; d < 3; ++d) {
      RatVector c = rng.vector(pr.dim, 3, 2);
      if (is_zero(c)) c[0] = 1;
      const auto s = sup_linear(p, c);
      const auto where = [&] { return id + ": sup along " + to_string(c) + " = " + to_string(s); };
      if (s.kind == SupportValue::Kind::PlusInfinity) {
        for (long m : {10L, 1000L, 1000000L}) t.check(is_nonempty(p.with(weak(negate(c), -Rational(m)))).nonempty, where);
      } else if (s.attained) {
        t.check(s.witness && eval_membership(p, *s.witness) && dot(*s.witness, c) == s.value, where);
        t.check(!is_nonempty(p.with(strict(negate(c), -s.value))).nonempty, where);
      } else {
        t.check(!is_nonempty(p.with(weak(negate(c), -s.value))).nonempty, where);
        for (int k = 1; k <= kApproachSteps; ++k) {
          const Rational eps = Rational(1) / (1 << k);
          t.check(is_nonempty(p.with(strict(negate(c), -(s.value - eps)))).nonempty, where);
        }
      }
    }

    const EPolyhedron cl = closure(p);
    t.check(!cl.has_strict() && contains(cl, p), [&] { return id + ": closure"; });
    const RatVector q = relative_interior(cl)->point;  // ri cl P = ri P
    for (int d = 0; d < 2; ++d) {
      const RatVector c = rng.vector(pr.dim, 3, 1);
      const auto s = sup_linear(cl, c);
      if (!s.is_finite() || !s.witness) continue;
      const RatVector& v = *s.witness;
      for (int k = 1; k <= kApproachSteps; ++k) {
        const Rational tk = Rational(1) / (1 << k);
        const RatVector m = add(scale(1 - tk, v), scale(tk, q));
        t.check(eval_membership(p, m), [&] { return id + ": segment point " + to_string(m) + " not in P"; });
      }
    }
  });
  return from_tally(t);
}

// ---------------------------------------------------------------- 2
Outcome separation() {
  Tally t;
  std::atomic<std::size_t> inside{0};
  run_instances(300, t, [&](std::size_t i) {
    Rng rng(1000 + i);
    PolyProfile pr;
    pr.dim = 1 + i % 3;
    pr.constraints = static_cast<std::size_t>(rng.uniform(2, 6));
    const EPolyhedron p = random_polyhedron(rng, pr);
    RatVector x0;
    for (int tries = 0; tries < 200; ++tries) {
      x0 = rng.grid_point(pr.dim, 2, 4);
      if (!eval_membership(p, x0)) break;
      ++inside;
      t.check(!separate_point(p, x0).has_value(), [&] { return show(p) + ": certificate for inside point"; });
    }
    if (eval_membership(p, x0)) return;
    const auto cert = separate_point(p, x0);
    t.check(cert.has_value(), [&] { return show(p) + ": no certificate at " + to_string(x0); });
    if (!cert) return;
    t.check(sup_below(p, cert->functional, dot(x0, cert->functional)),
            [&] { return show(p) + ": certificate " + to_string(cert->functional) + " unsound at " + to_string(x0); });
  });
  return from_tally(t, std::to_string(inside.load()) + " inside points also checked");
}

// ---------------------------------------------------------------- 3
Outcome hull_fixtures() {
  Tally t;
  const EPolyhedron iu = eco_hull(EUnion(1, {open_iv(0, 1), open_iv(1, 2)}));
  t.check(iu == EPolyhedron(1, {strict({-1}, 0), strict({1}, 2)}), [&] { return "interval union: " + show(iu); });
  const EPolyhedron sq = eco_hull(EUnion(2, {open_square(), corner()}));
  const EPolyhedron six(2, {weak({1, 0}, 1), weak({0, 1}, 1), strict({-1, 0}, 0), strict({0, -1}, 0),
                            strict({1, -1}, 1), strict({-1, 1}, 1)});
  t.check(contains(sq, six) && contains(six, sq), [&] { return "square with corner: " + show(sq); });

  run_instances(50, t, [&](std::size_t i) {
    Rng rng(2000 + i);
    const EUnion c = bounded_union(rng, 2, 2);
    const EPolyhedron h = eco_hull(c);
    const std::string id = "union " + std::to_string(i);
    t.check(same_set(eco_hull(EUnion(h)), h), [&] { return id + ": not idempotent"; });
    for (const auto& p : c.pieces) t.check(contains(h, p), [&] { return id + ": not extensive"; });
    t.check(contains(closed_convex_hull(c), h), [&] { return id + ": not inside cl conv"; });
    EUnion d = c;
    d.pieces.push_back(bounded_union(rng, 2, 1).pieces[0]);
    t.check(contains(eco_hull(d), h), [&] { return id + ": not monotone"; });
  });
  return from_tally(t);
}

// ---------------------------------------------------------------- 4
Outcome boxplus_algebra() {
  Tally t;
  run_instances(50, t, [&](std::size_t i) {
    Rng rng(3000 + i);
    const std::size_t dim = 1 + i % 2;
    const EUnion a = bounded_union(rng, dim, 1 + i % 2);
    const EUnion b = bounded_union(rng, dim, 2);
    const EUnion c = bounded_union(rng, dim, 1);
    const auto r = verify_eco_associativity(a, b, c);
    t.check(r.associative, [&] { return "triple " + std::to_string(i) + ": not associative"; });
    t.check(r.absorbs_inner_hull, [&] { return "triple " + std::to_string(i) + ": eco(A+eco B) != eco(A+B)"; });
  });
  return from_tally(t);
}

// ---------------------------------------------------------------- 5, 7
SetValuedMap econvex_map(std::size_t i) {
  Rng rng(4000 + i);
  const std::size_t n = 1 + i % 2, m = 1 + (i / 2) % 2;
  return random_econvex_map(rng, n, m, (i / 4) % 2 ? ConeKind::Simplicial : ConeKind::Orthant);
}

std::vector<RatVector> outside_points(const KEpigraph& e, Rng& rng, std::size_t count) {
  std::vector<RatVector> out;
  for (int tries = 0; out.size() < count && tries < 2000; ++tries) {
    const RatVector p = rng.grid_point(e.dim_x + e.dim_z, 2, 3);
    if (!e.set.contains_point(p)) out.push_back(p);
  }
  return out;
}

Outcome minorant_checks() {
  Tally t;
  run_instances(50, t, [&](std::size_t i) {
    const SetValuedMap f = econvex_map(i);
    const KEpigraph e = build_epi(f);
    const PolarCone polar = polar_cone(f.cone);
    Rng rng(4500 + i);
    const auto pts = outside_points(e, rng, kOutsidePerMap);
    t.check(pts.size() == kOutsidePerMap, [&] { return "map " + std::to_string(i) + ": too few outside points"; });
    for (const auto& p : pts) {
      const RatVector x0(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(f.dim_x));
      const RatVector z0(p.begin() + static_cast<std::ptrdiff_t>(f.dim_x), p.end());
      for (auto fam : {MinorantFamily::Mf, MinorantFamily::C, MinorantFamily::E}) {
        const auto a = separating_minorant(f, p, fam);
        const auto where = [&] { return "map " + std::to_string(i) + " " + to_string(fam) + " at " + to_string(p); };
        t.check(polar.contains_nonzero(a.zstar), where);
        t.check(!eval_eaffine(a, x0).contains_point(z0), where);
        t.check(is_minorant(a, f), where);
      }
    }
  });

  const ConeK k = ConeK::nonnegative_orthant(1);
  const SetValuedMap empty(1, 1, EUnion(2, {}), k);
  const SetValuedMap whole(1, 1, EUnion(2, {}), k, EUnion(EPolyhedron(1, {weak({1}, 0), weak({-1}, 0)})));
  for (auto fam : {MinorantFamily::Mf, MinorantFamily::C, MinorantFamily::E}) {
    t.check(verify_supremum_characterization(empty, fam).ok(), [] { return "empty map report"; });
    t.check(verify_supremum_characterization(whole, fam).ok(), [] { return "whole-space map report"; });
  }
  Rng rng(4999);
  for (int s = 0; s < 20; ++s) {
    EAffineMap a{rng.vector(1, 3, 2), {-1 - rng.uniform(0, 3)}, rng.vector(1, 3, 2), WholeSpace{}};
    if (s % 2) a.domain = OpenHalfspace{rng.vector(1, 2, 1), rng.rational(3, 2)};
    t.check(is_minorant(a, empty), [] { return "empty map must be minorized by every e-affine map"; });
    t.check(!is_minorant(a, whole), [] { return "whole-space map must have no minorant"; });
  }
  return from_tally(t);
}

// ---------------------------------------------------------------- 6
SetValuedMap finite_dom_map(std::size_t i) {
  Rng rng(6000 + i);
  const std::size_t n = 1 + i % 2, m = 1 + (i / 2) % 2;
  const ConeK k = make_cone((i / 4) % 2 ? ConeKind::Simplicial : ConeKind::Orthant, m);
  const std::size_t count = 1 + i % 3;
  EUnion graph(n + m, {});
  std::vector<RatVector> used;
  while (graph.pieces.size() < count) {
    const RatVector x = rng.grid_point(n, 1, 3);
    if (std::find(used.begin(), used.end(), x) != used.end()) continue;
    used.push_back(x);
    PolyProfile pr;
    pr.dim = m;
    pr.constraints = 3;
    pr.bounded = true;
    pr.box = 3;
    EPolyhedron value = random_polyhedron(rng, pr);
    EPolyhedron piece = lift(value, n + m, n);  // value in the z-block
    for (std::size_t j = 0; j < n; ++j) {
      RatVector e(n + m, 0);
      e[j] = 1;
      piece.constraints.push_back(weak(e, x[j]));
      piece.constraints.push_back(weak(negate(e), -x[j]));
    }
    graph.pieces.push_back(piece);
  }
  return SetValuedMap(n, m, graph, k);
}

Outcome conjugate_identity() {
  Tally t;
  std::atomic<std::size_t> finite{0};
  run_instances(30, t, [&](std::size_t i) {
    const SetValuedMap f = finite_dom_map(i);
    const PolarCone polar = polar_cone(f.cone);
    Rng rng(6500 + i);
    for (int s = 0; s < 100; ++s) {
      RatVector zs(f.dim_z, 0);
      while (is_zero(zs)) {
        for (const auto& g : polar.generators) zs = add(zs, scale(Rational(rng.uniform(0, 3)), g));
      }
      const DualElement w{rng.vector(f.dim_x, 3, 2), rng.vector(f.dim_x, 2, 1), zs, rng.rational(4, 2)};
      const auto a = conjugate(f, w);
      const auto b = conjugate_by_definition(f, w);
      const auto sigma = sigma_f(f, w);
      finite += sigma.is_finite();
      const auto where = [&] { return "map " + std::to_string(i) + " dual " + std::to_string(s) + ": " + to_string(a) + " vs " + to_string(b); };
      t.check(a == b, where);
      t.check(a.is_empty() == !sigma.is_finite(), where);
    }
  });
  return from_tally(t, std::to_string(finite.load()) + " duals in dom sigma");
}

// ---------------------------------------------------------------- 7
SetValuedMap non_econvex_map(std::size_t i) {
  static const std::pair<std::size_t, std::size_t> shapes[] = {{1, 1}, {1, 2}, {2, 1}};
  const auto [n, m] = shapes[i % 3];
  Rng rng(7000 + i);
  const ConeK k = make_cone(i % 2 ? ConeKind::Simplicial : ConeKind::Orthant, m);
  for (;;) {
    PolyProfile pr;
    pr.dim = n + m;
    pr.constraints = n + m + 1;
    pr.bounded = true;
    pr.box = 2;
    const SetValuedMap f(n, m, EUnion(n + m, {random_polyhedron(rng, pr), random_polyhedron(rng, pr)}), k);
    if (is_proper(f) == Properness::Proper && !is_e_convex(build_epi(f).set).e_convex) return f;
  }
}

void check_outer(Tally& t, const SetValuedMap& f, const KEpigraph& hull, const std::vector<DualElement>& duals,
                 const RatVector& x, Rng& rng, const std::string& id) {
  const EUnion exact = fiber(hull, x);
  std::vector<RatVector> outside;
  for (int tries = 0; outside.size() < 3 && tries < 200; ++tries) {
    const RatVector z = rng.grid_point(f.dim_z, 2, 3);
    if (!exact.contains_point(z)) outside.push_back(z);
  }
  const auto r = biconjugate(f, duals, x, outside);
  t.check(same_union(r.exact, exact), [&] { return id + ": exact value differs from hull fiber at " + to_string(x); });
  t.check(union_contains(r.outer, r.exact), [&] { return id + ": outer misses exact at " + to_string(x); });
  for (const auto& z : outside) {
    t.check(!r.outer.contains_point(z), [&] { return id + ": outer keeps " + to_string(z) + " at " + to_string(x); });
  }
}

Outcome biconjugation() {
  Tally t;
  run_instances(50, t, [&](std::size_t i) {
    const SetValuedMap f = econvex_map(i);
    const KEpigraph e = build_epi(f);
    const std::string id = "e-convex map " + std::to_string(i);
    const KEpigraph rebuilt = biconjugate_epigraph(f);
    t.check(same_union(rebuilt.set, e.set), [&] { return id + ": rebuilt epigraph != epi_K f"; });
    const KEpigraph hull = k_eco_hull(f);
    t.check(same_union(hull.set, e.set), [&] { return id + ": hull != epi_K f"; });
    const auto duals = sample_duals(f, 16, i + 1);
    Rng rng(7500 + i);
    for (int s = 0; s < 3; ++s) check_outer(t, f, hull, duals, rng.grid_point(f.dim_x, 2, 3), rng, id);
  });
  run_instances(20, t, [&](std::size_t i) {
    const SetValuedMap f = non_econvex_map(i);
    const KEpigraph e = build_epi(f);
    const std::string id = "non-e-convex map " + std::to_string(i);
    const auto gap = is_e_convex(e.set);
    if (!gap.counterexample) return t.fail(id + ": no witness");
    const RatVector x(gap.counterexample->begin(), gap.counterexample->begin() + static_cast<std::ptrdiff_t>(f.dim_x));
    const RatVector z(gap.counterexample->begin() + static_cast<std::ptrdiff_t>(f.dim_x), gap.counterexample->end());
    const KEpigraph hull = k_eco_hull(f);
    const EUnion fk = fiber(e, x), fcc = fiber(hull, x);
    t.check(union_contains(fcc, fk) && fcc.contains_point(z) && !fk.contains_point(z),
            [&] { return id + ": no strict inclusion at " + to_string(x); });
    t.check(same_union(biconjugate_epigraph(f).set, hull.set), [&] { return id + ": rebuilt epigraph != eco hull"; });
    const auto duals = sample_duals(f, 16, i + 1);
    Rng rng(7800 + i);
    check_outer(t, f, hull, duals, x, rng, id);
  });
  return from_tally(t);
}

// ---------------------------------------------------------------- 8
Outcome indicator() {
  Tally t;
  const std::vector<std::pair<std::string, EUnion>> sets{
      {"(0,1)", EUnion(open_iv(0, 1))},
      {"(0,1)u(1,2)", EUnion(1, {open_iv(0, 1), open_iv(1, 2)})},
      {"[0,1]", EUnion(closed_iv(0, 1))},
      {"open square u corner", EUnion(2, {open_square(), corner()})},
  };
  run_instances(sets.size(), t, [&](std::size_t i) {
    const auto& [name, c] = sets[i];
    const ConeK k = ConeK::nonnegative_orthant(1);
    const Report r = indicator_suite(c, k);
    t.check(r.ok(), [&] { return name + ": " + r.summary(); });
    const KEpigraph target = build_epi(indicator_map(EUnion(eco_hull(c)), k));
    t.check(same_union(biconjugate_epigraph(indicator_map(c, k)).set, target.set),
            [&] { return name + ": biconjugate is not the indicator of eco C"; });
  });
  return from_tally(t);
}

// ---------------------------------------------------------------- 9
using Kind = ScalarPiece::Kind;

ScalarPiece fin(EPolyhedron d, RatVector slope, Rational offset) { return {std::move(d), Kind::Finite, std::move(slope), offset}; }

std::vector<ScalarFunction> scalar_fixtures() {
  const EPolyhedron zero(1, {weak({1}, 0), weak({-1}, 0)});
  const EPolyhedron pos(1, {strict({-1}, 0)}), nonneg(1, {weak({-1}, 0)}), neg(1, {strict({1}, 0)}),
      nonpos(1, {weak({1}, 0)});
  const EPolyhedron square(2, {weak({-1, 0}, 0), weak({0, -1}, 0), weak({1, 0}, 1), weak({0, 1}, 1)});
  return {
      {1, {fin(nonneg, {1}, 0)}},
      {1, {}},
      {1, {fin(nonneg, {1}, 0), fin(neg, {-1}, 0)}},
      {1, {fin(zero, {0}, 1), fin(pos, {1}, 0)}},  // eco hull differs from cl conv
      {1, {{zero, Kind::MinusInfinity, {}, 0}}},
      {2, {fin(square, {1, 2}, 0)}},
      {1, {fin(zero, {0}, 0), fin(open_iv(0, 1), {0}, 2)}},
      {1, {fin(nonpos, {0}, 0), fin(open_iv(0, 1), {2}, 0), fin(EPolyhedron(1, {weak({-1}, -1)}), {1}, 1)}},
      {1, {fin(neg, {-1}, 0), {nonneg, Kind::PlusInfinity, {}, 0}}},
      {2, {fin(EPolyhedron(2, {strict({-1, 0}, 0), weak({0, -1}, 0)}), {1, 0}, 0),
           fin(EPolyhedron(2, {weak({1, 0}, 0), strict({0, -1}, 0)}), {0, -1}, 0)}},
  };
}

// t >= g(x), straight from the pieces.
bool in_epi(const ScalarFunction& g, const RatVector& xt) {
  const RatVector x(xt.begin(), xt.end() - 1);
  for (const auto& p : g.pieces) {
    if (!eval_membership(p.domain, x)) continue;
    if (p.kind == Kind::MinusInfinity) return true;
    if (p.kind == Kind::PlusInfinity) return false;
    return xt.back() >= dot(p.slope, x) + p.offset;
  }
  return false;
}

Outcome scalar_embedding() {
  Tally t;
  const auto fixtures = scalar_fixtures();
  std::atomic<int> gaps{0};
  run_instances(fixtures.size(), t, [&](std::size_t i) {
    const ScalarFunction& g = fixtures[i];
    const std::string id = "scalar fixture " + std::to_string(i);
    const SetValuedMap fs = scalar_embed(g);
    const KEpigraph e = build_epi(fs);
    t.check(same_union(e.set, scalar_epigraph(g)), [&] { return id + ": epi g != epi_K f^s"; });
    for (const auto& p : grid(g.dim + 1, -3, 3)) {
      RatVector q = p;
      for (auto& v : q) v /= 2;
      t.check(e.set.contains_point(q) == in_epi(g, q), [&] { return id + ": membership differs at " + to_string(q); });
    }
    if (i == 3) {
      const auto keco = k_eco_hull(fs), kcc = k_clconv_hull(fs);
      const bool differs = union_contains(kcc.set, keco.set) && !union_contains(keco.set, kcc.set);
      gaps += differs;
      t.check(differs, [&] { return id + ": K-e-convex hull equals closed convex hull"; });
    }
  });
  return from_tally(t, std::to_string(gaps.load()) + " fixture with eco != cl conv");
}

// ---------------------------------------------------------------- 10
int cli(std::vector<std::string> args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = run_cli(args, o, e);
  if (out) *out = o.str();
  return code;
}

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = "/tmp/evco_acceptance_" + name;
  std::FILE* f = std::fopen(path.c_str(), "w");
  std::fputs(body.c_str(), f);
  std::fclose(f);
  return path;
}

Outcome cli_contract() {
  Tally t;
  run_instances(100, t, [&](std::size_t i) {
    static const char* kinds[] = {"set", "map", "dual-suite"};
    const std::vector<std::string> args{"gen", "--seed", std::to_string(i + 1), "--kind", kinds[i % 3],
                                        "--dim", std::to_string(1 + i % 2), "--pieces", "2"};
    std::string a, b;
    t.check(cli(args, &a) == kExitOk && cli(args, &b) == kExitOk && a == b,
            [&] { return "seed " + std::to_string(i + 1) + ": not deterministic"; });
    const Instance inst = parse_instance(a);
    t.check(print_instance(inst) == a && parse_instance(print_instance(inst)) == inst,
            [&] { return "seed " + std::to_string(i + 1) + ": round-trip changed the instance"; });
    const EUnion& u = inst.set ? *inst.set : inst.map->graph;
    for (const auto& p : u.pieces) t.check(is_nonempty(p).nonempty, [&] { return "seed " + std::to_string(i + 1) + ": empty piece"; });
  });

  const std::string set1 = R"({"version":"1","kind":"set","set":{"dim":1,"pieces":[[{"normal":["1/1"],"bound":"0/1","kind":"strict"}]]}})";
  const std::string good = temp_file("good.json", set1);
  const auto expect = [&](const std::string& what, int got, int want) {
    t.check(got == want, [&] { return what + ": exit " + std::to_string(got) + ", expected " + std::to_string(want); });
  };
  expect("truncated JSON", cli({"membership", "--file", temp_file("trunc.json", "{\"version\":"), "--point", "0"}), kExitParseError);
  expect("zero denominator",
         cli({"membership", "--file", temp_file("den.json", R"({"version":"1","kind":"set","set":{"dim":1,"pieces":[[{"normal":["1/0"],"bound":"0/1","kind":"weak"}]]}})"), "--point", "0"}),
         kExitParseError);
  expect("unknown kind",
         cli({"membership", "--file", temp_file("kind.json", R"({"version":"1","kind":"blob"})"), "--point", "0"}), kExitParseError);
  expect("bad constraint kind",
         cli({"membership", "--file", temp_file("ck.json", R"({"version":"1","kind":"set","set":{"dim":1,"pieces":[[{"normal":["1/1"],"bound":"0/1","kind":"lt"}]]}})"), "--point", "0"}),
         kExitParseError);
  expect("normal of wrong length",
         cli({"membership", "--file", temp_file("len.json", R"({"version":"1","kind":"set","set":{"dim":2,"pieces":[[{"normal":["1/1"],"bound":"0/1","kind":"weak"}]]}})"), "--point", "0,0"}),
         kExitDimensionMismatch);
  expect("point of wrong length", cli({"membership", "--file", good, "--point", "0,0"}), kExitDimensionMismatch);
  expect("malformed point", cli({"membership", "--file", good, "--point", "1/x"}), kExitParseError);
  expect("missing file", cli({"membership", "--file", "/nonexistent/evco.json", "--point", "0"}), kExitParseError);
  expect("unknown subcommand", cli({"frobnicate"}), kExitParseError);
  const std::string dim4 = R"({"version":"1","kind":"set","set":{"dim":4,"pieces":[)"
                           R"([{"normal":["1/1","0/1","0/1","0/1"],"bound":"0/1","kind":"weak"}],)"
                           R"([{"normal":["-1/1","0/1","0/1","0/1"],"bound":"-1/1","kind":"weak"}]]}})";
  expect("multi-piece hull in dim 4", cli({"hull", "--file", temp_file("dim4.json", dim4), "--which", "eco"}), kExitUnsupported);
  expect("valid query", cli({"membership", "--file", good, "--point", "-1"}), kExitOk);
  return from_tally(t);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"core-soundness", core_soundness},     {"separation", separation},
      {"eco-hull", hull_fixtures},            {"boxplus-algebra", boxplus_algebra},
      {"minorants", minorant_checks},       {"conjugate-identity", conjugate_identity},
      {"biconjugation", biconjugation},       {"indicator", indicator},
      {"scalar-embedding", scalar_embedding}, {"cli", cli_contract},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > kTimeLimitSeconds) {
      o.pass = false;
      o.detail += "; over the time limit";
    }
    failed += !o.pass;
    char head[96];
    std::snprintf(head, sizeof head, "[%s] %2zu %-20s %6.1fs  ", o.pass ? "PASS" : "FAIL", i + 1,
                  criteria[i].first.c_str(), secs);
    std::cout << head << o.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
