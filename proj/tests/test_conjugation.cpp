#include <gtest/gtest.h>

#include "evco/conjugation.hpp"
#include "evco/errors.hpp"
#include "evco/random.hpp"

using namespace evco;

namespace {

ConeK qplus() { return ConeK::nonnegative_orthant(1); }

EPolyhedron pt2(const Rational& x, const Rational& z) {
  return EPolyhedron(2, {weak({1, 0}, x), weak({-1, 0}, -x), weak({0, 1}, z), weak({0, -1}, -z)});
}
EPolyhedron iv(int a, int b, bool open) {
  const auto k = open ? ConstraintKind::Strict : ConstraintKind::Weak;
  return EPolyhedron(1, {LinConstraint{{-1}, -a, k}, LinConstraint{{1}, b, k}});
}

SetValuedMap point_map() { return SetValuedMap(1, 1, EUnion(pt2(0, 0)), qplus()); }
SetValuedMap empty_map() { return SetValuedMap(1, 1, EUnion(2, {}), qplus()); }
SetValuedMap diagonal() {
  return SetValuedMap(1, 1, EUnion(EPolyhedron(2, {strict({-1, 0}, 0), weak({1, -1}, 0), weak({-1, 1}, 0)})), qplus());
}
SetValuedMap two_point() { return SetValuedMap(1, 1, EUnion(2, {pt2(0, 0), pt2(2, 0)}), qplus()); }

EUnion ray(const Rational& lo) { return EUnion(EPolyhedron(1, {weak({-1}, -lo)})); }

// Brute force for finitely supported maps: the largest <x_i,x*> + sup over
// z_i + K of <z,z*>, with every point a singleton value and K = Q_+.
SupportValue sigma_points(const std::vector<std::pair<Rational, Rational>>& pts, const DualElement& w) {
  SupportValue best = SupportValue::minus_infinity();
  for (const auto& [x, z] : pts) {
    if (!(x * w.ystar[0] < w.alpha)) return SupportValue::plus_infinity();
  }
  for (const auto& [x, z] : pts) {
    const Rational v = x * w.xstar[0] + z * w.zstar[0];
    if (!best.is_finite() || v > best.value) best = SupportValue::finite(v, true);
  }
  return best;
}

}  // namespace

TEST(Sigma, Examples) {
  const DualElement w{{0}, {0}, {-1}, 1};
  EXPECT_TRUE(sigma_f(point_map(), w).same_value(SupportValue::finite(0, true)));
  EXPECT_EQ(sigma_f(point_map(), DualElement{{0}, {0}, {-1}, 0}).kind, SupportValue::Kind::PlusInfinity);
  EXPECT_TRUE(sigma_f(diagonal(), w).same_value(SupportValue::finite(0, false)));
  EXPECT_EQ(sigma_f(empty_map(), w).kind, SupportValue::Kind::MinusInfinity);
  // dom (0, inf) lies in {-x < 0}: the sup of -x is 0 and not attained.
  EXPECT_TRUE(sigma_f(diagonal(), DualElement{{0}, {-1}, {-1}, 0}).is_finite());
}

TEST(Eta, Examples) {
  const auto pe = build_epi(point_map());
  EXPECT_EQ(eta(pe, {0}, {-1}), 1);
  EXPECT_EQ(eta(build_epi(diagonal()), {0}, {-1}), 0);
  EXPECT_EQ(eta(build_epi(SetValuedMap(1, 1, EUnion(EPolyhedron(2, {weak({-1, 0}, 0), weak({1, 0}, 1), weak({0, 1}, 2),
                                                                      weak({0, -1}, 0)})),
                                       qplus())),
                {1}, {-1}),
            1);
  EXPECT_EQ(eta(pe, {0}, {1}), 0);
  EXPECT_THROW(eta(build_epi(empty_map()), {0}, {-1}), PreconditionViolated);
}

TEST(HalfspaceValue, Conventions) {
  const auto whole = HalfspaceValue::from_support({-1}, SupportValue::plus_infinity(), false);
  EXPECT_TRUE(whole.is_whole());
  EXPECT_TRUE(whole.negation().is_empty());
  const auto none = HalfspaceValue::from_support({-1}, SupportValue::minus_infinity(), false);
  EXPECT_TRUE(none.is_empty());
  EXPECT_TRUE(none.negation().is_whole());
  EXPECT_EQ(whole.sense, ConstraintKind::Weak);
  const auto h = HalfspaceValue::from_support({-1}, SupportValue::finite(0, false), false);
  EXPECT_EQ(h.sense, ConstraintKind::Strict);
  EXPECT_EQ(to_string(h), "(0,inf)");
  EXPECT_EQ(to_string(h.negation()), "(-inf,0)");
  EXPECT_EQ(h.negation().negation(), h);
}

TEST(Conjugate, Examples) {
  const auto fc = conjugate(point_map(), DualElement{{0}, {0}, {-1}, 1});
  EXPECT_EQ(to_string(fc), "(-inf,0]");
  EXPECT_TRUE(same_set(fc.negation().to_polyhedron(), EPolyhedron(1, {weak({-1}, 0)})));
  EXPECT_TRUE(conjugate(point_map(), DualElement{{0}, {0}, {-1}, 0}).is_empty());
  const auto e = conjugate(empty_map(), DualElement{{0}, {0}, {-1}, 1});
  EXPECT_TRUE(e.is_whole());
  EXPECT_TRUE(e.negation().is_empty());
  EXPECT_EQ(to_string(conjugate(diagonal(), DualElement{{0}, {0}, {-1}, 1})), "(-inf,0)");
  EXPECT_THROW(conjugate(point_map(), DualElement{{0}, {0}, {1}, 1}), PreconditionViolated);
}

TEST(Conjugate, MatchesDefinitionOnFiniteDomains) {
  EXPECT_EQ(conjugate(point_map(), DualElement{{0}, {0}, {-1}, 1}),
            conjugate_by_definition(point_map(), DualElement{{0}, {0}, {-1}, 1}));
  const SetValuedMap two(1, 1, EUnion(2, {pt2(0, 0), pt2(1, 5)}), qplus());
  const DualElement w{{1}, {0}, {-1}, 10};
  const auto a = conjugate(two, w), b = conjugate_by_definition(two, w);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a.bound.same_value(SupportValue::finite(0, true)));
  const DualElement bad{{1}, {1}, {-1}, 1};
  EXPECT_TRUE(conjugate(two, bad).is_empty());
  EXPECT_TRUE(conjugate_by_definition(two, bad).is_empty());
  EXPECT_THROW(conjugate_by_definition(diagonal(), w), PreconditionViolated);

  Rng rng(11);
  const std::vector<std::pair<Rational, Rational>> pts{{0, 0}, {1, 5}, {-2, 1}};
  const SetValuedMap three(1, 1, EUnion(2, {pt2(0, 0), pt2(1, 5), pt2(-2, 1)}), qplus());
  for (int t = 0; t < 100; ++t) {
    DualElement d{rng.vector(1, 3, 3), rng.vector(1, 3, 3), {-abs(rng.rational(3, 3))}, rng.rational(4, 3)};
    if (d.zstar[0] == 0) d.zstar[0] = -1;
    const auto s = sigma_f(three, d);
    EXPECT_TRUE(s.same_value(sigma_points(pts, d)));
    const auto c = conjugate(three, d);
    EXPECT_EQ(c, conjugate_by_definition(three, d));
    EXPECT_EQ(!c.is_empty(), s.is_finite());
  }
}

TEST(CPrime, Examples) {
  const DualElement w{{0}, {0}, {-1}, 1};
  const EUnion minus_ray(EPolyhedron(1, {weak({1}, 0)}));
  auto g = c_prime_conjugate({{w, minus_ray}}, {0}, 1);
  EXPECT_TRUE(same_union(g, ray(0)));
  EXPECT_TRUE(c_prime_conjugate({{DualElement{{0}, {1}, {-1}, 0}, minus_ray}}, {0}, 1).is_empty());
  g = c_prime_conjugate({}, {0}, 1);
  EXPECT_TRUE(same_union(g, EUnion(EPolyhedron(1, {}))));
}

TEST(Biconjugate, PointMap) {
  const auto f = point_map();
  const auto duals = sample_duals(f, 24, 1);
  auto r = biconjugate(f, duals, {0});
  EXPECT_TRUE(same_union(r.exact, ray(0)));
  EXPECT_TRUE(union_contains(r.outer, r.exact));
  r = biconjugate(f, duals, {1});
  EXPECT_TRUE(r.exact.is_empty());
  EXPECT_TRUE(r.outer.is_empty());
  EXPECT_FALSE(r.certifying.empty());
}

TEST(Biconjugate, Diagonal) {
  const auto f = diagonal();
  const auto e = build_epi(f);
  const auto duals = sample_duals(f, 24, 1);
  for (int x : {-1, 0, 1, 2}) {
    const auto r = biconjugate(f, duals, {x}, {{x - 1}});
    EXPECT_TRUE(same_union(r.exact, fiber(e, {x}))) << x;
    EXPECT_TRUE(union_contains(r.outer, r.exact));
    EXPECT_FALSE(r.outer.contains_point({x - 1}));
  }
  EXPECT_TRUE(same_union(biconjugate(f, duals, {1}).exact, ray(1)));
}

TEST(Biconjugate, TwoPoint) {
  const auto f = two_point();
  const auto duals = sample_duals(f, 24, 1);
  const auto r = biconjugate(f, duals, {1}, {{-1}});
  EXPECT_TRUE(same_union(r.exact, ray(0)));
  EXPECT_TRUE(fiber(build_epi(f), {1}).is_empty());
  EXPECT_TRUE(union_contains(r.outer, r.exact));
  EXPECT_FALSE(r.outer.contains_point({-1}));
  EXPECT_TRUE(same_union(biconjugate_epigraph(f).set, k_eco_hull(f).set));
}

TEST(Biconjugate, OuterShrinksWithMoreDuals) {
  const auto f = two_point();
  const auto duals = sample_duals(f, 30, 4);
  EUnion prev(1, {EPolyhedron(1, {})});
  for (std::size_t n = 0; n <= duals.size(); n += 6) {
    const std::vector<DualElement> some(duals.begin(), duals.begin() + static_cast<std::ptrdiff_t>(n));
    const auto r = biconjugate(f, some, {1});
    EXPECT_TRUE(union_contains(prev, r.outer));
    prev = r.outer;
  }
}

TEST(VerifyBiconjugation, Examples) {
  for (const auto& f : {point_map(), diagonal(), two_point(), empty_map()}) {
    const Report r = verify_biconjugation(f);
    EXPECT_TRUE(r.ok()) << r.summary();
  }
  const EUnion marker(EPolyhedron(1, {weak({1}, 0), weak({-1}, 0)}));
  EXPECT_TRUE(verify_biconjugation(SetValuedMap(1, 1, EUnion(2, {}), qplus(), marker)).ok());
}

TEST(IndicatorSuite, Examples) {
  EXPECT_TRUE(indicator_suite(EUnion(iv(0, 1, true)), qplus()).ok());
  EXPECT_TRUE(indicator_suite(EUnion(1, {iv(0, 1, true), iv(1, 2, true)}), qplus()).ok());
  EXPECT_TRUE(indicator_suite(EUnion(iv(0, 1, false)), qplus()).ok());
  const auto delta = indicator_map(EUnion(1, {iv(0, 1, true), iv(1, 2, true)}), qplus());
  const auto h = biconjugate_epigraph(delta);
  EXPECT_TRUE(same_union(h.set, build_epi(indicator_map(EUnion(iv(0, 2, true)), qplus())).set));
}

TEST(SampleDuals, DeterministicAndValid) {
  const auto f = diagonal();
  const auto a = sample_duals(f, 20, 7), b = sample_duals(f, 20, 7);
  EXPECT_EQ(a, b);
  std::size_t finite = 0;
  for (const auto& w : a) {
    EXPECT_NO_THROW(validate_dual(w, 1, f.cone));
    finite += sigma_f(f, w).is_finite();
  }
  EXPECT_GT(finite, 0u);
}
