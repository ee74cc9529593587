#include "evco/polyhedron.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>

#include "evco/errors.hpp"
#include "evco/lp.hpp"

namespace evco {

namespace {

void require_dim(const EPolyhedron& p, std::size_t dim, const char* op) {
  if (p.dim != dim) {
    throw DimensionMismatch(std::string(op) + ": polyhedron in Q^" + std::to_string(p.dim) +
                            ", argument in Q^" + std::to_string(dim));
  }
}

bool constant_row_holds(const LinConstraint& c) {
  return c.strict() ? sgn(c.bound) > 0 : sgn(c.bound) >= 0;
}

}  // namespace

LinConstraint primitive(const LinConstraint& c) {
  mpz_class lcm = 1;
  for (const auto& a : c.normal) {
    if (sgn(a) != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a.get_den().get_mpz_t());
  }
  mpz_class g = 0;
  for (const auto& a : c.normal) {
    if (sgn(a) == 0) continue;
    mpz_class num = a.get_num() * (lcm / a.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  if (g == 0) return c;
  Rational factor(lcm, g);
  factor.canonicalize();
  LinConstraint out = c;
  for (auto& a : out.normal) a *= factor;
  out.bound *= factor;
  return out;
}

bool LinConstraint::satisfied_by(const RatVector& x) const {
  Rational lhs = dot(normal, x);
  return strict() ? lhs < bound : lhs <= bound;
}

LinConstraint LinConstraint::negated() const {
  return {evco::negate(normal), -bound, strict() ? ConstraintKind::Weak : ConstraintKind::Strict};
}

LinConstraint weak(RatVector normal, Rational bound) {
  return {std::move(normal), std::move(bound), ConstraintKind::Weak};
}

LinConstraint strict(RatVector normal, Rational bound) {
  return {std::move(normal), std::move(bound), ConstraintKind::Strict};
}

EPolyhedron::EPolyhedron(std::size_t d, std::vector<LinConstraint> cs) : dim(d), constraints(std::move(cs)) {
  for (const auto& c : constraints) {
    if (c.normal.size() != dim) {
      throw DimensionMismatch("constraint normal of size " + std::to_string(c.normal.size()) +
                              " in Q^" + std::to_string(dim));
    }
  }
}

EPolyhedron EPolyhedron::whole(std::size_t dim) { return EPolyhedron(dim, {}); }

EPolyhedron EPolyhedron::empty(std::size_t dim) { return EPolyhedron(dim, {weak(zeros(dim), -1)}); }

bool EPolyhedron::is_canonical_empty() const {
  return constraints.size() == 1 && !constraints[0].strict() && is_zero(constraints[0].normal) &&
         constraints[0].bound == -1;
}

bool EPolyhedron::has_strict() const {
  return std::any_of(constraints.begin(), constraints.end(), [](const auto& c) { return c.strict(); });
}

EPolyhedron EPolyhedron::with(const std::vector<LinConstraint>& more) const {
  EPolyhedron out = *this;
  for (const auto& c : more) {
    if (c.normal.size() != dim) throw DimensionMismatch("EPolyhedron::with");
    out.constraints.push_back(c);
  }
  return out;
}

EPolyhedron EPolyhedron::with(const LinConstraint& c) const { return with(std::vector<LinConstraint>{c}); }

bool SupportValue::same_value(const SupportValue& other) const {
  if (kind != other.kind) return false;
  if (kind != Kind::Finite) return true;
  return value == other.value && attained == other.attained;
}

std::string to_string(const SupportValue& s) {
  switch (s.kind) {
    case SupportValue::Kind::MinusInfinity:
      return "-inf";
    case SupportValue::Kind::PlusInfinity:
      return "+inf";
    case SupportValue::Kind::Finite:
      break;
  }
  return to_string(s.value) + (s.attained ? " (attained)" : " (not attained)");
}

bool eval_membership(const EPolyhedron& p, const RatVector& x) {
  require_dim(p, x.size(), "eval_membership");
  return std::all_of(p.constraints.begin(), p.constraints.end(),
                     [&](const LinConstraint& c) { return c.satisfied_by(x); });
}

Feasibility is_nonempty(const EPolyhedron& p) {
  if (p.dim == 0) {
    const bool ok = std::all_of(p.constraints.begin(), p.constraints.end(), constant_row_holds);
    return ok ? Feasibility{true, RatVector{}} : Feasibility{};
  }
  if (!p.has_strict()) {
    std::vector<RatVector> rows;
    RatVector rhs;
    for (const auto& c : p.constraints) {
      rows.push_back(c.normal);
      rhs.push_back(c.bound);
    }
    LpResult r = maximize(rows, rhs, zeros(p.dim));
    if (r.status == LpStatus::Infeasible) return {};
    return {true, std::move(r.point)};
  }
  // Variables (x, t): maximize t subject to the tightened system and t <= 1.
  std::vector<RatVector> rows;
  RatVector rhs;
  for (const auto& c : p.constraints) {
    RatVector row = c.normal;
    row.push_back(c.strict() ? Rational(1) : Rational(0));
    rows.push_back(std::move(row));
    rhs.push_back(c.bound);
  }
  rows.push_back(unit(p.dim + 1, p.dim));
  rhs.push_back(1);
  LpResult r = maximize(rows, rhs, unit(p.dim + 1, p.dim));
  if (r.status != LpStatus::Optimal || sgn(r.value) <= 0) return {};
  r.point.pop_back();
  return {true, std::move(r.point)};
}

namespace {

// LP optimum of <c, .> over the weakened system of p.
LpResult closure_lp(const EPolyhedron& p, const RatVector& c) {
  std::vector<RatVector> rows;
  RatVector rhs;
  rows.reserve(p.constraints.size());
  for (const auto& k : p.constraints) {
    rows.push_back(k.normal);
    rhs.push_back(k.bound);
  }
  return maximize(rows, rhs, c);
}

// Row c holds on all of q, which must be nonempty. Over a nonempty set the
// sup over q is the closure optimum; attainment matters only for a strict
// row whose bound equals that optimum.
bool row_holds_on(const EPolyhedron& q, const LinConstraint& c) {
  const LpResult r = closure_lp(q, c.normal);
  if (r.status == LpStatus::Unbounded) return false;
  if (r.status == LpStatus::Infeasible) throw std::logic_error("closure of a nonempty set reported infeasible");
  if (r.value != c.bound) return r.value < c.bound;
  return !c.strict() || !is_nonempty(q.with(weak(negate(c.normal), -c.bound))).nonempty;
}

}  // namespace

SupportValue sup_linear(const EPolyhedron& p, const RatVector& c) {
  require_dim(p, c.size(), "sup_linear");
  if (!is_nonempty(p).nonempty) return SupportValue::minus_infinity();
  // For nonempty P the supremum over P equals the LP optimum
  // over the weakened system.
  LpResult r = closure_lp(p, c);
  if (r.status == LpStatus::Unbounded) return SupportValue::plus_infinity();
  if (r.status == LpStatus::Infeasible) {
    throw std::logic_error("sup_linear: closure of a nonempty set reported infeasible");
  }
  Feasibility face = is_nonempty(p.with(weak(negate(c), -r.value)));
  return SupportValue::finite(r.value, face.nonempty, face.witness);
}

EPolyhedron closure(const EPolyhedron& p) {
  if (!is_nonempty(p).nonempty) return EPolyhedron::empty(p.dim);
  EPolyhedron out = p;
  for (auto& c : out.constraints) c.kind = ConstraintKind::Weak;
  return out;
}

bool contains(const EPolyhedron& p, const EPolyhedron& q) {
  require_dim(p, q.dim, "contains");
  if (!is_nonempty(q).nonempty) return true;
  for (const auto& c : p.constraints) {
    if (!row_holds_on(q, c)) return false;
  }
  return true;
}

bool same_set(const EPolyhedron& p, const EPolyhedron& q) { return contains(p, q) && contains(q, p); }

EPolyhedron normalize(const EPolyhedron& p) {
  std::map<RatVector, LinConstraint> by_normal;
  std::vector<RatVector> order;
  for (const auto& raw : p.constraints) {
    if (is_zero(raw.normal)) {
      if (constant_row_holds(raw)) continue;
      return EPolyhedron::empty(p.dim);
    }
    LinConstraint c = primitive(raw);
    auto it = by_normal.find(c.normal);
    if (it == by_normal.end()) {
      order.push_back(c.normal);
      by_normal.emplace(c.normal, std::move(c));
      continue;
    }
    LinConstraint& kept = it->second;
    if (c.bound < kept.bound || (c.bound == kept.bound && c.strict())) kept = std::move(c);
  }
  EPolyhedron out(p.dim, {});
  for (const auto& n : order) out.constraints.push_back(by_normal.at(n));
  return out;
}

bool lex_less(const LinConstraint& a, const LinConstraint& b) {
  if (a.normal != b.normal) return a.normal < b.normal;
  if (a.bound != b.bound) return a.bound < b.bound;
  return a.strict() && !b.strict();
}

EPolyhedron remove_redundant(const EPolyhedron& p) {
  EPolyhedron cur = normalize(p);
  if (cur.is_canonical_empty()) return cur;
  if (!is_nonempty(cur).nonempty) return EPolyhedron::empty(p.dim);
  for (std::size_t k = cur.constraints.size(); k-- > 0;) {
    LinConstraint c = cur.constraints[k];
    EPolyhedron rest = cur;
    rest.constraints.erase(rest.constraints.begin() + static_cast<std::ptrdiff_t>(k));
    if (row_holds_on(rest, c)) cur = std::move(rest);
  }
  std::sort(cur.constraints.begin(), cur.constraints.end(), lex_less);
  return cur;
}

std::optional<RelativeInterior> relative_interior(const EPolyhedron& weak_system) {
  const std::size_t n = weak_system.dim;
  const auto& cs = weak_system.constraints;
  std::vector<bool> positive(cs.size(), false);
  std::vector<RatVector> points;
  std::optional<RatVector> feasible;
  for (;;) {
    std::vector<std::size_t> open;
    for (std::size_t j = 0; j < cs.size(); ++j) {
      if (!positive[j]) open.push_back(j);
    }
    // Variables (x, t_open...). maximize sum t, 0 <= t <= 1.
    const std::size_t width = n + open.size();
    std::vector<RatVector> rows;
    RatVector rhs;
    std::size_t slot = 0;
    for (std::size_t j = 0; j < cs.size(); ++j) {
      RatVector row = cs[j].normal;
      row.resize(width, Rational(0));
      if (!positive[j]) row[n + slot++] = 1;
      rows.push_back(std::move(row));
      rhs.push_back(cs[j].bound);
    }
    for (std::size_t s = 0; s < open.size(); ++s) {
      rows.push_back(unit(width, n + s));
      rhs.push_back(1);
      rows.push_back(negate(unit(width, n + s)));
      rhs.push_back(0);
    }
    RatVector objective = zeros(width);
    for (std::size_t s = 0; s < open.size(); ++s) objective[n + s] = 1;
    LpResult r = maximize(rows, rhs, objective);
    if (r.status == LpStatus::Infeasible) return std::nullopt;
    RatVector x = slice(r.point, 0, n);
    if (!feasible) feasible = x;
    if (open.empty() || sgn(r.value) == 0) break;
    for (std::size_t s = 0; s < open.size(); ++s) {
      if (sgn(r.point[n + s]) > 0) positive[open[s]] = true;
    }
    points.push_back(std::move(x));
  }
  RelativeInterior out;
  if (points.empty()) {
    out.point = *feasible;
  } else {
    out.point = zeros(n);
    for (const auto& q : points) out.point = add(out.point, q);
    out.point = scale(Rational(1, static_cast<unsigned long>(points.size())), out.point);
  }
  for (std::size_t j = 0; j < cs.size(); ++j) {
    if (!positive[j]) out.implicit_equalities.push_back(j);
  }
  return out;
}

EPolyhedron substitute(const EPolyhedron& p, const std::vector<std::size_t>& fixed_indices,
                       const RatVector& values) {
  if (fixed_indices.size() != values.size()) throw DimensionMismatch("substitute: values");
  std::vector<bool> fixed(p.dim, false);
  for (auto i : fixed_indices) {
    if (i >= p.dim) throw DimensionMismatch("substitute: index out of range");
    fixed[i] = true;
  }
  EPolyhedron out(p.dim - fixed_indices.size(), {});
  for (const auto& c : p.constraints) {
    LinConstraint r{{}, c.bound, c.kind};
    for (std::size_t k = 0; k < fixed_indices.size(); ++k) r.bound -= c.normal[fixed_indices[k]] * values[k];
    for (std::size_t i = 0; i < p.dim; ++i) {
      if (!fixed[i]) r.normal.push_back(c.normal[i]);
    }
    out.constraints.push_back(std::move(r));
  }
  return out;
}

EPolyhedron lift(const EPolyhedron& p, std::size_t new_dim, std::size_t offset) {
  if (offset + p.dim > new_dim) throw DimensionMismatch("lift: target too small");
  EPolyhedron out(new_dim, {});
  for (const auto& c : p.constraints) {
    RatVector n = zeros(new_dim);
    for (std::size_t i = 0; i < p.dim; ++i) n[offset + i] = c.normal[i];
    out.constraints.push_back({std::move(n), c.bound, c.kind});
  }
  return out;
}

std::vector<std::string> default_names(std::size_t dim) {
  if (dim <= 3) {
    static const char* short_names[] = {"x", "y", "z"};
    return std::vector<std::string>(short_names, short_names + dim);
  }
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= dim; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

std::string to_string(const LinConstraint& c, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < c.normal.size(); ++i) {
    const Rational& a = c.normal[i];
    if (sgn(a) == 0) continue;
    if (sgn(a) < 0) {
      out += "-";
    } else if (!out.empty()) {
      out += "+";
    }
    Rational mag = abs(a);
    if (mag != 1) out += to_display(mag) + "*";
    out += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
  }
  if (out.empty()) out = "0";
  out += c.strict() ? "<" : "<=";
  out += to_display(c.bound);
  return out;
}

std::string to_string(const EPolyhedron& p, const std::vector<std::string>& names) {
  if (p.constraints.empty()) return "(whole space)";
  std::string out;
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    if (i) out += ", ";
    out += to_string(p.constraints[i], names);
  }
  return out;
}

}  // namespace evco
