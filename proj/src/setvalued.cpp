#include "evco/setvalued.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "evco/errors.hpp"
#include "evco/fm.hpp"

namespace evco {

namespace {

EPolyhedron project_to_x(const EPolyhedron& p, std::size_t dim_x) { return project_prefix(p, dim_x); }

}  // namespace

SetValuedMap::SetValuedMap(std::size_t dx, std::size_t dz, EUnion g, ConeK k, EUnion fv)
    : dim_x(dx), dim_z(dz), graph(std::move(g)), full_value(std::move(fv)), cone(std::move(k)) {
  if (graph.dim != dim_x + dim_z) throw DimensionMismatch("map graph must live in Q^(dim_x + dim_z)");
  if (full_value.pieces.empty()) full_value.dim = dim_x;
  if (full_value.dim != dim_x) throw DimensionMismatch("full-value region must live in Q^dim_x");
  if (cone.dim != dim_z) throw DimensionMismatch("cone dimension must equal dim_z");
}

KEpigraph build_epi(const SetValuedMap& f) {
  const std::size_t n = f.dim_x, m = f.dim_z, width = n + 2 * m;
  KEpigraph e{n, m, EUnion(n + m, {})};
  for (const auto& p : f.graph.pieces) {
    // Variables (x, z, k): (x, z - k) in P, k in K.
    EPolyhedron sys(width, {});
    for (const auto& c : p.constraints) {
      RatVector a = zeros(width);
      for (std::size_t i = 0; i < n + m; ++i) a[i] = c.normal[i];
      for (std::size_t i = 0; i < m; ++i) a[n + m + i] = -c.normal[n + i];
      sys.constraints.push_back({std::move(a), c.bound, c.kind});
    }
    for (const auto& c : f.cone.constraints) {
      RatVector a = zeros(width);
      for (std::size_t i = 0; i < m; ++i) a[n + m + i] = c.normal[i];
      sys.constraints.push_back(weak(std::move(a), 0));
    }
    EPolyhedron piece = project_prefix(sys, n + m);
    if (is_nonempty(piece).nonempty) e.set.pieces.push_back(std::move(piece));
  }
  for (const auto& d : f.full_value.pieces) {
    if (is_nonempty(d).nonempty) e.set.pieces.push_back(lift(d, n + m, 0));
  }
  return e;
}

EUnion fiber(const KEpigraph& e, const RatVector& x0) {
  if (x0.size() != e.dim_x) throw DimensionMismatch("fiber: point must live in Q^dim_x");
  std::vector<std::size_t> idx(e.dim_x);
  std::iota(idx.begin(), idx.end(), 0);
  EUnion out(e.dim_z, {});
  for (const auto& p : e.set.pieces) {
    EPolyhedron s = normalize(substitute(p, idx, x0));
    if (!s.is_canonical_empty() && is_nonempty(s).nonempty) out.pieces.push_back(std::move(s));
  }
  return out;
}

EUnion domain(const KEpigraph& e) {
  EUnion out(e.dim_x, {});
  for (const auto& p : e.set.pieces) {
    EPolyhedron d = project_to_x(p, e.dim_x);
    if (is_nonempty(d).nonempty) out.pieces.push_back(std::move(d));
  }
  return out;
}

std::string to_string(Properness p) {
  switch (p) {
    case Properness::Proper:
      return "proper";
    case Properness::EmptyEverywhere:
      return "empty-everywhere";
    case Properness::TakesWholeSpace:
      return "takes-whole-space";
  }
  return "?";
}

Properness is_proper(const KEpigraph& e, std::size_t max_pieces) {
  EUnion dom = domain(e);
  if (dom.pieces.empty()) return Properness::EmptyEverywhere;
  // f_K(x) = Z exactly on dom minus the x-projection of (dom x Z) \ epi.
  EUnion gap_x(e.dim_x, {});
  for (const auto& d : dom.pieces) {
    EUnion gap = subtract(lift(d, e.dim_x + e.dim_z, 0), e.set, max_pieces);
    for (const auto& g : gap.pieces) gap_x.pieces.push_back(project_to_x(g, e.dim_x));
  }
  return union_contains(gap_x, dom, max_pieces) ? Properness::Proper : Properness::TakesWholeSpace;
}

Properness is_proper(const SetValuedMap& f, std::size_t max_pieces) {
  KEpigraph e = build_epi(f);
  if (!f.full_value.is_empty()) return Properness::TakesWholeSpace;
  return is_proper(e, max_pieces);
}

bool leq_K_at(const EUnion& a, const EUnion& b, const ConeK& k, std::size_t max_pieces) {
  if (a.dim != b.dim || a.dim != k.dim) throw DimensionMismatch("leq_K_at");
  EUnion sum(a.dim, {});
  for (const auto& p : a.pieces) {
    if (is_nonempty(p).nonempty) sum.pieces.push_back(minkowski_sum(p, k.as_polyhedron()));
  }
  if (sum.pieces.size() == 1) {
    return std::all_of(b.pieces.begin(), b.pieces.end(),
                       [&](const EPolyhedron& q) { return contains(sum.pieces.front(), q); });
  }
  return union_contains(sum, b, max_pieces);
}

KEpigraph k_closed_hull(const KEpigraph& e) {
  KEpigraph out{e.dim_x, e.dim_z, EUnion(e.set.dim, {})};
  for (const auto& p : e.set.normalized().pieces) out.set.pieces.push_back(remove_redundant(closure(p)));
  return out;
}

KEpigraph k_clconv_hull(const KEpigraph& e) {
  EPolyhedron h = closed_convex_hull(e.set);
  KEpigraph out{e.dim_x, e.dim_z, EUnion(e.set.dim, {})};
  if (is_nonempty(h).nonempty) out.set.pieces.push_back(std::move(h));
  return out;
}

KEpigraph k_eco_hull(const KEpigraph& e, const HullOptions& opts) {
  EPolyhedron h = eco_hull(e.set, opts);
  KEpigraph out{e.dim_x, e.dim_z, EUnion(e.set.dim, {})};
  if (is_nonempty(h).nonempty) out.set.pieces.push_back(std::move(h));
  return out;
}

KEpigraph k_closed_hull(const SetValuedMap& f) { return k_closed_hull(build_epi(f)); }
KEpigraph k_clconv_hull(const SetValuedMap& f) { return k_clconv_hull(build_epi(f)); }
KEpigraph k_eco_hull(const SetValuedMap& f, const HullOptions& opts) { return k_eco_hull(build_epi(f), opts); }

SetValuedMap map_of(const KEpigraph& e, const ConeK& k) { return SetValuedMap(e.dim_x, e.dim_z, e.set, k); }

bool absorbs_cone(const KEpigraph& e, const ConeK& k) {
  for (const auto& p : e.set.pieces) {
    auto w = is_nonempty(p);
    if (!w.nonempty) continue;
    for (const auto& g : k.generators) {
      RatVector moved = *w.witness;
      for (std::size_t i = 0; i < e.dim_z; ++i) moved[e.dim_x + i] += g[i];
      if (!e.set.contains_point(moved)) return false;
    }
  }
  return true;
}

std::vector<std::string> map_names(std::size_t dim_x, std::size_t dim_z) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < dim_x; ++i) names.push_back(dim_x == 1 ? "x" : "x" + std::to_string(i + 1));
  for (std::size_t i = 0; i < dim_z; ++i) names.push_back(dim_z == 1 ? "z" : "z" + std::to_string(i + 1));
  return names;
}

EUnion scalar_epigraph(const ScalarFunction& g) {
  const std::size_t n = g.dim;
  EUnion out(n + 1, {});
  for (const auto& p : g.pieces) {
    if (p.kind == ScalarPiece::Kind::PlusInfinity) continue;
    EPolyhedron piece = lift(p.domain, n + 1, 0);
    if (p.kind == ScalarPiece::Kind::Finite) {
      // <slope, x> - t <= -offset
      RatVector a = p.slope;
      a.push_back(-1);
      piece.constraints.push_back(weak(std::move(a), -p.offset));
    }
    out.pieces.push_back(std::move(piece));
  }
  return out;
}

SetValuedMap scalar_embed(const ScalarFunction& g) {
  const std::size_t n = g.dim;
  for (const auto& p : g.pieces) {
    if (p.domain.dim != n) throw PreconditionViolated("scalar piece domain has the wrong dimension");
    if (p.kind == ScalarPiece::Kind::Finite && p.slope.size() != n) {
      throw PreconditionViolated("scalar piece slope has the wrong dimension");
    }
  }
  for (std::size_t i = 0; i < g.pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < g.pieces.size(); ++j) {
      if (is_nonempty(g.pieces[i].domain.with(g.pieces[j].domain.constraints)).nonempty) {
        throw PreconditionViolated("scalar pieces " + std::to_string(i) + " and " + std::to_string(j) +
                                   " have overlapping domains");
      }
    }
  }
  EUnion graph(n + 1, {});
  EUnion full(n, {});
  for (const auto& p : g.pieces) {
    if (p.kind == ScalarPiece::Kind::MinusInfinity) {
      full.pieces.push_back(p.domain);
    } else if (p.kind == ScalarPiece::Kind::Finite) {
      EPolyhedron piece = lift(p.domain, n + 1, 0);
      RatVector a = p.slope;
      a.push_back(-1);
      piece.constraints.push_back(weak(a, -p.offset));
      piece.constraints.push_back(weak(negate(a), p.offset));
      graph.pieces.push_back(std::move(piece));
    }
  }
  SetValuedMap f(n, 1, std::move(graph), ConeK::nonnegative_orthant(1), std::move(full));
  if (!same_union(scalar_epigraph(g), build_epi(f).set)) {
    throw std::logic_error("scalar embedding: epigraph mismatch");
  }
  return f;
}

}  // namespace evco
