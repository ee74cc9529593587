#include "evco/geometry.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <string>

#include "evco/errors.hpp"
#include "evco/fm.hpp"

namespace evco {

namespace {

void require_dim(std::size_t expected, std::size_t got, const char* op) {
  if (expected != got) {
    throw DimensionMismatch(std::string(op) + ": expected Q^" + std::to_string(expected) + ", got Q^" +
                            std::to_string(got));
  }
}

// The face of `q` where every row in `tight` holds with equality.
EPolyhedron face_system(const EPolyhedron& q, const std::vector<std::size_t>& tight) {
  EPolyhedron f = q;
  for (auto j : tight) {
    const auto& c = q.constraints[j];
    f.constraints.push_back(weak(negate(c.normal), -c.bound));
  }
  return f;
}

std::optional<Face> make_face(const EPolyhedron& q, const std::vector<std::size_t>& forced) {
  auto ri = relative_interior(face_system(q, forced));
  if (!ri) return std::nullopt;
  Face f;
  for (auto j : ri->implicit_equalities) {
    if (j < q.constraints.size()) f.tight.push_back(j);
  }
  f.exposing = zeros(q.dim);
  f.level = 0;
  for (auto j : f.tight) {
    f.exposing = add(f.exposing, q.constraints[j].normal);
    f.level += q.constraints[j].bound;
  }
  f.interior_point = std::move(ri->point);
  return f;
}

bool face_meets(const EPolyhedron& q, const Face& f, const EUnion& c) {
  EPolyhedron fs = face_system(q, f.tight);
  return std::any_of(c.pieces.begin(), c.pieces.end(),
                     [&](const EPolyhedron& p) { return is_nonempty(fs.with(p.constraints)).nonempty; });
}

void check_hull_support(const EUnion& c, const HullOptions& opts) {
  if (c.pieces.size() > 1 && c.dim > opts.max_dim) {
    throw UnsupportedInstance("exact e-convex hull of a " + std::to_string(c.pieces.size()) +
                              "-piece union limited to dimension " + std::to_string(opts.max_dim) +
                              ", got " + std::to_string(c.dim));
  }
}

}  // namespace

EUnion::EUnion(std::size_t d, std::vector<EPolyhedron> ps) : dim(d), pieces(std::move(ps)) {
  for (const auto& p : pieces) require_dim(dim, p.dim, "EUnion");
}

EUnion::EUnion(EPolyhedron single) : dim(single.dim) { pieces.push_back(std::move(single)); }

EUnion EUnion::normalized() const {
  EUnion out(dim, {});
  for (const auto& p : pieces) {
    EPolyhedron n = normalize(p);
    if (n.is_canonical_empty() || !is_nonempty(n).nonempty) continue;
    out.pieces.push_back(std::move(n));
  }
  return out;
}

bool EUnion::contains_point(const RatVector& x) const {
  require_dim(dim, x.size(), "EUnion::contains_point");
  return std::any_of(pieces.begin(), pieces.end(), [&](const EPolyhedron& p) { return eval_membership(p, x); });
}

bool EUnion::is_empty() const {
  return std::none_of(pieces.begin(), pieces.end(), [](const EPolyhedron& p) { return is_nonempty(p).nonempty; });
}

std::optional<SeparationCertificate> separate_point(const EPolyhedron& p, const RatVector& x0) {
  require_dim(p.dim, x0.size(), "separate_point");
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    const auto& c = p.constraints[i];
    if (!c.satisfied_by(x0)) return SeparationCertificate{c.normal, i, 0};
  }
  return std::nullopt;
}

std::optional<SeparationCertificate> separate_point(const EUnion& c, const RatVector& x0) {
  if (c.pieces.size() != 1) {
    throw PreconditionViolated("separate_point expects a single piece, got " + std::to_string(c.pieces.size()));
  }
  return separate_point(c.pieces.front(), x0);
}

bool strictly_separates(const EUnion& c, const RatVector& x0, const RatVector& functional) {
  const Rational level = dot(x0, functional);
  for (const auto& p : c.pieces) {
    SupportValue s = sup_linear(p, functional);
    if (s.kind == SupportValue::Kind::MinusInfinity) continue;
    if (s.kind == SupportValue::Kind::PlusInfinity) return false;
    if (s.value > level || (s.value == level && s.attained)) return false;
  }
  return true;
}

namespace {

// cl conv(P u Q) for two nonempty pieces: the homogenization cones of the
// closures summed, then sliced at t = 1.
EPolyhedron clconv_pair(const EPolyhedron& p, const EPolyhedron& q) {
  const std::size_t d = p.dim;
  // Variables: x (d), then for piece i the block (y_i (d), t_i).
  const std::size_t width = d + 2 * (d + 1);
  auto y_index = [&](std::size_t i, std::size_t coord) { return d + i * (d + 1) + coord; };
  auto t_index = [&](std::size_t i) { return d + i * (d + 1) + d; };

  EPolyhedron sys(width, {});
  const EPolyhedron* pieces[] = {&p, &q};
  for (std::size_t i = 0; i < 2; ++i) {
    for (const auto& row : pieces[i]->constraints) {
      RatVector n = zeros(width);
      for (std::size_t j = 0; j < d; ++j) n[y_index(i, j)] = row.normal[j];
      n[t_index(i)] = -row.bound;
      sys.constraints.push_back(weak(std::move(n), 0));
    }
    sys.constraints.push_back(weak(negate(unit(width, t_index(i))), 0));
  }
  for (std::size_t j = 0; j < d; ++j) {
    RatVector n = unit(width, j);
    for (std::size_t i = 0; i < 2; ++i) n[y_index(i, j)] = -1;
    sys.constraints.push_back(weak(n, 0));
    sys.constraints.push_back(weak(negate(n), 0));
  }
  RatVector sum_t = zeros(width);
  for (std::size_t i = 0; i < 2; ++i) sum_t[t_index(i)] = 1;
  sys.constraints.push_back(weak(sum_t, 1));
  sys.constraints.push_back(weak(negate(sum_t), -1));
  return remove_redundant(project_prefix(sys, d));
}

}  // namespace

EPolyhedron closed_convex_hull(const EUnion& c) {
  EUnion u = c.normalized();
  if (u.pieces.empty()) return EPolyhedron::empty(u.dim);
  // cl conv(A u B u C) = cl conv(cl conv(A u B) u C).
  EPolyhedron hull = remove_redundant(closure(u.pieces.front()));
  for (std::size_t i = 1; i < u.pieces.size(); ++i) {
    if (contains(hull, closure(u.pieces[i]))) continue;
    hull = clconv_pair(hull, closure(u.pieces[i]));
  }
  return hull;
}

namespace {

// Breadth-first walk over the nonempty faces; `descend(face)` decides whether
// the faces below it are visited.
void walk_faces(const EPolyhedron& weak_system, std::size_t max_faces, const std::function<bool(const Face&)>& descend) {
  auto top = make_face(weak_system, {});
  if (!top) return;
  std::set<std::vector<std::size_t>> seen{top->tight};
  std::deque<Face> queue{*top};
  std::size_t visited = 0;
  while (!queue.empty()) {
    Face f = std::move(queue.front());
    queue.pop_front();
    ++visited;
    if (descend(f)) {
      for (std::size_t j = 0; j < weak_system.constraints.size(); ++j) {
        if (std::binary_search(f.tight.begin(), f.tight.end(), j)) continue;
        std::vector<std::size_t> forced = f.tight;
        forced.push_back(j);
        auto child = make_face(weak_system, forced);
        if (!child || !seen.insert(child->tight).second) continue;
        queue.push_back(std::move(*child));
      }
    }
    if (visited + queue.size() > max_faces) {
      throw UnsupportedInstance("face lattice exceeds " + std::to_string(max_faces) + " faces");
    }
  }
}

// The faces of q that miss c and are maximal with that property. A strict
// cut along such a face also removes every face below it.
std::vector<Face> maximal_missing_faces(const EPolyhedron& q, const EUnion& c, std::size_t max_faces) {
  std::vector<Face> out;
  walk_faces(q, max_faces, [&](const Face& f) {
    if (face_meets(q, f, c)) return true;
    out.push_back(f);
    return false;
  });
  return out;
}

}  // namespace

std::vector<Face> enumerate_faces(const EPolyhedron& weak_system, std::size_t max_faces) {
  std::vector<Face> faces;
  walk_faces(weak_system, max_faces, [&](const Face& f) {
    faces.push_back(f);
    return true;
  });
  return faces;
}

EcoMembership eco_membership(const EUnion& c, const RatVector& x0, const HullOptions& opts) {
  require_dim(c.dim, x0.size(), "eco_membership");
  EUnion u = c.normalized();
  if (u.pieces.empty()) return {false, zeros(c.dim)};
  if (u.pieces.size() == 1) {
    auto cert = separate_point(u.pieces.front(), x0);
    if (!cert) return {true, std::nullopt};
    return {false, cert->functional};
  }
  check_hull_support(u, opts);
  EPolyhedron q = closed_convex_hull(u);
  if (auto cert = separate_point(q, x0)) return {false, cert->functional};
  std::vector<std::size_t> tight_at_x0;
  for (std::size_t j = 0; j < q.constraints.size(); ++j) {
    if (dot(q.constraints[j].normal, x0) == q.constraints[j].bound) tight_at_x0.push_back(j);
  }
  for (const auto& f : maximal_missing_faces(q, u, opts.max_faces)) {
    // x0 lies on f iff every row tight on f is tight at x0.
    if (std::includes(tight_at_x0.begin(), tight_at_x0.end(), f.tight.begin(), f.tight.end())) return {false, f.exposing};
  }
  return {true, std::nullopt};
}

EPolyhedron eco_hull(const EUnion& c, const HullOptions& opts) {
  EUnion u = c.normalized();
  if (u.pieces.empty()) return EPolyhedron::empty(c.dim);
  if (u.pieces.size() == 1) return remove_redundant(u.pieces.front());
  check_hull_support(u, opts);
  EPolyhedron q = closed_convex_hull(u);
  EPolyhedron out = q;
  for (const auto& f : maximal_missing_faces(q, u, opts.max_faces)) out.constraints.push_back(strict(f.exposing, f.level));
  return remove_redundant(out);
}

EUnion subtract(const EPolyhedron& h, const EUnion& u, std::size_t max_pieces) {
  require_dim(h.dim, u.dim, "subtract");
  std::vector<EPolyhedron> rest;
  if (is_nonempty(h).nonempty) rest.push_back(h);
  for (const auto& piece : u.pieces) {
    std::vector<EPolyhedron> next;
    for (const auto& r : rest) {
      if (!is_nonempty(r.with(piece.constraints)).nonempty) {
        next.push_back(r);
        continue;
      }
      // r \ piece = union over k of r & c_1 & ... & c_{k-1} & not c_k (disjoint).
      EPolyhedron prefix = r;
      for (const auto& c : piece.constraints) {
        EPolyhedron cand = prefix.with(c.negated());
        if (is_nonempty(cand).nonempty) next.push_back(std::move(cand));
        prefix.constraints.push_back(c);
      }
      if (next.size() > max_pieces) {
        throw UnsupportedInstance("set difference exceeds " + std::to_string(max_pieces) + " pieces");
      }
    }
    rest = std::move(next);
    if (rest.empty()) break;
  }
  return EUnion(h.dim, std::move(rest));
}

bool union_contains(const EUnion& outer, const EUnion& inner, std::size_t max_pieces) {
  require_dim(outer.dim, inner.dim, "union_contains");
  return std::all_of(inner.pieces.begin(), inner.pieces.end(), [&](const EPolyhedron& p) {
    return subtract(p, outer, max_pieces).pieces.empty();
  });
}

bool same_union(const EUnion& a, const EUnion& b, std::size_t max_pieces) {
  return union_contains(a, b, max_pieces) && union_contains(b, a, max_pieces);
}

EPolyhedron minkowski_sum(const EPolyhedron& a, const EPolyhedron& b) {
  require_dim(a.dim, b.dim, "minkowski_sum");
  const std::size_t d = a.dim;
  // Variables (x, u): u in a, x - u in b.
  EPolyhedron sys(2 * d, {});
  for (const auto& c : a.constraints) {
    RatVector n = zeros(2 * d);
    for (std::size_t j = 0; j < d; ++j) n[d + j] = c.normal[j];
    sys.constraints.push_back({std::move(n), c.bound, c.kind});
  }
  for (const auto& c : b.constraints) {
    RatVector n = zeros(2 * d);
    for (std::size_t j = 0; j < d; ++j) {
      n[j] = c.normal[j];
      n[d + j] = -c.normal[j];
    }
    sys.constraints.push_back({std::move(n), c.bound, c.kind});
  }
  EPolyhedron out = project_prefix(sys, d);
  return is_nonempty(out).nonempty ? out : EPolyhedron::empty(d);
}

EPolyhedron boxplus(const EUnion& a, const EUnion& b, const HullOptions& opts) {
  require_dim(a.dim, b.dim, "boxplus");
  EUnion ua = a.normalized();
  EUnion ub = b.normalized();
  EUnion sums(a.dim, {});
  for (const auto& p : ua.pieces) {
    for (const auto& q : ub.pieces) sums.pieces.push_back(minkowski_sum(p, q));
  }
  return eco_hull(sums, opts);
}

AssociativityReport verify_eco_associativity(const EUnion& a, const EUnion& b, const EUnion& c,
                                             const HullOptions& opts) {
  AssociativityReport r;
  EPolyhedron left = boxplus(a, EUnion(boxplus(b, c, opts)), opts);
  EPolyhedron right = boxplus(EUnion(boxplus(a, b, opts)), c, opts);
  r.associative = same_set(left, right);
  EPolyhedron inner = boxplus(a, EUnion(eco_hull(b, opts)), opts);
  EPolyhedron plain = boxplus(a, b, opts);
  r.absorbs_inner_hull = same_set(inner, plain);
  return r;
}

EConvexity is_e_convex(const EUnion& c, const HullOptions& opts) {
  EUnion u = c.normalized();
  if (u.pieces.size() <= 1) return {true, std::nullopt};
  EPolyhedron h = eco_hull(u, opts);
  EUnion gap = subtract(h, u, opts.max_dnf_pieces);
  if (gap.pieces.empty()) return {true, std::nullopt};
  return {false, is_nonempty(gap.pieces.front()).witness};
}

}  // namespace evco
