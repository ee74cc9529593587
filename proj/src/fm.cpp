#include "evco/fm.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "evco/errors.hpp"

namespace evco {

namespace {

// Rows above this count trigger LP-based pruning during project_out.
constexpr std::size_t kPruneThreshold = 10;
// Weak systems lean on Chernikov's rule first and prune by LP only past this.
constexpr std::size_t kWeakPruneThreshold = 24;

RatVector drop_coord(const RatVector& v, std::size_t k) {
  RatVector out;
  out.reserve(v.size() - 1);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i != k) out.push_back(v[i]);
  }
  return out;
}

// Index of a weak row whose exact negation is also present and which touches
// coordinate k; the system must be normalized.
std::optional<std::size_t> find_equality(const EPolyhedron& p, std::size_t k) {
  std::map<RatVector, std::size_t> weak_rows;
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    const auto& c = p.constraints[i];
    if (!c.strict()) weak_rows.emplace(c.normal, i);
  }
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    const auto& c = p.constraints[i];
    if (c.strict() || sgn(c.normal[k]) == 0) continue;
    auto it = weak_rows.find(negate(c.normal));
    if (it != weak_rows.end() && p.constraints[it->second].bound == -c.bound) return i;
  }
  return std::nullopt;
}

// Eliminates x_k using the equality <e,x> = beta from row eq (and drops its twin).
EPolyhedron substitute_equality(const EPolyhedron& p, std::size_t eq, std::size_t k) {
  const LinConstraint& e = p.constraints[eq];
  const RatVector twin = negate(e.normal);
  EPolyhedron out(p.dim - 1, {});
  bool twin_dropped = false;
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    if (i == eq) continue;
    const auto& c = p.constraints[i];
    if (!twin_dropped && !c.strict() && c.normal == twin && c.bound == -e.bound) {
      twin_dropped = true;
      continue;
    }
    LinConstraint r = c;
    if (sgn(c.normal[k]) != 0) {
      Rational f = c.normal[k] / e.normal[k];
      for (std::size_t j = 0; j < p.dim; ++j) r.normal[j] -= f * e.normal[j];
      r.bound -= f * e.bound;
    }
    r.normal = drop_coord(r.normal, k);
    out.constraints.push_back(std::move(r));
  }
  return out;
}

// Weak systems only: Fourier-Motzkin with Chernikov's rule. After s
// eliminations a row derived from more than s + 1 input rows is implied by
// the others and is dropped without an LP. Ancestry restarts whenever an
// equality is substituted, since the rule is stated for the system at hand.
class WeakProjector {
 public:
  explicit WeakProjector(const EPolyhedron& p) { reset(p); }

  bool empty() const { return empty_; }
  std::size_t size() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }

  EPolyhedron system() const {
    if (empty_) return EPolyhedron::empty(dim_);
    EPolyhedron out(dim_, {});
    for (const auto& r : rows_) out.constraints.push_back(r.row);
    return out;
  }

  void reset(const EPolyhedron& p) {
    const EPolyhedron n = normalize(p);
    dim_ = p.dim;
    rows_.clear();
    steps_ = 0;
    empty_ = n.is_canonical_empty();
    if (empty_) return;
    for (std::size_t i = 0; i < n.constraints.size(); ++i) {
      std::vector<bool> anc(n.constraints.size(), false);
      anc[i] = true;
      rows_.push_back({n.constraints[i], std::move(anc), 1});
    }
  }

  void eliminate(std::size_t k) {
    ++steps_;
    std::vector<Row> next;
    std::vector<const Row*> pos, neg;
    for (const auto& r : rows_) {
      const int s = sgn(r.row.normal[k]);
      if (s > 0) {
        pos.push_back(&r);
      } else if (s < 0) {
        neg.push_back(&r);
      } else {
        next.push_back({{drop_coord(r.row.normal, k), r.row.bound, r.row.kind}, r.anc, r.count});
      }
    }
    for (const Row* up : pos) {
      for (const Row* lo : neg) {
        std::vector<bool> anc(up->anc.size());
        std::size_t count = 0;
        for (std::size_t i = 0; i < anc.size(); ++i) {
          anc[i] = up->anc[i] || lo->anc[i];
          count += anc[i];
        }
        if (count > steps_ + 1) continue;
        const Rational wu = -lo->row.normal[k];
        const Rational wl = up->row.normal[k];
        LinConstraint r;
        r.normal.reserve(dim_ - 1);
        for (std::size_t j = 0; j < dim_; ++j) {
          if (j != k) r.normal.push_back(wu * up->row.normal[j] + wl * lo->row.normal[j]);
        }
        r.bound = wu * up->row.bound + wl * lo->row.bound;
        r.kind = ConstraintKind::Weak;
        next.push_back({std::move(r), std::move(anc), count});
      }
    }
    --dim_;
    rows_.clear();
    // Same clean-up as normalize, keeping the ancestry of the surviving row.
    std::map<RatVector, std::size_t> by_normal;
    for (auto& r : next) {
      if (is_zero(r.row.normal)) {
        if (sgn(r.row.bound) < 0) {
          empty_ = true;
          return;
        }
        continue;
      }
      r.row = primitive(r.row);
      auto it = by_normal.find(r.row.normal);
      if (it == by_normal.end()) {
        by_normal.emplace(r.row.normal, rows_.size());
        rows_.push_back(std::move(r));
      } else if (r.row.bound < rows_[it->second].row.bound) {
        rows_[it->second] = std::move(r);
      }
    }
  }

 private:
  struct Row {
    LinConstraint row;
    std::vector<bool> anc;
    std::size_t count;
  };
  std::size_t dim_ = 0;
  std::size_t steps_ = 0;
  bool empty_ = false;
  std::vector<Row> rows_;
};

EPolyhedron project_out_weak(const EPolyhedron& p, std::vector<std::size_t> vars) {
  WeakProjector proj(p);
  while (!vars.empty()) {
    if (proj.empty()) return EPolyhedron::empty(proj.dim() - vars.size());
    const EPolyhedron cur = proj.system();
    std::size_t pick = 0;
    std::optional<std::size_t> eq;
    for (std::size_t s = 0; s < vars.size() && !eq; ++s) {
      eq = find_equality(cur, vars[s]);
      if (eq) pick = s;
    }
    if (eq) {
      proj.reset(substitute_equality(cur, *eq, vars[pick]));
    } else {
      std::size_t best_cost = std::numeric_limits<std::size_t>::max();
      for (std::size_t s = 0; s < vars.size(); ++s) {
        std::size_t np = 0, nn = 0;
        for (const auto& c : cur.constraints) {
          const int sg = sgn(c.normal[vars[s]]);
          np += sg > 0;
          nn += sg < 0;
        }
        if (np * nn < best_cost) {
          best_cost = np * nn;
          pick = s;
        }
      }
      proj.eliminate(vars[pick]);
      if (proj.size() > kWeakPruneThreshold) proj.reset(remove_redundant(proj.system()));
    }
    const std::size_t removed = vars[pick];
    vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(pick));
    for (auto& v : vars) {
      if (v > removed) --v;
    }
  }
  return normalize(proj.system());
}

}  // namespace

FmTrace fm_eliminate_traced(const EPolyhedron& p, std::size_t var_index) {
  if (var_index >= p.dim) throw DimensionMismatch("fm_eliminate: variable index out of range");
  std::vector<std::size_t> pos, neg;
  FmTrace out{EPolyhedron(p.dim - 1, {}), {}};
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    const int s = sgn(p.constraints[i].normal[var_index]);
    if (s > 0) {
      pos.push_back(i);
    } else if (s < 0) {
      neg.push_back(i);
    } else {
      const auto& c = p.constraints[i];
      out.result.constraints.push_back({drop_coord(c.normal, var_index), c.bound, c.kind});
      out.derivations.push_back({i, std::nullopt});
    }
  }
  for (auto i : pos) {
    for (auto j : neg) {
      const auto& up = p.constraints[i];
      const auto& lo = p.constraints[j];
      const Rational wu = -lo.normal[var_index];
      const Rational wl = up.normal[var_index];
      LinConstraint r;
      r.normal.reserve(p.dim - 1);
      for (std::size_t k = 0; k < p.dim; ++k) {
        if (k != var_index) r.normal.push_back(wu * up.normal[k] + wl * lo.normal[k]);
      }
      r.bound = wu * up.bound + wl * lo.bound;
      r.kind = (up.strict() || lo.strict()) ? ConstraintKind::Strict : ConstraintKind::Weak;
      out.result.constraints.push_back(std::move(r));
      out.derivations.push_back({i, j});
    }
  }
  return out;
}

EPolyhedron fm_eliminate(const EPolyhedron& p, std::size_t var_index) {
  return normalize(fm_eliminate_traced(p, var_index).result);
}

EPolyhedron project_out(const EPolyhedron& p, std::vector<std::size_t> vars) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  for (auto v : vars) {
    if (v >= p.dim) throw DimensionMismatch("project_out: variable index out of range");
  }
  if (!p.has_strict()) return project_out_weak(p, std::move(vars));
  EPolyhedron cur = normalize(p);
  // `vars` holds current positions; removing position k shifts later ones.
  while (!vars.empty()) {
    if (cur.is_canonical_empty()) return EPolyhedron::empty(cur.dim - vars.size());
    std::size_t pick = 0;
    std::optional<std::size_t> eq;
    for (std::size_t s = 0; s < vars.size() && !eq; ++s) {
      eq = find_equality(cur, vars[s]);
      if (eq) pick = s;
    }
    const std::size_t k = vars[pick];
    if (eq) {
      cur = normalize(substitute_equality(cur, *eq, k));
    } else {
      std::size_t best_cost = std::numeric_limits<std::size_t>::max();
      for (std::size_t s = 0; s < vars.size(); ++s) {
        std::size_t np = 0, nn = 0;
        for (const auto& c : cur.constraints) {
          const int sg = sgn(c.normal[vars[s]]);
          np += sg > 0;
          nn += sg < 0;
        }
        const std::size_t cost = np * nn;
        if (cost < best_cost) {
          best_cost = cost;
          pick = s;
        }
      }
      cur = fm_eliminate(cur, vars[pick]);
    }
    const std::size_t removed = vars[pick];
    vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(pick));
    for (auto& v : vars) {
      if (v > removed) --v;
    }
    if (cur.constraints.size() > kPruneThreshold) cur = remove_redundant(cur);
  }
  return cur;
}

EPolyhedron project_prefix(const EPolyhedron& p, std::size_t keep) {
  if (keep > p.dim) throw DimensionMismatch("project_prefix");
  std::vector<std::size_t> vars(p.dim - keep);
  std::iota(vars.begin(), vars.end(), keep);
  return project_out(p, vars);
}

}  // namespace evco
