#include "evco/lp.hpp"

#include <cstddef>
#include <optional>

#include "evco/errors.hpp"

namespace evco {

namespace {

class Tableau {
 public:
  Tableau(const std::vector<RatVector>& rows, const RatVector& rhs, std::size_t n)
      : n_(n), m_(rows.size()) {
    std::size_t artificials = 0;
    for (const auto& b : rhs) {
      if (sgn(b) < 0) ++artificials;
    }
    art_begin_ = 2 * n_ + m_;
    cols_ = art_begin_ + artificials + 1;
    cells_.assign((m_ + 1) * cols_, Rational(0));
    basis_.resize(m_);

    std::size_t next_art = art_begin_;
    for (std::size_t i = 0; i < m_; ++i) {
      const bool flip = sgn(rhs[i]) < 0;
      const int s = flip ? -1 : 1;
      for (std::size_t j = 0; j < n_; ++j) {
        if (sgn(rows[i][j]) == 0) continue;
        at(i, j) = s * rows[i][j];
        at(i, n_ + j) = -s * rows[i][j];
      }
      at(i, 2 * n_ + i) = s;
      at(i, rhs_col()) = s * rhs[i];
      if (flip) {
        at(i, next_art) = 1;
        basis_[i] = next_art++;
      } else {
        basis_[i] = 2 * n_ + i;
      }
    }
  }

  // Phase 1: maximize -sum(artificials). Returns false when infeasible.
  bool find_feasible_basis() {
    if (art_begin_ + 1 == cols_) return true;
    for (std::size_t j = 0; j < cols_; ++j) obj(j) = 0;
    for (std::size_t j = art_begin_; j + 1 < cols_; ++j) obj(j) = 1;
    for (std::size_t i = 0; i < m_; ++i) {
      if (!is_artificial(basis_[i])) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (sgn(at(i, j)) != 0) obj(j) -= at(i, j);
      }
    }
    run(/*allow_artificial=*/true);
    if (sgn(obj(rhs_col())) < 0) return false;
    // Drive zero-level artificials out of the basis where possible; a row with
    // no structural entry is redundant and is left alone.
    for (std::size_t i = 0; i < m_; ++i) {
      if (!is_artificial(basis_[i])) continue;
      for (std::size_t j = 0; j < art_begin_; ++j) {
        if (sgn(at(i, j)) != 0) {
          pivot(i, j);
          break;
        }
      }
    }
    return true;
  }

  // Phase 2. Returns false when unbounded.
  bool optimize(const RatVector& c) {
    auto cost = [&](std::size_t j) -> Rational {
      if (j < n_) return c[j];
      if (j < 2 * n_) return -c[j - n_];
      return 0;
    };
    for (std::size_t j = 0; j < cols_; ++j) obj(j) = is_artificial(j) ? Rational(0) : -cost(j);
    obj(rhs_col()) = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      Rational cb = is_artificial(basis_[i]) ? Rational(0) : cost(basis_[i]);
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (sgn(at(i, j)) != 0) obj(j) += cb * at(i, j);
      }
    }
    return run(/*allow_artificial=*/false);
  }

  RatVector solution() const {
    RatVector x = zeros(n_);
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t b = basis_[i];
      if (b < n_) {
        x[b] += at(i, rhs_col());
      } else if (b < 2 * n_) {
        x[b - n_] -= at(i, rhs_col());
      }
    }
    return x;
  }

  Rational objective() const { return obj(rhs_col()); }

 private:
  std::size_t rhs_col() const { return cols_ - 1; }
  bool is_artificial(std::size_t j) const { return j >= art_begin_ && j + 1 < cols_; }
  Rational& at(std::size_t i, std::size_t j) { return cells_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j]; }
  Rational& obj(std::size_t j) { return cells_[m_ * cols_ + j]; }
  const Rational& obj(std::size_t j) const { return cells_[m_ * cols_ + j]; }

  // Bland's rule: lowest-index entering column with negative reduced cost,
  // ratio ties broken by lowest basic index.
  bool run(bool allow_artificial) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j + 1 < cols_; ++j) {
        if (!allow_artificial && is_artificial(j)) continue;
        if (sgn(obj(j)) < 0) {
          enter = j;
          break;
        }
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(at(i, *enter)) <= 0) continue;
        Rational ratio = at(i, rhs_col()) / at(i, *enter);
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = at(r, c);
    nonzero_.clear();
    for (std::size_t j = 0; j < cols_; ++j) {
      if (sgn(at(r, j)) != 0) {
        at(r, j) /= p;
        nonzero_.push_back(j);
      }
    }
    Rational f;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      Rational& head = cells_[i * cols_ + c];
      if (sgn(head) == 0) continue;
      f = head;
      for (std::size_t j : nonzero_) {
        tmp_ = f * at(r, j);
        cells_[i * cols_ + j] -= tmp_;
      }
    }
    basis_[r] = c;
  }

  std::size_t n_;
  std::size_t m_;
  std::size_t cols_ = 0;
  std::size_t art_begin_ = 0;
  std::vector<Rational> cells_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> nonzero_;
  Rational tmp_;
};

}  // namespace

LpResult maximize(const std::vector<RatVector>& rows, const RatVector& rhs, const RatVector& c) {
  if (rows.size() != rhs.size()) throw DimensionMismatch("maximize: row/rhs count");
  for (const auto& r : rows) {
    if (r.size() != c.size()) throw DimensionMismatch("maximize: row width");
  }
  Tableau t(rows, rhs, c.size());
  LpResult result;
  if (!t.find_feasible_basis()) {
    result.status = LpStatus::Infeasible;
    return result;
  }
  const bool bounded = t.optimize(c);
  result.point = t.solution();
  if (!bounded) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.value = t.objective();
  return result;
}

}  // namespace evco
