#pragma once

#include <vector>

#include "evco/rational.hpp"

namespace evco {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;  // valid when Optimal
  RatVector point; // optimal point when Optimal, a feasible point when Unbounded
};

/// maximize <c, x> subject to rows[i] . x <= rhs[i], x free.
///
/// Dense two-phase tableau simplex over Q with Bland's rule, so it always
/// terminates. Free variables are split as x = x+ - x-. An empty objective
/// (all zeros) reduces to a feasibility check.
LpResult maximize(const std::vector<RatVector>& rows, const RatVector& rhs, const RatVector& c);

}  // namespace evco
