#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace evco {

/// Exact rational scalar. gmpxx keeps results of arithmetic canonical
/// (gcd 1, positive denominator).
using Rational = mpq_class;

/// Coordinates of a point or functional in Q^n; the dimension is size().
using RatVector = std::vector<Rational>;

/// Parses "p/q" or "p". Throws ParseError on malformed text or q = 0.
Rational parse_rational(std::string_view text);

/// Always "p/q" with q >= 1, e.g. "0/1", "-3/2".
std::string to_string(const Rational& value);

/// Compact form used in human-readable output: "3", "-1/2".
std::string to_display(const Rational& value);

std::string to_string(const RatVector& v);

RatVector zeros(std::size_t dim);
RatVector unit(std::size_t dim, std::size_t index);

Rational dot(const RatVector& a, const RatVector& b);
RatVector add(const RatVector& a, const RatVector& b);
RatVector sub(const RatVector& a, const RatVector& b);
RatVector scale(const Rational& s, const RatVector& v);
RatVector negate(const RatVector& v);
bool is_zero(const RatVector& v);

/// a ++ b
RatVector concat(const RatVector& a, const RatVector& b);

/// Coordinates [first, first + count).
RatVector slice(const RatVector& v, std::size_t first, std::size_t count);

/// Rank of the row set, by exact Gaussian elimination.
std::size_t rank(std::vector<RatVector> rows, std::size_t cols);

/// Solves the square system M y = rhs; empty result when singular.
std::vector<Rational> solve_square(std::vector<RatVector> m, RatVector rhs);

}  // namespace evco
