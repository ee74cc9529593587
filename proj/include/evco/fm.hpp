#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "evco/polyhedron.hpp"

namespace evco {

/// Where an output row of a Fourier-Motzkin step came from: a copied row
/// (second parent empty) or the positive combination of a row with a positive
/// and a row with a negative coefficient on the eliminated variable.
struct FmDerivation {
  std::size_t first = 0;
  std::optional<std::size_t> second;
};

struct FmTrace {
  EPolyhedron result;  // raw rows, one per derivation, before any clean-up
  std::vector<FmDerivation> derivations;
};

/// One Fourier-Motzkin step with the derivation of every output row. A row
/// is Strict iff at least one parent is Strict.
FmTrace fm_eliminate_traced(const EPolyhedron& p, std::size_t var_index);

/// Projection of P onto the coordinates other than var_index. The output is
/// normalized: tautologies dropped, a violated constant row collapses the
/// result to the canonical empty polyhedron.
EPolyhedron fm_eliminate(const EPolyhedron& p, std::size_t var_index);

/// Projects out every coordinate in `vars` (the survivors keep their
/// relative order). Uses equality substitution when the system contains a
/// weak pair <a,x> <= b, <-a,x> <= -b touching the variable, otherwise the
/// cheapest Fourier-Motzkin step, with LP-based redundancy pruning between
/// steps.
EPolyhedron project_out(const EPolyhedron& p, std::vector<std::size_t> vars);

/// Keeps the first `keep` coordinates.
EPolyhedron project_prefix(const EPolyhedron& p, std::size_t keep);

}  // namespace evco
