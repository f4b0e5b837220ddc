#pragma once

// Test-only term-by-term re-implementation of the 21-point coefficient
// families, independent of the production assembly (which composes the
// two-stage flux form). Kept strictly to the grouped per-family
// expressions so the two routes share no code.

#include "willmore/linsolve.hpp"
#include "willmore/stencil.hpp"

namespace willmore::oracle {

// coefficient A^{rs} of row (i,j); requires 2 <= i,j <= n-2
double coefficient(const LevelSetField& f, const StencilQuantities& st, double tau,
                   int i, int j, int r, int s);

SparseSystem assemble(const LevelSetField& f, const StencilQuantities& st, double tau);

}  // namespace willmore::oracle
