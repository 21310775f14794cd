#pragma once

#include "parclust/instance.hpp"

namespace parclust {

struct UflResult {
    Solution solution;
    int rho_guarantee = 3;
};

// Primal-dual 3-approximation for the unconstrained facility location
// problem (uniform dual growth, payment by tight edges, conflict resolution
// in temporary-opening order). Parity labels are ignored. The output is
// normalized: every client sits at its nearest open facility (smallest-id
// ties) and no open facility is empty.
UflResult solve_ufl(const Instance &inst);

}  // namespace parclust
