#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "parclust/instance.hpp"
#include "parclust/tjoin.hpp"
#include "parclust/ufl.hpp"

namespace parclust {

struct SolverConfig {
    enum class Mode { auto_dispatch, all_even, general };
    Mode mode = Mode::auto_dispatch;
    int trials = 16;
    std::uint64_t seed = 0;
};

// Auxiliary graph on F u {z}. Edge kinds mirror the three repair moves:
// reassigning one client between facilities, opening a closed odd facility,
// and closing an open odd facility into its substitute.
struct AuxiliaryGraph {
    enum class EdgeKind { reassign, opening, closing };

    struct Edge {
        EdgeKind kind;
        int a, b;  // vertex indices; z for opening/closing is `a`
        Rat gamma;
    };

    int nf = 0;
    int z = 0;  // vertex index of the artificial vertex (== nf)
    std::vector<Edge> edges;
    std::map<int, int> substitute;             // facility -> phi(i)
    std::map<int, bool> substitute_is_closed;  // true when phi came from the
                                               // even-closed branch (needs opening)
    std::vector<int> T;                        // vertex indices, sorted
    std::vector<int> s_inv;                    // invalid facilities, sorted

    // index of the reassign edge between two facilities
    std::map<std::pair<int, int>, int> reassign_index;
    std::map<int, int> z_edge_index;  // facility -> its z-edge, if any

    WeightedGraph as_weighted_graph() const;
};

// Randomized all-even pipeline: matching on D, random representative per
// pair, unconstrained solve on the representatives, doubled assignment.
// Keeps the best of `trials` seeded trials.
Solution solve_all_even(const Instance &inst, std::uint64_t seed, int trials);

AuxiliaryGraph build_auxiliary_graph(const Instance &inst, const UflResult &initial);

// Local rewrites until none applies: shortcut facility paths, merge closing
// pairs, delete cycles. Output is a T-join of no greater cost on which the
// sparsity conditions hold (asserted).
TJoinResult sparsify_tjoin(const AuxiliaryGraph &aux, const TJoinResult &join);

// Opening -> reassign -> closing substeps. Returns a parity-feasible
// solution of cost at most cost(initial) + gamma(join) (asserted).
Solution apply_correction(const Instance &inst, const UflResult &initial,
                          const AuxiliaryGraph &aux, const TJoinResult &join);

struct GeneralSolveTrace {
    UflResult initial;
    std::optional<AuxiliaryGraph> aux;
    std::optional<Rat> tjoin_cost;       // before sparsification
    std::optional<Rat> sparsified_cost;
    bool correction_applied = false;
};

// Full Section-4 pipeline for instances with only odd/even labels.
Solution solve_general(const Instance &inst, GeneralSolveTrace *trace = nullptr);

// Entry point accepting unconstrained labels: reduces, dispatches per the
// configured mode (auto: all-even when no odd facility remains), lifts back.
Solution solve_fl(const Instance &inst, const SolverConfig &config = {});

}  // namespace parclust
