#pragma once

#include <optional>

#include "parclust/kcenter_types.hpp"

namespace parclust {

// Unweighted graph with edges between nodes at distance <= tau.
struct ThresholdGraph {
    double tau = 0.0;
    std::vector<std::vector<int>> adj;
    std::vector<std::vector<int>> components;  // ascending node lists
};

ThresholdGraph build_threshold_graph(const KCenterInstance &inst, double tau);

// Greedy dominating set of a connected unweighted graph (local indices):
// centers pairwise at hop distance >= 3, every node within hop distance 2 of
// its center, tree edges joining centers at hop distance exactly 3.
struct CenterTree {
    std::vector<int> centers;  // insertion order
    std::vector<int> parent;   // per node; -1 for non-centers and the start
    std::vector<int> sigma;    // per node -> its center
};

CenterTree initial_centers_tree(const std::vector<std::vector<int>> &adj);

struct ComponentSolution {
    std::vector<int> centers;  // sorted local indices
    std::vector<int> sigma;    // per node -> open center
};

// Parity-feasible center selection on one connected component, or nullopt
// when none exists (odd node count, all labels even). Requires odd/even
// labels only; every node ends within hop distance 6 of its center.
std::optional<ComponentSolution> solve_component(const std::vector<std::vector<int>> &adj,
                                                 const std::vector<ParityLabel> &parity);

struct KCenterResult {
    double radius = 0.0;    // chosen threshold
    double realized = 0.0;  // max c(sigma(v), v) in the output
    std::vector<int> centers;
    std::vector<int> assign;
};

// Bottleneck driver: smallest candidate threshold (0 or a pairwise
// distance) at which every component is solvable with at most k centers in
// total. The realized radius is at most 6x the exact optimum. `linear_scan`
// replaces the binary search by an ascending scan (cross-validation).
std::optional<KCenterResult> solve_kcenter(const KCenterInstance &inst, bool linear_scan = false);

}  // namespace parclust
