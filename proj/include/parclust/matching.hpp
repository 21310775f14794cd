#pragma once

#include <vector>

#include "parclust/common.hpp"

namespace parclust {

struct WeightedCompleteGraph {
    int n = 0;
    std::vector<std::vector<Rat>> weight;  // n x n, symmetric, zero diagonal

    static WeightedCompleteGraph make(int n);
    void set(int u, int v, Rat w);
    const Rat &w(int u, int v) const { return weight[u][v]; }
};

struct Matching {
    std::vector<std::pair<int, int>> edges;  // u < v, sorted
    Rat cost;
};

// Exact minimum-weight perfect matching (blossom, O(n^3) primal-dual).
// Ties broken toward the lexicographically earliest edge set via symbolic
// epsilon * rank(edge) perturbation. Throws for odd n.
Matching min_cost_perfect_matching(const WeightedCompleteGraph &g);

}  // namespace parclust
