#pragma once

#include <string>
#include <vector>

#include "parclust/common.hpp"

namespace parclust {

// Undirected graph with nonnegative edge costs; parallel edges permitted.
struct WeightedGraph {
    struct Edge {
        int u, v;
        Rat cost;
    };
    int n = 0;
    std::vector<Edge> edges;

    void add_edge(int u, int v, Rat cost);
};

struct TJoinResult {
    std::vector<int> edge_set;  // edge indices, sorted
    Rat total_cost;
};

bool is_tjoin(const WeightedGraph &g, const std::vector<int> &T,
              const std::vector<int> &edges);

// Shortest-path + perfect-matching reduction. The result satisfies the
// degree-parity condition and is optimal for nonnegative costs. May contain
// cycles when shortest paths overlap; callers own cycle cleanup.
TJoinResult min_cost_tjoin(const WeightedGraph &g, const std::vector<int> &T);

}  // namespace parclust
