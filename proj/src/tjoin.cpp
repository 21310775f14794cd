#include "parclust/tjoin.hpp"

#include <algorithm>
#include <optional>
#include <queue>

#include "parclust/matching.hpp"

namespace parclust {

void WeightedGraph::add_edge(int u, int v, Rat cost) {
    if (cost < 0) throw std::invalid_argument("edge costs must be nonnegative");
    if (u < 0 || u >= n || v < 0 || v >= n)
        throw std::invalid_argument("edge endpoint out of range");
    edges.push_back({u, v, std::move(cost)});
}

bool is_tjoin(const WeightedGraph &g, const std::vector<int> &T,
              const std::vector<int> &edges) {
    std::vector<int> deg(g.n, 0);
    for (int ei : edges) {
        ++deg[g.edges[ei].u];
        ++deg[g.edges[ei].v];
    }
    std::vector<bool> in_t(g.n, false);
    for (int v : T) in_t[v] = true;
    for (int v = 0; v < g.n; ++v)
        if ((deg[v] % 2 == 1) != in_t[v]) return false;
    return true;
}

namespace {

struct ShortestPaths {
    std::vector<std::optional<Rat>> dist;
    std::vector<int> parent_edge;  // incoming edge index on a shortest path
};

ShortestPaths dijkstra(const WeightedGraph &g,
                       const std::vector<std::vector<int>> &inc, int src) {
    ShortestPaths sp;
    sp.dist.assign(g.n, std::nullopt);
    sp.parent_edge.assign(g.n, -1);
    sp.dist[src] = Rat(0);
    using Item = std::pair<Rat, int>;
    auto cmp = [](const Item &a, const Item &b) {
        return a.first > b.first || (a.first == b.first && a.second > b.second);
    };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
    pq.push({Rat(0), src});
    std::vector<bool> done(g.n, false);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = true;
        for (int ei : inc[u]) {
            const auto &e = g.edges[ei];
            int v = e.u == u ? e.v : e.u;
            Rat nd = d + e.cost;
            if (!sp.dist[v] || nd < *sp.dist[v]) {
                sp.dist[v] = nd;
                sp.parent_edge[v] = ei;
                pq.push({nd, v});
            }
        }
    }
    return sp;
}

}  // namespace

TJoinResult min_cost_tjoin(const WeightedGraph &g, const std::vector<int> &T) {
    if (T.size() % 2 != 0)
        throw std::invalid_argument("T must have even cardinality");

    std::vector<std::vector<int>> inc(g.n);
    for (int ei = 0; ei < static_cast<int>(g.edges.size()); ++ei) {
        inc[g.edges[ei].u].push_back(ei);
        inc[g.edges[ei].v].push_back(ei);
    }

    std::vector<ShortestPaths> sp;
    sp.reserve(T.size());
    for (int t : T) sp.push_back(dijkstra(g, inc, t));

    // T vertices must pair up within connected components.
    for (size_t a = 0; a < T.size(); ++a) {
        int reachable = 0;
        for (size_t b = 0; b < T.size(); ++b)
            if (sp[a].dist[T[b]]) ++reachable;
        if (reachable % 2 != 0)
            throw InfeasibleError("no T-join exists: vertex " + std::to_string(T[a]) +
                                     " lies in a component with an odd number of T vertices");
    }

    const int k = static_cast<int>(T.size());
    // Matching on T with path distances. Cross-component pairs get a weight
    // larger than any sum of real paths, so an optimal matching never uses
    // them (components are individually even, so a within-component matching
    // exists).
    Rat big(1);
    for (const auto &e : g.edges) big += e.cost;
    big *= k + 1;
    auto cg = WeightedCompleteGraph::make(k);
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            cg.set(a, b, sp[a].dist[T[b]] ? *sp[a].dist[T[b]] : big);
    Matching m = min_cost_perfect_matching(cg);

    std::vector<int> parity(g.edges.size(), 0);
    for (auto [a, b] : m.edges) {
        PARCLUST_CHECK(sp[a].dist[T[b]].has_value(), "matching used a cross-component pair");
        // walk the shortest path from T[b] back to T[a]
        int v = T[b];
        while (v != T[a]) {
            int ei = sp[a].parent_edge[v];
            parity[ei] ^= 1;
            v = g.edges[ei].u == v ? g.edges[ei].v : g.edges[ei].u;
        }
    }

    TJoinResult res;
    res.total_cost = Rat(0);
    for (int ei = 0; ei < static_cast<int>(g.edges.size()); ++ei)
        if (parity[ei]) {
            res.edge_set.push_back(ei);
            res.total_cost += g.edges[ei].cost;
        }
    PARCLUST_CHECK(is_tjoin(g, T, res.edge_set), "reduction produced a non-T-join");
    return res;
}

}  // namespace parclust
