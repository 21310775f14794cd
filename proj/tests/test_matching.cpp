#include <doctest.h>

#include <random>

#include "parclust/matching.hpp"
#include "parclust/oracle.hpp"

using namespace parclust;

namespace {

WeightedCompleteGraph random_graph(std::mt19937_64 &rng, int n) {
    auto g = WeightedCompleteGraph::make(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) g.set(a, b, Rat(static_cast<int>(rng() % 50)));
    return g;
}

}  // namespace

TEST_CASE("min_cost_perfect_matching basics") {
    SUBCASE("empty graph") {
        auto m = min_cost_perfect_matching(WeightedCompleteGraph::make(0));
        CHECK(m.edges.empty());
        CHECK(m.cost == Rat(0));
    }
    SUBCASE("single edge") {
        auto g = WeightedCompleteGraph::make(2);
        g.set(0, 1, Rat(7));
        auto m = min_cost_perfect_matching(g);
        CHECK(m.edges == std::vector<std::pair<int, int>>{{0, 1}});
        CHECK(m.cost == Rat(7));
    }
    SUBCASE("K4 picks the cheapest of the three matchings") {
        auto g = WeightedCompleteGraph::make(4);
        g.set(0, 1, Rat(1));
        g.set(2, 3, Rat(1));
        g.set(0, 2, Rat(2));
        g.set(1, 3, Rat(2));
        g.set(0, 3, Rat(5));
        g.set(1, 2, Rat(5));
        auto m = min_cost_perfect_matching(g);
        CHECK(m.cost == Rat(2));
        CHECK(m.edges == std::vector<std::pair<int, int>>{{0, 1}, {2, 3}});
    }
    SUBCASE("odd vertex count is an error") {
        CHECK_THROWS_AS(min_cost_perfect_matching(WeightedCompleteGraph::make(3)),
                        std::invalid_argument);
    }
}

TEST_CASE("matching equals brute force on random graphs") {
    std::mt19937_64 rng(42);
    for (int iter = 0; iter < 200; ++iter) {
        int n = 2 * (1 + static_cast<int>(rng() % 5));  // 2..10
        auto g = random_graph(rng, n);
        auto fast = min_cost_perfect_matching(g);
        auto slow = brute_matching(g);
        CHECK(fast.cost == slow.cost);
        // validity: disjoint cover
        std::vector<bool> seen(n, false);
        for (auto [a, b] : fast.edges) {
            CHECK(!seen[a]);
            CHECK(!seen[b]);
            seen[a] = seen[b] = true;
        }
        CHECK(std::count(seen.begin(), seen.end(), true) == n);
    }
}

TEST_CASE("scaling weights scales the cost and keeps the tie rule") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 20; ++iter) {
        auto g = random_graph(rng, 8);
        auto m1 = min_cost_perfect_matching(g);
        auto g2 = g;
        for (int a = 0; a < 8; ++a)
            for (int b = a + 1; b < 8; ++b) g2.set(a, b, g.w(a, b) * 3);
        auto m2 = min_cost_perfect_matching(g2);
        CHECK(m2.cost == m1.cost * 3);
        CHECK(m2.edges == m1.edges);
    }
}
