#include <doctest.h>

#include <random>

#include "parclust/oracle.hpp"
#include "parclust/tjoin.hpp"

using namespace parclust;

TEST_CASE("is_tjoin degree parity") {
    WeightedGraph tri;
    tri.n = 3;
    tri.add_edge(0, 1, Rat(1));
    tri.add_edge(1, 2, Rat(1));
    tri.add_edge(0, 2, Rat(1));
    CHECK(is_tjoin(tri, {}, {}));
    CHECK(is_tjoin(tri, {0, 1}, {0}));
    CHECK(!is_tjoin(tri, {0, 1}, {0, 1}));
}

TEST_CASE("min_cost_tjoin basics") {
    SUBCASE("empty T") {
        WeightedGraph g;
        g.n = 2;
        g.add_edge(0, 1, Rat(1));
        auto r = min_cost_tjoin(g, {});
        CHECK(r.edge_set.empty());
        CHECK(r.total_cost == Rat(0));
    }
    SUBCASE("path endpoints force both edges") {
        WeightedGraph g;
        g.n = 3;
        g.add_edge(0, 1, Rat(1));
        g.add_edge(1, 2, Rat(1));
        auto r = min_cost_tjoin(g, {0, 2});
        CHECK(r.edge_set == std::vector<int>{0, 1});
        CHECK(r.total_cost == Rat(2));
    }
    SUBCASE("triangle takes the direct edge") {
        WeightedGraph g;
        g.n = 3;
        g.add_edge(0, 1, Rat(1));
        g.add_edge(1, 2, Rat(1));
        g.add_edge(0, 2, Rat(1));
        auto r = min_cost_tjoin(g, {0, 1});
        CHECK(r.edge_set == std::vector<int>{0});
    }
    SUBCASE("odd T is an error") {
        WeightedGraph g;
        g.n = 2;
        g.add_edge(0, 1, Rat(1));
        CHECK_THROWS_AS(min_cost_tjoin(g, {0}), std::invalid_argument);
    }
    SUBCASE("disconnected T pair is an error") {
        WeightedGraph g;
        g.n = 4;
        g.add_edge(0, 1, Rat(1));
        g.add_edge(2, 3, Rat(1));
        CHECK_THROWS(min_cost_tjoin(g, {0, 2}));
        // ...but T split evenly across components is fine
        auto r = min_cost_tjoin(g, {0, 1, 2, 3});
        CHECK(r.total_cost == Rat(2));
    }
    SUBCASE("pairwise T equals shortest path") {
        WeightedGraph g;
        g.n = 4;
        g.add_edge(0, 1, Rat(5));
        g.add_edge(0, 2, Rat(1));
        g.add_edge(2, 3, Rat(1));
        g.add_edge(3, 1, Rat(1));
        auto r = min_cost_tjoin(g, {0, 1});
        CHECK(r.total_cost == Rat(3));
    }
}

TEST_CASE("t-join equals brute force on random graphs") {
    std::mt19937_64 rng(123);
    for (int iter = 0; iter < 200; ++iter) {
        int n = 2 + static_cast<int>(rng() % 7);  // 2..8
        int m = static_cast<int>(rng() % 17);     // 0..16
        WeightedGraph g;
        g.n = n;
        for (int e = 0; e < m; ++e) {
            int u = static_cast<int>(rng() % n), v = static_cast<int>(rng() % n);
            if (u == v) continue;
            g.add_edge(u, v, Rat(static_cast<int>(rng() % 20)));
        }
        std::vector<int> T;
        for (int v = 0; v < n; ++v)
            if (rng() % 2) T.push_back(v);
        if (T.size() % 2 == 1) T.pop_back();

        bool brute_ok = true;
        TJoinResult slow;
        try {
            slow = brute_tjoin(g, T);
        } catch (const std::runtime_error &) {
            brute_ok = false;
        }
        if (!brute_ok) {
            CHECK_THROWS(min_cost_tjoin(g, T));
            continue;
        }
        auto fast = min_cost_tjoin(g, T);
        CHECK(fast.total_cost == slow.total_cost);
        CHECK(is_tjoin(g, T, fast.edge_set));
    }
}

TEST_CASE("adding an edge never increases the minimum cost") {
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 30; ++iter) {
        WeightedGraph g;
        g.n = 5;
        for (int e = 0; e < 6; ++e) {
            int u = static_cast<int>(rng() % 5), v = static_cast<int>(rng() % 5);
            if (u != v) g.add_edge(u, v, Rat(static_cast<int>(rng() % 10)));
        }
        // ensure connectivity of T by using a spanning path
        for (int v = 0; v + 1 < 5; ++v) g.add_edge(v, v + 1, Rat(static_cast<int>(rng() % 10)));
        std::vector<int> T{0, 3};
        auto before = min_cost_tjoin(g, T);
        g.add_edge(0, 3, Rat(static_cast<int>(rng() % 10)));
        auto after = min_cost_tjoin(g, T);
        CHECK(after.total_cost <= before.total_cost);
    }
}
