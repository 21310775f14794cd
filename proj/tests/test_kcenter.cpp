#include <doctest.h>

#include "parclust/generator.hpp"
#include "parclust/kcenter.hpp"
#include "parclust/oracle.hpp"

using namespace parclust;

namespace {

KCenterInstance matrix_instance(std::vector<ParityLabel> parity, std::vector<std::vector<double>> m,
                                int k) {
    KCenterInstance inst;
    inst.k = k;
    for (size_t v = 0; v < parity.size(); ++v) inst.ids.push_back("v" + std::to_string(v));
    inst.parity = std::move(parity);
    inst.matrix = std::move(m);
    return inst;
}

KCenterInstance line_instance(const std::vector<int> &pos, std::vector<ParityLabel> parity, int k) {
    const int n = static_cast<int>(pos.size());
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) m[a][b] = std::abs(pos[a] - pos[b]);
    return matrix_instance(std::move(parity), std::move(m), k);
}

KCenterInstance random_kc(std::uint64_t seed, int n, int k) {
    GenParams p;
    p.nd = n;
    p.k = k;
    p.seed = seed;
    p.geometry = seed % 2 ? "euclidean" : "random-metric";
    return generate_kcenter_instance(p);
}

}  // namespace

TEST_CASE("build_threshold_graph") {
    auto inst = line_instance({0, 1, 3}, {ParityLabel::odd, ParityLabel::odd, ParityLabel::odd}, 1);
    SUBCASE("tau 0 gives singletons") {
        auto g = build_threshold_graph(inst, 0.0);
        CHECK(g.components.size() == 3);
        for (const auto &a : g.adj) CHECK(a.empty());
    }
    SUBCASE("tau at the diameter gives one complete component") {
        auto g = build_threshold_graph(inst, 3.0);
        CHECK(g.components.size() == 1);
        CHECK(g.adj[0].size() == 2);
    }
    SUBCASE("tau 1 keeps only the near pair") {
        auto g = build_threshold_graph(inst, 1.0);
        REQUIRE(g.components.size() == 2);
        CHECK(g.components[0] == std::vector<int>{0, 1});
        CHECK(g.components[1] == std::vector<int>{2});
    }
}

TEST_CASE("initial_centers_tree") {
    SUBCASE("single node") {
        auto t = initial_centers_tree({{}});
        CHECK(t.centers == std::vector<int>{0});
        CHECK(t.sigma[0] == 0);
    }
    SUBCASE("path of four nodes") {
        // a-b-c-d: greedy from a picks d at hop distance 3
        std::vector<std::vector<int>> adj{{1}, {0, 2}, {1, 3}, {2}};
        auto t = initial_centers_tree(adj);
        CHECK(t.centers == std::vector<int>{0, 3});
        CHECK(t.parent[3] == 0);
        CHECK(t.sigma[1] == 0);
        CHECK(t.sigma[2] == 3);
    }
    SUBCASE("star collapses to one center") {
        std::vector<std::vector<int>> adj{{1, 2, 3}, {0}, {0}, {0}};
        auto t = initial_centers_tree(adj);
        CHECK(t.centers == std::vector<int>{0});
        for (int v = 0; v < 4; ++v) CHECK(t.sigma[v] == 0);
    }
}

TEST_CASE("solve_component") {
    SUBCASE("lone even node is infeasible") {
        CHECK(!solve_component({{}}, {ParityLabel::even}).has_value());
    }
    SUBCASE("lone odd node is itself") {
        auto s = solve_component({{}}, {ParityLabel::odd});
        REQUIRE(s.has_value());
        CHECK(s->centers == std::vector<int>{0});
    }
    SUBCASE("two adjacent even nodes share one center") {
        auto s = solve_component({{1}, {0}}, {ParityLabel::even, ParityLabel::even});
        REQUIRE(s.has_value());
        CHECK(s->centers == std::vector<int>{0});
        CHECK(s->sigma == std::vector<int>{0, 0});
    }
    SUBCASE("two adjacent odd nodes open both") {
        auto s = solve_component({{1}, {0}}, {ParityLabel::odd, ParityLabel::odd});
        REQUIRE(s.has_value());
        CHECK(s->centers == std::vector<int>{0, 1});
        CHECK(s->sigma == std::vector<int>{0, 1});
    }
}

TEST_CASE("solve_kcenter") {
    SUBCASE("k = n with all odd is radius zero") {
        auto inst = line_instance({0, 5, 9},
                                  {ParityLabel::odd, ParityLabel::odd, ParityLabel::odd}, 3);
        auto r = solve_kcenter(inst);
        REQUIRE(r.has_value());
        CHECK(r->radius == 0.0);
        CHECK(r->centers == std::vector<int>{0, 1, 2});
    }
    SUBCASE("two far pairs, all even, k = 2") {
        auto inst = line_instance(
            {0, 1, 10, 11},
            {ParityLabel::even, ParityLabel::even, ParityLabel::even, ParityLabel::even}, 2);
        auto r = solve_kcenter(inst);
        REQUIRE(r.has_value());
        CHECK(r->radius == 1.0);
        CHECK(r->realized == 1.0);
    }
    SUBCASE("globally infeasible parity structure") {
        auto inst = line_instance({0, 1, 2}, {ParityLabel::even, ParityLabel::even,
                                              ParityLabel::even}, 3);
        CHECK(!solve_kcenter(inst).has_value());
        CHECK(!exact_kcenter(inst).has_value());
    }
    SUBCASE("random instances: parity, budget, ratio 6, scan agreement") {
        int feasible = 0;
        for (std::uint64_t seed = 0; seed < 120; ++seed) {
            int n = 2 + static_cast<int>(seed % 9);
            int k = 1 + static_cast<int>(seed % 3);
            auto inst = random_kc(seed, n, k);
            auto fast = solve_kcenter(inst, false);
            auto slow = solve_kcenter(inst, true);
            auto opt = exact_kcenter(inst);
            CHECK(fast.has_value() == slow.has_value());
            CHECK(fast.has_value() == opt.has_value());
            if (!fast) continue;
            ++feasible;
            CHECK(fast->radius == slow->radius);
            CHECK(fast->realized == slow->realized);
            CHECK(static_cast<int>(fast->centers.size()) <= k);
            // parity of every open center
            std::vector<int> cnt(n, 0);
            for (int v = 0; v < n; ++v) ++cnt[fast->assign[v]];
            for (int c : fast->centers)
                if (inst.parity[c] != ParityLabel::unconstrained)
                    CHECK((inst.parity[c] == ParityLabel::odd) == (cnt[c] % 2 == 1));
            CHECK(fast->realized <= 6.0 * opt->radius + 1e-9);
        }
        CHECK(feasible > 60);
    }
}
