#include <doctest.h>

#include "helpers.hpp"
#include "parclust/oracle.hpp"
#include "parclust/parity_fl.hpp"

using namespace parclust;
using namespace parclust::testing;

namespace {

UflResult initial_of(std::vector<int> open, std::vector<int> assign) {
    UflResult r;
    r.solution.open = std::move(open);
    r.solution.assign = std::move(assign);
    return r;
}

}  // namespace

TEST_CASE("solve_all_even") {
    SUBCASE("gap instance costs 1 in every trial") {
        auto inst = gap_instance();
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            auto sol = solve_all_even(inst, seed, 1);
            CHECK(solution_cost(inst, sol) == Rat(1));
            CHECK(parity_violations(inst, sol).empty());
        }
    }
    SUBCASE("no clients") {
        auto inst = make_instance({fac("f0", 1, ParityLabel::even)}, 0, {{0}});
        CHECK(solve_all_even(inst, 0, 4).open.empty());
    }
    SUBCASE("two co-located clients") {
        auto inst = make_instance({fac("f0", 0, ParityLabel::even)}, 2,
                                  {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}});
        CHECK(solution_cost(inst, solve_all_even(inst, 0, 4)) == Rat(0));
    }
    SUBCASE("odd client count is infeasible") {
        auto inst = make_instance({fac("f0", 0, ParityLabel::even)}, 1, {{0, 1}, {1, 0}});
        CHECK_THROWS_AS(solve_all_even(inst, 0, 4), InfeasibleError);
    }
    SUBCASE("odd labels are rejected") {
        auto inst = make_instance({fac("f0", 0, ParityLabel::odd)}, 2,
                                  {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
        CHECK_THROWS_AS(solve_all_even(inst, 0, 4), std::invalid_argument);
    }
}

TEST_CASE("build_auxiliary_graph") {
    SUBCASE("gap instance: one reassign edge, T covers both facilities") {
        auto inst = gap_instance();
        auto initial = solve_ufl(inst);
        REQUIRE(initial.solution.open == std::vector<int>{0, 1});
        auto aux = build_auxiliary_graph(inst, initial);
        CHECK(aux.s_inv == std::vector<int>{0, 1});
        CHECK(aux.T == std::vector<int>{0, 1});
        REQUIRE(aux.edges.size() == 1);
        CHECK(aux.edges[0].kind == AuxiliaryGraph::EdgeKind::reassign);
        CHECK(aux.edges[0].gamma == Rat(1));
    }
    SUBCASE("closed odd facility gets an opening edge priced at f") {
        auto inst = make_instance({fac("f0", 0, ParityLabel::even), fac("f1", 4, ParityLabel::odd)},
                                  2, {{0, 1, 0, 0}, {1, 0, 1, 1}, {0, 1, 0, 0}, {0, 1, 0, 0}});
        auto aux = build_auxiliary_graph(inst, initial_of({0}, {0, 0}));
        bool found = false;
        for (const auto &e : aux.edges)
            if (e.kind == AuxiliaryGraph::EdgeKind::opening) {
                found = true;
                CHECK(e.b == 1);
                CHECK(e.gamma == Rat(4));
            }
        CHECK(found);
    }
    SUBCASE("closing edge takes the cheaper branch of the two") {
        // f0 odd open with 3 clients; f1 open at distance 2; f2 even closed
        // at distance 1 with opening cost 10: gamma = min(3*2, 3*1+10) = 6
        auto inst = make_instance(
            {fac("f0", 0, ParityLabel::odd), fac("f1", 0, ParityLabel::odd),
             fac("f2", 10, ParityLabel::even)},
            4,
            {{0, 2, 1, 0, 0, 0, 2},
             {2, 0, 3, 2, 2, 2, 0},
             {1, 3, 0, 1, 1, 1, 3},
             {0, 2, 1, 0, 0, 0, 2},
             {0, 2, 1, 0, 0, 0, 2},
             {0, 2, 1, 0, 0, 0, 2},
             {2, 0, 3, 2, 2, 2, 0}});
        auto aux = build_auxiliary_graph(inst, initial_of({0, 1}, {0, 0, 0, 1}));
        bool found = false;
        for (const auto &e : aux.edges)
            if (e.kind == AuxiliaryGraph::EdgeKind::closing && e.b == 0) {
                found = true;
                CHECK(e.gamma == Rat(6));
                CHECK(aux.substitute.at(0) == 1);
                CHECK(!aux.substitute_is_closed.at(0));
            }
        CHECK(found);
    }
    SUBCASE("closing edges are withheld under the finiteness guard") {
        // one open odd facility, no even closed facility: no closing edge
        auto inst = make_instance({fac("f0", 0, ParityLabel::odd)}, 2,
                                  {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
        auto aux = build_auxiliary_graph(inst, initial_of({0}, {0, 0}));
        for (const auto &e : aux.edges) CHECK(e.kind != AuxiliaryGraph::EdgeKind::closing);
    }
}

TEST_CASE("sparsify_tjoin") {
    // three co-located even facilities, two holding one client each: the
    // middle one is valid, the outer two invalid
    auto inst = make_instance(
        {fac("f0", 0, ParityLabel::even), fac("f1", 0, ParityLabel::even),
         fac("f2", 0, ParityLabel::even)},
        4,
        {{0, 1, 1, 0, 0, 1, 1},
         {1, 0, 2, 1, 1, 0, 2},
         {1, 2, 0, 1, 1, 2, 0},
         {0, 1, 1, 0, 0, 1, 1},
         {0, 1, 1, 0, 0, 1, 1},
         {1, 0, 2, 1, 1, 0, 2},
         {1, 2, 0, 1, 1, 2, 0}});
    auto initial = initial_of({0, 1, 2}, {0, 0, 1, 2});
    auto aux = build_auxiliary_graph(inst, initial);
    REQUIRE(aux.s_inv == std::vector<int>{1, 2});
    REQUIRE(aux.T == std::vector<int>{1, 2});

    SUBCASE("empty join is a fixpoint") {
        TJoinResult empty;
        empty.total_cost = Rat(0);
        // empty is only a T-join when T is empty; use a valid initial instead
        auto aux0 = build_auxiliary_graph(inst, initial_of({0}, {0, 0, 0, 0}));
        CHECK(aux0.T.empty());
        auto out = sparsify_tjoin(aux0, empty);
        CHECK(out.edge_set.empty());
    }
    SUBCASE("path shortcut merges two facility edges") {
        TJoinResult join;
        join.edge_set = {aux.reassign_index.at({0, 1}), aux.reassign_index.at({0, 2})};
        join.total_cost = Rat(2);
        auto out = sparsify_tjoin(aux, join);
        CHECK(out.edge_set == std::vector<int>{aux.reassign_index.at({1, 2})});
        CHECK(out.total_cost <= join.total_cost);
    }
    SUBCASE("cycles are deleted") {
        auto aux0 = build_auxiliary_graph(inst, initial_of({0}, {0, 0, 0, 0}));
        TJoinResult join;
        join.edge_set = {aux0.reassign_index.at({0, 1}), aux0.reassign_index.at({0, 2}),
                         aux0.reassign_index.at({1, 2})};
        std::sort(join.edge_set.begin(), join.edge_set.end());
        join.total_cost = Rat(5);
        auto out = sparsify_tjoin(aux0, join);
        CHECK(out.edge_set.empty());
    }
    SUBCASE("non-T-join input is rejected") {
        TJoinResult join;
        join.edge_set = {aux.reassign_index.at({0, 1})};
        join.total_cost = Rat(1);
        CHECK_THROWS_AS(sparsify_tjoin(aux, join), ContractViolation);
    }
}

TEST_CASE("apply_correction") {
    SUBCASE("gap instance: one reassign edge moves one client") {
        auto inst = gap_instance();
        auto initial = solve_ufl(inst);
        auto aux = build_auxiliary_graph(inst, initial);
        TJoinResult join;
        join.edge_set = {aux.reassign_index.at({0, 1})};
        join.total_cost = Rat(1);
        auto sol = apply_correction(inst, initial, aux, join);
        CHECK(solution_cost(inst, sol) == Rat(1));
        CHECK(parity_violations(inst, sol).empty());
    }
    SUBCASE("empty join returns the initial solution") {
        auto inst = make_instance({fac("f0", 0, ParityLabel::even)}, 2,
                                  {{0, 1, 1}, {1, 0, 2}, {1, 2, 0}});
        auto initial = initial_of({0}, {0, 0});
        auto aux = build_auxiliary_graph(inst, initial);
        TJoinResult join;
        join.total_cost = Rat(0);
        auto sol = apply_correction(inst, initial, aux, join);
        CHECK(sol.open == initial.solution.open);
        CHECK(sol.assign == initial.solution.assign);
    }
    SUBCASE("a lone opening edge trips the assertion machinery") {
        auto inst = make_instance({fac("f0", 0, ParityLabel::even), fac("f1", 4, ParityLabel::odd)},
                                  2, {{0, 1, 0, 0}, {1, 0, 1, 1}, {0, 1, 0, 0}, {0, 1, 0, 0}});
        auto initial = initial_of({0}, {0, 0});
        auto aux = build_auxiliary_graph(inst, initial);
        int opening = -1;
        for (size_t e = 0; e < aux.edges.size(); ++e)
            if (aux.edges[e].kind == AuxiliaryGraph::EdgeKind::opening)
                opening = static_cast<int>(e);
        REQUIRE(opening >= 0);
        TJoinResult join;
        join.edge_set = {opening};
        join.total_cost = Rat(4);
        CHECK_THROWS_AS(apply_correction(inst, initial, aux, join), ContractViolation);
    }
}

TEST_CASE("solve_general") {
    SUBCASE("gap instance costs exactly 1") {
        GeneralSolveTrace trace;
        auto sol = solve_general(gap_instance(), &trace);
        CHECK(solution_cost(gap_instance(), sol) == Rat(1));
        CHECK(trace.correction_applied);
        REQUIRE(trace.tjoin_cost.has_value());
        CHECK(*trace.tjoin_cost == Rat(1));
    }
    SUBCASE("already-feasible initial solution is returned unchanged") {
        auto inst = make_instance({fac("f0", 0, ParityLabel::even)}, 2,
                                  {{0, 1, 1}, {1, 0, 2}, {1, 2, 0}});
        GeneralSolveTrace trace;
        auto sol = solve_general(inst, &trace);
        CHECK(!trace.correction_applied);
        CHECK(sol.open == std::vector<int>{0});
    }
    SUBCASE("precheck-infeasible instances throw") {
        auto inst = make_instance({fac("f0", 0, ParityLabel::odd)}, 2,
                                  {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
        CHECK_THROWS_AS(solve_general(inst), InfeasibleError);
    }
    SUBCASE("random instances stay feasible and within ratio 11") {
        int solved = 0;
        for (std::uint64_t seed = 0; seed < 80; ++seed) {
            int nf = 1 + static_cast<int>(seed % 4);
            int nd = static_cast<int>(seed % 7);
            Instance inst;
            try {
                inst = random_fl(seed, nf, nd, "1:1:0");
            } catch (const std::runtime_error &) {
                continue;  // no feasible draw for this shape
            }
            auto sol = solve_general(inst);
            CHECK(parity_violations(inst, sol).empty());
            if (nd == 0) continue;
            auto opt = exact_fl(inst);
            REQUIRE(opt.has_value());
            CHECK(solution_cost(inst, sol) <= 11 * opt->optimum_value);
            ++solved;
        }
        CHECK(solved > 40);
    }
}

TEST_CASE("solve_fl dispatch") {
    SUBCASE("all-even mode rejects odd labels") {
        auto inst = make_instance({fac("f0", 0, ParityLabel::odd)}, 1, {{0, 1}, {1, 0}});
        SolverConfig cfg;
        cfg.mode = SolverConfig::Mode::all_even;
        CHECK_THROWS_AS(solve_fl(inst, cfg), std::invalid_argument);
    }
    SUBCASE("unconstrained labels are reduced and lifted") {
        auto inst = make_instance(
            {fac("f0", 2, ParityLabel::unconstrained), fac("f1", 0, ParityLabel::odd)}, 3,
            {{0, 4, 1, 1, 4}, {4, 0, 4, 4, 0}, {1, 4, 0, 0, 4}, {1, 4, 0, 0, 4}, {4, 0, 4, 4, 0}});
        auto sol = solve_fl(inst);
        CHECK(parity_violations(inst, sol).empty());
        auto opt = exact_fl(inst);
        REQUIRE(opt.has_value());
        CHECK(solution_cost(inst, sol) <= 11 * opt->optimum_value);
    }
    SUBCASE("infeasible instances throw before solving") {
        auto inst = make_instance({fac("f0", 0, ParityLabel::even)}, 3,
                                  {{0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 1}, {1, 1, 1, 0}});
        CHECK_THROWS_AS(solve_fl(inst), InfeasibleError);
    }
}
