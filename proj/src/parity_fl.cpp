#include "parclust/parity_fl.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "parclust/matching.hpp"

namespace parclust {

WeightedGraph AuxiliaryGraph::as_weighted_graph() const {
    WeightedGraph g;
    g.n = nf + 1;
    for (const auto &e : edges) g.add_edge(e.a, e.b, e.gamma);
    return g;
}

Solution solve_all_even(const Instance &inst, std::uint64_t seed, int trials) {
    for (const auto &f : inst.facilities)
        if (f.parity != ParityLabel::even)
            throw std::invalid_argument("all-even solver requires even labels only");
    if (trials < 1) throw std::invalid_argument("trials must be positive");

    Solution best;
    if (inst.nd() == 0) return best;
    if (inst.nd() % 2 == 1) throw InfeasibleError("odd client count in the all-even case");
    if (inst.nf() == 0) throw InfeasibleError("no facility to serve clients");

    // One matching, many independent representative choices.
    auto cg = WeightedCompleteGraph::make(inst.nd());
    for (int a = 0; a < inst.nd(); ++a)
        for (int b = a + 1; b < inst.nd(); ++b) cg.set(a, b, inst.d_cc(a, b));
    Matching m = min_cost_perfect_matching(cg);

    std::mt19937_64 rng(seed);
    std::optional<Rat> best_cost;
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<int> chosen, remaining;
        for (auto [a, b] : m.edges) {
            bool pick_first = (rng() & 1) == 0;
            chosen.push_back(pick_first ? a : b);
            remaining.push_back(pick_first ? b : a);
        }

        // Unconstrained sub-instance on the representatives.
        Instance sub;
        sub.facilities = inst.facilities;
        for (int j : chosen) sub.clients.push_back(inst.clients[j]);
        const int nf = inst.nf();
        const int n = nf + static_cast<int>(chosen.size());
        sub.dist.assign(n, std::vector<Rat>(n));
        auto point = [&](int p) { return p < nf ? p : nf + chosen[p - nf]; };
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) sub.dist[a][b] = inst.dist[point(a)][point(b)];

        UflResult ufl = solve_ufl(sub);
        Solution sol;
        sol.open = ufl.solution.open;
        sol.assign.assign(inst.nd(), -1);
        for (size_t e = 0; e < chosen.size(); ++e) {
            int fi = ufl.solution.assign[static_cast<int>(e)];
            sol.assign[chosen[e]] = fi;
            sol.assign[remaining[e]] = fi;  // pair follows its representative
        }
        Rat cost = solution_cost(inst, sol);
        if (!best_cost || cost < *best_cost) {
            best_cost = cost;
            best = std::move(sol);
        }
    }
    PARCLUST_CHECK(parity_violations(inst, best).empty(),
                   "all-even pipeline produced an odd cluster");
    return best;
}

AuxiliaryGraph build_auxiliary_graph(const Instance &inst, const UflResult &initial) {
    const Solution &sol = initial.solution;
    auto cnt = cluster_sizes(inst, sol);
    for (int fi : sol.open)
        PARCLUST_CHECK(cnt[fi] >= 1, "initial solution contains an empty open facility");

    AuxiliaryGraph aux;
    aux.nf = inst.nf();
    aux.z = inst.nf();
    aux.s_inv = parity_violations(inst, sol);

    auto is_odd = [&](int i) { return inst.facilities[i].parity == ParityLabel::odd; };

    // reassign edges: every facility pair
    for (int i = 0; i < aux.nf; ++i)
        for (int i2 = i + 1; i2 < aux.nf; ++i2) {
            aux.reassign_index[{i, i2}] = static_cast<int>(aux.edges.size());
            aux.edges.push_back({AuxiliaryGraph::EdgeKind::reassign, i, i2, inst.d_ff(i, i2)});
        }

    // opening edges: odd-constrained, initially closed
    for (int i = 0; i < aux.nf; ++i)
        if (is_odd(i) && !sol.is_open(i)) {
            aux.z_edge_index[i] = static_cast<int>(aux.edges.size());
            aux.edges.push_back({AuxiliaryGraph::EdgeKind::opening, aux.z, i,
                                 inst.facilities[i].open_cost});
        }

    // closing edges: odd-constrained, initially open, under the finiteness guard
    int even_closed = 0;
    for (int i = 0; i < aux.nf; ++i)
        if (!is_odd(i) && !sol.is_open(i)) ++even_closed;
    const bool closing_allowed = static_cast<int>(sol.open.size()) >= 2 || even_closed >= 1;
    if (closing_allowed) {
        for (int i = 0; i < aux.nf; ++i) {
            if (!is_odd(i) || !sol.is_open(i)) continue;
            std::optional<Rat> open_branch, closed_branch;
            int open_arg = -1, closed_arg = -1;
            for (int i2 : sol.open) {
                if (i2 == i) continue;
                Rat v = Rat(cnt[i]) * inst.d_ff(i, i2);
                if (!open_branch || v < *open_branch) {
                    open_branch = v;
                    open_arg = i2;
                }
            }
            for (int i2 = 0; i2 < aux.nf; ++i2) {
                if (is_odd(i2) || sol.is_open(i2)) continue;
                Rat v = Rat(cnt[i]) * inst.d_ff(i, i2) + inst.facilities[i2].open_cost;
                if (!closed_branch || v < *closed_branch) {
                    closed_branch = v;
                    closed_arg = i2;
                }
            }
            PARCLUST_CHECK(open_branch || closed_branch, "closing cost must be finite");
            Rat gamma;
            bool use_open;
            if (open_branch && (!closed_branch || *open_branch <= *closed_branch)) {
                gamma = *open_branch;  // ties prefer the existing-facility branch
                use_open = true;
            } else {
                gamma = *closed_branch;
                use_open = false;
            }
            aux.substitute[i] = use_open ? open_arg : closed_arg;
            aux.substitute_is_closed[i] = !use_open;
            aux.z_edge_index[i] = static_cast<int>(aux.edges.size());
            aux.edges.push_back({AuxiliaryGraph::EdgeKind::closing, aux.z, i, gamma});
        }
    }

    aux.T = aux.s_inv;
    if (aux.T.size() % 2 == 1) aux.T.push_back(aux.z);
    std::sort(aux.T.begin(), aux.T.end());
    return aux;
}

namespace {

std::vector<int> incident_in(const AuxiliaryGraph &aux, const std::set<int> &join, int v) {
    std::vector<int> out;
    for (int ei : join) {
        const auto &e = aux.edges[ei];
        if (e.a == v || e.b == v) out.push_back(ei);
    }
    return out;
}

// symmetric-difference insert: adding an edge already present cancels it
void toggle(std::set<int> &join, int ei) {
    auto it = join.find(ei);
    if (it != join.end())
        join.erase(it);
    else
        join.insert(ei);
}

// Finds any cycle in (V, join); returns its edges, or empty if acyclic.
std::vector<int> find_cycle(const AuxiliaryGraph &aux, const std::set<int> &join) {
    const int n = aux.nf + 1;
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge)
    for (int ei : join) {
        const auto &e = aux.edges[ei];
        adj[e.a].push_back({e.b, ei});
        adj[e.b].push_back({e.a, ei});
    }
    std::vector<int> state(n, 0), par_edge(n, -1), par(n, -1);
    for (int s = 0; s < n; ++s) {
        if (state[s]) continue;
        std::vector<int> stack{s};
        state[s] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (auto [v, ei] : adj[u]) {
                if (ei == par_edge[u]) continue;
                if (state[v]) {
                    // found a cycle: walk both endpoints up to their meeting point
                    std::vector<int> cyc{ei};
                    std::set<int> on_path;
                    for (int x = u; x != -1; x = par[x]) on_path.insert(x);
                    int meet = v;
                    while (!on_path.count(meet)) {
                        cyc.push_back(par_edge[meet]);
                        meet = par[meet];
                    }
                    for (int x = u; x != meet; x = par[x]) cyc.push_back(par_edge[x]);
                    return cyc;
                }
                state[v] = 1;
                par[v] = u;
                par_edge[v] = ei;
                stack.push_back(v);
            }
        }
    }
    return {};
}

void assert_sparsity(const AuxiliaryGraph &aux, const std::set<int> &join,
                     const std::vector<int> &initially_open) {
    // each facility has at most one facility neighbor
    std::vector<int> f_deg(aux.nf, 0);
    for (int ei : join) {
        const auto &e = aux.edges[ei];
        if (e.kind == AuxiliaryGraph::EdgeKind::reassign) {
            ++f_deg[e.a];
            ++f_deg[e.b];
        }
    }
    for (int i = 0; i < aux.nf; ++i)
        PARCLUST_CHECK(f_deg[i] <= 1, "sparsified join has a facility with two facility neighbors");
    auto open = [&](int i) {
        return std::binary_search(initially_open.begin(), initially_open.end(), i);
    };
    for (int ei : join) {
        const auto &e = aux.edges[ei];
        if (e.kind == AuxiliaryGraph::EdgeKind::reassign)
            PARCLUST_CHECK(open(e.a) || open(e.b),
                           "facility edge in sparsified join misses the open set");
        if (e.kind == AuxiliaryGraph::EdgeKind::closing) {
            int phi = aux.substitute.at(e.b);
            auto it = aux.z_edge_index.find(phi);
            PARCLUST_CHECK(it == aux.z_edge_index.end() || !join.count(it->second),
                           "closing edge coexists with its substitute's z-edge");
        }
    }
}

}  // namespace

TJoinResult sparsify_tjoin(const AuxiliaryGraph &aux, const TJoinResult &join) {
    WeightedGraph g = aux.as_weighted_graph();
    PARCLUST_CHECK(is_tjoin(g, aux.T, join.edge_set), "sparsify input is not a T-join");

    std::set<int> cur(join.edge_set.begin(), join.edge_set.end());
    for (;;) {
        // op (i): shortcut two facility edges sharing a facility
        bool changed = false;
        for (int i = 0; i < aux.nf && !changed; ++i) {
            std::vector<int> ff;
            for (int ei : incident_in(aux, cur, i))
                if (aux.edges[ei].kind == AuxiliaryGraph::EdgeKind::reassign)
                    ff.push_back(ei);
            if (ff.size() >= 2) {
                auto other = [&](int ei) {
                    const auto &e = aux.edges[ei];
                    return e.a == i ? e.b : e.a;
                };
                int i1 = other(ff[0]), i2 = other(ff[1]);
                cur.erase(ff[0]);
                cur.erase(ff[1]);
                toggle(cur, aux.reassign_index.at({std::min(i1, i2), std::max(i1, i2)}));
                changed = true;
            }
        }
        if (changed) continue;

        // op (ii): merge a closing edge with its substitute's z-edge
        for (int ei : std::vector<int>(cur.begin(), cur.end())) {
            const auto &e = aux.edges[ei];
            if (e.kind != AuxiliaryGraph::EdgeKind::closing) continue;
            int i = e.b;
            int phi = aux.substitute.at(i);
            auto it = aux.z_edge_index.find(phi);
            if (it != aux.z_edge_index.end() && cur.count(it->second)) {
                cur.erase(ei);
                cur.erase(it->second);
                toggle(cur, aux.reassign_index.at({std::min(i, phi), std::max(i, phi)}));
                changed = true;
                break;
            }
        }
        if (changed) continue;

        // op (iii): delete any cycle
        auto cyc = find_cycle(aux, cur);
        if (!cyc.empty()) {
            for (int ei : cyc) cur.erase(ei);
            continue;
        }
        break;
    }

    TJoinResult out;
    out.total_cost = Rat(0);
    for (int ei : cur) {
        out.edge_set.push_back(ei);
        out.total_cost += aux.edges[ei].gamma;
    }
    std::sort(out.edge_set.begin(), out.edge_set.end());
    PARCLUST_CHECK(is_tjoin(g, aux.T, out.edge_set), "sparsification broke the T-join");
    PARCLUST_CHECK(out.total_cost <= join.total_cost, "sparsification increased the cost");
    return out;
}

Solution apply_correction(const Instance &inst, const UflResult &initial,
                          const AuxiliaryGraph &aux, const TJoinResult &join) {
    assert_sparsity(aux, std::set<int>(join.edge_set.begin(), join.edge_set.end()),
                    initial.solution.open);

    std::set<int> open(initial.solution.open.begin(), initial.solution.open.end());
    std::vector<int> assign = initial.solution.assign;
    std::vector<std::set<int>> clients_of(inst.nf());
    for (int j = 0; j < inst.nd(); ++j) clients_of[assign[j]].insert(j);

    std::set<int> pending(join.edge_set.begin(), join.edge_set.end());
    auto kind_of = [&](int ei) { return aux.edges[ei].kind; };

    // substep 1: opening edges
    for (int ei : std::vector<int>(pending.begin(), pending.end())) {
        if (kind_of(ei) != AuxiliaryGraph::EdgeKind::opening) continue;
        int i = aux.edges[ei].b;
        PARCLUST_CHECK(!open.count(i), "opening edge for an already open facility");
        open.insert(i);
        pending.erase(ei);
    }

    // substep 2: reassign edges, cheapest first
    std::vector<int> reassigns;
    for (int ei : pending)
        if (kind_of(ei) == AuxiliaryGraph::EdgeKind::reassign) reassigns.push_back(ei);
    std::sort(reassigns.begin(), reassigns.end(), [&](int a, int b) {
        return aux.edges[a].gamma < aux.edges[b].gamma ||
               (aux.edges[a].gamma == aux.edges[b].gamma && a < b);
    });
    for (int ei : reassigns) {
        int i1 = aux.edges[ei].a, i2 = aux.edges[ei].b;
        auto z_adjacent = [&](int i) {
            auto it = aux.z_edge_index.find(i);
            return it != aux.z_edge_index.end() && pending.count(it->second) > 0;
        };
        int donor;
        if (z_adjacent(i1))
            donor = i1;
        else if (z_adjacent(i2))
            donor = i2;
        else if (!clients_of[i1].empty() && (clients_of[i2].empty() || i1 < i2))
            donor = i1;
        else
            donor = i2;
        int receiver = donor == i1 ? i2 : i1;
        PARCLUST_CHECK(!clients_of[donor].empty(), "reassign donor has no client");
        PARCLUST_CHECK(open.count(receiver), "reassign receiver is closed");
        // donate the client farthest from the donor (smallest-id ties)
        int pick = -1;
        for (int j : clients_of[donor])
            if (pick < 0 || inst.d_fc(donor, j) > inst.d_fc(donor, pick)) pick = j;
        clients_of[donor].erase(pick);
        clients_of[receiver].insert(pick);
        assign[pick] = receiver;
        pending.erase(ei);
    }

    // substep 3: closing edges
    for (int ei : std::vector<int>(pending.begin(), pending.end())) {
        PARCLUST_CHECK(kind_of(ei) == AuxiliaryGraph::EdgeKind::closing,
                       "unexpected edge kind left after reassign substep");
        int i = aux.edges[ei].b;
        PARCLUST_CHECK(open.count(i), "closing edge for a closed facility");
        PARCLUST_CHECK(clients_of[i].size() % 2 == 0,
                       "facility being closed holds an odd number of clients");
        int phi = aux.substitute.at(i);
        if (!open.count(phi)) {
            PARCLUST_CHECK(aux.substitute_is_closed.at(i),
                           "open-branch substitute found closed at use time");
            open.insert(phi);
        }
        for (int j : clients_of[i]) {
            assign[j] = phi;
            clients_of[phi].insert(j);
        }
        clients_of[i].clear();
        open.erase(i);
        pending.erase(ei);
    }

    Solution out;
    for (int i : open)
        if (!clients_of[i].empty() || inst.facilities[i].parity != ParityLabel::even)
            out.open.push_back(i);
    out.assign = std::move(assign);
    std::sort(out.open.begin(), out.open.end());

    PARCLUST_CHECK(parity_violations(inst, out).empty(),
                   "parity correction left a violated facility");
    Rat bound = solution_cost(inst, initial.solution) + join.total_cost;
    PARCLUST_CHECK(solution_cost(inst, out) <= bound,
                   "correction cost exceeded the join cost bound");
    return out;
}

Solution solve_general(const Instance &inst, GeneralSolveTrace *trace) {
    for (const auto &f : inst.facilities)
        PARCLUST_CHECK(f.parity != ParityLabel::unconstrained,
                       "solve_general requires odd/even labels (reduce first)");
    Solution empty;
    if (inst.nd() == 0) return empty;

    auto verdict = feasibility_precheck(inst);
    if (!verdict.feasible) throw InfeasibleError(verdict.reason);

    UflResult initial = solve_ufl(inst);
    if (trace) trace->initial = initial;
    if (parity_violations(inst, initial.solution).empty()) return initial.solution;

    AuxiliaryGraph aux = build_auxiliary_graph(inst, initial);
    if (trace) trace->aux = aux;

    // A precheck-feasible instance always leaves z reachable when z is in T:
    // if no opening edge exists then O is open, and if additionally no
    // closing edge exists the guard forces F = O = {the single open
    // facility}, whose lone invalid state contradicts the precheck.
    bool z_in_t = std::binary_search(aux.T.begin(), aux.T.end(), aux.z);
    if (z_in_t) {
        bool z_has_edge = false;
        for (const auto &e : aux.edges)
            if (e.a == aux.z || e.b == aux.z) z_has_edge = true;
        PARCLUST_CHECK(z_has_edge, "z in T but isolated on a precheck-feasible instance");
    }

    TJoinResult j0 = min_cost_tjoin(aux.as_weighted_graph(), aux.T);
    if (trace) trace->tjoin_cost = j0.total_cost;
    TJoinResult js = sparsify_tjoin(aux, j0);
    if (trace) trace->sparsified_cost = js.total_cost;

    Solution out = apply_correction(inst, initial, aux, js);
    if (trace) trace->correction_applied = true;
    return out;
}

Solution solve_fl(const Instance &inst, const SolverConfig &config) {
    ReducedInstance red = reduce_unconstrained(inst);
    bool all_even = true;
    for (const auto &f : red.inst.facilities)
        if (f.parity == ParityLabel::odd) all_even = false;

    if (inst.nd() > 0) {
        auto verdict = feasibility_precheck(red.inst);
        if (!verdict.feasible) throw InfeasibleError(verdict.reason);
    }

    Solution sol;
    switch (config.mode) {
        case SolverConfig::Mode::all_even:
            if (!all_even)
                throw std::invalid_argument("all-even mode on an instance with odd labels");
            sol = solve_all_even(red.inst, config.seed, config.trials);
            break;
        case SolverConfig::Mode::general:
            sol = solve_general(red.inst);
            break;
        case SolverConfig::Mode::auto_dispatch:
            sol = all_even ? solve_all_even(red.inst, config.seed, config.trials)
                           : solve_general(red.inst);
            break;
    }
    return lift_solution(inst, red, sol);
}

}  // namespace parclust
