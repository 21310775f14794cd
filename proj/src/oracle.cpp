#include "parclust/oracle.hpp"

#include <algorithm>
#include <limits>

namespace parclust {

namespace {

// Parity-feasible minimum assignment cost for a fixed open set, via DP over
// per-facility parity states. Returns nullopt when no assignment matches the
// required parities. `open` lists facility indices.
struct AssignmentDp {
    std::optional<Rat> cost;
    std::vector<int> assign;  // client -> facility index
};

AssignmentDp best_assignment(const Instance &inst, const std::vector<int> &open,
                             bool respect_parity) {
    const int s = static_cast<int>(open.size());
    const int nd = inst.nd();
    AssignmentDp out;
    if (nd > 0 && s == 0) return out;

    const int states = 1 << s;
    std::vector<std::optional<Rat>> dp(states);
    dp[0] = Rat(0);
    std::vector<std::vector<int>> choice(nd, std::vector<int>(states, -1));
    for (int j = 0; j < nd; ++j) {
        std::vector<std::optional<Rat>> ndp(states);
        for (int st = 0; st < states; ++st) {
            if (!dp[st]) continue;
            for (int a = 0; a < s; ++a) {
                Rat c = *dp[st] + inst.d_fc(open[a], j);
                int nst = st ^ (1 << a);
                if (!ndp[nst] || c < *ndp[nst]) {
                    ndp[nst] = c;
                    choice[j][nst] = a;
                }
            }
        }
        dp = std::move(ndp);
    }

    int best_state = -1;
    for (int st = 0; st < states; ++st) {
        if (!dp[st]) continue;
        if (respect_parity) {
            bool ok = true;
            for (int a = 0; a < s; ++a) {
                ParityLabel p = inst.facilities[open[a]].parity;
                if (p == ParityLabel::unconstrained) continue;
                bool odd = (st >> a) & 1;
                if ((p == ParityLabel::odd) != odd) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
        }
        if (best_state < 0 || *dp[st] < *dp[best_state]) best_state = st;
    }
    if (best_state < 0) return out;

    out.cost = *dp[best_state];
    out.assign.resize(nd);
    // replay the DP backwards to recover the assignment
    int st = best_state;
    for (int j = nd - 1; j >= 0; --j) {
        int a = choice[j][st];
        out.assign[j] = open[a];
        st ^= 1 << a;
    }
    return out;
}

}  // namespace

std::optional<OracleResult> exact_fl(const Instance &inst, bool respect_parity,
                                     const OracleGuards &guards) {
    if (inst.nf() > guards.max_facilities || inst.nd() > guards.max_clients)
        throw SizeGuardError("exact_fl guard exceeded: limits are |F| <= " +
                             std::to_string(guards.max_facilities) + ", |D| <= " +
                             std::to_string(guards.max_clients));
    const int nf = inst.nf();
    std::optional<OracleResult> best;
    long long examined = 0;
    for (int mask = 0; mask < (1 << nf); ++mask) {
        std::vector<int> open;
        for (int i = 0; i < nf; ++i)
            if (mask & (1 << i)) open.push_back(i);
        ++examined;
        auto dp = best_assignment(inst, open, respect_parity);
        if (!dp.cost) continue;
        Rat value = *dp.cost;
        for (int i : open) value += inst.facilities[i].open_cost;
        if (!best || value < best->optimum_value) {
            OracleResult r;
            r.optimum_value = value;
            r.witness.open = open;
            r.witness.assign = dp.assign;
            best = std::move(r);
        }
    }
    if (best) best->enumeration_size = examined;
    return best;
}

std::optional<KCenterOracleResult> exact_kcenter(const KCenterInstance &inst,
                                                 const OracleGuards &guards) {
    if (inst.n() > guards.max_nodes || inst.k > guards.max_k)
        throw SizeGuardError("exact_kcenter guard exceeded: limits are |V| <= " +
                             std::to_string(guards.max_nodes) + ", k <= " +
                             std::to_string(guards.max_k));
    const int n = inst.n();
    if (n == 0) return KCenterOracleResult{0.0, {}, {}, 0};

    std::vector<double> candidates{0.0};
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) candidates.push_back(inst.d(u, v));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    long long examined = 0;
    for (double tau : candidates) {
        for (int mask = 1; mask < (1 << n); ++mask) {
            if (__builtin_popcount(static_cast<unsigned>(mask)) > inst.k) continue;
            std::vector<int> centers;
            for (int v = 0; v < n; ++v)
                if (mask & (1 << v)) centers.push_back(v);
            const int s = static_cast<int>(centers.size());
            const int states = 1 << s;
            ++examined;
            std::vector<char> dp(states, 0);
            dp[0] = 1;
            std::vector<std::vector<int>> choice(n, std::vector<int>(states, -1));
            for (int v = 0; v < n; ++v) {
                std::vector<char> ndp(states, 0);
                for (int st = 0; st < states; ++st) {
                    if (!dp[st]) continue;
                    for (int a = 0; a < s; ++a) {
                        if (inst.d(centers[a], v) > tau && centers[a] != v) continue;
                        int nst = st ^ (1 << a);
                        if (!ndp[nst]) {
                            ndp[nst] = 1;
                            choice[v][nst] = a;
                        }
                    }
                }
                dp = std::move(ndp);
            }
            int good = -1;
            for (int st = 0; st < states && good < 0; ++st) {
                if (!dp[st]) continue;
                bool ok = true;
                for (int a = 0; a < s; ++a) {
                    ParityLabel p = inst.parity[centers[a]];
                    if (p == ParityLabel::unconstrained) continue;
                    bool odd = (st >> a) & 1;
                    if ((p == ParityLabel::odd) != odd) {
                        ok = false;
                        break;
                    }
                }
                if (ok) good = st;
            }
            if (good < 0) continue;
            KCenterOracleResult r;
            r.radius = tau;
            r.centers = centers;
            r.assign.resize(n);
            int st = good;
            for (int v = n - 1; v >= 0; --v) {
                int a = choice[v][st];
                r.assign[v] = centers[a];
                st ^= 1 << a;
            }
            r.enumeration_size = examined;
            return r;
        }
    }
    return std::nullopt;
}

Matching brute_matching(const WeightedCompleteGraph &g, const OracleGuards &guards) {
    if (g.n > guards.max_matching_n)
        throw SizeGuardError("brute_matching guard exceeded: n <= " +
                             std::to_string(guards.max_matching_n));
    if (g.n % 2 == 1) throw std::invalid_argument("no perfect matching exists: odd vertex count");
    Matching best;
    best.cost = Rat(0);
    if (g.n == 0) return best;

    std::vector<int> partner(g.n, -1);
    std::vector<std::pair<int, int>> cur;
    bool found = false;
    Rat cur_cost(0);
    auto rec = [&](auto &&self) -> void {
        int u = 0;
        while (u < g.n && partner[u] >= 0) ++u;
        if (u == g.n) {
            if (!found || cur_cost < best.cost) {
                best.cost = cur_cost;
                best.edges = cur;
                found = true;
            }
            return;
        }
        partner[u] = u;
        for (int v = u + 1; v < g.n; ++v) {
            if (partner[v] >= 0) continue;
            partner[v] = u;
            cur.emplace_back(u, v);
            cur_cost += g.w(u, v);
            self(self);
            cur_cost -= g.w(u, v);
            cur.pop_back();
            partner[v] = -1;
        }
        partner[u] = -1;
    };
    rec(rec);
    return best;
}

TJoinResult brute_tjoin(const WeightedGraph &g, const std::vector<int> &T,
                        const OracleGuards &guards) {
    const int m = static_cast<int>(g.edges.size());
    if (m > guards.max_edges)
        throw SizeGuardError("brute_tjoin guard exceeded: |E| <= " +
                             std::to_string(guards.max_edges));
    std::optional<TJoinResult> best;
    for (int mask = 0; mask < (1 << m); ++mask) {
        std::vector<int> subset;
        Rat cost(0);
        for (int ei = 0; ei < m; ++ei)
            if (mask & (1 << ei)) {
                subset.push_back(ei);
                cost += g.edges[ei].cost;
            }
        if (!is_tjoin(g, T, subset)) continue;
        if (!best || cost < best->total_cost) best = TJoinResult{subset, cost};
    }
    if (!best) throw InfeasibleError("no T-join exists");
    return *best;
}

}  // namespace parclust
