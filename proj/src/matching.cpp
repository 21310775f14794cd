#include "parclust/matching.hpp"

#include <algorithm>
#include <deque>
#include <optional>

namespace parclust {

WeightedCompleteGraph WeightedCompleteGraph::make(int n) {
    WeightedCompleteGraph g;
    g.n = n;
    g.weight.assign(n, std::vector<Rat>(n, Rat(0)));
    return g;
}

void WeightedCompleteGraph::set(int u, int v, Rat w) {
    if (w < 0) throw std::invalid_argument("matching weights must be nonnegative");
    weight[u][v] = w;
    weight[v][u] = std::move(w);
}

namespace {

// Weight with a symbolic tie-breaking component, ordered lexicographically.
// The primary part carries the real cost; the secondary part carries the
// epsilon-perturbation used for deterministic tie resolution.
struct W {
    Rat a, b;

    W() : a(0), b(0) {}
    W(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {}

    W operator+(const W &o) const { return {a + o.a, b + o.b}; }
    W operator-(const W &o) const { return {a - o.a, b - o.b}; }
    W &operator+=(const W &o) { a += o.a; b += o.b; return *this; }
    W &operator-=(const W &o) { a -= o.a; b -= o.b; return *this; }
    W operator*(int k) const { return {a * k, b * k}; }
    W operator/(int k) const { return {a / k, b / k}; }
    bool operator==(const W &o) const { return a == o.a && b == o.b; }
    bool operator<(const W &o) const { return a < o.a || (a == o.a && b < o.b); }
    bool operator>(const W &o) const { return o < *this; }
    bool operator<=(const W &o) const { return !(o < *this); }
};

// Dense maximum-weight matching, the classical O(n^3) primal-dual blossom
// scheme with vertex shrinking. Vertices are 1-based; ids above n are
// blossoms.
struct Blossom {
    struct E {
        int u = 0, v = 0;
        W w;
    };

    int n, n_x;
    std::vector<std::vector<E>> g;
    std::vector<W> lab;
    std::vector<int> match, slack, st, pa, S, vis;
    std::vector<std::vector<int>> flower_from;
    std::vector<std::vector<int>> flower;
    std::deque<int> q;
    int timestamp = 0;

    explicit Blossom(int n_) : n(n_), n_x(n_) {
        const int N = 2 * n + 1;
        g.assign(N, std::vector<E>(N));
        lab.assign(N, W());
        match.assign(N, 0);
        slack.assign(N, 0);
        st.assign(N, 0);
        pa.assign(N, 0);
        S.assign(N, 0);
        vis.assign(N, 0);
        flower_from.assign(N, std::vector<int>(n + 1, 0));
        flower.assign(N, {});
        for (int u = 1; u <= n; ++u)
            for (int v = 1; v <= n; ++v) g[u][v] = E{u, v, W()};
    }

    W e_delta(const E &e) const { return lab[e.u] + lab[e.v] - g[e.u][e.v].w * 2; }

    void update_slack(int u, int x) {
        if (!slack[x] || e_delta(g[u][x]) < e_delta(g[slack[x]][x])) slack[x] = u;
    }

    void set_slack(int x) {
        slack[x] = 0;
        for (int u = 1; u <= n; ++u)
            if (g[u][x].w > W() && st[u] != x && S[st[u]] == 0) update_slack(u, x);
    }

    void q_push(int x) {
        if (x <= n) {
            q.push_back(x);
        } else {
            for (int p : flower[x]) q_push(p);
        }
    }

    void set_st(int x, int b) {
        st[x] = b;
        if (x > n)
            for (int p : flower[x]) set_st(p, b);
    }

    int get_pr(int b, int xr) {
        int pr = static_cast<int>(std::find(flower[b].begin(), flower[b].end(), xr) -
                                  flower[b].begin());
        if (pr % 2 == 1) {
            std::reverse(flower[b].begin() + 1, flower[b].end());
            return static_cast<int>(flower[b].size()) - pr;
        }
        return pr;
    }

    void set_match(int u, int v) {
        match[u] = g[u][v].v;
        if (u > n) {
            const E &e = g[u][v];
            int xr = flower_from[u][e.u];
            int pr = get_pr(u, xr);
            for (int i = 0; i < pr; ++i) set_match(flower[u][i], flower[u][i ^ 1]);
            set_match(xr, v);
            std::rotate(flower[u].begin(), flower[u].begin() + pr, flower[u].end());
        }
    }

    void augment(int u, int v) {
        for (;;) {
            int xnv = st[match[u]];
            set_match(u, v);
            if (!xnv) return;
            set_match(xnv, st[pa[xnv]]);
            u = st[pa[xnv]];
            v = xnv;
        }
    }

    int get_lca(int u, int v) {
        for (++timestamp; u || v; std::swap(u, v)) {
            if (u == 0) continue;
            if (vis[u] == timestamp) return u;
            vis[u] = timestamp;
            u = st[match[u]];
            if (u) u = st[pa[u]];
        }
        return 0;
    }

    void add_blossom(int u, int lca, int v) {
        int b = n + 1;
        while (b <= n_x && st[b]) ++b;
        if (b > n_x) ++n_x;
        lab[b] = W();
        S[b] = 0;
        match[b] = match[lca];
        flower[b].clear();
        flower[b].push_back(lca);
        for (int x = u, y; x != lca; x = st[pa[y]]) {
            flower[b].push_back(x);
            flower[b].push_back(y = st[match[x]]);
            q_push(y);
        }
        std::reverse(flower[b].begin() + 1, flower[b].end());
        for (int x = v, y; x != lca; x = st[pa[y]]) {
            flower[b].push_back(x);
            flower[b].push_back(y = st[match[x]]);
            q_push(y);
        }
        set_st(b, b);
        for (int x = 1; x <= n_x; ++x) g[b][x].w = g[x][b].w = W();
        for (int x = 1; x <= n; ++x) flower_from[b][x] = 0;
        for (int xs : flower[b]) {
            for (int x = 1; x <= n_x; ++x)
                if (g[b][x].w == W() || e_delta(g[xs][x]) < e_delta(g[b][x])) {
                    g[b][x] = g[xs][x];
                    g[x][b] = g[x][xs];
                }
            for (int x = 1; x <= n; ++x)
                if (flower_from[xs][x]) flower_from[b][x] = xs;
        }
        set_slack(b);
    }

    void expand_blossom(int b) {  // S[b] == 1
        for (int f : flower[b]) set_st(f, f);
        int xr = flower_from[b][g[b][pa[b]].u];
        int pr = get_pr(b, xr);
        for (int i = 0; i < pr; i += 2) {
            int xs = flower[b][i], xns = flower[b][i + 1];
            pa[xs] = g[xns][xs].u;
            S[xs] = 1;
            S[xns] = 0;
            slack[xs] = 0;
            set_slack(xns);
            q_push(xns);
        }
        S[xr] = 1;
        pa[xr] = pa[b];
        for (int i = pr + 1; i < static_cast<int>(flower[b].size()); ++i) {
            int xs = flower[b][i];
            S[xs] = -1;
            set_slack(xs);
        }
        st[b] = 0;
    }

    bool on_found_edge(const E &e) {
        int u = st[e.u], v = st[e.v];
        if (S[v] == -1) {
            pa[v] = e.u;
            S[v] = 1;
            int nu = st[match[v]];
            slack[v] = slack[nu] = 0;
            S[nu] = 0;
            q_push(nu);
        } else if (S[v] == 0) {
            int lca = get_lca(u, v);
            if (!lca) {
                augment(u, v);
                augment(v, u);
                return true;
            }
            add_blossom(u, lca, v);
        }
        return false;
    }

    bool matching_round() {
        std::fill(S.begin() + 1, S.begin() + n_x + 1, -1);
        std::fill(slack.begin() + 1, slack.begin() + n_x + 1, 0);
        q.clear();
        for (int x = 1; x <= n_x; ++x)
            if (st[x] == x && !match[x]) {
                pa[x] = 0;
                S[x] = 0;
                q_push(x);
            }
        if (q.empty()) return false;
        for (;;) {
            while (!q.empty()) {
                int u = q.front();
                q.pop_front();
                if (S[st[u]] == 1) continue;
                for (int v = 1; v <= n; ++v)
                    if (g[u][v].w > W() && st[u] != st[v]) {
                        if (e_delta(g[u][v]) == W()) {
                            if (on_found_edge(g[u][v])) return true;
                        } else {
                            update_slack(u, st[v]);
                        }
                    }
            }
            std::optional<W> d;
            auto relax = [&](const W &x) {
                if (!d || x < *d) d = x;
            };
            for (int b = n + 1; b <= n_x; ++b)
                if (st[b] == b && S[b] == 1) relax(lab[b] / 2);
            for (int x = 1; x <= n_x; ++x)
                if (st[x] == x && slack[x]) {
                    if (S[x] == -1)
                        relax(e_delta(g[slack[x]][x]));
                    else if (S[x] == 0)
                        relax(e_delta(g[slack[x]][x]) / 2);
                }
            PARCLUST_CHECK(d.has_value(), "blossom: no dual adjustment available");
            for (int u = 1; u <= n; ++u) {
                if (S[st[u]] == 0) {
                    if (lab[u] <= *d) return false;
                    lab[u] -= *d;
                } else if (S[st[u]] == 1) {
                    lab[u] += *d;
                }
            }
            for (int b = n + 1; b <= n_x; ++b)
                if (st[b] == b) {
                    if (S[b] == 0)
                        lab[b] += *d * 2;
                    else if (S[b] == 1)
                        lab[b] -= *d * 2;
                }
            q.clear();
            for (int x = 1; x <= n_x; ++x)
                if (st[x] == x && slack[x] && st[slack[x]] != x &&
                    e_delta(g[slack[x]][x]) == W())
                    if (on_found_edge(g[slack[x]][x])) return true;
            for (int b = n + 1; b <= n_x; ++b)
                if (st[b] == b && S[b] == 1 && lab[b] == W()) expand_blossom(b);
        }
    }

    int solve() {
        std::fill(match.begin(), match.end(), 0);
        n_x = n;
        int n_matches = 0;
        W w_max;
        for (int u = 0; u < static_cast<int>(st.size()); ++u) st[u] = u;
        for (int u = 1; u <= n; ++u)
            for (int v = 1; v <= n; ++v) {
                flower_from[u][v] = (u == v ? u : 0);
                if (w_max < g[u][v].w) w_max = g[u][v].w;
            }
        for (int u = 1; u <= n; ++u) lab[u] = w_max;
        while (matching_round()) ++n_matches;
        return n_matches;
    }
};

}  // namespace

Matching min_cost_perfect_matching(const WeightedCompleteGraph &g) {
    Matching out;
    out.cost = Rat(0);
    if (g.n == 0) return out;
    if (g.n % 2 == 1) throw std::invalid_argument("no perfect matching exists: odd vertex count");

    // Transform min-cost into max-weight: w' = shift - w, with a shift large
    // enough that maximum-weight matchings are perfect. The tie component
    // prefers edges of smaller lexicographic rank.
    Rat max_w(0);
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (max_w < g.w(u, v)) max_w = g.w(u, v);
    const Rat shift = max_w * g.n + 1;
    const int m = g.n * (g.n - 1) / 2;

    Blossom solver(g.n);
    int rank = 0;
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v, ++rank) {
            W w{shift - g.w(u, v), Rat(m - rank)};
            solver.g[u + 1][v + 1].w = w;
            solver.g[v + 1][u + 1].w = w;
        }
    int matched = solver.solve();
    PARCLUST_CHECK(matched == g.n / 2, "blossom failed to produce a perfect matching");

    for (int u = 1; u <= g.n; ++u)
        if (solver.match[u] > u) {
            out.edges.emplace_back(u - 1, solver.match[u] - 1);
            out.cost += g.w(u - 1, solver.match[u] - 1);
        }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

}  // namespace parclust
