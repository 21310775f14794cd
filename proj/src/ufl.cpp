#include "parclust/ufl.hpp"

#include <algorithm>
#include <optional>

namespace parclust {

namespace {

// Assign every client to its nearest open facility (smallest-id ties) and
// drop facilities that end up empty. Never increases cost.
Solution normalize(const Instance &inst, std::vector<int> open) {
    Solution sol;
    std::sort(open.begin(), open.end());
    sol.assign.resize(inst.nd());
    std::vector<bool> used(inst.nf(), false);
    for (int j = 0; j < inst.nd(); ++j) {
        int best = -1;
        for (int fi : open)
            if (best < 0 || inst.d_fc(fi, j) < inst.d_fc(best, j)) best = fi;
        PARCLUST_CHECK(best >= 0 || inst.nd() == 0, "no open facility to assign to");
        sol.assign[j] = best;
        used[best] = true;
    }
    for (int fi : open)
        if (used[fi]) sol.open.push_back(fi);
    return sol;
}

}  // namespace

UflResult solve_ufl(const Instance &inst) {
    UflResult res;
    const int nf = inst.nf(), nd = inst.nd();
    if (nd == 0) return res;
    if (nf == 0) throw InfeasibleError("no facility to serve clients");

    // Dual-ascent phase. All active clients grow alpha at unit rate; a
    // client's surplus beyond a tight edge pays toward that facility's
    // opening cost. Facilities whose cost is fully paid open temporarily;
    // clients tight with a temporarily open facility freeze.
    Rat t(0);
    std::vector<bool> active(nd, true);
    std::vector<Rat> alpha(nd, Rat(0));
    std::vector<bool> temp_open(nf, false);
    std::vector<Rat> t_open(nf, Rat(0));
    std::vector<Rat> paid_fixed(nf, Rat(0));  // contributions of frozen clients
    int n_active = nd;

    auto active_contrib = [&](int i, const Rat &at) {
        Rat c(0);
        for (int j = 0; j < nd; ++j)
            if (active[j] && inst.d_fc(i, j) <= at) c += at - inst.d_fc(i, j);
        return c;
    };

    auto stabilize = [&]() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int j = 0; j < nd && n_active > 0; ++j) {
                if (!active[j]) continue;
                bool freeze = false;
                for (int i = 0; i < nf && !freeze; ++i)
                    if (temp_open[i] && inst.d_fc(i, j) <= t) freeze = true;
                if (freeze) {
                    active[j] = false;
                    alpha[j] = t;
                    --n_active;
                    for (int i = 0; i < nf; ++i)
                        if (t > inst.d_fc(i, j)) paid_fixed[i] += t - inst.d_fc(i, j);
                    changed = true;
                }
            }
            for (int i = 0; i < nf; ++i) {
                if (temp_open[i]) continue;
                if (paid_fixed[i] + active_contrib(i, t) >= inst.facilities[i].open_cost) {
                    temp_open[i] = true;
                    t_open[i] = t;
                    changed = true;
                }
            }
        }
    };

    stabilize();
    while (n_active > 0) {
        std::optional<Rat> t_next;
        auto relax = [&](const Rat &x) {
            if (!t_next || x < *t_next) t_next = x;
        };
        for (int j = 0; j < nd; ++j) {
            if (!active[j]) continue;
            for (int i = 0; i < nf; ++i)
                if (inst.d_fc(i, j) > t) relax(inst.d_fc(i, j));
        }
        for (int i = 0; i < nf; ++i) {
            if (temp_open[i]) continue;
            int k = 0;
            Rat sumc(0);
            for (int j = 0; j < nd; ++j)
                if (active[j] && inst.d_fc(i, j) <= t) {
                    ++k;
                    sumc += inst.d_fc(i, j);
                }
            if (k > 0) relax((inst.facilities[i].open_cost - paid_fixed[i] + sumc) / k);
        }
        PARCLUST_CHECK(t_next.has_value(), "dual ascent stalled");
        t = *t_next;
        stabilize();
    }

    // Conflict resolution: walk temporarily open facilities in opening
    // order and keep those not sharing a positively-contributing client
    // with an earlier pick.
    std::vector<int> order;
    for (int i = 0; i < nf; ++i)
        if (temp_open[i]) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return t_open[a] < t_open[b] || (t_open[a] == t_open[b] && a < b);
    });
    std::vector<int> selected;
    for (int i : order) {
        bool conflict = false;
        for (int i2 : selected) {
            for (int j = 0; j < nd && !conflict; ++j)
                if (alpha[j] > inst.d_fc(i, j) && alpha[j] > inst.d_fc(i2, j))
                    conflict = true;
            if (conflict) break;
        }
        if (!conflict) selected.push_back(i);
    }
    PARCLUST_CHECK(!selected.empty(), "dual ascent opened no facility");

    res.solution = normalize(inst, selected);
    return res;
}

}  // namespace parclust
