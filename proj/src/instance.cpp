#include "parclust/instance.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace parclust {

std::string to_string(ParityLabel p) {
    switch (p) {
        case ParityLabel::odd: return "odd";
        case ParityLabel::even: return "even";
        default: return "unconstrained";
    }
}

ParityLabel parity_from_string(const std::string &s) {
    if (s == "odd") return ParityLabel::odd;
    if (s == "even") return ParityLabel::even;
    if (s == "unconstrained") return ParityLabel::unconstrained;
    throw std::invalid_argument("unknown parity label: " + s);
}

bool Solution::is_open(int fi) const {
    return std::binary_search(open.begin(), open.end(), fi);
}

std::string ValidationReport::describe(const Instance &inst) const {
    auto name = [&](int p) {
        return p < inst.nf() ? inst.facilities[p].id : inst.clients[p - inst.nf()];
    };
    std::ostringstream os;
    if (ok()) {
        os << "ok\n";
        return os.str();
    }
    for (const auto &t : triangle_violations)
        os << "triangle violated: d(" << name(t.x) << "," << name(t.z) << ") > d("
           << name(t.x) << "," << name(t.y) << ") + d(" << name(t.y) << ","
           << name(t.z) << "), slack " << to_double(t.slack) << "\n";
    for (const auto &[a, b] : asymmetries)
        os << "asymmetric: d(" << name(a) << "," << name(b) << ")\n";
    for (const auto &[a, b] : negative_entries)
        os << "negative distance: d(" << name(a) << "," << name(b) << ")\n";
    for (int a : nonzero_diagonal) os << "nonzero diagonal at " << name(a) << "\n";
    for (int i : negative_open_costs)
        os << "negative opening cost at " << inst.facilities[i].id << "\n";
    return os.str();
}

ValidationReport validate_instance(const Instance &inst, const Rat &eps) {
    ValidationReport rep;
    const int n = inst.num_points();
    for (int i = 0; i < inst.nf(); ++i)
        if (inst.facilities[i].open_cost < 0) rep.negative_open_costs.push_back(i);
    for (int a = 0; a < n; ++a) {
        if (inst.dist[a][a] != 0) rep.nonzero_diagonal.push_back(a);
        for (int b = a + 1; b < n; ++b) {
            if (inst.dist[a][b] != inst.dist[b][a]) rep.asymmetries.emplace_back(a, b);
            if (inst.dist[a][b] < 0) rep.negative_entries.emplace_back(a, b);
        }
    }
    // Relative tolerance: slack beyond eps * d(x,z) is reported.
    for (int x = 0; x < n; ++x)
        for (int z = x + 1; z < n; ++z)
            for (int y = 0; y < n; ++y) {
                if (y == x || y == z) continue;
                Rat slack = inst.dist[x][z] - inst.dist[x][y] - inst.dist[y][z];
                if (slack > eps * inst.dist[x][z])
                    rep.triangle_violations.push_back({x, y, z, slack});
            }
    return rep;
}

std::vector<std::vector<Rat>> metric_closure(
    const std::vector<std::vector<std::optional<Rat>>> &raw) {
    const int n = static_cast<int>(raw.size());
    std::vector<std::vector<std::optional<Rat>>> d = raw;
    for (int i = 0; i < n; ++i) d[i][i] = Rat(0);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            if (!d[i][k]) continue;
            for (int j = 0; j < n; ++j) {
                if (!d[k][j]) continue;
                Rat via = *d[i][k] + *d[k][j];
                if (!d[i][j] || via < *d[i][j]) d[i][j] = via;
            }
        }
    std::vector<std::vector<Rat>> out(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!d[i][j])
                throw std::runtime_error("disconnected input: no path between points " +
                                         std::to_string(i) + " and " + std::to_string(j));
            out[i][j] = *d[i][j];
        }
    return out;
}

void check_solution_structure(const Instance &inst, const Solution &sol) {
    PARCLUST_CHECK(std::is_sorted(sol.open.begin(), sol.open.end()),
                   "open set must be sorted");
    for (int fi : sol.open)
        PARCLUST_CHECK(fi >= 0 && fi < inst.nf(), "unknown facility index in open set");
    PARCLUST_CHECK(static_cast<int>(sol.assign.size()) == inst.nd(),
                   "assignment must cover every client");
    for (int fi : sol.assign)
        PARCLUST_CHECK(sol.is_open(fi), "client assigned to a closed facility");
}

Rat opening_cost_part(const Instance &inst, const Solution &sol) {
    Rat f(0);
    for (int fi : sol.open) f += inst.facilities[fi].open_cost;
    return f;
}

Rat assignment_cost_part(const Instance &inst, const Solution &sol) {
    Rat c(0);
    for (int j = 0; j < inst.nd(); ++j) c += inst.d_fc(sol.assign[j], j);
    return c;
}

Rat solution_cost(const Instance &inst, const Solution &sol) {
    check_solution_structure(inst, sol);
    return opening_cost_part(inst, sol) + assignment_cost_part(inst, sol);
}

std::vector<int> cluster_sizes(const Instance &inst, const Solution &sol) {
    std::vector<int> cnt(inst.nf(), 0);
    for (int fi : sol.assign) ++cnt[fi];
    return cnt;
}

std::vector<int> parity_violations(const Instance &inst, const Solution &sol) {
    auto cnt = cluster_sizes(inst, sol);
    std::vector<int> bad;
    for (int fi : sol.open) {
        ParityLabel p = inst.facilities[fi].parity;
        if (p == ParityLabel::unconstrained) continue;
        bool odd = cnt[fi] % 2 == 1;
        if ((p == ParityLabel::odd) != odd) bad.push_back(fi);
    }
    return bad;
}

FeasibilityVerdict feasibility_precheck(const Instance &inst) {
    int odd = 0, even = 0;
    for (const auto &f : inst.facilities) {
        PARCLUST_CHECK(f.parity != ParityLabel::unconstrained,
                       "precheck requires odd/even labels only");
        (f.parity == ParityLabel::odd ? odd : even)++;
    }
    const int nd = inst.nd();
    if (nd == 0) return {true, ""};
    if (nd % 2 == 1) {
        if (odd >= 1) return {true, ""};
        return {false, "odd client count but no odd-constrained facility"};
    }
    if (even >= 1 || odd >= 2) return {true, ""};
    return {false, "even client count needs an even-constrained facility or two odd ones"};
}

ReducedInstance reduce_unconstrained(const Instance &inst) {
    bool any = false;
    for (const auto &f : inst.facilities)
        if (f.parity == ParityLabel::unconstrained) any = true;
    ReducedInstance red;
    if (!any) {
        red.inst = inst;
        red.identity = true;
        red.origin.resize(inst.nf());
        for (int i = 0; i < inst.nf(); ++i) red.origin[i] = i;
        return red;
    }
    // point index in the original instance for each reduced facility
    std::vector<int> src_point;
    for (int i = 0; i < inst.nf(); ++i) {
        const auto &f = inst.facilities[i];
        if (f.parity == ParityLabel::unconstrained) {
            red.inst.facilities.push_back({f.id + "#odd", f.open_cost, ParityLabel::odd});
            red.origin.push_back(i);
            src_point.push_back(i);
            red.inst.facilities.push_back({f.id + "#even", f.open_cost, ParityLabel::even});
            red.origin.push_back(i);
            src_point.push_back(i);
        } else {
            red.inst.facilities.push_back(f);
            red.origin.push_back(i);
            src_point.push_back(i);
        }
    }
    red.inst.clients = inst.clients;
    for (int j = 0; j < inst.nd(); ++j) src_point.push_back(inst.nf() + j);
    const int n = static_cast<int>(src_point.size());
    red.inst.dist.assign(n, std::vector<Rat>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (src_point[a] == src_point[b])
                red.inst.dist[a][b] = Rat(0);  // copies are co-located
            else
                red.inst.dist[a][b] = inst.dist[src_point[a]][src_point[b]];
        }
    return red;
}

Solution lift_solution(const Instance &original, const ReducedInstance &red,
                       const Solution &sol) {
    if (red.identity) return sol;
    Solution out;
    std::vector<bool> open(original.nf(), false);
    for (int fi : sol.open) open[red.origin[fi]] = true;
    for (int i = 0; i < original.nf(); ++i)
        if (open[i]) out.open.push_back(i);
    out.assign.resize(original.nd());
    for (int j = 0; j < original.nd(); ++j) out.assign[j] = red.origin[sol.assign[j]];
    return out;
}

}  // namespace parclust
