#pragma once

#include <optional>
#include <string>
#include <vector>

#include "parclust/common.hpp"

namespace parclust {

enum class ParityLabel { odd, even, unconstrained };

std::string to_string(ParityLabel p);
ParityLabel parity_from_string(const std::string &s);

struct Facility {
    std::string id;
    Rat open_cost;
    ParityLabel parity = ParityLabel::unconstrained;
};

// A facility-location instance. Points are indexed facilities first
// (0..nf-1) then clients (nf..nf+nd-1); `dist` is the full symmetric
// metric over this index space.
struct Instance {
    std::vector<Facility> facilities;
    std::vector<std::string> clients;
    std::vector<std::vector<Rat>> dist;

    int nf() const { return static_cast<int>(facilities.size()); }
    int nd() const { return static_cast<int>(clients.size()); }
    int num_points() const { return nf() + nd(); }

    const Rat &d(int a, int b) const { return dist[a][b]; }
    // facility index, client index
    const Rat &d_fc(int fi, int cj) const { return dist[fi][nf() + cj]; }
    const Rat &d_ff(int fi, int fj) const { return dist[fi][fj]; }
    const Rat &d_cc(int ci, int cj) const { return dist[nf() + ci][nf() + cj]; }
};

// Open facilities (sorted indices) plus a total assignment client -> facility.
struct Solution {
    std::vector<int> open;
    std::vector<int> assign;

    bool is_open(int fi) const;
};

struct TriangleViolation {
    int x, y, z;  // d(x,z) > d(x,y) + d(y,z) + eps
    Rat slack;    // d(x,z) - d(x,y) - d(y,z)
};

struct ValidationReport {
    std::vector<TriangleViolation> triangle_violations;
    std::vector<std::pair<int, int>> asymmetries;
    std::vector<std::pair<int, int>> negative_entries;
    std::vector<int> nonzero_diagonal;
    std::vector<int> negative_open_costs;

    bool ok() const {
        return triangle_violations.empty() && asymmetries.empty() &&
               negative_entries.empty() && nonzero_diagonal.empty() &&
               negative_open_costs.empty();
    }
    std::string describe(const Instance &inst) const;
};

ValidationReport validate_instance(const Instance &inst, const Rat &eps = Rat(1, 1000000000));

// All-pairs shortest-path closure of a symmetric nonnegative matrix with
// missing pairs given as nullopt. Throws if some pair stays unreachable.
std::vector<std::vector<Rat>> metric_closure(
    const std::vector<std::vector<std::optional<Rat>>> &raw);

// Throws ContractViolation on structural errors (unknown ids, closed target).
void check_solution_structure(const Instance &inst, const Solution &sol);

Rat solution_cost(const Instance &inst, const Solution &sol);
Rat opening_cost_part(const Instance &inst, const Solution &sol);
Rat assignment_cost_part(const Instance &inst, const Solution &sol);

std::vector<int> cluster_sizes(const Instance &inst, const Solution &sol);

// Open facilities whose assigned-client count has the wrong parity.
// Unconstrained facilities never appear.
std::vector<int> parity_violations(const Instance &inst, const Solution &sol);

struct FeasibilityVerdict {
    bool feasible;
    std::string reason;  // set when infeasible
};

// Requires all labels odd/even (apply reduce_unconstrained first).
FeasibilityVerdict feasibility_precheck(const Instance &inst);

struct ReducedInstance {
    Instance inst;
    std::vector<int> origin;  // reduced facility index -> original facility index
    bool identity = false;
};

// Replaces each unconstrained facility by co-located odd and even copies.
ReducedInstance reduce_unconstrained(const Instance &inst);

// Collapse a solution on the reduced instance back to the original one.
Solution lift_solution(const Instance &original, const ReducedInstance &red,
                       const Solution &sol);

}  // namespace parclust
