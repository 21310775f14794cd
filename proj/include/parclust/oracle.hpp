#pragma once

#include <optional>

#include "parclust/instance.hpp"
#include "parclust/kcenter_types.hpp"
#include "parclust/matching.hpp"
#include "parclust/tjoin.hpp"

namespace parclust {

struct OracleResult {
    Rat optimum_value;
    Solution witness;
    long long enumeration_size = 0;
};

struct OracleGuards {
    int max_facilities = 6;
    int max_clients = 8;
    int max_nodes = 10;
    int max_k = 4;
    int max_edges = 16;
    int max_matching_n = 10;
};

// Exhaustive exact O-facility-location solver. Returns nullopt when no
// feasible solution exists. Throws SizeGuardError beyond the guards.
// With respect_parity = false this is the exact unconstrained optimum.
std::optional<OracleResult> exact_fl(const Instance &inst, bool respect_parity = true,
                                     const OracleGuards &guards = {});

struct KCenterOracleResult {
    double radius;
    std::vector<int> centers;
    std::vector<int> assign;
    long long enumeration_size = 0;
};

std::optional<KCenterOracleResult> exact_kcenter(const KCenterInstance &inst,
                                                 const OracleGuards &guards = {});

// Exhaustive minimum over all (n-1)!! perfect matchings.
Matching brute_matching(const WeightedCompleteGraph &g, const OracleGuards &guards = {});

// Exhaustive minimum over all 2^|E| edge subsets passing is_tjoin.
// Throws when no subset is a T-join.
TJoinResult brute_tjoin(const WeightedGraph &g, const std::vector<int> &T,
                        const OracleGuards &guards = {});

}  // namespace parclust
