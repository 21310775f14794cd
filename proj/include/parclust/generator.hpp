#pragma once

#include <cstdint>
#include <string>

#include "parclust/instance.hpp"
#include "parclust/kcenter_types.hpp"

namespace parclust {

struct GenParams {
    int nf = 4;                    // facilities (fl) — ignored for k-center
    int nd = 6;                    // clients (fl) or nodes (k-center)
    int k = 2;                     // k-center only
    std::string geometry = "euclidean";  // or "random-metric"
    int w_odd = 1, w_even = 1, w_unconstrained = 1;
    bool feasible_only = false;
    std::uint64_t seed = 0;
};

// Seeded instance generators. Euclidean geometry samples grid points in the
// unit square; random-metric samples integer edge weights and closes them.
// With feasible_only, regeneration is retried (bounded) until the parity
// precheck passes.
Instance generate_fl_instance(const GenParams &params);
KCenterInstance generate_kcenter_instance(const GenParams &params);

// parses "odd:even:unconstrained" weight triples into params
void parse_parity_mix(const std::string &mix, GenParams &params);

}  // namespace parclust
