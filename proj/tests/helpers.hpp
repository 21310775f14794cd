#pragma once

#include <random>
#include <string>
#include <vector>

#include "parclust/generator.hpp"
#include "parclust/instance.hpp"

namespace parclust::testing {

// small instance from an explicit point metric (facilities first)
inline Instance make_instance(std::vector<Facility> facs, int nd,
                              std::vector<std::vector<int>> dist) {
    Instance inst;
    inst.facilities = std::move(facs);
    for (int j = 0; j < nd; ++j) inst.clients.push_back("c" + std::to_string(j));
    const int n = inst.num_points();
    inst.dist.assign(n, std::vector<Rat>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) inst.dist[a][b] = Rat(dist[a][b]);
    return inst;
}

inline Facility fac(const std::string &id, int cost, ParityLabel p) {
    return Facility{id, Rat(cost), p};
}

// the footnote-style gap instance: two even zero-cost facilities, each
// co-located with one client, cross distance 1
inline Instance gap_instance() {
    return make_instance({fac("i1", 0, ParityLabel::even), fac("i2", 0, ParityLabel::even)}, 2,
                         {{0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}});
}

// instances on points of a line, facility at each given coordinate
inline Instance line_instance(const std::vector<int> &fac_pos, const std::vector<int> &cli_pos,
                              const std::vector<Facility> &facs) {
    Instance inst;
    inst.facilities = facs;
    for (size_t j = 0; j < cli_pos.size(); ++j) inst.clients.push_back("c" + std::to_string(j));
    std::vector<int> pos = fac_pos;
    pos.insert(pos.end(), cli_pos.begin(), cli_pos.end());
    const int n = static_cast<int>(pos.size());
    inst.dist.assign(n, std::vector<Rat>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) inst.dist[a][b] = Rat(std::abs(pos[a] - pos[b]));
    return inst;
}

inline Instance random_fl(std::uint64_t seed, int nf, int nd, const char *mix = "1:1:1",
                          bool feasible_only = true, const char *geometry = "random-metric") {
    GenParams p;
    p.nf = nf;
    p.nd = nd;
    p.geometry = geometry;
    p.seed = seed;
    p.feasible_only = feasible_only;
    parse_parity_mix(mix, p);
    return generate_fl_instance(p);
}

}  // namespace parclust::testing
