#include "parclust/generator.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "parclust/kcenter.hpp"

namespace parclust {

namespace {

constexpr int kRetries = 200;

ParityLabel draw_parity(std::mt19937_64 &rng, const GenParams &p) {
    int total = p.w_odd + p.w_even + p.w_unconstrained;
    if (total <= 0) throw std::invalid_argument("parity mix weights must be positive in total");
    int r = static_cast<int>(rng() % static_cast<std::uint64_t>(total));
    if (r < p.w_odd) return ParityLabel::odd;
    if (r < p.w_odd + p.w_even) return ParityLabel::even;
    return ParityLabel::unconstrained;
}

std::pair<double, double> draw_point(std::mt19937_64 &rng) {
    // grid coordinates keep distances reproducible across platforms
    return {static_cast<double>(rng() % 1001) / 1000.0, static_cast<double>(rng() % 1001) / 1000.0};
}

// n points, exact-rational metric: euclidean distances (converted and then
// closed so the triangle inequality holds exactly) or a closed random graph
std::vector<std::vector<Rat>> draw_metric(std::mt19937_64 &rng, int n,
                                          const std::string &geometry) {
    std::vector<std::vector<std::optional<Rat>>> raw(n, std::vector<std::optional<Rat>>(n));
    if (geometry == "euclidean") {
        std::vector<std::pair<double, double>> pts;
        for (int i = 0; i < n; ++i) pts.push_back(draw_point(rng));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                double dx = pts[a].first - pts[b].first, dy = pts[a].second - pts[b].second;
                raw[a][b] = a == b ? Rat(0) : rat_from_double(std::sqrt(dx * dx + dy * dy));
            }
    } else if (geometry == "random-metric") {
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) {
                Rat w = a == b ? Rat(0) : Rat(1 + static_cast<int>(rng() % 100), 10);
                raw[a][b] = w;
                raw[b][a] = w;
            }
    } else {
        throw std::invalid_argument("geometry must be 'euclidean' or 'random-metric'");
    }
    return metric_closure(raw);
}

Instance draw_fl(const GenParams &p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Instance inst;
    for (int i = 0; i < p.nf; ++i) {
        Facility f;
        f.id = "f" + std::to_string(i);
        f.open_cost = Rat(static_cast<int>(rng() % 21));
        f.parity = draw_parity(rng, p);
        inst.facilities.push_back(std::move(f));
    }
    for (int j = 0; j < p.nd; ++j) inst.clients.push_back("c" + std::to_string(j));
    inst.dist = draw_metric(rng, p.nf + p.nd, p.geometry);
    return inst;
}

KCenterInstance draw_kc(const GenParams &p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    KCenterInstance inst;
    inst.k = p.k;
    for (int v = 0; v < p.nd; ++v) {
        inst.ids.push_back("v" + std::to_string(v));
        inst.parity.push_back(draw_parity(rng, p));
    }
    if (p.geometry == "euclidean") {
        for (int v = 0; v < p.nd; ++v) inst.points.push_back(draw_point(rng));
    } else {
        auto m = draw_metric(rng, p.nd, p.geometry);
        inst.matrix.assign(p.nd, std::vector<double>(p.nd));
        for (int a = 0; a < p.nd; ++a)
            for (int b = 0; b < p.nd; ++b) inst.matrix[a][b] = to_double(m[a][b]);
    }
    return inst;
}

}  // namespace

Instance generate_fl_instance(const GenParams &params) {
    if (params.nf < 0 || params.nd < 0) throw std::invalid_argument("counts must be nonnegative");
    for (int attempt = 0; attempt < kRetries; ++attempt) {
        Instance inst = draw_fl(params, params.seed + 0x9e3779b97f4a7c15ULL * attempt);
        if (!params.feasible_only) return inst;
        if (inst.nd() == 0) return inst;
        if (inst.nf() > 0 && feasibility_precheck(reduce_unconstrained(inst).inst).feasible)
            return inst;
    }
    throw std::runtime_error("could not generate a feasible instance within the retry bound");
}

KCenterInstance generate_kcenter_instance(const GenParams &params) {
    if (params.nd < 0 || params.k < 1) throw std::invalid_argument("need nodes >= 0 and k >= 1");
    for (int attempt = 0; attempt < kRetries; ++attempt) {
        KCenterInstance inst = draw_kc(params, params.seed + 0x9e3779b97f4a7c15ULL * attempt);
        if (!params.feasible_only || solve_kcenter(inst).has_value()) return inst;
    }
    throw std::runtime_error("could not generate a feasible instance within the retry bound");
}

void parse_parity_mix(const std::string &mix, GenParams &params) {
    int a, b, c;
    char s1, s2;
    std::istringstream in(mix);
    if (!(in >> a >> s1 >> b >> s2 >> c) || s1 != ':' || s2 != ':' || a < 0 || b < 0 || c < 0)
        throw std::invalid_argument("parity mix must look like '1:2:1'");
    params.w_odd = a;
    params.w_even = b;
    params.w_unconstrained = c;
}

}  // namespace parclust
