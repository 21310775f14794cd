#include "parclust/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace parclust {

using nlohmann::json;

namespace {

json parse_json(const std::string &text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("input is not valid JSON");
    return j;
}

Rat rat_field(const json &j, const char *what) {
    if (j.is_number()) return rat_from_double(j.get<double>());
    // exact rationals that do not fit a double are written as "num/den"
    if (j.is_string()) {
        try {
            return Rat(j.get<std::string>());
        } catch (const std::exception &) {
            throw ParseError(std::string(what) + " is not a valid rational string");
        }
    }
    throw ParseError(std::string(what) + " must be a number or a rational string");
}

// emit a plain JSON number when it is exact, else the "num/den" form
json rat_to_json(const Rat &x) {
    double d = to_double(x);
    if (rat_from_double(d) == x) return d;
    return x.str();
}

// index lookup for an id list with a uniqueness check
std::map<std::string, int> index_ids(const std::vector<std::string> &ids) {
    std::map<std::string, int> idx;
    for (size_t i = 0; i < ids.size(); ++i)
        if (!idx.emplace(ids[i], static_cast<int>(i)).second)
            throw ParseError("duplicate id '" + ids[i] + "'");
    return idx;
}

std::vector<std::pair<double, double>> parse_points(const json &metric,
                                                    const std::vector<std::string> &ids) {
    if (!metric.contains("points") || !metric["points"].is_object())
        throw ParseError("euclidean metric needs a points object");
    std::vector<std::pair<double, double>> pts;
    for (const auto &id : ids) {
        if (!metric["points"].contains(id))
            throw ParseError("missing point for id '" + id + "'");
        const auto &p = metric["points"][id];
        if (!p.is_array() || p.size() != 2) throw ParseError("point must be [x, y]");
        pts.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    if (metric["points"].size() != ids.size()) throw ParseError("points mention unknown ids");
    return pts;
}

std::vector<std::vector<Rat>> parse_matrix(const json &metric,
                                           const std::vector<std::string> &ids) {
    const int n = static_cast<int>(ids.size());
    if (!metric.contains("order") || !metric.contains("d"))
        throw ParseError("matrix metric needs 'order' and 'd'");
    std::vector<std::string> order = metric["order"].get<std::vector<std::string>>();
    if (order.size() != ids.size()) throw ParseError("metric order must list every id once");
    auto idx = index_ids(ids);
    std::vector<int> pos(n);  // order position -> canonical index
    for (int i = 0; i < n; ++i) {
        auto it = idx.find(order[i]);
        if (it == idx.end()) throw ParseError("metric order names unknown id '" + order[i] + "'");
        pos[i] = it->second;
    }
    const auto &d = metric["d"];
    if (!d.is_array() || static_cast<int>(d.size()) != n)
        throw ParseError("metric matrix has the wrong row count");
    std::vector<std::vector<Rat>> out(n, std::vector<Rat>(n));
    for (int a = 0; a < n; ++a) {
        if (!d[a].is_array() || static_cast<int>(d[a].size()) != n)
            throw ParseError("metric matrix row has the wrong length");
        for (int b = 0; b < n; ++b) out[pos[a]][pos[b]] = rat_field(d[a][b], "distance");
    }
    return out;
}

// exact euclidean distances cannot be rational; convert then re-close so the
// triangle inequality holds exactly
std::vector<std::vector<Rat>> euclidean_rational(
    const std::vector<std::pair<double, double>> &pts) {
    const int n = static_cast<int>(pts.size());
    std::vector<std::vector<std::optional<Rat>>> raw(n, std::vector<std::optional<Rat>>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            double dx = pts[a].first - pts[b].first, dy = pts[a].second - pts[b].second;
            raw[a][b] = a == b ? Rat(0) : rat_from_double(std::sqrt(dx * dx + dy * dy));
        }
    return metric_closure(raw);
}

json metric_to_json(const std::vector<std::string> &ids,
                    const std::vector<std::vector<Rat>> &dist) {
    json rows = json::array();
    for (const auto &row : dist) {
        json r = json::array();
        for (const auto &x : row) r.push_back(rat_to_json(x));
        rows.push_back(r);
    }
    return json{{"kind", "matrix"}, {"order", ids}, {"d", rows}};
}

}  // namespace

Instance parse_fl_instance(const std::string &text) {
    json j = parse_json(text);
    if (!j.contains("facilities") || !j.contains("clients") || !j.contains("metric"))
        throw ParseError("instance needs 'facilities', 'clients', and 'metric'");

    Instance inst;
    for (const auto &f : j["facilities"]) {
        Facility fac;
        fac.id = f.at("id").get<std::string>();
        fac.open_cost = rat_field(f.at("open_cost"), "open_cost");
        try {
            fac.parity = parity_from_string(f.at("parity").get<std::string>());
        } catch (const std::invalid_argument &e) {
            throw ParseError(e.what());
        }
        inst.facilities.push_back(std::move(fac));
    }
    for (const auto &c : j["clients"]) inst.clients.push_back(c.at("id").get<std::string>());

    std::vector<std::string> ids;
    for (const auto &f : inst.facilities) ids.push_back(f.id);
    for (const auto &c : inst.clients) ids.push_back(c);
    index_ids(ids);  // uniqueness across facilities and clients

    const auto &metric = j["metric"];
    std::string kind = metric.at("kind").get<std::string>();
    if (kind == "matrix") {
        inst.dist = parse_matrix(metric, ids);
    } else if (kind == "euclidean") {
        inst.dist = euclidean_rational(parse_points(metric, ids));
    } else if (kind == "bipartite") {
        const int nf = inst.nf(), n = inst.num_points();
        std::vector<std::vector<std::optional<Rat>>> raw(n, std::vector<std::optional<Rat>>(n));
        for (int a = 0; a < n; ++a) raw[a][a] = Rat(0);
        const auto &d = metric.at("d");
        for (int fi = 0; fi < nf; ++fi) {
            if (!d.contains(inst.facilities[fi].id)) continue;
            for (const auto &[cid, val] : d[inst.facilities[fi].id].items()) {
                auto it = std::find(inst.clients.begin(), inst.clients.end(), cid);
                if (it == inst.clients.end())
                    throw ParseError("bipartite metric names unknown client '" + cid + "'");
                int cj = static_cast<int>(it - inst.clients.begin());
                Rat v = rat_field(val, "distance");
                raw[fi][nf + cj] = v;
                raw[nf + cj][fi] = v;
            }
        }
        try {
            inst.dist = metric_closure(raw);
        } catch (const std::runtime_error &e) {
            throw ParseError(e.what());
        }
    } else {
        throw ParseError("unknown metric kind '" + kind + "'");
    }
    return inst;
}

std::string serialize_fl_instance(const Instance &inst) {
    json facs = json::array();
    for (const auto &f : inst.facilities)
        facs.push_back({{"id", f.id},
                        {"open_cost", rat_to_json(f.open_cost)},
                        {"parity", to_string(f.parity)}});
    json clients = json::array();
    for (const auto &c : inst.clients) clients.push_back({{"id", c}});
    std::vector<std::string> ids;
    for (const auto &f : inst.facilities) ids.push_back(f.id);
    for (const auto &c : inst.clients) ids.push_back(c);
    json out{{"facilities", facs}, {"clients", clients}, {"metric", metric_to_json(ids, inst.dist)}};
    return out.dump(2) + "\n";
}

KCenterInstance parse_kcenter_instance(const std::string &text) {
    json j = parse_json(text);
    if (!j.contains("nodes") || !j.contains("metric") || !j.contains("k"))
        throw ParseError("instance needs 'nodes', 'metric', and 'k'");
    KCenterInstance inst;
    inst.k = j["k"].get<int>();
    for (const auto &nj : j["nodes"]) {
        inst.ids.push_back(nj.at("id").get<std::string>());
        try {
            inst.parity.push_back(parity_from_string(nj.at("parity").get<std::string>()));
        } catch (const std::invalid_argument &e) {
            throw ParseError(e.what());
        }
    }
    index_ids(inst.ids);

    const auto &metric = j["metric"];
    std::string kind = metric.at("kind").get<std::string>();
    if (kind == "euclidean") {
        inst.points = parse_points(metric, inst.ids);
    } else if (kind == "matrix") {
        auto m = parse_matrix(metric, inst.ids);
        inst.matrix.assign(inst.n(), std::vector<double>(inst.n()));
        for (int a = 0; a < inst.n(); ++a)
            for (int b = 0; b < inst.n(); ++b) inst.matrix[a][b] = to_double(m[a][b]);
    } else {
        throw ParseError("k-center metric kind must be 'matrix' or 'euclidean'");
    }
    return inst;
}

std::string serialize_kcenter_instance(const KCenterInstance &inst) {
    json nodes = json::array();
    for (int v = 0; v < inst.n(); ++v)
        nodes.push_back({{"id", inst.ids[v]}, {"parity", to_string(inst.parity[v])}});
    json metric;
    if (inst.euclidean()) {
        json pts = json::object();
        for (int v = 0; v < inst.n(); ++v)
            pts[inst.ids[v]] = {inst.points[v].first, inst.points[v].second};
        metric = json{{"kind", "euclidean"}, {"points", pts}};
    } else {
        json rows = json::array();
        for (const auto &row : inst.matrix) rows.push_back(row);
        metric = json{{"kind", "matrix"}, {"order", inst.ids}, {"d", rows}};
    }
    json out{{"nodes", nodes}, {"metric", metric}, {"k", inst.k}};
    return out.dump(2) + "\n";
}

std::string serialize_fl_solution(const Instance &inst, const Solution &sol) {
    json open = json::array();
    for (int fi : sol.open) open.push_back(inst.facilities[fi].id);
    json assign = json::object();
    for (int j = 0; j < inst.nd(); ++j)
        assign[inst.clients[j]] = inst.facilities[sol.assign[j]].id;
    json out{{"cost", to_double(solution_cost(inst, sol))},
             {"open", open},
             {"assignment", assign}};
    return out.dump(2) + "\n";
}

std::string serialize_kcenter_solution(const KCenterInstance &inst, const KCenterResult &res) {
    json centers = json::array();
    for (int v : res.centers) centers.push_back(inst.ids[v]);
    json assign = json::object();
    for (int v = 0; v < inst.n(); ++v)
        if (v < static_cast<int>(res.assign.size())) assign[inst.ids[v]] = inst.ids[res.assign[v]];
    json out{{"radius", res.radius},
             {"realized", res.realized},
             {"centers", centers},
             {"assignment", assign}};
    return out.dump(2) + "\n";
}

std::string slurp(const std::string &path) {
    std::ostringstream out;
    if (path == "-") {
        out << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open '" + path + "'");
        out << in.rdbuf();
    }
    return out.str();
}

}  // namespace parclust
