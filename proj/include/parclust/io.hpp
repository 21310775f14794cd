#pragma once

#include <string>

#include "parclust/instance.hpp"
#include "parclust/kcenter.hpp"

namespace parclust {

// Thrown on malformed input files (bad JSON, unknown ids, wrong shapes).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string &msg) : std::runtime_error(msg) {}
};

// Facility-location instance JSON:
// {"facilities":[{"id","open_cost","parity"}], "clients":[{"id"}],
//  "metric": {"kind":"matrix","order":[...],"d":[[...]]}
//          | {"kind":"euclidean","points":{id:[x,y]}}
//          | {"kind":"bipartite","d":{facility_id:{client_id:number}}}}
// The bipartite kind carries facility-client distances only and is completed
// by the metric closure; euclidean distances are likewise closed after the
// exact double-to-rational conversion so the triangle inequality holds
// exactly in rational arithmetic.
Instance parse_fl_instance(const std::string &text);
std::string serialize_fl_instance(const Instance &inst);

// k-center instance JSON: {"nodes":[{"id","parity"}], "metric": matrix or
// euclidean as above, "k": int}.
KCenterInstance parse_kcenter_instance(const std::string &text);
std::string serialize_kcenter_instance(const KCenterInstance &inst);

std::string serialize_fl_solution(const Instance &inst, const Solution &sol);
std::string serialize_kcenter_solution(const KCenterInstance &inst, const KCenterResult &res);

// Reads a file, or stdin when path is "-".
std::string slurp(const std::string &path);

}  // namespace parclust
