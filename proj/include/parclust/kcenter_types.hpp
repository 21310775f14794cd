#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "parclust/instance.hpp"

namespace parclust {

// Parity-constrained k-center instance. Bottleneck objectives only compare
// distances, so plain doubles suffice; Euclidean instances keep their points
// and compute distances on demand (a 4000-node matrix would be 128 MB).
struct KCenterInstance {
    std::vector<std::string> ids;
    std::vector<ParityLabel> parity;
    int k = 1;

    std::vector<std::pair<double, double>> points;  // used when euclidean
    std::vector<std::vector<double>> matrix;        // used otherwise

    int n() const { return static_cast<int>(ids.size()); }
    bool euclidean() const { return !points.empty(); }

    double d(int u, int v) const {
        if (euclidean()) {
            double dx = points[u].first - points[v].first;
            double dy = points[u].second - points[v].second;
            return std::sqrt(dx * dx + dy * dy);
        }
        return matrix[u][v];
    }
};

}  // namespace parclust
