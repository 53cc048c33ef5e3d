#pragma once

#include <vector>

#include "finsler/mesh.hpp"
#include "finsler/metric.hpp"

namespace finsler {

/// Forward distance d(source, .) on the 8-neighbor (2D) / 2-neighbor (1D)
/// periodic grid graph, edge weight F(x_mid, dx), by Dijkstra label
/// setting (asymmetric weights respected).
std::vector<double> distance_map(const MetricModel& m, const Mesh& mesh, int source);

struct DiameterEstimate {
    double coarse = 0.0;
    double fine = 0.0;          // value used for bound inputs
    double extrapolated = 0.0;  // linear grid-refinement extrapolation
    int sources = 0;
};

/// sup over sampled sources of the maximal forward distance; a lower
/// bound for the true diameter up to the graph anisotropy overshoot.
DiameterEstimate diameter_estimate(const MetricModel& m, const Mesh& mesh, int min_sources = 32);

}  // namespace finsler
