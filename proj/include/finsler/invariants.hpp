#pragma once

#include "finsler/mesh.hpp"
#include "finsler/metric.hpp"

namespace finsler {

struct InvariantOptions {
    int n_dir = 512;    // direction samples for the reversibility sup
    int n_x_dir = 128;  // X-direction grid for the uniformity ratio
    int n_y_dir = 128;  // Y-direction grid for the uniformity ratio
};

struct InvariantWitness {
    Vec x;
    double theta_y = 0.0;
    double theta_x_max = 0.0;
    double theta_x_min = 0.0;
};

/// Global metric invariants estimated by node x direction grids with
/// golden-section polish.  Values are lower estimates of the suprema.
struct InvariantReport {
    double lambda = 1.0;  // reversibility
    double Lambda = 1.0;  // uniformity constant
    InvariantWitness lambda_witness;
    InvariantWitness Lambda_witness;
};

/// sup over the unit sphere bundle of F(-y) (F-unit y).
double reversibility(const MetricModel& m, const Mesh& mesh, const InvariantOptions& opts = {});

/// sup of g_X(Y, Y) / g_Z(Y, Y) over directions X, Y, Z and nodes.
double uniformity(const MetricModel& m, const Mesh& mesh, const InvariantOptions& opts = {});

InvariantReport compute_invariants(const MetricModel& m, const Mesh& mesh,
                                   const InvariantOptions& opts = {});

}  // namespace finsler
