#pragma once

#include <cstdint>
#include <vector>

#include "finsler/mesh.hpp"
#include "finsler/metric.hpp"

namespace finsler {

/// Canonical energy E(u) = sum F*^2(x, du) sigma dV / sum u^2 sigma dV,
/// du by central differences.  Throws undefined_energy_error for u = 0.
double energy(const ScalarField& u, const MetricModel& m, const DensityField& sigma);

struct EigenOptions {
    std::uint64_t seed = 1;
    double step = 1.0;     // initial line-search step
    double tol = 1e-7;     // projected-gradient norm target (relative to E)
    int max_iter = 4000;
    int random_seeds = 1;  // extra random starting fields
};

struct EigenResult {
    double lambda1 = 0.0;
    ScalarField u;
    std::vector<double> energy_trace;  // accepted energies, non-increasing
    bool converged = false;
    std::uint64_t seed = 0;
    double grad_norm = 0.0;
    int iterations = 0;
};

/// First closed eigenvalue: minimize E over mean-zero fields by projected
/// normalized gradient descent with multi-start (lowest Fourier modes, their
/// negatives, and seeded random fields).  The mean-zero projection is
/// applied per parity class of the central-difference stencil, which also
/// removes the discrete checkerboard null modes.
EigenResult eigen_closed(const MetricModel& m, const DensityField& sigma,
                         const EigenOptions& opts = {});

/// First Dirichlet eigenvalue on the node subset D (mask nonzero = inside):
/// same descent with values clamped to zero outside D and no mean
/// constraint.
EigenResult eigen_dirichlet(const MetricModel& m, const DensityField& sigma,
                            const std::vector<std::uint8_t>& mask, const EigenOptions& opts = {});

}  // namespace finsler
