#pragma once

#include <vector>

#include "finsler/mesh.hpp"
#include "finsler/metric.hpp"

namespace finsler {

/// One interface piece: a marching-squares segment in 2D, a crossing
/// point in 1D (where a == b and length_e == 1).
struct CutSegment {
    Vec a;
    Vec b;
    Vec midpoint;
    double length_e = 1.0;   // Euclidean chart length (1 for point cuts)
    Vec conormal;            // Euclidean-unit covector out of D1 = {f > t}
    double sigma_mid = 1.0;
    double weight_plus = 0.0;   // sigma F*(conormal) dS
    double weight_minus = 0.0;  // sigma F*(-conormal) dS
};

/// Discretized hypersurface {f = t} with side volumes and the
/// forward/backward induced areas.
struct LevelSetCut {
    double level = 0.0;
    std::vector<CutSegment> segments;
    double area_plus = 0.0;
    double area_minus = 0.0;
    double vol1 = 0.0;  // mu(D1), D1 = {f > t}
    double vol2 = 0.0;  // mu(D2)
};

/// Extract {f = t} by linear interpolation (marching squares in 2D, sign
/// crossings in 1D) and weight it with dA+- = sigma F*(+-conormal) dS.
/// Requires min f < t < max f; throws trivial_cut_error on an empty
/// interface.
LevelSetCut cut_areas(const ScalarField& f, double t, const MetricModel& m,
                      const DensityField& sigma);

struct SweepResult {
    double h_ub = 0.0;  // upper bound for the Cheeger constant
    LevelSetCut best;
};

/// Evaluate min{A+-}/min{mu(D1), mu(D2)} over quantile-spaced level cuts
/// of f and return the minimum ratio with its cut.
SweepResult cheeger_sweep(const ScalarField& f, const MetricModel& m, const DensityField& sigma,
                          int levels = 128);

/// Exact 1D Cheeger constant by brute force over all node pairs; each cut
/// point contributes sigma F*(+-1) per co-orientation.
double cheeger_1d_exact(const MetricModel& m, const DensityField& sigma);

struct CoareaReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_gap = 0.0;
};

/// Check int_M f dmu against the level-set integral of f dA_n / F(grad
/// phi) over quantile-sampled levels of phi.
CoareaReport coarea_check(const ScalarField& f, const ScalarField& phi, const MetricModel& m,
                          const DensityField& sigma, int levels = 256);

/// Check int_0^inf mu({f >= t}) dt against int_M f dmu for positive f.
CoareaReport layer_cake_check(const ScalarField& f, const DensityField& sigma, int levels = 256);

}  // namespace finsler
