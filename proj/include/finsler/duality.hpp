#pragma once

#include "finsler/mesh.hpp"
#include "finsler/metric.hpp"

namespace finsler {

struct DualNormResult {
    double value = 0.0;
    Vec direction;  // maximizing tangent direction (unnormalized)
};

/// Dual norm F*(x, eta) = sup_{y != 0} eta(y) / F(x, y).
/// 1D is solved in closed form over the two half-lines; 2D samples the
/// indicatrix (>= 256 directions) and polishes the best bracket by
/// golden-section ascent.
double dual_norm(const MetricModel& m, const Vec& x, const Vec& eta);
DualNormResult dual_norm_argmax(const MetricModel& m, const Vec& x, const Vec& eta);

/// Closed-form dual norm per metric family; agrees with dual_norm to
/// tight tolerance and is cheap enough for solver inner loops.
double dual_norm_fast(const MetricModel& m, const Vec& x, const Vec& eta);

/// Legendre transform L(y) = g_y(y, .) for y != 0, and 0 at y = 0.
Vec legendre(const MetricModel& m, const Vec& x, const Vec& y);

/// Inverse Legendre transform: the y with L(y) = eta, by damped Newton
/// seeded from the dual-norm maximizer.  Returns 0 for eta = 0.
Vec legendre_inverse(const MetricModel& m, const Vec& x, const Vec& eta);

/// Closed-form inverse Legendre transform per metric family.
Vec legendre_inverse_fast(const MetricModel& m, const Vec& x, const Vec& eta);

/// Per-node gradient field grad f = L^-1(df), df by central differences.
/// Nodes with df = 0 map to the zero vector.
VectorField gradient_field(const MetricModel& m, const ScalarField& f);

}  // namespace finsler
