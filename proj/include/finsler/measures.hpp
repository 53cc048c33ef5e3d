#pragma once

#include <string>

#include "finsler/mesh.hpp"
#include "finsler/metric.hpp"

namespace finsler {

enum class MeasureKind { BusemannHausdorff, HolmesThompson };

struct MeasureSpec {
    MeasureKind kind = MeasureKind::HolmesThompson;
    int n_dir = 512;  // angular quadrature nodes (2D; 1D is exact)
    int n_rad = 64;   // radial Gauss-Legendre nodes

    static MeasureSpec bh(int n_dir = 512, int n_rad = 64) {
        return {MeasureKind::BusemannHausdorff, n_dir, n_rad};
    }
    static MeasureSpec ht(int n_dir = 512, int n_rad = 64) {
        return {MeasureKind::HolmesThompson, n_dir, n_rad};
    }
};

std::string to_string(MeasureKind k);

/// Lebesgue volume of the unit ball B_xM = {y : F(x, y) < 1} in the
/// chart frame.  Exact in 1D; polar quadrature in 2D.
double unit_ball_volume(const MetricModel& m, const Vec& x, int n_dir = 512);

/// sigma_BH = vol(B^n) / vol(B_xM).
double bh_density(const MetricModel& m, const Vec& x, const MeasureSpec& q);

/// sigma_HT = (1/vol(B^n)) int_{B_xM} det g(x, y) dy, radial x angular
/// product quadrature with radial nodes excluding the origin.
double ht_density(const MetricModel& m, const Vec& x, const MeasureSpec& q);

/// Density of the requested measure kind at x.
double density(const MetricModel& m, const Vec& x, const MeasureSpec& q);

DensityField density_field(const MetricModel& m, const Mesh& mesh, const MeasureSpec& q);

/// Distortion tau(y) = log(sqrt(det g(x, y)) / sigma(x)); 0-homogeneous in y.
double distortion(const MetricModel& m, const Vec& x, const Vec& y, double sigma);

/// S-curvature: derivative of the distortion along the geodesic through
/// (x, y), by a central difference with step tied to the chart scale.
double s_curvature(const MetricModel& m, const Vec& x, const Vec& y, const MeasureSpec& q);

}  // namespace finsler
