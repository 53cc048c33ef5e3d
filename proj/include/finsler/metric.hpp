#pragma once

#include <cstdint>
#include <vector>

#include "finsler/chart.hpp"
#include "finsler/errors.hpp"
#include "finsler/linalg.hpp"

namespace finsler {

enum class MetricFamily { Riemannian, Randers, Minkowski, ConformalNeck };

/// Parametric Finsler metric on a chart.  Four families:
///   - riemannian: F = sqrt(y^T a(x) y), with a constant or a sphere-band field
///   - randers:    F = sqrt(y^T a y) + beta.y, ||beta||_a < 1
///   - minkowski:  x-independent randers-type norm (flat Berwald on a torus)
///   - conformal-neck: F = w(x1) |y|, a flat metric pinched along one axis
///
/// A global factor `scale` multiplies F (models F -> sqrt(C) F rescaling).
class MetricModel {
  public:
    static MetricModel euclidean(Chart chart);
    static MetricModel riemannian(Chart chart, Mat a);
    /// Round sphere of the given radius in spherical coordinates
    /// (theta, phi), with a pole exclusion band of 0.1 rad.
    static MetricModel sphere(double radius);
    static MetricModel randers(Chart chart, Mat a, Vec beta);
    /// Randers metric with beta(x) = beta (1 + wobble sin(2 pi x1 / L1));
    /// sup ||beta||_a over the chart must stay below the validity bound.
    static MetricModel randers_modulated(Chart chart, Mat a, Vec beta, double wobble);
    static MetricModel minkowski(Chart chart, Mat a, Vec beta);
    static MetricModel conformal_neck(Chart chart, double neck, double width);

    /// F -> sqrt(C) * F
    MetricModel scaled(double C) const;
    /// F~(x, y) = F(x, -y)
    MetricModel reversed() const;

    MetricFamily family() const { return family_; }
    const Chart& chart() const { return chart_; }
    int dim() const { return chart_.dim; }
    bool x_independent() const { return x_independent_; }
    double scale() const { return scale_; }
    /// sup ||beta||_a over the chart (0 unless randers/minkowski)
    double randers_bound() const { return randers_bound_; }

    /// F(x, y); positively 1-homogeneous in y, F(x, 0) = 0.
    double norm(const Vec& x, const Vec& y) const;

    /// Symmetric positive part a_ij(x), including the scale factor squared.
    Mat spd(const Vec& x) const;
    /// One-form part beta_i(x), including the scale factor (zero vector
    /// for families without one).
    Vec oneform(const Vec& x) const;

    /// Fundamental tensor g_ij(x, y): half the y-Hessian of F^2.
    /// Requires y != 0.
    Mat fundamental_tensor(const Vec& x, const Vec& y) const;

    /// Geodesic coefficients G^i(x, y); 2-homogeneous in y.
    Vec spray(const Vec& x, const Vec& y) const;

    /// Ricci scalar Ric(x, y); 2-homogeneous in y.  Computed from the
    /// spray by central finite differences with Richardson extrapolation.
    double ricci(const Vec& x, const Vec& y) const;

    double neck() const { return neck_; }
    double neck_width() const { return neck_width_; }
    double sphere_radius() const { return sphere_radius_; }
    double beta_wobble() const { return beta_wobble_; }

  private:
    MetricModel() = default;
    void validate();
    Mat base_spd(const Vec& x) const;

    MetricFamily family_ = MetricFamily::Riemannian;
    Chart chart_;
    bool x_independent_ = true;
    bool sphere_field_ = false;
    double sphere_radius_ = 1.0;
    Mat a_;
    Vec beta_;
    double beta_wobble_ = 0.0;
    double neck_ = 1.0;
    double neck_width_ = 0.5;
    double randers_bound_ = 0.0;
    double scale_ = 1.0;
};

struct GeodesicPath {
    std::vector<double> t;
    std::vector<Vec> x;  // canonicalized chart points
    std::vector<Vec> y;
    double step = 0.0;
    int order = 4;
};

/// Fixed-step classical RK4 integration of x'' + 2G(x, x') = 0.
/// T may be negative.  Requires y0 != 0 and steps >= 16.
GeodesicPath integrate_geodesic(const MetricModel& m, const Vec& x0, const Vec& y0, double T,
                                int steps);

}  // namespace finsler
