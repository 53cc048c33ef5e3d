#include "finsler/metric.hpp"

#include <cmath>
#include <random>

namespace finsler {

namespace {

constexpr double kSphereBand = 0.1;   // pole exclusion, radians
constexpr double kXStepFactor = 1e-3; // x-steps scale with chart extent
constexpr double kYStepFactor = 2e-2; // y-steps scale with F(x, y)
constexpr double kMaxRandersBound = 0.95;

// Richardson-extrapolated central first difference: O(h^4).
template <class F>
double diff1(F&& f, double h) {
    double d1 = (f(h) - f(-h)) / (2.0 * h);
    double d2 = (f(h / 2) - f(-h / 2)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

// Richardson-extrapolated central second difference: O(h^4).
template <class F>
double diff2(F&& f, double h) {
    double f0 = f(0.0);
    double d1 = (f(h) - 2.0 * f0 + f(-h)) / (h * h);
    double d2 = (f(h / 2) - 2.0 * f0 + f(-h / 2)) / (h * h / 4.0);
    return (4.0 * d2 - d1) / 3.0;
}

// Richardson-extrapolated cross difference d^2 f / da db: O(h^4).
template <class F>
double diff_cross(F&& f, double ha, double hb) {
    auto stencil = [&](double sa, double sb) {
        return (f(sa, sb) - f(sa, -sb) - f(-sa, sb) + f(-sa, -sb)) / (4.0 * sa * sb);
    };
    double d1 = stencil(ha, hb);
    double d2 = stencil(ha / 2, hb / 2);
    return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

MetricModel MetricModel::euclidean(Chart chart) {
    return riemannian(chart, Mat::identity(chart.dim));
}

MetricModel MetricModel::riemannian(Chart chart, Mat a) {
    MetricModel m;
    m.family_ = MetricFamily::Riemannian;
    m.chart_ = chart;
    m.a_ = a;
    m.beta_ = Vec::zero(chart.dim);
    m.x_independent_ = true;
    m.validate();
    return m;
}

MetricModel MetricModel::sphere(double radius) {
    if (!(radius > 0) || !std::isfinite(radius))
        throw invalid_model_error("sphere: radius must be positive and finite");
    Chart c;
    c.dim = 2;
    c.lo = Vec::of(kSphereBand, 0.0);
    c.len = Vec::of(M_PI - 2 * kSphereBand, 2 * M_PI);
    c.periodic = {false, true};
    MetricModel m;
    m.family_ = MetricFamily::Riemannian;
    m.chart_ = c;
    m.sphere_field_ = true;
    m.sphere_radius_ = radius;
    m.a_ = Mat::identity(2);
    m.beta_ = Vec::zero(2);
    m.x_independent_ = false;
    m.validate();
    return m;
}

MetricModel MetricModel::randers(Chart chart, Mat a, Vec beta) {
    MetricModel m;
    m.family_ = MetricFamily::Randers;
    m.chart_ = chart;
    m.a_ = a;
    m.beta_ = beta;
    m.x_independent_ = true;  // constant coefficient fields
    m.validate();
    return m;
}

MetricModel MetricModel::randers_modulated(Chart chart, Mat a, Vec beta, double wobble) {
    if (!std::isfinite(wobble) || std::abs(wobble) >= 1.0)
        throw invalid_model_error("randers_modulated: |wobble| must be < 1");
    MetricModel m;
    m.family_ = MetricFamily::Randers;
    m.chart_ = chart;
    m.a_ = a;
    m.beta_ = beta;
    m.beta_wobble_ = wobble;
    m.x_independent_ = wobble == 0.0;
    m.validate();
    return m;
}

MetricModel MetricModel::minkowski(Chart chart, Mat a, Vec beta) {
    MetricModel m = randers(chart, a, beta);
    m.family_ = MetricFamily::Minkowski;
    return m;
}

MetricModel MetricModel::conformal_neck(Chart chart, double neck, double width) {
    if (!(neck > 0) || neck > 1.0 || !std::isfinite(neck))
        throw invalid_model_error("conformal_neck: neck factor must lie in (0, 1]");
    if (!(width > 0) || !std::isfinite(width))
        throw invalid_model_error("conformal_neck: width must be positive");
    MetricModel m;
    m.family_ = MetricFamily::ConformalNeck;
    m.chart_ = chart;
    m.a_ = Mat::identity(chart.dim);
    m.beta_ = Vec::zero(chart.dim);
    m.neck_ = neck;
    m.neck_width_ = width;
    m.x_independent_ = neck == 1.0;
    m.validate();
    return m;
}

MetricModel MetricModel::scaled(double C) const {
    if (!(C > 0) || !std::isfinite(C)) throw invalid_model_error("scaled: C must be positive");
    MetricModel m = *this;
    m.scale_ *= std::sqrt(C);
    return m;
}

MetricModel MetricModel::reversed() const {
    MetricModel m = *this;
    m.beta_ = -beta_;
    return m;
}

void MetricModel::validate() {
    if (chart_.dim < 1 || chart_.dim > 2)
        throw invalid_model_error("metric: chart dimension must be 1 or 2");
    for (int i = 0; i < chart_.dim; ++i)
        if (!(chart_.len[i] > 0) || !std::isfinite(chart_.len[i]))
            throw invalid_model_error("metric: chart extent must be positive and finite");
    if (!is_finite(a_) || !is_finite(beta_)) throw invalid_model_error("metric: non-finite parameters");
    if (!sphere_field_ && !is_spd(a_)) throw invalid_model_error("metric: a must be SPD");

    if (family_ == MetricFamily::Randers || family_ == MetricFamily::Minkowski) {
        double b2 = quad_form(inverse(a_), beta_);
        randers_bound_ = std::sqrt(std::max(0.0, b2)) * (1.0 + std::abs(beta_wobble_));
        if (randers_bound_ > kMaxRandersBound)
            throw invalid_model_error("randers: sup ||beta||_a exceeds 0.95");
    }

    // Probabilistic strong-convexity check on the fundamental tensor.
    std::mt19937 rng(0x5eedu);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    for (int s = 0; s < 64; ++s) {
        Vec x = Vec::zero(chart_.dim);
        for (int i = 0; i < chart_.dim; ++i) x[i] = chart_.lo[i] + ud(rng) * chart_.len[i];
        Vec y = Vec::zero(chart_.dim);
        double ny = 0;
        while (ny < 1e-3) {
            for (int i = 0; i < chart_.dim; ++i) y[i] = 2 * ud(rng) - 1;
            ny = norm2(y);
        }
        Mat g = fundamental_tensor(x, y);
        if (min_eigenvalue(g) <= 0)
            throw invalid_model_error("metric: fundamental tensor not SPD at sampled (x, y)");
    }
}

Mat MetricModel::base_spd(const Vec& x) const {
    if (sphere_field_) {
        double theta = x[0];
        double st = std::sin(theta);
        double r2 = sphere_radius_ * sphere_radius_;
        return Mat::diag(r2, r2 * st * st);
    }
    if (family_ == MetricFamily::ConformalNeck) {
        // w(x1) = 1 - (1 - neck) exp(-sin^2(pi (x1/L - 1/2)) / width^2)
        double u = std::sin(M_PI * (x[0] / chart_.len[0] - 0.5));
        double w = 1.0 - (1.0 - neck_) * std::exp(-u * u / (neck_width_ * neck_width_));
        Mat a = Mat::identity(chart_.dim);
        return w * w * a;
    }
    return a_;
}

Mat MetricModel::spd(const Vec& x) const { return (scale_ * scale_) * base_spd(x); }

Vec MetricModel::oneform(const Vec& x) const {
    double mod = 1.0;
    if (beta_wobble_ != 0.0) mod += beta_wobble_ * std::sin(2 * M_PI * x[0] / chart_.len[0]);
    return (scale_ * mod) * beta_;
}

double MetricModel::norm(const Vec& x, const Vec& y) const {
    double alpha2 = quad_form(spd(x), y);
    double alpha = std::sqrt(std::max(0.0, alpha2));
    return alpha + dot(oneform(x), y);
}

Mat MetricModel::fundamental_tensor(const Vec& x, const Vec& y) const {
    if (norm2(y) == 0.0)
        throw degenerate_direction_error("fundamental_tensor: y = 0");
    Mat a = spd(x);
    if (family_ == MetricFamily::Riemannian || family_ == MetricFamily::ConformalNeck) return a;

    // Randers-type norm: g = (F/alpha)(a - ay (x) ay / alpha^2) + l (x) l,
    // with l = ay/alpha + beta.
    Vec b = oneform(x);
    Vec ay = mul(a, y);
    double alpha = std::sqrt(quad_form(a, y));
    double f = alpha + dot(b, y);
    Mat g = Mat::zero(dim());
    double fa = f / alpha;
    for (int i = 0; i < dim(); ++i) {
        for (int j = 0; j < dim(); ++j) {
            double li = ay[i] / alpha + b[i];
            double lj = ay[j] / alpha + b[j];
            g(i, j) = fa * (a(i, j) - ay[i] * ay[j] / (alpha * alpha)) + li * lj;
        }
    }
    return g;
}

Vec MetricModel::spray(const Vec& x, const Vec& y) const {
    if (norm2(y) == 0.0) throw degenerate_direction_error("spray: y = 0");
    if (x_independent_) return Vec::zero(dim());

    // dg[k](i,j) = d g_ij / d x^k by Richardson central differences.
    Mat dg[2];
    for (int k = 0; k < dim(); ++k) {
        double h = kXStepFactor * chart_.extent(k);
        dg[k] = Mat::zero(dim());
        for (int i = 0; i < dim(); ++i) {
            for (int j = i; j < dim(); ++j) {
                auto f = [&](double s) {
                    Vec xs = x;
                    xs[k] += s;
                    return fundamental_tensor(xs, y)(i, j);
                };
                double d = diff1(f, h);
                dg[k](i, j) = d;
                dg[k](j, i) = d;
            }
        }
    }

    Mat ginv = inverse(fundamental_tensor(x, y));
    if (!is_finite(ginv)) throw degenerate_metric_error("spray: singular fundamental tensor");
    Vec G = Vec::zero(dim());
    for (int i = 0; i < dim(); ++i) {
        double s = 0;
        for (int l = 0; l < dim(); ++l) {
            double c = 0;
            for (int j = 0; j < dim(); ++j)
                for (int k = 0; k < dim(); ++k)
                    c += (2.0 * dg[k](j, l) - dg[l](j, k)) * y[j] * y[k];
            s += ginv(i, l) * c;
        }
        G[i] = 0.25 * s;
    }
    return G;
}

double MetricModel::ricci(const Vec& x, const Vec& y) const {
    if (norm2(y) == 0.0) throw degenerate_direction_error("ricci: y = 0");
    if (x_independent_) return 0.0;

    double hy = kYStepFactor * norm(x, y);
    if (!(hy > 0) || !std::isfinite(hy))
        throw differentiation_failure_error("ricci: y-step underflow");

    const int d = dim();
    auto G = [&](Vec xs, Vec ys) { return spray(xs, ys); };

    // dG/dx^k, dG/dy^j, d2G/dx^j dy^k, d2G/dy^j dy^k, componentwise.
    double dGdx[2][2], dGdy[2][2], d2Gxy[2][2][2], d2Gyy[2][2][2];
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
            double hx = kXStepFactor * chart_.extent(k);
            dGdx[i][k] = diff1(
                [&](double s) {
                    Vec xs = x;
                    xs[k] += s;
                    return G(xs, y)[i];
                },
                hx);
            dGdy[i][k] = diff1(
                [&](double s) {
                    Vec ys = y;
                    ys[k] += s;
                    return G(x, ys)[i];
                },
                hy);
        }
        for (int j = 0; j < d; ++j) {
            double hx = kXStepFactor * chart_.extent(j);
            for (int k = 0; k < d; ++k) {
                d2Gxy[i][j][k] = diff_cross(
                    [&](double sx, double sy) {
                        Vec xs = x;
                        xs[j] += sx;
                        Vec ys = y;
                        ys[k] += sy;
                        return G(xs, ys)[i];
                    },
                    hx, hy);
                if (j == k) {
                    d2Gyy[i][j][k] = diff2(
                        [&](double s) {
                            Vec ys = y;
                            ys[j] += s;
                            return G(x, ys)[i];
                        },
                        hy);
                } else if (j < k) {
                    d2Gyy[i][j][k] = diff_cross(
                        [&](double sa, double sb) {
                            Vec ys = y;
                            ys[j] += sa;
                            ys[k] += sb;
                            return G(x, ys)[i];
                        },
                        hy, hy);
                } else {
                    d2Gyy[i][j][k] = d2Gyy[i][k][j];
                }
            }
        }
    }

    Vec Gxy = spray(x, y);
    double ric = 0;
    for (int i = 0; i < d; ++i) {
        double r = 2.0 * dGdx[i][i];
        for (int j = 0; j < d; ++j) {
            r -= y[j] * d2Gxy[i][j][i];
            r += 2.0 * Gxy[j] * d2Gyy[i][j][i];
            r -= dGdy[i][j] * dGdy[j][i];
        }
        ric += r;
    }
    if (!std::isfinite(ric)) throw differentiation_failure_error("ricci: non-finite result");
    return ric;
}

GeodesicPath integrate_geodesic(const MetricModel& m, const Vec& x0, const Vec& y0, double T,
                                int steps) {
    if (norm2(y0) == 0.0) throw degenerate_direction_error("integrate_geodesic: y0 = 0");
    if (steps < 16) throw std::invalid_argument("integrate_geodesic: steps must be >= 16");

    GeodesicPath path;
    path.order = 4;
    double dt = T / steps;
    path.step = dt;
    Vec x = x0, y = y0;
    path.t.reserve(steps + 1);
    path.x.reserve(steps + 1);
    path.y.reserve(steps + 1);
    path.t.push_back(0.0);
    path.x.push_back(m.chart().wrap(x));
    path.y.push_back(y);

    auto accel = [&](const Vec& xs, const Vec& ys) { return -2.0 * m.spray(xs, ys); };
    for (int s = 0; s < steps; ++s) {
        Vec k1x = y, k1y = accel(x, y);
        Vec k2x = y + (dt / 2) * k1y, k2y = accel(x + (dt / 2) * k1x, y + (dt / 2) * k1y);
        Vec k3x = y + (dt / 2) * k2y, k3y = accel(x + (dt / 2) * k2x, y + (dt / 2) * k2y);
        Vec k4x = y + dt * k3y, k4y = accel(x + dt * k3x, y + dt * k3y);
        x += (dt / 6) * (k1x + 2 * k2x + 2 * k3x + k4x);
        y += (dt / 6) * (k1y + 2 * k2y + 2 * k3y + k4y);
        if (!is_finite(x) || !is_finite(y))
            throw integration_diverged_error("integrate_geodesic: non-finite state");
        path.t.push_back((s + 1) * dt);
        path.x.push_back(m.chart().wrap(x));
        path.y.push_back(y);
    }
    return path;
}

}  // namespace finsler
