#include "finsler/duality.hpp"

#include <cmath>

#include "finsler/errors.hpp"
#include "finsler/optimize.hpp"

namespace finsler {

namespace {

constexpr int kDualSamples = 256;
constexpr double kZeroTol = 1e-14;

}  // namespace

DualNormResult dual_norm_argmax(const MetricModel& m, const Vec& x, const Vec& eta) {
    DualNormResult r;
    r.direction = Vec::zero(m.dim());
    if (sup_norm(eta) == 0.0) return r;

    if (m.dim() == 1) {
        Vec e = Vec::of(1.0);
        double plus = eta[0] / m.norm(x, e);
        double minus = -eta[0] / m.norm(x, -e);
        if (plus >= minus) {
            r.value = plus;
            r.direction = e;
        } else {
            r.value = minus;
            r.direction = -e;
        }
        return r;
    }

    auto val = [&](double theta) {
        Vec e = unit_dir(theta);
        return dot(eta, e) / m.norm(x, e);
    };
    double best = -1e300, best_theta = 0;
    for (int k = 0; k < kDualSamples; ++k) {
        double theta = 2 * M_PI * k / kDualSamples;
        double v = val(theta);
        if (v > best) {
            best = v;
            best_theta = theta;
        }
    }
    double dt = 2 * M_PI / kDualSamples;
    double theta_star;
    r.value = golden_max(val, best_theta - dt, best_theta + dt, 90, &theta_star);
    r.direction = unit_dir(theta_star);
    return r;
}

double dual_norm(const MetricModel& m, const Vec& x, const Vec& eta) {
    return dual_norm_argmax(m, x, eta).value;
}

double dual_norm_fast(const MetricModel& m, const Vec& x, const Vec& eta) {
    if (sup_norm(eta) == 0.0) return 0.0;
    Mat w = inverse(m.spd(x));
    if (m.family() == MetricFamily::Riemannian || m.family() == MetricFamily::ConformalNeck)
        return std::sqrt(quad_form(w, eta));

    // Dual of a randers-type norm is again randers-type in the co-metric:
    // F*(eta) = (sqrt((1 - b^2) Q + p^2) - p) / (1 - b^2),
    // Q = eta^T W eta, p = beta^T W eta, b^2 = beta^T W beta.
    Vec beta = m.oneform(x);
    double b2 = quad_form(w, beta);
    double q = quad_form(w, eta);
    double p = dot(beta, mul(w, eta));
    double u = std::sqrt((1.0 - b2) * q + p * p);
    return (u - p) / (1.0 - b2);
}

Vec legendre(const MetricModel& m, const Vec& x, const Vec& y) {
    if (sup_norm(y) == 0.0) return Vec::zero(m.dim());
    return mul(m.fundamental_tensor(x, y), y);
}

Vec legendre_inverse_fast(const MetricModel& m, const Vec& x, const Vec& eta) {
    if (sup_norm(eta) == 0.0) return Vec::zero(m.dim());
    Mat w = inverse(m.spd(x));
    if (m.family() == MetricFamily::Riemannian || m.family() == MetricFamily::ConformalNeck)
        return mul(w, eta);

    // L^-1(eta) = F*(eta) grad F*(eta) with grad F* = W(eta - F* beta) / u.
    Vec beta = m.oneform(x);
    double b2 = quad_form(w, beta);
    double q = quad_form(w, eta);
    double p = dot(beta, mul(w, eta));
    double u = std::sqrt((1.0 - b2) * q + p * p);
    double fs = (u - p) / (1.0 - b2);
    return (fs / u) * mul(w, eta - fs * beta);
}

Vec legendre_inverse(const MetricModel& m, const Vec& x, const Vec& eta) {
    if (sup_norm(eta) == 0.0) return Vec::zero(m.dim());

    DualNormResult seed = dual_norm_argmax(m, x, eta);
    double fe = m.norm(x, seed.direction);
    Vec y = (seed.value / fe) * seed.direction;

    // Newton on y -> g_y(y, .) - eta; the Jacobian of the Legendre map is g.
    double target = 1e-12 * std::max(1.0, sup_norm(eta));
    double res = sup_norm(legendre(m, x, y) - eta);
    for (int it = 0; it < 100; ++it) {
        if (res <= target) return y;
        Mat g = m.fundamental_tensor(x, y);
        Vec step = solve(g, eta - legendre(m, x, y));
        double s = 1.0;
        for (int half = 0; half < 40; ++half) {
            Vec cand = y + s * step;
            if (sup_norm(cand) > 0) {
                double r = sup_norm(legendre(m, x, cand) - eta);
                if (r < res) {
                    y = cand;
                    res = r;
                    break;
                }
            }
            s *= 0.5;
        }
    }
    if (res <= 1e-8 * std::max(1.0, sup_norm(eta))) return y;
    throw inversion_failure_error("legendre_inverse: Newton did not converge");
}

VectorField gradient_field(const MetricModel& m, const ScalarField& f) {
    VectorField df = differential(f);
    VectorField grad(f.mesh);
    double scale = 0.0;
    for (int i = 0; i < f.mesh.num_nodes(); ++i) scale = std::max(scale, sup_norm(df[i]));
    for (int i = 0; i < f.mesh.num_nodes(); ++i) {
        if (sup_norm(df[i]) <= kZeroTol * std::max(1.0, scale)) continue;
        grad[i] = legendre_inverse(m, f.mesh.coord(i), df[i]);
    }
    return grad;
}

}  // namespace finsler
