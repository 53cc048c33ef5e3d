#include "finsler/comparison.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

#include "finsler/errors.hpp"
#include "finsler/optimize.hpp"

namespace finsler {

double sphere_volume(int n) {
    if (n < 0) throw unsupported_dimension_error("sphere_volume: negative dimension");
    return 2.0 * std::pow(M_PI, (n + 1) / 2.0) / std::tgamma((n + 1) / 2.0);
}

double ball_volume(int n) {
    if (n < 0) throw unsupported_dimension_error("ball_volume: negative dimension");
    return std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

double s_k(double k, double t) {
    if (t < 0) throw std::invalid_argument("s_k: t must be >= 0");
    double z = k * t * t;
    if (std::abs(z) < 1e-6) {
        // series: t (1 - z/6 + z^2/120 - z^3/5040)
        return t * (1.0 - z / 6.0 + z * z / 120.0 - z * z * z / 5040.0);
    }
    if (k > 0) {
        double s = std::sqrt(k);
        return std::sin(s * t) / s;
    }
    double s = std::sqrt(-k);
    return std::sinh(s * t) / s;
}

double area_profile(const SpaceFormProfile& p, double r) {
    if (p.n < 1) throw unsupported_dimension_error("area_profile: n must be >= 1");
    if (r < 0) throw std::invalid_argument("area_profile: r must be >= 0");
    return sphere_volume(p.n - 1) * std::pow(s_k(p.k, r), p.n - 1);
}

double volume_profile(const SpaceFormProfile& p, double r) {
    if (p.n < 1) throw unsupported_dimension_error("volume_profile: n must be >= 1");
    if (r < 0) throw std::invalid_argument("volume_profile: r must be >= 0");
    if (r == 0) return 0.0;
    auto f = [&](double t) { return std::pow(s_k(p.k, t), p.n - 1); };
    double integral = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, 0.0, r, 12, 1e-10);
    return sphere_volume(p.n - 1) * integral;
}

double cheeger_eigen_lower(double h, double lambda) {
    if (h < 0 || lambda < 1) throw std::invalid_argument("cheeger_eigen_lower: need h >= 0, lambda >= 1");
    return h * h / (4.0 * lambda * lambda);
}

namespace {

double profile_integral_to_diam(const BoundInputs& b) {
    SpaceFormProfile p{b.n, b.k};
    return volume_profile(p, b.diam) / sphere_volume(b.n - 1);
}

}  // namespace

double croke_cheeger_lower(const BoundInputs& b) {
    if (b.n < 2) throw unsupported_dimension_error("croke_cheeger_lower: n must be >= 2");
    if (!(b.vol > 0) || !(b.diam > 0))
        throw std::invalid_argument("croke_cheeger_lower: vol and diam must be positive");
    double integral = profile_integral_to_diam(b);
    double denom = 2.0 * sphere_volume(b.n - 2) * std::pow(b.Lambda, 4.0 * b.n + 0.5) * b.diam *
                   integral;
    return (b.n - 1) * b.vol / denom;
}

double yau_eigen_lower(const BoundInputs& b) {
    if (b.n < 2) throw unsupported_dimension_error("yau_eigen_lower: n must be >= 2");
    if (!(b.vol > 0) || !(b.diam > 0))
        throw std::invalid_argument("yau_eigen_lower: vol and diam must be positive");
    double integral = profile_integral_to_diam(b);
    double denom = 4.0 * sphere_volume(b.n - 2) * std::pow(b.Lambda, 4.0 * b.n + 1.0) * b.diam *
                   integral;
    double x = (b.n - 1) * b.vol / denom;
    return x * x;
}

StarlikeBound starlike_isoperimetric_lower(int n, double k, double Lambda, double r, double R) {
    if (!(k < 0)) throw std::invalid_argument("starlike_isoperimetric_lower: k must be < 0");
    if (!(0 < r && r <= R)) throw std::invalid_argument("starlike_isoperimetric_lower: need 0 < r <= R");
    SpaceFormProfile p{n, k};
    double hi = r / (2.0 * std::sqrt(Lambda));
    double denom = 2.0 * std::pow(Lambda, 4.0 * n + 0.5) * volume_profile(p, r) *
                   volume_profile(p, R);
    double vhi = volume_profile(p, hi);
    auto f = [&](double beta) {
        return area_profile(p, beta) * (vhi - volume_profile(p, beta)) / denom;
    };

    const int grid = 1024;
    double best = 0, best_beta = hi / 2;
    for (int i = 1; i < grid; ++i) {
        double beta = hi * i / grid;
        double v = f(beta);
        if (v > best) {
            best = v;
            best_beta = beta;
        }
    }
    double step = hi / grid;
    StarlikeBound out;
    out.value = golden_max(f, std::max(0.0, best_beta - step), std::min(hi, best_beta + step), 90,
                           &out.beta);
    return out;
}

double buser_rhs(double delta, double h, double C) {
    if (delta < 0 || h < 0 || !(C > 0))
        throw std::invalid_argument("buser_rhs: need delta, h >= 0 and C > 0");
    return C * (delta * h + h * h);
}

RescaledQuantities rescale_quantities(double C, double lambda1, double h, double ric) {
    if (!(C > 0)) throw std::invalid_argument("rescale_quantities: C must be > 0");
    return {lambda1 / C, h / std::sqrt(C), ric / C};
}

double j_profile(double r, int n, double Lambda) {
    if (!(r > 0)) throw std::invalid_argument("j_profile: r must be > 0");
    SpaceFormProfile p{n, -1.0};
    double rs = std::sqrt(Lambda);
    double num = area_profile(p, r / (4.0 * Lambda)) * volume_profile(p, r / (4.0 * Lambda));
    double den = 4.0 * std::pow(Lambda, 4.0 * n + 0.5) * volume_profile(p, r / rs) *
                 volume_profile(p, 2.0 * r * rs);
    return num / den;
}

}  // namespace finsler
