#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "finsler/chart.hpp"
#include "finsler/linalg.hpp"
#include "finsler/metric.hpp"

namespace finsler::testing {

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

struct Sampler {
    std::mt19937_64 rng;
    explicit Sampler(std::uint64_t seed = 0xf1a57u) : rng(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }
    Vec point(const Chart& c) {
        Vec x = Vec::zero(c.dim);
        for (int i = 0; i < c.dim; ++i) x[i] = c.lo[i] + uniform(0.05, 0.95) * c.len[i];
        return x;
    }
    Vec direction(int dim, double lo = 0.2, double hi = 2.0) {
        Vec y = Vec::zero(dim);
        double r = uniform(lo, hi);
        if (dim == 1) {
            y[0] = uniform(0.0, 1.0) < 0.5 ? r : -r;
        } else {
            double theta = uniform(0.0, 2 * M_PI);
            y = r * unit_dir(theta);
        }
        return y;
    }
};

// Independent oracle: g_ij = (1/2) d^2 F^2 / dy_i dy_j by 5-point central
// differences on F^2.
inline Mat hessian_half_f2(const MetricModel& m, const Vec& x, const Vec& y) {
    int d = m.dim();
    double h = 1e-4 * m.norm(x, y);
    auto f2 = [&](const Vec& yy) {
        double f = m.norm(x, yy);
        return f * f;
    };
    Mat g = Mat::zero(d);
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            double v;
            if (i == j) {
                Vec yp = y, ym = y, yp2 = y, ym2 = y;
                yp[i] += h;
                ym[i] -= h;
                yp2[i] += 2 * h;
                ym2[i] -= 2 * h;
                v = (-f2(yp2) + 16 * f2(yp) - 30 * f2(y) + 16 * f2(ym) - f2(ym2)) /
                    (12 * h * h);
            } else {
                Vec ypp = y, ypm = y, ymp = y, ymm = y;
                ypp[i] += h;
                ypp[j] += h;
                ypm[i] += h;
                ypm[j] -= h;
                ymp[i] -= h;
                ymp[j] += h;
                ymm[i] -= h;
                ymm[j] -= h;
                v = (f2(ypp) - f2(ypm) - f2(ymp) + f2(ymm)) / (4 * h * h);
            }
            g(i, j) = 0.5 * v;
            g(j, i) = 0.5 * v;
        }
    }
    return g;
}

// Model zoo shared across suites.
inline MetricModel euclid_torus_2d() { return MetricModel::euclidean(Chart::torus(2 * M_PI, 2 * M_PI)); }

inline MetricModel randers_torus(double b) {
    return MetricModel::randers(Chart::torus(2 * M_PI, 2 * M_PI), Mat::identity(2),
                                Vec::of(b, 0.0));
}

inline MetricModel randers_circle(double alpha_coef, double b) {
    // F = alpha_coef |y| + b y on a circle of length 2 pi
    return MetricModel::randers(Chart::torus(2 * M_PI), Mat::of(alpha_coef * alpha_coef),
                                Vec::of(b));
}

inline MetricModel minkowski_torus() {
    return MetricModel::minkowski(Chart::torus(2 * M_PI, 2 * M_PI), Mat::of(1.3, 0.2, 0.2, 0.8),
                                  Vec::of(0.2, -0.1));
}

inline MetricModel wobbly_randers_torus(double b, double wobble) {
    return MetricModel::randers_modulated(Chart::torus(2 * M_PI, 2 * M_PI), Mat::identity(2),
                                          Vec::of(b, 0.0), wobble);
}

}  // namespace finsler::testing
