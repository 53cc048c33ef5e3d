#include "finsler/measures.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "finsler/comparison.hpp"
#include "finsler/errors.hpp"

namespace finsler {

namespace {

constexpr double kSStepFactor = 1e-3;  // S-curvature step vs chart scale

int clamp_dirs(int n_dir) { return std::max(n_dir, 64); }
int clamp_rad(int n_rad) { return std::max(n_rad, 32); }

struct GaussRule {
    std::vector<double> node;    // on (0, 1)
    std::vector<double> weight;  // for int_0^1
};

// Gauss-Legendre nodes by Newton iteration on the Legendre recurrence,
// mapped from [-1, 1] to (0, 1).
GaussRule make_gauss_rule(int n) {
    GaussRule r;
    r.node.resize(n);
    r.weight.resize(n);
    int mid = (n + 1) / 2;
    for (int k = 0; k < mid; ++k) {
        double z = std::cos(M_PI * (k + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - z * z) * pp * pp);
        r.node[k] = 0.5 * (1.0 - z);
        r.weight[k] = 0.5 * w;
        r.node[n - 1 - k] = 0.5 * (1.0 + z);
        r.weight[n - 1 - k] = 0.5 * w;
    }
    return r;
}

const GaussRule& gauss_rule(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss_rule(n)).first;
    return it->second;
}

}  // namespace

std::string to_string(MeasureKind k) {
    return k == MeasureKind::BusemannHausdorff ? "busemann-hausdorff" : "holmes-thompson";
}

double unit_ball_volume(const MetricModel& m, const Vec& x, int n_dir) {
    if (m.dim() == 1) {
        double fp = m.norm(x, Vec::of(1.0));
        double fm = m.norm(x, Vec::of(-1.0));
        return 1.0 / fp + 1.0 / fm;
    }
    // vol = (1/2) oint r(theta)^2 dtheta with r = 1/F(e(theta)); periodic
    // trapezoid rule, spectrally accurate for smooth indicatrices.
    int nd = clamp_dirs(n_dir);
    double acc = 0;
    for (int i = 0; i < nd; ++i) {
        double theta = 2 * M_PI * i / nd;
        double f = m.norm(x, unit_dir(theta));
        acc += 1.0 / (f * f);
    }
    return 0.5 * acc * (2 * M_PI / nd);
}

double bh_density(const MetricModel& m, const Vec& x, const MeasureSpec& q) {
    return ball_volume(m.dim()) / unit_ball_volume(m, x, q.n_dir);
}

double ht_density(const MetricModel& m, const Vec& x, const MeasureSpec& q) {
    if (m.dim() == 1) {
        Vec e = Vec::of(1.0);
        double gp = m.fundamental_tensor(x, e)(0, 0);
        double gm = m.fundamental_tensor(x, -e)(0, 0);
        double fp = m.norm(x, e);
        double fm = m.norm(x, -e);
        return 0.5 * (gp / fp + gm / fm);
    }
    // Radial Gauss-Legendre x angular trapezoid over the unit ball; the
    // interior radial nodes keep g evaluated away from y = 0.
    int nd = clamp_dirs(q.n_dir);
    const GaussRule& rule = gauss_rule(clamp_rad(q.n_rad));

    double acc = 0;
    for (int i = 0; i < nd; ++i) {
        double theta = 2 * M_PI * i / nd;
        Vec e = unit_dir(theta);
        double rmax = 1.0 / m.norm(x, e);
        double radial = 0;
        for (size_t k = 0; k < rule.node.size(); ++k) {
            double t = rule.node[k] * rmax;
            radial += rule.weight[k] * det(m.fundamental_tensor(x, t * e)) * t;
        }
        radial *= rmax;
        acc += radial;
    }
    acc *= 2 * M_PI / nd;
    return acc / ball_volume(2);
}

double density(const MetricModel& m, const Vec& x, const MeasureSpec& q) {
    return q.kind == MeasureKind::BusemannHausdorff ? bh_density(m, x, q) : ht_density(m, x, q);
}

DensityField density_field(const MetricModel& m, const Mesh& mesh, const MeasureSpec& q) {
    DensityField out(mesh);
    if (m.x_independent()) {
        double s = density(m, mesh.coord(0), q);
        for (int i = 0; i < mesh.num_nodes(); ++i) out[i] = s;
        return out;
    }
    for (int i = 0; i < mesh.num_nodes(); ++i) out[i] = density(m, mesh.coord(i), q);
    return out;
}

double distortion(const MetricModel& m, const Vec& x, const Vec& y, double sigma) {
    if (sup_norm(y) == 0.0) throw degenerate_direction_error("distortion: y = 0");
    if (!(sigma > 0)) throw std::invalid_argument("distortion: sigma must be > 0");
    return std::log(std::sqrt(det(m.fundamental_tensor(x, y))) / sigma);
}

double s_curvature(const MetricModel& m, const Vec& x, const Vec& y, const MeasureSpec& q) {
    if (sup_norm(y) == 0.0) throw degenerate_direction_error("s_curvature: y = 0");
    double h = kSStepFactor * m.chart().scale();
    auto tau_at = [&](double t) {
        GeodesicPath p = integrate_geodesic(m, x, y, t, 32);
        const Vec& xt = p.x.back();
        const Vec& yt = p.y.back();
        return distortion(m, xt, yt, density(m, xt, q));
    };
    return (tau_at(h) - tau_at(-h)) / (2.0 * h);
}

}  // namespace finsler
