#include "finsler/invariants.hpp"

#include <cmath>

#include "finsler/optimize.hpp"

namespace finsler {

namespace {

// Sample nodes for the sup; x-homogeneous models collapse to one fiber,
// varying models use a stratified stride capped at 256 nodes.
std::vector<Vec> sample_points(const MetricModel& m, const Mesh& mesh) {
    if (m.x_independent()) return {mesh.coord(0)};
    int total = mesh.num_nodes();
    int stride = std::max(1, (total + 255) / 256);
    std::vector<Vec> pts;
    for (int i = 0; i < total; i += stride) pts.push_back(mesh.coord(i));
    return pts;
}

}  // namespace

double reversibility(const MetricModel& m, const Mesh& mesh, const InvariantOptions& opts) {
    InvariantReport r = compute_invariants(m, mesh, opts);
    return r.lambda;
}

double uniformity(const MetricModel& m, const Mesh& mesh, const InvariantOptions& opts) {
    InvariantReport r = compute_invariants(m, mesh, opts);
    return r.Lambda;
}

InvariantReport compute_invariants(const MetricModel& m, const Mesh& mesh,
                                   const InvariantOptions& opts) {
    InvariantReport rep;
    auto points = sample_points(m, mesh);

    if (m.dim() == 1) {
        // Directions are just +/-1; the ratio sup is exact on each fiber.
        double lam = 1.0, Lam = 1.0;
        for (const Vec& x : points) {
            Vec e = Vec::of(1.0);
            double fp = m.norm(x, e), fm = m.norm(x, -e);
            double l = std::max(fm / fp, fp / fm);
            double gp = m.fundamental_tensor(x, e)(0, 0);
            double gm = m.fundamental_tensor(x, -e)(0, 0);
            double L = std::max(gp / gm, gm / gp);
            if (l > lam) {
                lam = l;
                rep.lambda_witness.x = x;
            }
            if (L > Lam) {
                Lam = L;
                rep.Lambda_witness.x = x;
            }
        }
        rep.lambda = std::max(1.0, lam);
        rep.Lambda = std::max(1.0, Lam);
        return rep;
    }

    // Reversibility: sup over nodes and F-unit directions of F(-y).
    double lam = 1.0;
    for (const Vec& x : points) {
        auto val = [&](double theta) {
            Vec e = unit_dir(theta);
            return m.norm(x, -e) / m.norm(x, e);
        };
        double best = -1, best_theta = 0;
        for (int k = 0; k < opts.n_dir; ++k) {
            double theta = 2 * M_PI * k / opts.n_dir;
            double v = val(theta);
            if (v > best) {
                best = v;
                best_theta = theta;
            }
        }
        double dt = 2 * M_PI / opts.n_dir;
        double theta_star;
        double v = golden_max(val, best_theta - dt, best_theta + dt, 80, &theta_star);
        if (v > lam) {
            lam = v;
            rep.lambda_witness.x = x;
            rep.lambda_witness.theta_y = theta_star;
        }
    }
    rep.lambda = std::max(1.0, lam);

    // Uniformity: per node, extremize g_X(Y, Y) over X for each Y, then
    // maximize the max/min ratio over Y; grid seed plus nested golden polish.
    double Lam = 1.0;
    for (const Vec& x : points) {
        auto gq = [&](double theta_x, double theta_y) {
            return quad_form(m.fundamental_tensor(x, unit_dir(theta_x)), unit_dir(theta_y));
        };
        auto ratio_for_y = [&](double theta_y, double* tx_max = nullptr,
                               double* tx_min = nullptr) {
            double hi = -1e300, lo = 1e300, th_hi = 0, th_lo = 0;
            for (int i = 0; i < opts.n_x_dir; ++i) {
                double tx = 2 * M_PI * i / opts.n_x_dir;
                double v = gq(tx, theta_y);
                if (v > hi) {
                    hi = v;
                    th_hi = tx;
                }
                if (v < lo) {
                    lo = v;
                    th_lo = tx;
                }
            }
            double dt = 2 * M_PI / opts.n_x_dir;
            double a_hi, a_lo;
            hi = golden_max([&](double t) { return gq(t, theta_y); }, th_hi - dt, th_hi + dt, 60,
                            &a_hi);
            lo = golden_min([&](double t) { return gq(t, theta_y); }, th_lo - dt, th_lo + dt, 60,
                            &a_lo);
            if (tx_max) *tx_max = a_hi;
            if (tx_min) *tx_min = a_lo;
            return hi / lo;
        };

        double best = -1, best_ty = 0;
        for (int j = 0; j < opts.n_y_dir; ++j) {
            double ty = 2 * M_PI * j / opts.n_y_dir;
            double v = ratio_for_y(ty);
            if (v > best) {
                best = v;
                best_ty = ty;
            }
        }
        double dt = 2 * M_PI / opts.n_y_dir;
        double ty_star;
        double v = golden_max([&](double ty) { return ratio_for_y(ty); }, best_ty - dt,
                              best_ty + dt, 60, &ty_star);
        if (v > Lam) {
            Lam = v;
            rep.Lambda_witness.x = x;
            rep.Lambda_witness.theta_y = ty_star;
            ratio_for_y(ty_star, &rep.Lambda_witness.theta_x_max, &rep.Lambda_witness.theta_x_min);
        }
    }
    rep.Lambda = std::max(1.0, Lam);
    return rep;
}

}  // namespace finsler
