#include "finsler/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "finsler/duality.hpp"
#include "finsler/errors.hpp"

namespace finsler {

namespace {

// Bilinear interpolation of a node field at chart point p (periodic).
double bilinear(const Mesh& mesh, const std::vector<double>& v, const Vec& p) {
    if (mesh.dim == 1) {
        double s = p[0] / mesh.spacing(0);
        int i = static_cast<int>(std::floor(s));
        double fr = s - i;
        return (1 - fr) * v[static_cast<size_t>(mesh.index(i))] +
               fr * v[static_cast<size_t>(mesh.index(i + 1))];
    }
    double sx = p[0] / mesh.spacing(0), sy = p[1] / mesh.spacing(1);
    int i = static_cast<int>(std::floor(sx)), j = static_cast<int>(std::floor(sy));
    double fx = sx - i, fy = sy - j;
    double v00 = v[static_cast<size_t>(mesh.index(i, j))];
    double v10 = v[static_cast<size_t>(mesh.index(i + 1, j))];
    double v01 = v[static_cast<size_t>(mesh.index(i, j + 1))];
    double v11 = v[static_cast<size_t>(mesh.index(i + 1, j + 1))];
    return v00 * (1 - fx) * (1 - fy) + v10 * fx * (1 - fy) + v01 * (1 - fx) * fy +
           v11 * fx * fy;
}

double jitter_level(const ScalarField& f, double t, double lo, double hi) {
    bool plateau = false;
    for (double v : f.v)
        if (v == t) {
            plateau = true;
            break;
        }
    if (plateau) t += 1e-12 * (hi - lo);
    return t;
}

LevelSetCut cut_1d(const ScalarField& f, double t, const MetricModel& m,
                   const DensityField& sigma) {
    const Mesh& mesh = f.mesh;
    LevelSetCut cut;
    cut.level = t;
    double dv = mesh.cell_volume();
    for (int i = 0; i < mesh.num_nodes(); ++i) {
        if (f[i] > t)
            cut.vol1 += sigma[i] * dv;
        else
            cut.vol2 += sigma[i] * dv;
        int in = mesh.neighbor(i, 0, +1);
        double a = f[i] - t, b = f[in] - t;
        if ((a > 0) == (b > 0)) continue;
        double fr = a / (a - b);
        Vec xc = Vec::of(mesh.coord(i)[0] + fr * mesh.spacing(0));
        CutSegment seg;
        seg.a = seg.b = seg.midpoint = xc;
        seg.length_e = 1.0;
        // out of D1 = {f > t}: +dx when f descends through t, else -dx
        seg.conormal = Vec::of(a > 0 ? 1.0 : -1.0);
        seg.sigma_mid = bilinear(mesh, sigma.sigma, xc);
        seg.weight_plus = seg.sigma_mid * dual_norm_fast(m, xc, seg.conormal);
        seg.weight_minus = seg.sigma_mid * dual_norm_fast(m, xc, -seg.conormal);
        cut.area_plus += seg.weight_plus;
        cut.area_minus += seg.weight_minus;
        cut.segments.push_back(seg);
    }
    return cut;
}

LevelSetCut cut_2d(const ScalarField& f, double t, const MetricModel& m,
                   const DensityField& sigma) {
    const Mesh& mesh = f.mesh;
    LevelSetCut cut;
    cut.level = t;
    double dv = mesh.cell_volume();
    for (int i = 0; i < mesh.num_nodes(); ++i) {
        if (f[i] > t)
            cut.vol1 += sigma[i] * dv;
        else
            cut.vol2 += sigma[i] * dv;
    }

    double hx = mesh.spacing(0), hy = mesh.spacing(1);
    for (int j = 0; j < mesh.n[1]; ++j) {
        for (int i = 0; i < mesh.n[0]; ++i) {
            double c00 = f[mesh.index(i, j)] - t;
            double c10 = f[mesh.index(i + 1, j)] - t;
            double c01 = f[mesh.index(i, j + 1)] - t;
            double c11 = f[mesh.index(i + 1, j + 1)] - t;
            int code = (c00 > 0 ? 1 : 0) | (c10 > 0 ? 2 : 0) | (c11 > 0 ? 4 : 0) |
                       (c01 > 0 ? 8 : 0);
            if (code == 0 || code == 15) continue;

            double x0 = i * hx, y0 = j * hy;
            // edge crossings by linear interpolation
            auto ex_bottom = [&] { return Vec::of(x0 + hx * c00 / (c00 - c10), y0); };
            auto ex_top = [&] { return Vec::of(x0 + hx * c01 / (c01 - c11), y0 + hy); };
            auto ex_left = [&] { return Vec::of(x0, y0 + hy * c00 / (c00 - c01)); };
            auto ex_right = [&] { return Vec::of(x0 + hx, y0 + hy * c10 / (c10 - c11)); };

            std::vector<std::pair<Vec, Vec>> pieces;
            switch (code) {
                case 1: case 14: pieces.push_back({ex_left(), ex_bottom()}); break;
                case 2: case 13: pieces.push_back({ex_bottom(), ex_right()}); break;
                case 4: case 11: pieces.push_back({ex_right(), ex_top()}); break;
                case 8: case 7: pieces.push_back({ex_top(), ex_left()}); break;
                case 3: case 12: pieces.push_back({ex_left(), ex_right()}); break;
                case 6: case 9: pieces.push_back({ex_bottom(), ex_top()}); break;
                case 5: case 10: {
                    // saddle: resolve by the cell-center mean
                    double center = 0.25 * (c00 + c10 + c01 + c11);
                    bool join = (code == 5) == (center > 0);
                    if (join) {
                        pieces.push_back({ex_left(), ex_bottom()});
                        pieces.push_back({ex_right(), ex_top()});
                    } else {
                        pieces.push_back({ex_left(), ex_top()});
                        pieces.push_back({ex_right(), ex_bottom()});
                    }
                    break;
                }
                default: break;
            }

            for (auto& [pa, pb] : pieces) {
                CutSegment seg;
                seg.a = pa;
                seg.b = pb;
                Vec d = pb - pa;
                seg.length_e = norm2(d);
                if (seg.length_e <= 0) continue;
                seg.midpoint = pa + 0.5 * d;
                Vec n = Vec::of(d[1] / seg.length_e, -d[0] / seg.length_e);
                // orient out of D1: f must decrease along +n
                double delta = 0.05 * std::min(hx, hy);
                Vec probe = seg.midpoint + delta * n;
                double fp = bilinear(mesh, f.v, probe);
                Vec probe2 = seg.midpoint - delta * n;
                double fm = bilinear(mesh, f.v, probe2);
                if (fp > fm) n = -n;
                seg.conormal = n;
                seg.sigma_mid = bilinear(mesh, sigma.sigma, seg.midpoint);
                seg.weight_plus =
                    seg.sigma_mid * dual_norm_fast(m, seg.midpoint, n) * seg.length_e;
                seg.weight_minus =
                    seg.sigma_mid * dual_norm_fast(m, seg.midpoint, -n) * seg.length_e;
                cut.area_plus += seg.weight_plus;
                cut.area_minus += seg.weight_minus;
                cut.segments.push_back(seg);
            }
        }
    }
    return cut;
}

}  // namespace

LevelSetCut cut_areas(const ScalarField& f, double t, const MetricModel& m,
                      const DensityField& sigma) {
    double lo = *std::min_element(f.v.begin(), f.v.end());
    double hi = *std::max_element(f.v.begin(), f.v.end());
    if (!(t > lo) || !(t < hi))
        throw trivial_cut_error("cut_areas: level outside the range of f");
    t = jitter_level(f, t, lo, hi);
    LevelSetCut cut = f.mesh.dim == 1 ? cut_1d(f, t, m, sigma) : cut_2d(f, t, m, sigma);
    if (cut.segments.empty()) throw trivial_cut_error("cut_areas: empty interface");
    return cut;
}

SweepResult cheeger_sweep(const ScalarField& f, const MetricModel& m, const DensityField& sigma,
                          int levels) {
    std::vector<double> sorted = f.v;
    std::sort(sorted.begin(), sorted.end());
    double lo = sorted.front(), hi = sorted.back();
    if (!(hi > lo)) throw trivial_cut_error("cheeger_sweep: constant field");

    SweepResult out;
    out.h_ub = std::numeric_limits<double>::infinity();
    double prev_t = lo;
    // interior quantile edges; includes the median for even level counts
    for (int k = 1; k < levels; ++k) {
        double q = static_cast<double>(k) / levels;
        double pos = q * (sorted.size() - 1);
        size_t i0 = static_cast<size_t>(pos);
        double fr = pos - i0;
        double t = sorted[i0] * (1 - fr) + sorted[std::min(i0 + 1, sorted.size() - 1)] * fr;
        if (!(t > lo) || !(t < hi) || t == prev_t) continue;
        prev_t = t;
        LevelSetCut cut;
        try {
            cut = cut_areas(f, t, m, sigma);
        } catch (const trivial_cut_error&) {
            continue;
        }
        double volmin = std::min(cut.vol1, cut.vol2);
        if (!(volmin > 0)) continue;
        double ratio = std::min(cut.area_plus, cut.area_minus) / volmin;
        if (ratio < out.h_ub) {
            out.h_ub = ratio;
            out.best = std::move(cut);
        }
    }
    if (!std::isfinite(out.h_ub)) throw trivial_cut_error("cheeger_sweep: no valid cut found");
    return out;
}

double cheeger_1d_exact(const MetricModel& m, const DensityField& sigma) {
    const Mesh& mesh = sigma.mesh;
    if (mesh.dim != 1) throw unsupported_dimension_error("cheeger_1d_exact: dim must be 1");
    int n = mesh.num_nodes();
    double dv = mesh.cell_volume();

    // per-node dual weights for the two co-orientations
    std::vector<double> wp(static_cast<size_t>(n)), wm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        Vec x = mesh.coord(i);
        wp[static_cast<size_t>(i)] = sigma[i] * dual_norm_fast(m, x, Vec::of(1.0));
        wm[static_cast<size_t>(i)] = sigma[i] * dual_norm_fast(m, x, Vec::of(-1.0));
    }
    std::vector<double> prefix(static_cast<size_t>(n + 1), 0.0);
    for (int i = 0; i < n; ++i) prefix[static_cast<size_t>(i + 1)] = prefix[static_cast<size_t>(i)] + sigma[i] * dv;
    double total = prefix[static_cast<size_t>(n)];

    double best = std::numeric_limits<double>::infinity();
    for (int p = 0; p < n; ++p) {
        for (int q = p + 1; q < n; ++q) {
            // D1 = arc (x_p, x_q); the cut nodes own half a cell per side
            double inner = prefix[static_cast<size_t>(q)] - prefix[static_cast<size_t>(p + 1)];
            double v1 = inner + 0.5 * dv * (sigma[p] + sigma[q]);
            double v2 = total - v1;
            double volmin = std::min(v1, v2);
            if (!(volmin > 0)) continue;
            // outward from D1: +dx at q, -dx at p; the reversed co-orientation
            // swaps the two area values.
            double aplus = wp[static_cast<size_t>(q)] + wm[static_cast<size_t>(p)];
            double aminus = wm[static_cast<size_t>(q)] + wp[static_cast<size_t>(p)];
            double ratio = std::min(aplus, aminus) / volmin;
            best = std::min(best, ratio);
        }
    }
    return best;
}

CoareaReport coarea_check(const ScalarField& f, const ScalarField& phi, const MetricModel& m,
                          const DensityField& sigma, int levels) {
    const Mesh& mesh = f.mesh;
    CoareaReport rep;
    double dv = mesh.cell_volume();
    for (int i = 0; i < mesh.num_nodes(); ++i) rep.lhs += f[i] * sigma[i] * dv;

    // differential of phi, one covector per node, interpolated onto segments
    VectorField dphi = differential(phi);
    std::vector<double> dphi_x(static_cast<size_t>(mesh.num_nodes()));
    std::vector<double> dphi_y(static_cast<size_t>(mesh.num_nodes()));
    for (int i = 0; i < mesh.num_nodes(); ++i) {
        dphi_x[static_cast<size_t>(i)] = dphi[i][0];
        if (mesh.dim == 2) dphi_y[static_cast<size_t>(i)] = dphi[i][1];
    }

    std::vector<double> sorted = phi.v;
    std::sort(sorted.begin(), sorted.end());
    double lo = sorted.front(), hi = sorted.back();
    if (!(hi > lo)) throw trivial_cut_error("coarea_check: constant level function");

    // quantile bins: midpoint level per bin, bin width in t
    auto quantile = [&](double q) {
        double pos = q * (sorted.size() - 1);
        size_t i0 = static_cast<size_t>(pos);
        double fr = pos - i0;
        return sorted[i0] * (1 - fr) + sorted[std::min(i0 + 1, sorted.size() - 1)] * fr;
    };
    for (int k = 0; k < levels; ++k) {
        double t = quantile((k + 0.5) / levels);
        double t_lo = quantile(static_cast<double>(k) / levels);
        double t_hi = quantile(static_cast<double>(k + 1) / levels);
        double dt = t_hi - t_lo;
        if (!(t > lo) || !(t < hi) || !(dt > 0)) continue;
        LevelSetCut cut;
        try {
            cut = cut_areas(phi, t, m, sigma);
        } catch (const trivial_cut_error&) {
            continue;
        }
        double integral = 0;
        for (const CutSegment& seg : cut.segments) {
            Vec dphi_mid = Vec::zero(mesh.dim);
            dphi_mid[0] = bilinear(mesh, dphi_x, seg.midpoint);
            if (mesh.dim == 2) dphi_mid[1] = bilinear(mesh, dphi_y, seg.midpoint);
            double f_grad = dual_norm_fast(m, seg.midpoint, dphi_mid);  // F(grad phi) = F*(dphi)
            if (!(f_grad > 0)) continue;
            double f_mid = bilinear(mesh, f.v, seg.midpoint);
            // forward normal n = grad(phi)/F(grad phi) points into {phi > t},
            // so dA_n carries F*(-conormal) = F*(unit dphi)
            double area_n = seg.sigma_mid * dual_norm_fast(m, seg.midpoint, -seg.conormal) *
                            seg.length_e;
            integral += f_mid * area_n / f_grad;
        }
        rep.rhs += integral * dt;
    }
    rep.rel_gap = std::abs(rep.rhs - rep.lhs) / std::max(std::abs(rep.lhs), 1e-300);
    return rep;
}

CoareaReport layer_cake_check(const ScalarField& f, const DensityField& sigma, int levels) {
    const Mesh& mesh = f.mesh;
    double dv = mesh.cell_volume();
    CoareaReport rep;
    for (int i = 0; i < mesh.num_nodes(); ++i) {
        if (!(f[i] > 0)) throw std::invalid_argument("layer_cake_check: f must be positive");
        rep.rhs += f[i] * sigma[i] * dv;
    }
    double total = 0;
    for (int i = 0; i < mesh.num_nodes(); ++i) total += sigma[i] * dv;

    std::vector<double> sorted = f.v;
    std::sort(sorted.begin(), sorted.end());
    double lo = sorted.front(), hi = sorted.back();
    auto quantile = [&](double q) {
        double pos = q * (sorted.size() - 1);
        size_t i0 = static_cast<size_t>(pos);
        double fr = pos - i0;
        return sorted[i0] * (1 - fr) + sorted[std::min(i0 + 1, sorted.size() - 1)] * fr;
    };

    // exact slab below min f; above it, quantile bins subdivided uniformly
    // in t so the midpoint rule resolves the discrete staircase of mu
    rep.lhs = lo * total;
    if (hi > lo) {
        const int sub = 8;
        for (int k = 0; k < levels; ++k) {
            double t_lo = quantile(static_cast<double>(k) / levels);
            double t_hi = quantile(static_cast<double>(k + 1) / levels);
            if (!(t_hi > t_lo)) continue;
            double dt = (t_hi - t_lo) / sub;
            for (int s = 0; s < sub; ++s) {
                double t = t_lo + (s + 0.5) * dt;
                double mu = 0;
                for (int i = 0; i < mesh.num_nodes(); ++i)
                    if (f[i] >= t) mu += sigma[i] * dv;
                rep.lhs += mu * dt;
            }
        }
    }
    rep.rel_gap = std::abs(rep.lhs - rep.rhs) / std::max(std::abs(rep.rhs), 1e-300);
    return rep;
}

}  // namespace finsler
