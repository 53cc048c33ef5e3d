#include "finsler/energy.hpp"

#include <cmath>
#include <random>

#include "finsler/duality.hpp"
#include "finsler/errors.hpp"

namespace finsler {

namespace {

constexpr double kDuZeroTol = 1e-14;
constexpr int kPlateauWindow = 100;
constexpr double kPlateauTol = 1e-11;

// Cached closed-form dual evaluation data for one point.
struct DualEval {
    Mat w;  // inverse of the spd part
    Vec beta;
    double b2 = 0.0;
    bool randers = false;

    double dual(const Vec& eta) const {
        if (!randers) return std::sqrt(quad_form(w, eta));
        double q = quad_form(w, eta);
        double p = dot(beta, mul(w, eta));
        double u = std::sqrt((1.0 - b2) * q + p * p);
        return (u - p) / (1.0 - b2);
    }
    // (1/2) grad of F*^2: the inverse Legendre transform
    Vec linv(const Vec& eta) const {
        if (!randers) return mul(w, eta);
        double q = quad_form(w, eta);
        double p = dot(beta, mul(w, eta));
        double u = std::sqrt((1.0 - b2) * q + p * p);
        double fs = (u - p) / (1.0 - b2);
        return (fs / u) * mul(w, eta - fs * beta);
    }
};

DualEval make_dual_eval(const MetricModel& m, const Vec& x) {
    DualEval d;
    d.w = inverse(m.spd(x));
    d.randers = m.family() == MetricFamily::Randers || m.family() == MetricFamily::Minkowski;
    if (d.randers) {
        d.beta = m.oneform(x);
        d.b2 = quad_form(d.w, d.beta);
    }
    return d;
}

// The numerator of the energy is assembled on bilinear cells: the
// differential of u is evaluated at the 2x2 Gauss points of every cell
// (edge midpoints in 1D).  Full quadrature keeps the form second-order
// accurate and free of spurious checkerboard modes, so the only null
// direction of the closed problem is the constant removed by the
// mu-mean-zero projection.  The denominator uses the lumped nodal mass.
struct Workspace {
    Mesh mesh;
    std::vector<double> w;         // nodal sigma * cell volume
    std::vector<double> wq;        // per quad point: sigma * quadrature weight
    std::vector<DualEval> dual;    // per quad point
    int quads_per_cell = 1;
    // shape-gradient coefficients: du_g = sum_a coef[g][axis][a] u_a
    double coef[4][2][4] = {};
    const std::vector<std::uint8_t>* mask = nullptr;  // Dirichlet inside-mask

    mutable std::vector<Vec> q_buf;

    Workspace(const MetricModel& m, const DensityField& sigma) : mesh(sigma.mesh) {
        int n = mesh.num_nodes();
        double dv = mesh.cell_volume();
        w.resize(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) w[static_cast<size_t>(i)] = sigma[i] * dv;

        int cells = num_cells();
        quads_per_cell = mesh.dim == 1 ? 1 : 4;
        wq.resize(static_cast<size_t>(cells * quads_per_cell));
        dual.resize(static_cast<size_t>(cells * quads_per_cell));

        const double g = 1.0 / std::sqrt(3.0);
        const double gp[4][2] = {{-g, -g}, {g, -g}, {-g, g}, {g, g}};
        if (mesh.dim == 1) {
            double invh = 1.0 / mesh.spacing(0);
            coef[0][0][0] = -invh;
            coef[0][0][1] = invh;
        } else {
            double sx = 2.0 / mesh.spacing(0), sy = 2.0 / mesh.spacing(1);
            for (int q = 0; q < 4; ++q) {
                double xi = gp[q][0], eta = gp[q][1];
                // corners ordered 00, 10, 01, 11
                coef[q][0][0] = -0.25 * (1 - eta) * sx;
                coef[q][0][1] = 0.25 * (1 - eta) * sx;
                coef[q][0][2] = -0.25 * (1 + eta) * sx;
                coef[q][0][3] = 0.25 * (1 + eta) * sx;
                coef[q][1][0] = -0.25 * (1 - xi) * sy;
                coef[q][1][1] = -0.25 * (1 + xi) * sy;
                coef[q][1][2] = 0.25 * (1 - xi) * sy;
                coef[q][1][3] = 0.25 * (1 + xi) * sy;
            }
        }

        DualEval shared;
        if (m.x_independent()) shared = make_dual_eval(m, mesh.coord(0));
        for (int c = 0; c < cells; ++c) {
            int corners[4];
            cell_corners(c, corners);
            for (int q = 0; q < quads_per_cell; ++q) {
                size_t idx = static_cast<size_t>(c * quads_per_cell + q);
                double sigma_q, weight;
                Vec xq;
                if (mesh.dim == 1) {
                    sigma_q = 0.5 * (sigma[corners[0]] + sigma[corners[1]]);
                    weight = dv;
                    xq = Vec::of((c + 0.5) * mesh.spacing(0));
                } else {
                    double xi = gp[q][0], eta = gp[q][1];
                    double n00 = 0.25 * (1 - xi) * (1 - eta), n10 = 0.25 * (1 + xi) * (1 - eta);
                    double n01 = 0.25 * (1 - xi) * (1 + eta), n11 = 0.25 * (1 + xi) * (1 + eta);
                    sigma_q = n00 * sigma[corners[0]] + n10 * sigma[corners[1]] +
                              n01 * sigma[corners[2]] + n11 * sigma[corners[3]];
                    weight = dv / 4.0;
                    auto [ci, cj] = cell_coords(c);
                    xq = Vec::of((ci + 0.5 * (1 + xi)) * mesh.spacing(0),
                                 (cj + 0.5 * (1 + eta)) * mesh.spacing(1));
                }
                wq[idx] = sigma_q * weight;
                dual[idx] = m.x_independent() ? shared : make_dual_eval(m, xq);
            }
        }
    }

    int num_cells() const { return mesh.dim == 1 ? mesh.n[0] : mesh.n[0] * mesh.n[1]; }
    std::pair<int, int> cell_coords(int c) const { return {c % mesh.n[0], c / mesh.n[0]}; }
    void cell_corners(int c, int out[4]) const {
        if (mesh.dim == 1) {
            int n = mesh.n[0];
            out[0] = c;
            out[1] = c + 1 == n ? 0 : c + 1;
            out[2] = out[3] = 0;
            return;
        }
        auto [i, j] = cell_coords(c);
        int nx = mesh.n[0], ny = mesh.n[1];
        int ip = i + 1 == nx ? 0 : i + 1;
        int jp = j + 1 == ny ? 0 : j + 1;
        out[0] = j * nx + i;
        out[1] = j * nx + ip;
        out[2] = jp * nx + i;
        out[3] = jp * nx + ip;
    }
    int corners_per_cell() const { return mesh.dim == 1 ? 2 : 4; }

    void project(std::vector<double>& u) const {
        if (mask) {
            for (size_t i = 0; i < u.size(); ++i)
                if (!(*mask)[i]) u[i] = 0.0;
            return;
        }
        double sum = 0, wsum = 0;
        for (size_t i = 0; i < u.size(); ++i) {
            sum += w[i] * u[i];
            wsum += w[i];
        }
        for (size_t i = 0; i < u.size(); ++i) u[i] -= sum / wsum;
    }

    double mu_norm2(const std::vector<double>& u) const {
        double s = 0;
        for (size_t i = 0; i < u.size(); ++i) s += w[i] * u[i] * u[i];
        return s;
    }

    bool normalize(std::vector<double>& u) const {
        double nrm = std::sqrt(mu_norm2(u));
        if (!(nrm > 0) || !std::isfinite(nrm)) return false;
        for (double& x : u) x /= nrm;
        return true;
    }

    // differential of u at every quadrature point
    void differentials(const std::vector<double>& u, std::vector<Vec>& du) const {
        int cells = num_cells();
        int nc = corners_per_cell();
        du.resize(static_cast<size_t>(cells * quads_per_cell));
        int corners[4];
        for (int c = 0; c < cells; ++c) {
            cell_corners(c, corners);
            double uc[4] = {0, 0, 0, 0};
            for (int a = 0; a < nc; ++a) uc[a] = u[static_cast<size_t>(corners[a])];
            for (int q = 0; q < quads_per_cell; ++q) {
                Vec d = Vec::zero(mesh.dim);
                for (int axis = 0; axis < mesh.dim; ++axis) {
                    double s = 0;
                    for (int a = 0; a < nc; ++a) s += coef[q][axis][a] * uc[a];
                    d[axis] = s;
                }
                du[static_cast<size_t>(c * quads_per_cell + q)] = d;
            }
        }
    }

    // E = N/D with N = sum_quads wq F*^2(du), D = sum_nodes w u^2.
    double energy_of(const std::vector<double>& u, std::vector<Vec>& du_buf) const {
        differentials(u, du_buf);
        double num = 0, den = 0;
        for (size_t qi = 0; qi < du_buf.size(); ++qi) {
            double fs = dual[qi].dual(du_buf[qi]);
            num += wq[qi] * fs * fs;
        }
        for (size_t i = 0; i < u.size(); ++i) den += w[i] * u[i] * u[i];
        if (!(den > 0)) throw undefined_energy_error("energy: zero field");
        return num / den;
    }

    // Gradient of the Rayleigh quotient at mu-normalized u, projected.
    void gradient(const std::vector<double>& u, const std::vector<Vec>& du, double e,
                  std::vector<double>& grad) const {
        double du_scale = 0;
        for (const Vec& d : du) du_scale = std::max(du_scale, sup_norm(d));
        double floor = kDuZeroTol * std::max(1.0, du_scale);
        q_buf.resize(du.size());
        for (size_t qi = 0; qi < du.size(); ++qi) {
            if (sup_norm(du[qi]) <= floor) {
                q_buf[qi] = Vec::zero(mesh.dim);
                continue;
            }
            // dF*^2(eta) = 2 L^-1(eta)
            q_buf[qi] = (2.0 * wq[qi]) * dual[qi].linv(du[qi]);
        }
        grad.assign(u.size(), 0.0);
        int cells = num_cells();
        int nc = corners_per_cell();
        int corners[4];
        for (int c = 0; c < cells; ++c) {
            cell_corners(c, corners);
            for (int q = 0; q < quads_per_cell; ++q) {
                const Vec& qv = q_buf[static_cast<size_t>(c * quads_per_cell + q)];
                for (int a = 0; a < nc; ++a) {
                    double g = 0;
                    for (int axis = 0; axis < mesh.dim; ++axis)
                        g += qv[axis] * coef[q][axis][a];
                    grad[static_cast<size_t>(corners[a])] += g;
                }
            }
        }
        for (size_t i = 0; i < u.size(); ++i) grad[i] -= e * 2.0 * w[i] * u[i];
        project(grad);
    }
};

struct RunState {
    double e = 0;
    std::vector<double> u;
    std::vector<double> trace;
    bool converged = false;
    double grad_norm = 0;
    int iterations = 0;
};

// Projected normalized descent with monotone backtracking line search.
void run_descent(const Workspace& ws, RunState& st, const EigenOptions& opts, int iter_budget) {
    std::vector<Vec> du, du_trial;
    ws.project(st.u);
    if (!ws.normalize(st.u)) {
        st.u.clear();
        return;
    }
    double e = ws.energy_of(st.u, du);
    if (st.trace.empty()) st.trace.push_back(e);
    double step = opts.step;
    std::vector<double> grad, trial;
    for (int it = 0; it < iter_budget; ++it) {
        ++st.iterations;
        ws.gradient(st.u, du, e, grad);
        double gn = std::sqrt(ws.mu_norm2(grad));
        st.grad_norm = gn;
        if (gn <= opts.tol * std::max(1.0, e)) {
            st.converged = true;
            break;
        }
        bool accepted = false;
        while (step > 1e-18) {
            trial = st.u;
            for (size_t i = 0; i < trial.size(); ++i) trial[i] -= step * grad[i];
            ws.project(trial);
            if (ws.normalize(trial)) {
                double et = ws.energy_of(trial, du_trial);
                if (et < e) {
                    st.u.swap(trial);
                    du.swap(du_trial);
                    e = et;
                    st.trace.push_back(e);
                    step = std::min(step * 1.3, 1e3);
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!accepted) {
            // no descent direction at floating-point resolution
            st.converged = true;
            break;
        }
        // value plateau: energy is converged even when degenerate directions
        // keep the gradient from reaching the tolerance
        size_t len = st.trace.size();
        if (len > static_cast<size_t>(kPlateauWindow)) {
            double drop = st.trace[len - 1 - kPlateauWindow] - st.trace[len - 1];
            if (drop <= kPlateauTol * std::max(1.0, e)) {
                st.converged = true;
                break;
            }
        }
    }
    st.e = e;
}

std::vector<std::vector<double>> build_seeds(const Mesh& mesh, const EigenOptions& opts) {
    std::vector<std::vector<double>> seeds;
    auto add_mode = [&](int axis, bool use_cos) {
        std::vector<double> s(static_cast<size_t>(mesh.num_nodes()));
        for (int i = 0; i < mesh.num_nodes(); ++i) {
            double t = 2 * M_PI * mesh.coord(i)[axis] / mesh.len[axis];
            s[static_cast<size_t>(i)] = use_cos ? std::cos(t) : std::sin(t);
        }
        seeds.push_back(s);
        for (double& x : s) x = -x;
        seeds.push_back(std::move(s));
    };
    for (int d = 0; d < mesh.dim; ++d) {
        add_mode(d, false);
        add_mode(d, true);
    }
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    for (int k = 0; k < std::max(1, opts.random_seeds); ++k) {
        std::vector<double> s(static_cast<size_t>(mesh.num_nodes()));
        for (double& x : s) x = ud(rng);
        seeds.push_back(std::move(s));
    }
    return seeds;
}

EigenResult best_of_seeds(const Workspace& ws, const EigenOptions& opts) {
    // Phase 1: run every start on a budget; phase 2: finish the best one.
    int budget = std::min(opts.max_iter, std::max(200, opts.max_iter / 10));
    RunState best;
    bool have = false;
    for (auto& seed : build_seeds(ws.mesh, opts)) {
        RunState st;
        st.u = std::move(seed);
        run_descent(ws, st, opts, budget);
        if (st.u.empty()) continue;
        if (!have || st.e < best.e) {
            have = true;
            best = std::move(st);
        }
    }
    if (!have) throw undefined_energy_error("eigen: all seeds vanished under projection");
    if ((!best.converged || best.iterations >= budget) && best.iterations < opts.max_iter) {
        best.converged = false;
        run_descent(ws, best, opts, opts.max_iter - best.iterations);
    }

    EigenResult out;
    out.seed = opts.seed;
    out.lambda1 = best.e;
    out.u.mesh = ws.mesh;
    out.u.v = std::move(best.u);
    out.energy_trace = std::move(best.trace);
    out.converged = best.converged;
    out.grad_norm = best.grad_norm;
    out.iterations = best.iterations;
    return out;
}

}  // namespace

double energy(const ScalarField& u, const MetricModel& m, const DensityField& sigma) {
    Workspace ws(m, sigma);
    std::vector<Vec> du;
    return ws.energy_of(u.v, du);
}

EigenResult eigen_closed(const MetricModel& m, const DensityField& sigma,
                         const EigenOptions& opts) {
    Workspace ws(m, sigma);
    return best_of_seeds(ws, opts);
}

EigenResult eigen_dirichlet(const MetricModel& m, const DensityField& sigma,
                            const std::vector<std::uint8_t>& mask, const EigenOptions& opts) {
    if (static_cast<int>(mask.size()) != sigma.mesh.num_nodes())
        throw std::invalid_argument("eigen_dirichlet: mask size mismatch");
    int inside = 0;
    for (auto b : mask) inside += b != 0;
    if (inside == 0 || inside == sigma.mesh.num_nodes())
        throw std::invalid_argument("eigen_dirichlet: D must be a nonempty proper subset");
    Workspace ws(m, sigma);
    ws.mask = &mask;
    return best_of_seeds(ws, opts);
}

}  // namespace finsler
