#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "finsler/chart.hpp"
#include "finsler/linalg.hpp"

namespace finsler {

/// Periodic uniform grid on a 1- or 2-torus chart.
struct Mesh {
    int dim = 1;
    std::array<int, 2> n{16, 1};
    std::array<double, 2> len{2 * M_PI, 2 * M_PI};

    static Mesh circle(int nodes, double length) {
        if (nodes < 16) throw std::invalid_argument("mesh: need at least 16 nodes per axis");
        Mesh m;
        m.dim = 1;
        m.n = {nodes, 1};
        m.len = {length, 0.0};
        return m;
    }
    static Mesh torus(int nx, int ny, double lx, double ly) {
        if (nx < 16 || ny < 16) throw std::invalid_argument("mesh: need at least 16 nodes per axis");
        Mesh m;
        m.dim = 2;
        m.n = {nx, ny};
        m.len = {lx, ly};
        return m;
    }

    int num_nodes() const { return dim == 1 ? n[0] : n[0] * n[1]; }
    double spacing(int axis) const { return len[axis] / n[axis]; }
    double cell_volume() const {
        double v = 1.0;
        for (int d = 0; d < dim; ++d) v *= spacing(d);
        return v;
    }

    int index(int i, int j = 0) const {
        i = ((i % n[0]) + n[0]) % n[0];
        if (dim == 1) return i;
        j = ((j % n[1]) + n[1]) % n[1];
        return j * n[0] + i;
    }
    std::array<int, 2> coords_of(int idx) const {
        if (dim == 1) return {idx, 0};
        return {idx % n[0], idx / n[0]};
    }
    Vec coord(int idx) const {
        auto ij = coords_of(idx);
        Vec x = Vec::zero(dim);
        for (int d = 0; d < dim; ++d) x[d] = ij[d] * spacing(d);
        return x;
    }
    int neighbor(int idx, int axis, int dir) const {
        auto ij = coords_of(idx);
        ij[axis] += dir;
        return index(ij[0], ij[1]);
    }

    Chart chart() const {
        Chart c;
        c.dim = dim;
        c.lo = Vec::zero(dim);
        c.len = dim == 1 ? Vec::of(len[0]) : Vec::of(len[0], len[1]);
        c.periodic = {true, true};
        return c;
    }

    bool operator==(const Mesh& o) const { return dim == o.dim && n == o.n && len == o.len; }
};

struct ScalarField {
    Mesh mesh;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const Mesh& m) : mesh(m), v(static_cast<size_t>(m.num_nodes()), 0.0) {}
    double& operator[](int i) { return v[static_cast<size_t>(i)]; }
    double operator[](int i) const { return v[static_cast<size_t>(i)]; }

    template <class F>
    static ScalarField sample(const Mesh& m, F&& f) {
        ScalarField s(m);
        for (int i = 0; i < m.num_nodes(); ++i) s[i] = f(m.coord(i));
        return s;
    }
};

/// Positive measure density sigma per node: d(mu) = sigma dx.
struct DensityField {
    Mesh mesh;
    std::vector<double> sigma;

    DensityField() = default;
    explicit DensityField(const Mesh& m, double value = 1.0)
        : mesh(m), sigma(static_cast<size_t>(m.num_nodes()), value) {}
    double& operator[](int i) { return sigma[static_cast<size_t>(i)]; }
    double operator[](int i) const { return sigma[static_cast<size_t>(i)]; }
};

struct VectorField {
    Mesh mesh;
    std::vector<Vec> v;

    VectorField() = default;
    explicit VectorField(const Mesh& m)
        : mesh(m), v(static_cast<size_t>(m.num_nodes()), Vec::zero(m.dim)) {}
    Vec& operator[](int i) { return v[static_cast<size_t>(i)]; }
    const Vec& operator[](int i) const { return v[static_cast<size_t>(i)]; }
};

/// mu(M) = sum sigma * cell volume.
inline double total_volume(const DensityField& sigma) {
    double s = 0;
    for (double x : sigma.sigma) s += x;
    return s * sigma.mesh.cell_volume();
}

/// Per-node differential df by central differences on the periodic grid.
inline VectorField differential(const ScalarField& f) {
    VectorField df(f.mesh);
    const Mesh& m = f.mesh;
    for (int i = 0; i < m.num_nodes(); ++i) {
        for (int d = 0; d < m.dim; ++d) {
            double fp = f[m.neighbor(i, d, +1)];
            double fm = f[m.neighbor(i, d, -1)];
            df[i][d] = (fp - fm) / (2.0 * m.spacing(d));
        }
    }
    return df;
}

}  // namespace finsler
