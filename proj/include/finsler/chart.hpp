#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "finsler/linalg.hpp"

namespace finsler {

/// A single coordinate chart.  Periodic axes wrap with period len[i];
/// non-periodic axes are restricted to [lo, lo+len].
struct Chart {
    int dim = 1;
    Vec lo;
    Vec len;
    std::array<bool, 2> periodic{true, true};

    static Chart torus(double l0) {
        Chart c;
        c.dim = 1;
        c.lo = Vec::of(0.0);
        c.len = Vec::of(l0);
        return c;
    }
    static Chart torus(double l0, double l1) {
        Chart c;
        c.dim = 2;
        c.lo = Vec::of(0.0, 0.0);
        c.len = Vec::of(l0, l1);
        return c;
    }

    double extent(int axis) const { return len[axis]; }

    /// Canonicalize a point: wrap periodic axes into [lo, lo+len).
    Vec wrap(Vec x) const {
        for (int i = 0; i < dim; ++i) {
            if (!periodic[i]) continue;
            double t = std::fmod(x[i] - lo[i], len[i]);
            if (t < 0) t += len[i];
            x[i] = lo[i] + t;
        }
        return x;
    }

    bool contains(const Vec& x) const {
        for (int i = 0; i < dim; ++i) {
            if (periodic[i]) continue;
            if (x[i] < lo[i] || x[i] > lo[i] + len[i]) return false;
        }
        return true;
    }

    /// Minimal displacement from a to b honoring periodic wrap.
    Vec displacement(const Vec& a, const Vec& b) const {
        Vec d = Vec::zero(dim);
        for (int i = 0; i < dim; ++i) {
            double t = b[i] - a[i];
            if (periodic[i]) {
                t = std::remainder(t, len[i]);
            }
            d[i] = t;
        }
        return d;
    }

    /// Euclidean chart distance with periodic wrap.
    double distance(const Vec& a, const Vec& b) const { return norm2(displacement(a, b)); }

    /// Length scale used for differentiation and S-curvature steps.
    double scale() const {
        double s = len[0];
        for (int i = 1; i < dim; ++i) s = std::min(s, len[i]);
        return s / 2.0;
    }
};

}  // namespace finsler
