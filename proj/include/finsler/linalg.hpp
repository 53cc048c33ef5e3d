#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace finsler {

// Fixed-capacity vector for chart dimensions 1 and 2.
struct Vec {
    std::array<double, 2> v{0.0, 0.0};
    int n = 0;

    Vec() = default;
    static Vec zero(int dim) {
        Vec r;
        r.n = dim;
        return r;
    }
    static Vec of(double x) {
        Vec r;
        r.n = 1;
        r.v[0] = x;
        return r;
    }
    static Vec of(double x, double y) {
        Vec r;
        r.n = 2;
        r.v[0] = x;
        r.v[1] = y;
        return r;
    }

    int dim() const { return n; }
    double& operator[](int i) { return v[static_cast<size_t>(i)]; }
    double operator[](int i) const { return v[static_cast<size_t>(i)]; }

    Vec& operator+=(const Vec& o) {
        for (int i = 0; i < n; ++i) v[i] += o.v[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (int i = 0; i < n; ++i) v[i] -= o.v[i];
        return *this;
    }
    Vec& operator*=(double s) {
        for (int i = 0; i < n; ++i) v[i] *= s;
        return *this;
    }
};

inline Vec operator+(Vec a, const Vec& b) { return a += b; }
inline Vec operator-(Vec a, const Vec& b) { return a -= b; }
inline Vec operator*(double s, Vec a) { return a *= s; }
inline Vec operator*(Vec a, double s) { return a *= s; }
inline Vec operator-(Vec a) {
    for (int i = 0; i < a.n; ++i) a.v[i] = -a.v[i];
    return a;
}

inline double dot(const Vec& a, const Vec& b) {
    double s = 0;
    for (int i = 0; i < a.n; ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double sup_norm(const Vec& a) {
    double s = 0;
    for (int i = 0; i < a.n; ++i) s = std::max(s, std::abs(a[i]));
    return s;
}

inline bool is_finite(const Vec& a) {
    for (int i = 0; i < a.n; ++i)
        if (!std::isfinite(a[i])) return false;
    return true;
}

// Unit vector at angle theta (2D) in the chart frame.
inline Vec unit_dir(double theta) { return Vec::of(std::cos(theta), std::sin(theta)); }

// Symmetric matrix for dimensions 1 and 2, stored dense.
struct Mat {
    std::array<double, 4> m{0, 0, 0, 0};
    int n = 0;

    Mat() = default;
    static Mat zero(int dim) {
        Mat r;
        r.n = dim;
        return r;
    }
    static Mat identity(int dim) {
        Mat r;
        r.n = dim;
        for (int i = 0; i < dim; ++i) r(i, i) = 1.0;
        return r;
    }
    static Mat of(double a) {
        Mat r;
        r.n = 1;
        r(0, 0) = a;
        return r;
    }
    static Mat of(double a00, double a01, double a10, double a11) {
        Mat r;
        r.n = 2;
        r(0, 0) = a00;
        r(0, 1) = a01;
        r(1, 0) = a10;
        r(1, 1) = a11;
        return r;
    }
    static Mat diag(double a, double b) { return of(a, 0, 0, b); }

    int dim() const { return n; }
    double& operator()(int i, int j) { return m[static_cast<size_t>(i * 2 + j)]; }
    double operator()(int i, int j) const { return m[static_cast<size_t>(i * 2 + j)]; }

    Mat& operator+=(const Mat& o) {
        for (int i = 0; i < 4; ++i) m[i] += o.m[i];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        for (int i = 0; i < 4; ++i) m[i] -= o.m[i];
        return *this;
    }
    Mat& operator*=(double s) {
        for (int i = 0; i < 4; ++i) m[i] *= s;
        return *this;
    }
};

inline Mat operator+(Mat a, const Mat& b) { return a += b; }
inline Mat operator-(Mat a, const Mat& b) { return a -= b; }
inline Mat operator*(double s, Mat a) { return a *= s; }

inline Vec mul(const Mat& a, const Vec& y) {
    Vec r = Vec::zero(y.n);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) r[i] += a(i, j) * y[j];
    return r;
}

// y^T A y
inline double quad_form(const Mat& a, const Vec& y) { return dot(y, mul(a, y)); }

inline double det(const Mat& a) {
    if (a.n == 1) return a(0, 0);
    return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
}

inline Mat inverse(const Mat& a) {
    Mat r;
    r.n = a.n;
    double d = det(a);
    if (d == 0.0 || !std::isfinite(d)) throw std::runtime_error("linalg: singular matrix");
    if (a.n == 1) {
        r(0, 0) = 1.0 / d;
        return r;
    }
    r(0, 0) = a(1, 1) / d;
    r(1, 1) = a(0, 0) / d;
    r(0, 1) = -a(0, 1) / d;
    r(1, 0) = -a(1, 0) / d;
    return r;
}

inline Vec solve(const Mat& a, const Vec& b) { return mul(inverse(a), b); }

// Smallest eigenvalue of a symmetric 1x1 / 2x2 matrix.
inline double min_eigenvalue(const Mat& a) {
    if (a.n == 1) return a(0, 0);
    double tr = a(0, 0) + a(1, 1);
    double d = det(a);
    double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - d));
    return tr / 2.0 - disc;
}

inline bool is_finite(const Mat& a) {
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j)
            if (!std::isfinite(a(i, j))) return false;
    return true;
}

inline bool is_spd(const Mat& a) { return is_finite(a) && min_eigenvalue(a) > 0.0; }

}  // namespace finsler
