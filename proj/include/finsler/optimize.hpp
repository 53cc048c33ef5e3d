#pragma once

#include <cmath>

namespace finsler {

/// Golden-section maximization on [a, b] for a smooth unimodal bracket.
/// Returns the maximum value; writes the argument to *argmax if given.
template <class F>
double golden_max(F&& f, double a, double b, int iters = 80, double* argmax = nullptr) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < iters && (b - a) > 1e-13 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    double xm = 0.5 * (a + b);
    double fm = f(xm);
    if (f1 > fm) {
        fm = f1;
        xm = x1;
    }
    if (f2 > fm) {
        fm = f2;
        xm = x2;
    }
    if (argmax) *argmax = xm;
    return fm;
}

template <class F>
double golden_min(F&& f, double a, double b, int iters = 80, double* argmin = nullptr) {
    return -golden_max([&](double x) { return -f(x); }, a, b, iters, argmin);
}

}  // namespace finsler
