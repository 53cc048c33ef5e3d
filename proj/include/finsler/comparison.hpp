#pragma once

namespace finsler {

/// Surface measure of the unit n-sphere S^n; sphere_volume(0) = 2.
double sphere_volume(int n);

/// Lebesgue volume of the unit n-ball B^n.
double ball_volume(int n);

/// Space-form solution of s'' + k s = 0, s(0) = 0, s'(0) = 1, with a
/// series branch near k = 0 so the map k -> s_k(t) is continuous.
double s_k(double k, double t);

struct SpaceFormProfile {
    int n = 2;
    double k = 0.0;
};

/// Area of the geodesic sphere of radius r in the curvature-k space form:
/// vol(S^{n-1}) s_k(r)^{n-1}.
double area_profile(const SpaceFormProfile& p, double r);

/// Ball volume in the space form: vol(S^{n-1}) int_0^r s_k(t)^{n-1} dt,
/// by adaptive quadrature (relative tolerance 1e-10).
double volume_profile(const SpaceFormProfile& p, double r);

/// h^2 / (4 lambda^2).
double cheeger_eigen_lower(double h, double lambda);

struct BoundInputs {
    int n = 2;
    double k = 0.0;       // Ricci lower bound: Ric >= (n-1) k on unit vectors
    double Lambda = 1.0;  // uniformity upper bound
    double lambda = 1.0;  // reversibility upper bound
    double vol = 0.0;     // mu(M)
    double diam = 0.0;
    double h = 0.0;
    double lambda1 = 0.0;
};

/// Isoperimetric lower bound for the Cheeger constant:
/// (n-1) mu(M) / (2 vol(S^{n-2}) Lambda^(4n+1/2) diam int_0^diam s_k^{n-1}).
/// Requires n >= 2.
double croke_cheeger_lower(const BoundInputs& b);

/// First-eigenvalue lower bound: the squared form
/// ((n-1) mu(M) / (4 vol(S^{n-2}) Lambda^(4n+1) diam int_0^diam s_k^{n-1}))^2.
double yau_eigen_lower(const BoundInputs& b);

struct StarlikeBound {
    double value = 0.0;
    double beta = 0.0;  // maximizing radius
};

/// Star-like domain isoperimetric lower bound (k < 0, 0 < r <= R):
/// max over beta in (0, r/(2 sqrt(Lambda))) of
///   A_{n,k}(beta) [V_{n,k}(r/(2 sqrt(Lambda))) - V_{n,k}(beta)]
///   / (2 Lambda^(4n+1/2) V_{n,k}(r) V_{n,k}(R)).
StarlikeBound starlike_isoperimetric_lower(int n, double k, double Lambda, double r, double R);

/// C (delta h + h^2); the constant C is caller-supplied.
double buser_rhs(double delta, double h, double C);

struct RescaledQuantities {
    double lambda1 = 0.0;
    double h = 0.0;
    double ric = 0.0;
};

/// Quantity scalings under F -> sqrt(C) F.
RescaledQuantities rescale_quantities(double C, double lambda1, double h, double ric);

/// Explicit small-ball Cheeger profile with the k = -1 space form:
/// A_{n,-1}(r/(4L)) V_{n,-1}(r/(4L)) / (4 L^(4n+1/2) V_{n,-1}(r/sqrt(L)) V_{n,-1}(2 r sqrt(L))).
double j_profile(double r, int n, double Lambda);

}  // namespace finsler
