#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "finsler/comparison.hpp"
#include "finsler/errors.hpp"
#include "test_helpers.hpp"

using namespace finsler;
using namespace finsler::testing;

TEST_CASE("sphere and ball volumes") {
    CHECK(rel_err(sphere_volume(0), 2.0) < 1e-14);
    CHECK(rel_err(sphere_volume(1), 2 * M_PI) < 1e-14);
    CHECK(rel_err(sphere_volume(2), 4 * M_PI) < 1e-14);
    CHECK(rel_err(ball_volume(1), 2.0) < 1e-14);
    CHECK(rel_err(ball_volume(2), M_PI) < 1e-14);
}

TEST_CASE("space-form function s_k") {
    CHECK(s_k(0.0, 1.7) == 1.7);
    CHECK(rel_err(s_k(-1.0, 1.0), std::sinh(1.0)) < 1e-14);
    CHECK(rel_err(s_k(1.0, 1.0), std::sin(1.0)) < 1e-14);
    // continuity at k = 0
    for (double t : {0.3, 1.0, 2.5}) {
        CHECK(std::abs(s_k(1e-8, t) - t) < 1e-7);
        CHECK(std::abs(s_k(-1e-8, t) - t) < 1e-7);
    }
    CHECK_THROWS(s_k(0.0, -0.1));
}

TEST_CASE("area and volume profiles") {
    SpaceFormProfile flat{2, 0.0};
    CHECK(rel_err(area_profile(flat, 1.3), 2 * M_PI * 1.3) < 1e-12);
    CHECK(rel_err(volume_profile(flat, 1.3), M_PI * 1.3 * 1.3) < 1e-10);
    CHECK(volume_profile(flat, 0.0) == 0.0);

    SpaceFormProfile hyp{2, -1.0};
    // closed form: V(r) = 2 pi (cosh r - 1)
    CHECK(rel_err(volume_profile(hyp, 1.0), 2 * M_PI * (std::cosh(1.0) - 1.0)) < 1e-8);

    // dV/dr = A(r), monotone increase
    for (double r : {0.2, 0.9, 2.1}) {
        double h = 1e-5;
        double d = (volume_profile(hyp, r + h) - volume_profile(hyp, r - h)) / (2 * h);
        CHECK(rel_err(d, area_profile(hyp, r)) < 1e-6);
        CHECK(volume_profile(hyp, r + 0.1) > volume_profile(hyp, r));
    }
}

TEST_CASE("cheeger-type eigenvalue lower bound") {
    CHECK(cheeger_eigen_lower(0.0, 1.0) == 0.0);
    CHECK(cheeger_eigen_lower(2.0, 1.0) == 1.0);
    // riemannian circle of length 2 pi: h = 2/pi, bound 1/pi^2 <= lambda1 = 1
    double bound = cheeger_eigen_lower(2.0 / M_PI, 1.0);
    CHECK(rel_err(bound, 1.0 / (M_PI * M_PI)) < 1e-14);
    CHECK(bound <= 1.0);
}

TEST_CASE("croke-type cheeger lower bound") {
    BoundInputs b;
    b.n = 2;
    b.k = 0.0;
    b.Lambda = 1.0;
    b.vol = 4 * M_PI * M_PI;
    b.diam = M_PI * std::sqrt(2.0);

    // independent arithmetic: (n-1) vol / (2 vol(S^0) L^{8.5} d (d^2/2))
    double want = b.vol / (2.0 * 2.0 * b.diam * (b.diam * b.diam / 2.0));
    CHECK(rel_err(croke_cheeger_lower(b), want) < 1e-9);

    // monotone decreasing in Lambda
    double prev = croke_cheeger_lower(b);
    for (double L : {1.1, 1.5, 2.0, 4.0}) {
        BoundInputs bl = b;
        bl.Lambda = L;
        double v = croke_cheeger_lower(bl);
        CHECK(v < prev);
        prev = v;
    }

    // linear in vol
    BoundInputs b2 = b;
    b2.vol *= 2;
    CHECK(rel_err(croke_cheeger_lower(b2), 2 * croke_cheeger_lower(b)) < 1e-12);

    BoundInputs b1 = b;
    b1.n = 1;
    CHECK_THROWS_AS(croke_cheeger_lower(b1), unsupported_dimension_error);
}

TEST_CASE("yau-type eigenvalue lower bound") {
    BoundInputs b;
    b.n = 2;
    b.k = -0.3;
    b.Lambda = 1.2;
    b.vol = 10.0;
    b.diam = 2.0;

    // literal re-evaluation of the squared fraction
    SpaceFormProfile p{2, b.k};
    double integral = volume_profile(p, b.diam) / sphere_volume(1);
    double x = b.vol / (4.0 * 2.0 * std::pow(b.Lambda, 9.0) * b.diam * integral);
    CHECK(rel_err(yau_eigen_lower(b), x * x) < 1e-10);

    // scales as vol^2
    BoundInputs b2 = b;
    b2.vol *= 2;
    CHECK(rel_err(yau_eigen_lower(b2), 4 * yau_eigen_lower(b)) < 1e-10);
}

TEST_CASE("star-like isoperimetric lower bound") {
    // interior maximum, validated against a dense brute-force grid
    int n = 2;
    double k = -1.0, Lambda = 1.0, r = 1.0, R = 1.0;
    StarlikeBound got = starlike_isoperimetric_lower(n, k, Lambda, r, R);
    CHECK(got.value > 0.0);
    CHECK(got.beta > 0.0);
    CHECK(got.beta < r / (2 * std::sqrt(Lambda)));

    SpaceFormProfile p{n, k};
    double hi = r / (2 * std::sqrt(Lambda));
    double denom = 2.0 * std::pow(Lambda, 4.0 * n + 0.5) * volume_profile(p, r) *
                   volume_profile(p, R);
    double vhi = volume_profile(p, hi);
    double brute = 0;
    const int N = 1000000;
    for (int i = 1; i < N; ++i) {
        double beta = hi * i / N;
        double v = area_profile(p, beta) * (vhi - volume_profile(p, beta)) / denom;
        brute = std::max(brute, v);
    }
    CHECK(rel_err(got.value, brute) < 1e-6);

    // endpoint limits vanish
    auto val = [&](double beta) {
        return area_profile(p, beta) * (vhi - volume_profile(p, beta)) / denom;
    };
    CHECK(val(1e-9) < 1e-6 * got.value);
    CHECK(val(hi * (1 - 1e-9)) < 1e-6 * got.value);

    CHECK_THROWS(starlike_isoperimetric_lower(2, 0.0, 1.0, 1.0, 1.0));
    CHECK_THROWS(starlike_isoperimetric_lower(2, -1.0, 1.0, 2.0, 1.0));
}

TEST_CASE("buser right-hand side") {
    CHECK(buser_rhs(1.0, 0.0, 10.0) == 0.0);
    CHECK(buser_rhs(0.0, 0.5, 10.0) == doctest::Approx(2.5));
    CHECK(buser_rhs(1.0, 0.5, 10.0) == doctest::Approx(7.5));
}

TEST_CASE("rescaling map") {
    auto r1 = rescale_quantities(1.0, 2.0, 0.7, -0.3);
    CHECK(r1.lambda1 == 2.0);
    CHECK(r1.h == 0.7);
    CHECK(r1.ric == -0.3);

    auto r4 = rescale_quantities(4.0, 2.0, 0.7, -0.3);
    CHECK(rel_err(r4.lambda1, 0.5) < 1e-14);
    CHECK(rel_err(r4.h, 0.35) < 1e-14);
    CHECK(rel_err(r4.ric, -0.075) < 1e-14);

    // group law: rescale(C1) o rescale(C2) = rescale(C1 C2)
    auto a = rescale_quantities(2.0, 2.0, 0.7, -0.3);
    auto ab = rescale_quantities(3.0, a.lambda1, a.h, a.ric);
    auto direct = rescale_quantities(6.0, 2.0, 0.7, -0.3);
    CHECK(rel_err(ab.lambda1, direct.lambda1) < 1e-14);
    CHECK(rel_err(ab.h, direct.h) < 1e-14);
    CHECK(rel_err(ab.ric, direct.ric) < 1e-14);
}

TEST_CASE("small-ball cheeger profile J(r)") {
    // r J(r) tends to a positive constant; for n = 2, Lambda = 1 the
    // small-r expansion gives 1/512.
    double prev = 0;
    for (int mexp = 6; mexp <= 15; ++mexp) {
        double r = std::pow(2.0, -mexp);
        double v = r * j_profile(r, 2, 1.0);
        CHECK(j_profile(r, 2, 1.0) > 0.0);
        if (mexp == 15) {
            CHECK(rel_err(v, 1.0 / 512.0) < 1e-4);
            CHECK(rel_err(v, prev) < 1e-3);
        }
        prev = v;
    }

    // monotone decreasing in Lambda at fixed small r
    double r = 1.0 / 64.0;
    double last = j_profile(r, 2, 1.0);
    for (double L : {1.2, 1.6, 2.4, 4.0}) {
        double v = j_profile(r, 2, L);
        CHECK(v < last);
        last = v;
    }
}

TEST_CASE("bound evaluators commute with the rescaling map") {
    Sampler s;
    for (int trial = 0; trial < 50; ++trial) {
        double C = s.uniform(0.3, 5.0);
        double h = s.uniform(0.01, 2.0);
        double lam = s.uniform(1.0, 3.0);
        double lambda1 = s.uniform(0.05, 4.0);
        double delta = s.uniform(0.0, 2.0);
        double buser_c = s.uniform(1.0, 20.0);

        // cheeger lower bound: margin ratio is preserved
        double lhs = lambda1, rhs = cheeger_eigen_lower(h, lam);
        double lhs_s = lambda1 / C, rhs_s = cheeger_eigen_lower(h / std::sqrt(C), lam);
        CHECK(rel_err(rhs_s, rhs / C) < 1e-12);
        CHECK((lhs >= rhs) == (lhs_s >= rhs_s));

        // buser form
        double up = buser_rhs(delta, h, buser_c);
        double up_s = buser_rhs(delta / std::sqrt(C), h / std::sqrt(C), buser_c);
        CHECK(rel_err(up_s, up / C) < 1e-12);
        CHECK((lambda1 <= up) == (lambda1 / C <= up_s));
    }
}
