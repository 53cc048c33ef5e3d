#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "finsler/distance.hpp"
#include "test_helpers.hpp"

using namespace finsler;
using namespace finsler::testing;

TEST_CASE("flat torus distances match the closed form on grid directions") {
    Mesh mesh = Mesh::torus(64, 64, 2 * M_PI, 2 * M_PI);
    auto m = euclid_torus_2d();
    auto d = distance_map(m, mesh, mesh.index(0, 0));

    CHECK(d[static_cast<size_t>(mesh.index(0, 0))] == 0.0);

    // axis and diagonal targets are grid-exact
    double h = mesh.spacing(0);
    CHECK(rel_err(d[static_cast<size_t>(mesh.index(16, 0))], 16 * h) < 1e-9);
    CHECK(rel_err(d[static_cast<size_t>(mesh.index(0, 24))], 24 * h) < 1e-9);
    CHECK(rel_err(d[static_cast<size_t>(mesh.index(20, 20))], 20 * h * std::sqrt(2.0)) < 1e-9);
    // wrap-around: 48 steps right = 16 steps left
    CHECK(rel_err(d[static_cast<size_t>(mesh.index(48, 0))], 16 * h) < 1e-9);

    // generic targets overshoot by at most the 8-neighbor anisotropy bound
    double worst = 0;
    for (int i = 0; i < mesh.num_nodes(); i += 7) {
        Vec p = mesh.coord(i);
        double want = mesh.chart().distance(Vec::zero(2), p);
        if (want < 4 * h) continue;
        double ratio = d[static_cast<size_t>(i)] / want;
        CHECK(ratio > 1.0 - 1e-9);
        worst = std::max(worst, ratio);
    }
    CHECK(worst < 1.0824 + 1e-3);
}

TEST_CASE("asymmetric circle distances follow the one-form") {
    double a = 2.0, b = 1.0, L = 2 * M_PI;
    Mesh mesh = Mesh::circle(128, L);
    auto m = randers_circle(a, b);
    int src = mesh.index(0);
    auto d = distance_map(m, mesh, src);

    // moving forward costs (a+b) dx, backward (a-b) dx; for a target an
    // eighth ahead the direct route wins in both orientations
    int fwd = mesh.index(16);
    CHECK(rel_err(d[static_cast<size_t>(fwd)], (a + b) * L / 8) < 1e-9);
    auto d_from_fwd = distance_map(m, mesh, fwd);
    CHECK(rel_err(d_from_fwd[static_cast<size_t>(src)], (a - b) * L / 8) < 1e-9);

    // asymmetry ratio d(p,q)/d(q,p) equals the reversibility (a+b)/(a-b)
    CHECK(rel_err(d[static_cast<size_t>(fwd)] / d_from_fwd[static_cast<size_t>(src)],
                  (a + b) / (a - b)) < 1e-9);

    // the reverse metric swaps the two arguments of d
    auto d_rev = distance_map(m.reversed(), mesh, src);
    CHECK(rel_err(d_rev[static_cast<size_t>(fwd)], d_from_fwd[static_cast<size_t>(src)]) <
          1e-9);
}

TEST_CASE("triangle inequality on sampled triples") {
    Mesh mesh = Mesh::torus(24, 24, 2 * M_PI, 2 * M_PI);
    auto m = randers_torus(0.4);
    Sampler s;
    for (int trial = 0; trial < 10; ++trial) {
        int p = static_cast<int>(s.uniform(0, mesh.num_nodes() - 1));
        int q = static_cast<int>(s.uniform(0, mesh.num_nodes() - 1));
        auto dp = distance_map(m, mesh, p);
        auto dq = distance_map(m, mesh, q);
        for (int r = 0; r < mesh.num_nodes(); r += 17) {
            CHECK(dp[static_cast<size_t>(r)] <=
                  dp[static_cast<size_t>(q)] + dq[static_cast<size_t>(r)] + 1e-9);
        }
    }
}

TEST_CASE("diameter estimate of the flat square torus") {
    Mesh mesh = Mesh::torus(32, 32, 2 * M_PI, 2 * M_PI);
    auto m = euclid_torus_2d();
    DiameterEstimate est = diameter_estimate(m, mesh, 32);
    CHECK(est.sources >= 32);
    double want = M_PI * std::sqrt(2.0);  // corner of the fundamental domain
    CHECK(rel_err(est.fine, want) < 0.03);
    CHECK(est.fine >= want * (1.0 - 1e-9));  // graph paths cannot undershoot
    CHECK(std::abs(est.extrapolated - est.fine) < 0.05 * est.fine);
}
