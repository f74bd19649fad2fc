#include "doctest.h"

#include <cmath>

#include "gsc/curvature.hpp"
#include "gsc/models.hpp"
#include "gsc/verify.hpp"

using namespace gsc;

TEST_CASE("displacement convexity: degenerate and hand-computed cases") {
    auto q2 = hypercube(2).g;
    // Dirac to the same Dirac: both sides equal at every t
    auto o = check_displacement(q2, Measure::dirac(0), Measure::dirac(0), CostKind::T2, 1.0,
                                {0.25, 0.5, 0.75});
    CHECK(o.holds);
    CHECK(o.slack == doctest::Approx(0.0).epsilon(1e-12));

    // opposite corners of the square at t = 1/2: bridge uniform on 4 vertices,
    // H = -log 4, rhs = -(1/8) kappa T2 with T2 = 2
    double kappa = 2 * std::log(2.0);
    auto o2 = check_displacement(q2, Measure::dirac(q2.vertex("00")),
                                 Measure::dirac(q2.vertex("11")), CostKind::T2, kappa, {0.5});
    CHECK(o2.holds);
    double expect = (-0.25 * kappa * 2 / 2.0) - (-std::log(4.0));
    CHECK(o2.slack == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("displacement convexity holds with the local curvature constants") {
    auto q3m = hypercube(3);
    auto& q3 = q3m.g;
    double kappa = -2 * std::log(2.0 / 3);
    Rng rng(7);
    std::vector<double> grid{0.1, 0.3, 0.5, 0.7, 0.9};
    for (int it = 0; it < 10; ++it) {
        auto nu0 = random_measure(q3, rng);
        auto nu1 = random_measure(q3, rng);
        CHECK(check_displacement(q3, nu0, nu1, CostKind::T2, kappa, grid).holds);
        CHECK(check_displacement(q3, nu0, nu1, CostKind::CtildeD, 1.0, grid, &*q3m.moves, 1)
                  .holds);
        CHECK(check_displacement(q3, nu0, nu1, CostKind::W1Sq, 4.0 / 3, grid).holds);
        CHECK(check_displacement(q3, nu0, nu1, CostKind::Ttilde, 1 - std::exp(-kappa), grid)
                  .holds);
        CHECK(check_displacement(q3, nu0, nu1, CostKind::Ttilde2, 1.0, grid, &*q3m.moves).holds);
    }

    // negative curvature on the Petersen graph still satisfies its own bound
    auto pet = petersen().g;
    for (int it = 0; it < 5; ++it) {
        auto nu0 = random_measure(pet, rng);
        auto nu1 = random_measure(pet, rng);
        CHECK(check_displacement(pet, nu0, nu1, CostKind::T2, -2 * std::log(2.0), grid).holds);
    }
}

TEST_CASE("displacement with the cbar cost family") {
    auto q3m = hypercube(3);
    Rng rng(15);
    double rbar = rbar_local(q3m.g, 0).value;
    for (int it = 0; it < 5; ++it) {
        auto nu0 = random_measure(q3m.g, rng);
        auto nu1 = random_measure(q3m.g, rng);
        CHECK(check_displacement(q3m.g, nu0, nu1, CostKind::CbarT, rbar, {0.2, 0.5, 0.8}).holds);
    }
}

TEST_CASE("Prekopa-Leindler") {
    auto q2 = hypercube(2).g;
    double kappa = 2 * std::log(2.0);
    auto c_t = [](int d) { return (double)d * (d - 1); };

    // constants: equality in hypothesis and conclusion
    std::vector<double> cf(q2.n(), 0.7);
    auto oc = check_prekopa_leindler(q2, cf, cf, cf, 0.5, kappa, c_t);
    CHECK(oc.holds);

    Rng rng(11);
    for (int it = 0; it < 10; ++it) {
        std::vector<double> f(q2.n()), g(q2.n());
        for (auto& x : f) x = rng.uniform(-1, 1);
        for (auto& x : g) x = rng.uniform(-1, 1);
        auto h = pl_minimal_h(q2, f, g, 0.5, kappa, c_t);
        CHECK(check_prekopa_leindler(q2, f, g, h, 0.5, kappa, c_t).holds);
        // an undersized h breaks the hypothesis
        auto h2 = h;
        for (auto& x : h2) x -= 0.5;
        CHECK_THROWS_WITH_AS(check_prekopa_leindler(q2, f, g, h2, 0.5, kappa, c_t),
                             doctest::Contains("HypothesisFails"), Error);
    }
}

TEST_CASE("transport-entropy inequalities") {
    auto q4m = hypercube(4);
    auto& q4 = q4m.g;
    KappaPack pack;
    pack.kappa = -2 * std::log(0.75);
    pack.kappa1 = 1.0;  // 4/n
    pack.kappa_tilde = 1 - std::exp(-*pack.kappa);
    pack.kappa_tilde2 = 1.0;
    pack.kappa_cbar = rbar_local(q4, 0).value;

    auto mu = Measure::mu(q4);
    auto otriv = check_transport_entropy(q4, mu, mu, pack, &*q4m.moves);
    CHECK(otriv.holds);

    Rng rng(3);
    for (int it = 0; it < 8; ++it) {
        auto nu0 = random_measure(q4, rng);
        auto nu1 = random_measure(q4, rng);
        auto o = check_transport_entropy(q4, nu0, nu1, pack, &*q4m.moves, 50, 100 + it);
        CHECK(o.holds);
    }

    // Dirac-to-Dirac diameter remark: n <= sqrt(8 log 2^n / kappa1) = n sqrt(2 ln 2)
    for (int n = 2; n <= 5; ++n) {
        double kappa1 = 4.0 / n;
        double bound = std::sqrt(8 * n * std::log(2.0) / kappa1);
        CHECK(bound == doctest::Approx(n * std::sqrt(2 * std::log(2.0))).epsilon(1e-12));
        CHECK(bound >= n);
    }
}

TEST_CASE("MLSI and Poincare") {
    auto q4m = hypercube(4);
    auto o = check_mlsi_poincare(q4m.g, 1 - std::exp(-(-2 * std::log(0.75))), 1.0, &*q4m.moves,
                                 50, 42);
    CHECK(o.holds);
    CHECK(o.samples == 50);

    // lambda2 >= 2 ktilde2 with equality at ktilde2 = 1
    CHECK(lambda2(q4m.g) == doctest::Approx(2.0).epsilon(1e-9));

    CHECK_THROWS_WITH_AS(check_mlsi_poincare(q4m.g, 0.0, 0.0, nullptr, 5, 1),
                         doctest::Contains("NonPositiveCurvature"), Error);
}

TEST_CASE("Bonnet-Myers") {
    auto q4 = hypercube(4).g;
    double kappa = -2 * std::log(0.75);
    auto bm = bonnet_myers_bound(q4, ExtReal::finite(kappa));
    CHECK(bm.bound == doctest::Approx(8 * std::log(4.0) / kappa + 1).epsilon(1e-12));
    CHECK(bm.holds);
    CHECK(bm.diameter == 4);

    // single edge: complete graph, kappa = +inf, bound collapses to 1
    auto k2 = path(2).g;
    auto bm2 = bonnet_myers_bound(k2, ExtReal::inf());
    CHECK(bm2.bound == doctest::Approx(1.0));
    CHECK(bm2.holds);

    auto k3 = complete(3).g;
    CHECK(bonnet_myers_bound(k3, ExtReal::inf()).holds);
    CHECK_THROWS_WITH_AS(bonnet_myers_bound(q4, ExtReal::finite(-1.0)),
                         doctest::Contains("NonPositiveCurvature"), Error);
}

TEST_CASE("tensorization") {
    auto o = check_tensorization(hypercube(1).g, hypercube(2).g);
    CHECK(o.holds);

    GraphSpec one;
    one.vertices = {"pt"};
    auto single = GraphSpace::build(one);
    CHECK(check_tensorization(hypercube(2).g, single).holds);

    CHECK(check_tensorization(path(3).g, path(3).g).holds);
    CHECK(check_tensorization(cycle(4).g, path(3).g).holds);
}

TEST_CASE("verifiers are deterministic under a fixed seed") {
    auto q3 = hypercube(3).g;
    Rng a(5), b(5);
    auto n0a = random_measure(q3, a), n1a = random_measure(q3, a);
    auto n0b = random_measure(q3, b), n1b = random_measure(q3, b);
    for (auto& [v, m] : n0a.w) CHECK(n0b.at(v) == m);
    auto oa = check_displacement(q3, n0a, n1a, CostKind::T2, 0.5, {0.3, 0.6});
    auto ob = check_displacement(q3, n0b, n1b, CostKind::T2, 0.5, {0.3, 0.6});
    CHECK(oa.slack == ob.slack);
}
