#include "doctest.h"

#include <cmath>

#include "gsc/compare.hpp"
#include "gsc/curvature.hpp"
#include "gsc/models.hpp"
#include "gsc/spectral.hpp"

using namespace gsc;

TEST_CASE("lazy walks") {
    auto q3 = hypercube(3).g;
    for (double alpha : {1e-3, 0.3}) {
        auto m = lazy_walk(q3, 0, alpha);
        double s = 0;
        for (auto& [v, p] : m.w) s += p;
        CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(m.at(0) == doctest::Approx(1 - alpha).epsilon(1e-14));
    }
}

TEST_CASE("lly curvature on the two-point graph, by the hand LP") {
    auto k2 = path(2).g;
    // W1(m_x^a, m_y^a) = 1 - 2a, so kappa_a / a = 2 exactly
    CHECK(kappa_alpha(k2, 0, 1, 1e-3) == doctest::Approx(2e-3).epsilon(1e-10));
    CHECK(lly_curvature(k2, 0, 1) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("lly curvature on the windmill") {
    auto wm = windmill(4, 2).g;
    // edge between two blade vertices of the same copy: 2/3
    int x = wm.vertex("w0_0"), y = wm.vertex("w0_1");
    CHECK(lly_curvature(wm, x, y) == doctest::Approx(2.0 / 3).epsilon(1e-6));
    // while the entropic bound at those vertices is negative: K = 3
    CHECK(r_local(wm, x).K == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(r_local(wm, y).K == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("girth criterion via lly curvature") {
    // the Petersen graph sits exactly at the threshold: kappa_LLY = 0 on every
    // edge with (6 - deg - deg)/Delta = 0, and its girth is 5
    auto pet = petersen().g;
    double delta = pet.max_degree();
    for (int x = 0; x < pet.n(); ++x)
        for (int y : pet.neighbors(x)) {
            if (y < x) continue;
            double k = lly_curvature(pet, x, y);
            CHECK(k == doctest::Approx(0.0).epsilon(1e-9));
            CHECK(k <= (6.0 - pet.degree(x) - pet.degree(y)) / delta + 1e-9);
        }
    CHECK(girth(pet) >= 5);

    // contrapositive: short cycles force an edge violating the strict bound
    for (const char* name : {"cycle:4", "complete:4", "hypercube:3"}) {
        auto m = make_model(name);
        REQUIRE(girth(m.g) <= 4);
        bool witness = false;
        double d2 = m.g.max_degree();
        for (int x = 0; x < m.g.n() && !witness; ++x)
            for (int y : m.g.neighbors(x)) {
                if (y < x) continue;
                if (lly_curvature(m.g, x, y) >=
                    (6.0 - m.g.degree(x) - m.g.degree(y)) / d2 - 1e-9)
                    witness = true;
            }
        CHECK(witness);
    }
}

TEST_CASE("gamma2 on the hypercube") {
    auto cube = hypercube(3);
    auto& g = cube.g;
    Rng rng(31);

    std::vector<double> cons(g.n(), 4.2);
    for (int z = 0; z < g.n(); ++z) CHECK(gamma2(g, cons, z) == doctest::Approx(0.0));

    REQUIRE(moves_commute(g, *cube.moves));
    for (int it = 0; it < 50; ++it) {
        std::vector<double> f(g.n());
        for (auto& x : f) x = rng.uniform(-1, 1);
        for (int z = 0; z < g.n(); ++z) {
            double direct = gamma2(g, f, z);
            CHECK(direct >= -1e-10);  // CD(0, infinity)
            CHECK(direct == doctest::Approx(gamma2_commuting(g, *cube.moves, f, z)).epsilon(1e-10));
        }
    }

    // bilinear symmetry
    for (int it = 0; it < 20; ++it) {
        std::vector<double> f(g.n()), h(g.n());
        for (auto& x : f) x = rng.uniform(-1, 1);
        for (auto& x : h) x = rng.uniform(-1, 1);
        for (int z = 0; z < g.n(); ++z)
            CHECK(gamma2_bilinear(g, f, h, z) ==
                  doctest::Approx(gamma2_bilinear(g, h, f, z)).epsilon(1e-10));
    }
}

TEST_CASE("lly linearity check is stable under halving") {
    auto q3 = hypercube(3).g;
    double k1 = lly_curvature(q3, 0, 1);
    double extrap = 2 * kappa_alpha(q3, 0, 1, 5e-4) / 5e-4 - kappa_alpha(q3, 0, 1, 1e-3) / 1e-3;
    CHECK(k1 == doctest::Approx(extrap).epsilon(1e-6));
}
