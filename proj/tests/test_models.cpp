#include "doctest.h"

#include <cmath>

#include "gsc/curvature.hpp"
#include "gsc/models.hpp"

using namespace gsc;

TEST_CASE("zoo constructors validate and carry working movesets") {
    for (const char* name : {"hypercube:3", "lattice-box:4x3", "bernoulli-laplace:4,2",
                             "transposition:3", "cycle:5", "path:4", "complete:5"}) {
        auto m = make_model(name);
        REQUIRE(m.moves);
        auto d = validate_moves(m.g, *m.moves);
        INFO(name, " axiom ", d.axiom, " ", d.witness);
        CHECK(d.ok);
    }
    // models without a natural moveset still build
    for (const char* name : {"petersen", "windmill:4,2", "petal:3"})
        CHECK(make_model(name).g.n() > 0);
}

TEST_CASE("model shapes") {
    auto q3 = hypercube(3);
    CHECK(q3.g.n() == 8);
    CHECK(q3.g.degree(0) == 3);
    CHECK(q3.moves->size() == 3);

    auto bl = bernoulli_laplace(4, 2);
    CHECK(bl.g.n() == 6);
    for (int v = 0; v < 6; ++v) CHECK(bl.g.degree(v) == 4);
    CHECK(bl.moves->size() == 6);

    auto wm = windmill(4, 2);
    CHECK(wm.g.n() == 7);
    CHECK(wm.g.degree(wm.g.vertex("hub")) == 6);

    auto pet = petal(5);
    auto p = ball_profile(pet.g, pet.g.vertex("z0"));
    CHECK(p.s1.size() == 7);
    CHECK(p.s2.size() == 5);
    for (auto& mid : p.midpoints) CHECK(mid.size() == 3);

    auto s4 = transposition(4);
    CHECK(s4.g.n() == 24);
    CHECK(s4.g.degree(0) == 6);
}

TEST_CASE("structured models have K(z,S2(z)) <= 1") {
    for (const char* name : {"hypercube:4", "lattice-box:5x5", "bernoulli-laplace:4,2",
                             "transposition:3", "cycle:6", "complete:4"}) {
        auto m = make_model(name);
        for (int z = 0; z < std::min(m.g.n(), 6); ++z)
            CHECK(r_local(m.g, z).K <= 1.0 + 1e-9);
    }
}

TEST_CASE("strict lower bounds for involutive move sets") {
    // transposition model: r(z) > 2/|S_1(z)| = 4/(n(n-1))
    auto s4 = transposition(4);
    auto r = r_local(s4.g, 0);
    CHECK(r.K == doctest::Approx(1.0 - 1.0 / 6).epsilon(1e-7));  // 1 - 1/|S_1|
    CHECK(r.r.value > 4.0 / (4 * 3));

    // Bernoulli-Laplace: r(z) > 2/(m(n-m))
    auto bl = bernoulli_laplace(4, 2);
    auto rb = r_local(bl.g, 0);
    CHECK(rb.r.value > 2.0 / 4);
    CHECK(rb.K == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("cartesian products") {
    // hypercube(2) x hypercube(3) has the local data of hypercube(5)
    auto prod = product_space(hypercube(2), hypercube(3));
    CHECK(prod.g.n() == 32);
    auto q5 = hypercube(5);
    auto rp = r_local(prod.g, 0);
    auto r5 = r_local(q5.g, 0);
    CHECK(rp.K == doctest::Approx(r5.K).epsilon(1e-9));
    CHECK(rtilde2_local(prod.g, 0).value == doctest::Approx(rtilde2_local(q5.g, 0).value));
    REQUIRE(prod.moves);
    CHECK(validate_moves(prod.g, *prod.moves).ok);

    // product with a single vertex changes nothing
    GraphSpec one;
    one.vertices = {"pt"};
    Model single{GraphSpace::build(one), std::nullopt, {1}, "pt"};
    auto same = product_space(hypercube(2), single);
    CHECK(same.g.n() == 4);
    CHECK(r_local(same.g, 0).K == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("ising hessian") {
    auto cube = hypercube(3);
    std::vector<std::vector<double>> V = {{0, 1.2, -0.7}, {1.2, 0, 0.4}, {-0.7, 0.4, 0}};
    IsingSpec spec;
    spec.field = {0.5, -0.25, 0.0};
    spec.interaction = V;
    auto v = ising_potential(spec, cube.g);
    for (int z = 0; z < cube.g.n(); ++z) {
        auto h = ising_hessian(cube.g, v, z);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(h.at(i, j) == doctest::Approx(i == j ? 0.0 : V[i][j]).epsilon(1e-12));
    }

    IsingSpec fields_only;
    fields_only.field = {1.0, 2.0, 3.0};
    fields_only.interaction = std::vector<std::vector<double>>(3, std::vector<double>(3, 0.0));
    auto vf = ising_potential(fields_only, cube.g);
    for (int z = 0; z < cube.g.n(); ++z) CHECK(ising_hessian(cube.g, vf, z).max_abs() == 0.0);

    // cubic potential: z-dependent Hessian, checked against direct differences
    Potential cubic(cube.g.n());
    for (int z = 0; z < cube.g.n(); ++z) {
        const auto& l = cube.g.label(z);
        cubic[z] = (l[0] - '0') * (l[1] - '0') * (l[2] - '0');
    }
    for (int z = 0; z < cube.g.n(); ++z) {
        auto h = ising_hessian(cube.g, cubic, z);
        const auto& l = cube.g.label(z);
        // d2_{01} v = z3, d2_{02} v = z2, d2_{12} v = z1
        CHECK(h.at(0, 1) == doctest::Approx((double)(l[2] - '0')));
        CHECK(h.at(0, 2) == doctest::Approx((double)(l[1] - '0')));
        CHECK(h.at(1, 2) == doctest::Approx((double)(l[0] - '0')));
    }
}

TEST_CASE("rho_v") {
    auto cube = hypercube(4);
    IsingSpec spec;
    spec.field = {0.2, -0.1, 0.3, 0.0};
    spec.interaction = std::vector<std::vector<double>>(4, std::vector<double>(4, 0.0));
    CHECK(rho_v(cube.g, ising_potential(spec, cube.g)) == doctest::Approx(1.0).epsilon(1e-12));

    for (auto& row : spec.interaction)
        for (auto& x : row) x = 0.1;
    for (int i = 0; i < 4; ++i) spec.interaction[i][i] = 0;
    auto v = ising_potential(spec, cube.g);
    double rho = rho_v(cube.g, v);
    // independent re-evaluation of the formula from the spectra
    SymMatrix V(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) V.at(i, j) = i == j ? 0.0 : 0.1;
    double lmin = sym_eigs(V).front();
    double lmax_abs = sym_eigs(V).back();  // |V| = V here
    double expect = 1 + lmin / 2 - (lmax_abs / 2) * ((std::exp(0.05) - 1.05) / 0.05);
    CHECK(rho == doctest::Approx(expect).epsilon(1e-10));
    CHECK(k_series(0.0) == 0.0);
    CHECK(k_series(1e-6) == doctest::Approx((std::exp(1e-6) - 1 - 1e-6) / 1e-6).epsilon(1e-6));
}

TEST_CASE("rho_tilde") {
    // Curie-Weiss: adjacency of K_10, threshold beta < 1/(2n)
    SymMatrix w(10);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) w.at(i, j) = i == j ? 0.0 : 1.0;
    double r004 = rho_tilde(w, 0.04);
    // oracle: lambda_max = 9, k(0.08) by series
    double k008 = 0.0;
    double fact = 1.0;
    for (int j = 1; j <= 20; ++j) {
        fact *= (j + 1);
        k008 += std::pow(0.08, j) / fact;
    }
    CHECK(r004 == doctest::Approx(1 - 2 * 0.04 * 9 - 2 * 0.04 * 9 * k008).epsilon(1e-10));
    CHECK(r004 > 0);
    CHECK(r004 == doctest::Approx(0.2504).epsilon(1e-3));
    CHECK(rho_tilde(w, 0.2) < 0);
    CHECK(rho_tilde(w, 1e-9) == doctest::Approx(1.0).epsilon(1e-6));

    // antiferromagnetic Curie-Weiss: positivity persists far beyond the
    // ferromagnetic threshold 1/(2n) (though not quite to 1/(1+sqrt(2n)))
    SymMatrix neg(8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) neg.at(i, j) = i == j ? 0.0 : -1.0;
    CHECK(rho_tilde(neg, 0.9 / (1.0 + std::sqrt(16.0))) > 0);  // beta = 0.18 >> 1/16
    CHECK(rho_tilde(neg, 1.0 / 16) > 0);
    // direct evaluation: 1 - 2 beta - 2 (n-1) beta k(2 beta)
    double beta = 0.18;
    double k = (std::exp(2 * beta) - 2 * beta - 1) / (2 * beta);
    CHECK(rho_tilde(neg, beta) == doctest::Approx(1 - 2 * beta - 14 * beta * k).epsilon(1e-12));
}

TEST_CASE("sk screening sample") {
    auto w1 = sk_sample(12, 99);
    auto w2 = sk_sample(12, 99);
    for (int i = 0; i < 12; ++i) {
        CHECK(w1.at(i, i) == 0.0);
        for (int j = 0; j < 12; ++j) CHECK(w1.at(i, j) == w2.at(i, j));  // seeded draw
    }
    CHECK(rho_tilde(w1, 1e-9) == doctest::Approx(1.0).epsilon(1e-6));
    // screening at the 1/(4 sqrt(n)) scale on one sample
    double rho = rho_tilde(w1, 0.25 / std::sqrt(12.0));
    CHECK(std::isfinite(rho));
}

TEST_CASE("lattice Av certificates") {
    auto box = lattice_box_geometry({5, 5});
    Potential zero(box.g.n(), 0.0);
    int c = box.vertex({2, 2});
    auto av0 = lattice_av(box, zero, c);
    CHECK(av0.av.max_abs() == 0.0);
    CHECK(av0.k_bound == doctest::Approx(1.0));

    // quadratic potential: (Av)_ii = e^{-V_ii/2}-1, (Av)_ij = e^{|V_ij|/2}-1
    std::vector<std::vector<double>> V = {{0.8, -0.1}, {-0.1, 0.6}};
    Potential v(box.g.n());
    for (int z = 0; z < box.g.n(); ++z) {
        auto p = box.coord(z);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) v[z] += 0.5 * V[i][j] * p[i] * p[j];
    }
    auto av = lattice_av(box, v, c);
    CHECK(av.av.at(0, 0) == doctest::Approx(std::exp(-0.4) - 1).epsilon(1e-12));
    CHECK(av.av.at(1, 1) == doctest::Approx(std::exp(-0.3) - 1).epsilon(1e-12));
    CHECK(av.av.at(0, 1) == doctest::Approx(std::exp(0.05) - 1).epsilon(1e-12));
    // -Av diagonally dominant => lambda_max(Av) <= 0 and the K bounds apply
    CHECK(av.dominant);
    CHECK(av.lambda_max <= 0);
    CHECK(av.k_bound_valid);
    CHECK(av.k_bound == doctest::Approx(1 + av.lambda_max / 2));
    CHECK(av.ktilde_bound == doctest::Approx(1 + av.lambda_max));

    CHECK_THROWS_WITH_AS(lattice_av(box, v, box.vertex({0, 2})),
                         doctest::Contains("BoundaryVertex"), Error);
}
