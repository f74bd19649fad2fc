#include "doctest.h"

#include <cmath>

#include "gsc/bridge.hpp"
#include "gsc/models.hpp"
#include "gsc/perturb.hpp"
#include "gsc/spectral.hpp"

using namespace gsc;

namespace {

Potential quadratic_potential(const GraphSpace& cube, const std::vector<double>& T,
                              const std::vector<std::vector<double>>& V) {
    IsingSpec spec;
    spec.field = T;
    spec.interaction = V;
    return ising_potential(spec, cube);
}

}  // namespace

TEST_CASE("perturbed_space") {
    auto q2 = hypercube(2).g;

    Potential zero(q2.n(), 0.0);
    auto same = perturbed_space(q2, zero);
    for (int v = 0; v < q2.n(); ++v) {
        CHECK(same.measure(v) == q2.measure(v));
        for (int u : q2.neighbors(v)) CHECK(same.rate(v, u) == q2.rate(v, u));
    }

    Potential c(q2.n(), 1.7);
    auto scaled = perturbed_space(q2, c);
    for (int v = 0; v < q2.n(); ++v) {
        CHECK(scaled.measure(v) == doctest::Approx(std::exp(-1.7)).epsilon(1e-14));
        for (int u : q2.neighbors(v)) CHECK(scaled.rate(v, u) == doctest::Approx(1.0));
    }

    // v(z) = z1 + z2: L_v(00,01) = e^{-1/2}, reversibility revalidated by build
    Potential lin(q2.n());
    for (int v = 0; v < q2.n(); ++v) {
        const auto& l = q2.label(v);
        lin[v] = (l[0] - '0') + (l[1] - '0');
    }
    auto pert = perturbed_space(q2, lin);
    CHECK(pert.rate(q2.vertex("00"), q2.vertex("01")) == doctest::Approx(std::exp(-0.5)));
    CHECK(pert.rate(q2.vertex("01"), q2.vertex("00")) == doctest::Approx(std::exp(0.5)));
}

TEST_CASE("discrete laplacian") {
    auto q3cube = hypercube(3);
    auto& q3 = q3cube.g;
    std::vector<std::vector<double>> V = {{0, 0.4, -0.2}, {0.4, 0, 0.1}, {-0.2, 0.1, 0}};
    auto v = quadratic_potential(q3, {0.3, -0.1, 0.2}, V);

    // Dv(z, sigma_i sigma_j z) = (2 z_i - 1)(2 z_j - 1) V_ij
    for (int z = 0; z < q3.n(); ++z) {
        const auto& l = q3.label(z);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                int zpp = q3cube.moves->apply(j, q3cube.moves->apply(i, z));
                double expect = (2 * (l[i] - '0') - 1.0) * (2 * (l[j] - '0') - 1.0) * V[i][j];
                CHECK(discrete_laplacian(q3, v, z, zpp) == doctest::Approx(expect).epsilon(1e-12));
                CHECK(discrete_laplacian(q3, v, zpp, z) == doctest::Approx(expect).epsilon(1e-12));
            }
    }

    // affine potentials have vanishing second differences
    auto lin = quadratic_potential(q3, {1.0, -2.0, 0.5}, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}});
    Potential cons(q3.n(), 3.2);
    for (int z = 0; z < q3.n(); ++z)
        for (int zpp = 0; zpp < q3.n(); ++zpp) {
            if (q3.dist(z, zpp) != 2) continue;
            CHECK(discrete_laplacian(q3, lin, z, zpp) == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(discrete_laplacian(q3, cons, z, zpp) == doctest::Approx(0.0).epsilon(1e-12));
        }

    CHECK_THROWS_WITH_AS(discrete_laplacian(q3, cons, 0, 0), doctest::Contains("DistanceNotTwo"),
                         Error);
}

TEST_CASE("dtv on the hypercube matches the constant-Hessian closed form") {
    auto cube = hypercube(4);
    auto& g = cube.g;
    std::vector<std::vector<double>> V(4, std::vector<double>(4, 0.0));
    V[0][1] = V[1][0] = 0.3;
    V[0][2] = V[2][0] = -0.15;
    V[1][3] = V[3][1] = 0.22;
    V[2][3] = V[3][2] = 0.05;
    auto v = quadratic_potential(g, {0.1, 0.2, -0.3, 0.0}, V);

    Rng rng(4);
    for (int it = 0; it < 20; ++it) {
        int x = (int)rng.below(g.n()), y = (int)rng.below(g.n());
        int d = g.dist(x, y);
        if (d < 2) continue;
        double t = rng.uniform(0.15, 0.85);
        double integral =
            integrate_against_qt([&](double s) { return dtv(g, v, x, y, s); }, t, 1e-10);
        double num = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                num += (g.label(x)[i] - g.label(y)[i]) * (g.label(x)[j] - g.label(y)[j]) * V[i][j];
        CHECK(integral == doctest::Approx(2 * num / (d * (d - 1))).epsilon(1e-8));
    }

    Potential cons(g.n(), 2.0);
    CHECK(dtv(g, cons, g.vertex("0000"), g.vertex("1100"), 0.4) == doctest::Approx(0.0));
}

TEST_CASE("dtv on a lattice box matches the quadratic closed form") {
    auto box = lattice_box({5, 5});
    auto geo = lattice_box_geometry({5, 5});
    std::vector<std::vector<double>> V = {{0.6, 0.2}, {0.2, 0.8}};
    Potential v(box.g.n());
    for (int z = 0; z < box.g.n(); ++z) {
        auto c = geo.coord(z);
        double val = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) val += 0.5 * V[i][j] * c[i] * c[j];
        v[z] = val;
    }
    // d(d-1) D_t v = <y-x, V(y-x)> - sum_i V_ii |y_i - x_i|, independent of t
    auto at = [&](int a, int b) { return geo.vertex({a, b}); };
    for (auto [x, y] : {std::pair{at(1, 1), at(3, 2)}, {at(0, 2), at(2, 0)}, {at(2, 2), at(4, 4)}}) {
        auto cx = geo.coord(x), cy = geo.coord(y);
        double quad = 0, corr = 0;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) quad += (cy[i] - cx[i]) * V[i][j] * (cy[j] - cx[j]);
            corr += V[i][i] * std::abs(cy[i] - cx[i]);
        }
        int d = box.g.dist(x, y);
        for (double t : {0.2, 0.5, 0.8})
            CHECK(d * (d - 1) * dtv(box.g, v, x, y, t) ==
                  doctest::Approx(quad - corr).epsilon(1e-10));
    }
}

TEST_CASE("second derivative validated by finite differences") {
    Rng rng(9);
    std::vector<Model> zoo;
    zoo.push_back(hypercube(3));
    zoo.push_back(bernoulli_laplace(4, 2));
    zoo.push_back(cycle(6));
    zoo.push_back(lattice_box({4, 4}));
    zoo.push_back(petersen());
    int done = 0;
    while (done < 100) {
        auto& m = zoo[rng.below(zoo.size())];
        int x = (int)rng.below(m.g.n()), y = (int)rng.below(m.g.n());
        double t = rng.uniform(0.1, 0.9);
        Potential v(m.g.n());
        for (auto& w : v) w = rng.uniform(-1, 1);
        int d = m.g.dist(x, y);
        double rpp = second_derivative(m.g, v, x, y, t);
        if (d < 2) {
            CHECK(rpp == 0.0);
            ++done;
            continue;
        }
        auto R = [&](double s) {
            double acc = 0;
            for (auto& [z, p] : dirac_bridge(m.g, x, y, s).w) acc += p * v[z];
            return acc;
        };
        double h = 1e-4;
        double fd = (R(t + h) - 2 * R(t) + R(t - h)) / (h * h);
        CHECK(std::fabs(rpp - fd) <= 1e-5 * (1 + std::fabs(rpp)));
        ++done;
    }
}

TEST_CASE("bridges are invariant under potential perturbation") {
    auto cube = hypercube(3);
    Rng rng(21);
    Potential v(cube.g.n());
    for (auto& w : v) w = rng.uniform(-2, 2);
    auto pert = perturbed_space(cube.g, v);
    for (int it = 0; it < 25; ++it) {
        int x = (int)rng.below(cube.g.n()), y = (int)rng.below(cube.g.n());
        double t = rng.u01();
        auto a = dirac_bridge(cube.g, x, y, t);
        auto b = dirac_bridge(pert, x, y, t);
        for (auto& [z, p] : a.w) CHECK(b.at(z) == doctest::Approx(p).epsilon(1e-12));
    }
}

TEST_CASE("convex restriction preserves bridges") {
    auto box = lattice_box({4, 4});
    auto geo = lattice_box_geometry({4, 4});
    // a sub-box is convex, an L-shaped set is not
    std::vector<int> sub;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 2; ++b) sub.push_back(geo.vertex({a, b}));
    REQUIRE(is_convex_subset(box.g, sub));
    std::vector<int> ell = {geo.vertex({0, 0}), geo.vertex({1, 0}), geo.vertex({1, 1})};
    CHECK(!is_convex_subset(box.g, ell));

    auto rest = restrict_space(box.g, sub);
    for (int x : sub)
        for (int y : sub)
            for (double t : {0.25, 0.5}) {
                auto full = dirac_bridge(box.g, x, y, t);
                auto small = dirac_bridge(rest, rest.vertex(box.g.label(x)),
                                          rest.vertex(box.g.label(y)), t);
                for (auto& [z, p] : full.w)
                    CHECK(small.at(rest.vertex(box.g.label(z))) == doctest::Approx(p).epsilon(1e-12));
            }
}

TEST_CASE("perturbed_k") {
    auto cube = hypercube(3);
    auto& g = cube.g;
    Potential zero(g.n(), 0.0);
    CHECK(perturbed_k(g, zero, 0, {}).value == doctest::Approx(2.0 / 3).epsilon(1e-9));

    // potential with vanishing off-diagonal Hessian leaves K unchanged
    auto diag_only = [&]() {
        Potential v(g.n());
        for (int z = 0; z < g.n(); ++z) {
            const auto& l = g.label(z);
            v[z] = 0.7 * (l[0] - '0') - 0.4 * (l[1] - '0') + 0.1 * (l[2] - '0');
        }
        return v;
    }();
    CHECK(perturbed_k(g, diag_only, 0, {}).value == doctest::Approx(2.0 / 3).epsilon(1e-9));

    // small uniform ferromagnetic coupling: K^v <= 1 - rho(v)/n
    std::vector<std::vector<double>> V(3, std::vector<double>(3, 0.1));
    for (int i = 0; i < 3; ++i) V[i][i] = 0;
    IsingSpec spec;
    spec.field = {0, 0, 0};
    spec.interaction = V;
    auto v = ising_potential(spec, g);
    double rho = rho_v(g, v);
    REQUIRE(rho > 0);
    for (int z = 0; z < g.n(); ++z)
        CHECK(perturbed_k(g, v, z, {}).value <= 1 - rho / 3 + 1e-9);

    // Ktilde^v stays within [0, 1 - rho(v)] at every vertex
    for (int z = 0; z < g.n(); ++z) {
        double kt = perturbed_k(g, v, z, {}, true).value;
        CHECK(kt <= 1 - rho + 1e-9);
        CHECK(kt >= -1e-12);
    }
}
