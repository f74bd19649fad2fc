#include "doctest.h"

#include <cmath>

#include "gsc/common.hpp"
#include "gsc/models.hpp"
#include "gsc/simplex.hpp"

using namespace gsc;

namespace {

SimplexInstance full_ball_instance(const GraphSpace& g, int z, bool ktilde = false) {
    auto p = ball_profile(g, z);
    std::vector<int> w(p.s2.size());
    for (int i = 0; i < (int)w.size(); ++i) w[i] = i;
    return k_instance(g, p, w, ktilde);
}

// random class-C instance: k distinct pairs over n variables, coefficient 2
SimplexInstance random_class_c(Rng& rng, int n, int k) {
    SimplexInstance inst;
    inst.n_vars = n;
    std::set<std::pair<int, int>> used;
    while ((int)used.size() < k) {
        int i = (int)rng.below(n), j = (int)rng.below(n);
        if (i == j) continue;
        used.insert(std::minmax(i, j));
    }
    for (auto [i, j] : used)
        inst.terms.push_back({2.0, {{i, 1.0}, {j, 1.0}}});
    return inst;
}

}  // namespace

TEST_CASE("solve_k closed forms") {
    auto q3 = hypercube(3).g;
    auto res = solve_k(full_ball_instance(q3, 0));
    CHECK(res.mode == SolveMode::CliqueReduction);
    CHECK(res.value == doctest::Approx(2.0 / 3).epsilon(1e-12));

    SimplexInstance empty;
    empty.n_vars = 3;
    CHECK(solve_k(empty).value == 0.0);

    // one target with three midpoints: 3 (a1 a2 a3)^{2/3}, optimum at uniform
    auto p1 = petal(1).g;
    auto r1 = solve_k(full_ball_instance(p1, p1.vertex("z0")));
    CHECK(r1.value == doctest::Approx(1.0 / 3).epsilon(1e-9));
    CHECK(r1.mode == SolveMode::ExactEnumeration);

    auto p38 = petal(38).g;
    auto r38 = solve_k(full_ball_instance(p38, p38.vertex("z0")));
    CHECK(r38.value > 1.0);

    SimplexInstance bad;
    bad.n_vars = 1;
    bad.terms.push_back({-1.0, {{0, 2.0}}});
    CHECK_THROWS_WITH_AS(solve_k(bad), doctest::Contains("NonPositiveCoefficient"), Error);
}

TEST_CASE("solve_k monotonicity in W") {
    auto q4 = hypercube(4).g;
    auto p = ball_profile(q4, 0);
    double prev = 0;
    std::vector<int> w;
    for (int i = 0; i < (int)p.s2.size(); ++i) {
        w.push_back(i);
        double v = solve_k(k_instance(q4, p, w, false)).value;
        CHECK(v >= prev - 1e-10);
        prev = v;
    }
    CHECK(prev == doctest::Approx(0.75).epsilon(1e-9));
}

TEST_CASE("solve_k scale covariance") {
    Rng rng(3);
    auto inst = random_class_c(rng, 5, 6);
    SolveOptions plain;
    plain.allow_clique = false;  // route both through the same ascent
    double base = solve_k(inst, plain).value;
    for (double lambda : {0.5, 2.0, 7.25}) {
        SimplexInstance scaled = inst;
        for (auto& t : scaled.terms) t.c *= lambda;
        CHECK(solve_k(scaled, plain).value == doctest::Approx(lambda * base).epsilon(1e-8));
    }
}

TEST_CASE("clique reduction agrees with multistart ascent on class-C instances") {
    Rng rng(7);
    for (int it = 0; it < 25; ++it) {
        int n = 3 + (int)rng.below(8);  // up to 10 variables
        int kmax = n * (n - 1) / 2;
        auto inst = random_class_c(rng, n, 1 + (int)rng.below(kmax));
        auto clique = solve_k(inst);
        REQUIRE(clique.mode == SolveMode::CliqueReduction);
        SolveOptions ms;
        ms.allow_clique = false;
        ms.allow_grid = false;
        auto ascent = solve_k(inst, ms);
        CHECK(ascent.value == doctest::Approx(clique.value).epsilon(1e-6));
    }
}

TEST_CASE("grid-exact mode agrees with clique reduction up to 4 variables") {
    Rng rng(11);
    for (int it = 0; it < 10; ++it) {
        int n = 3 + (int)rng.below(2);
        auto inst = random_class_c(rng, n, 1 + (int)rng.below(n * (n - 1) / 2));
        auto clique = solve_k(inst);
        SolveOptions grid;
        grid.allow_clique = false;
        auto g = solve_k(inst, grid);
        CHECK(g.mode == SolveMode::ExactEnumeration);
        CHECK(g.value == doctest::Approx(clique.value).epsilon(1e-6));
    }
}

TEST_CASE("argmax consistency") {
    Rng rng(13);
    for (int it = 0; it < 10; ++it) {
        auto inst = random_class_c(rng, 6, 8);
        for (auto mode : {0, 1}) {
            SolveOptions o;
            o.allow_clique = mode == 0;
            o.allow_grid = false;
            auto r = solve_k(inst, o);
            double sum = 0;
            for (double a : r.argmax) sum += a;
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(inst.objective(r.argmax) == doctest::Approx(r.value).epsilon(1e-10));
        }
    }
}

TEST_CASE("solve_k_tilde") {
    auto q4 = hypercube(4).g;
    auto res = solve_k_tilde(full_ball_instance(q4, 0, true));
    CHECK(res.value == 0.0);  // pair terms cancelled by the penalty

    SimplexInstance empty;
    empty.n_vars = 2;
    empty.ktilde = true;
    CHECK(solve_k_tilde(empty).value == 0.0);

    // single-midpoint target: value beta = 1 at the vertex
    auto box = lattice_box({5, 5});
    auto p = ball_profile(box.g, box.g.vertex("2,2"));
    for (int i = 0; i < (int)p.s2.size(); ++i) {
        if (p.midpoints[i].size() == 1) {
            auto single = solve_k_tilde(k_instance(box.g, p, {i}, true));
            CHECK(single.value == doctest::Approx(1.0).epsilon(1e-12));
            break;
        }
    }
}

TEST_CASE("solve_k_set") {
    auto q3 = hypercube(3).g;
    int x = q3.vertex("000");

    // unique-midpoint pair: K(S0) = 1
    auto c5 = cycle(5).g;
    auto s0 = cyclic_set(c5, {{0, 2}});
    CHECK(solve_k_set(s0, c5).value == doctest::Approx(1.0).epsilon(1e-9));

    // all pairs at distance <= 1: the distance-2 index set is empty
    auto near = cyclic_set(q3, {{x, q3.vertex("001")}});
    CHECK(solve_k_set(near, q3).value == 0.0);

    // two midpoints: 2 sqrt(b1 b2 a1 a2) with per-side normalizations, optimum 1/2
    int y = q3.vertex("110");
    auto s2 = cyclic_set(q3, {{x, y}});
    double val = solve_k_set(s2, q3).value;
    // brute-force grid over the reduced two-midpoint problem
    double best = 0;
    for (int i = 1; i < 100; ++i) {
        double b1 = i / 100.0, b2 = 1 - b1;
        for (int j = 1; j < 100; ++j) {
            double a1 = j / 100.0, a2 = 1 - a1;
            best = std::max(best, 2 * std::sqrt(b1 * b2 * a1 * a2));
        }
    }
    CHECK(best == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(val == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("solve_r1_set") {
    // full-sphere set on the hypercube: bound 4/n
    for (int n : {3, 4}) {
        auto q = hypercube(n).g;
        std::vector<std::pair<int, int>> pairs;
        for (int v = 0; v < q.n(); ++v)
            if (q.dist(0, v) == 2) pairs.push_back({0, v});
        auto S = cyclic_set(q, pairs);
        CHECK(solve_r1_set(S, q) == doctest::Approx(4.0 / n).epsilon(1e-9));
    }

    // distance-1 pairs around a middle vertex: both indicators, K = 0, bound 2
    auto p3 = path(3).g;
    auto S = cyclic_set(p3, {{p3.vertex("p0"), p3.vertex("p1")}, {p3.vertex("p1"), p3.vertex("p2")}});
    CHECK(solve_r1_set(S, p3) == doctest::Approx(2.0).epsilon(1e-12));

    // interior of Z^2: K(z, S_2(z)) = 1
    auto box = lattice_box({5, 5}).g;
    int c = box.vertex("2,2");
    std::vector<std::pair<int, int>> pairs;
    for (int v = 0; v < box.n(); ++v)
        if (box.dist(c, v) == 2) pairs.push_back({c, v});
    auto SL = cyclic_set(box, pairs);
    CHECK_THROWS_WITH_AS(solve_r1_set(SL, box), doctest::Contains("KAtLeastOne"), Error);
}
