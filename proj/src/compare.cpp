#include "gsc/compare.hpp"

#include <cmath>

namespace gsc {

Measure lazy_walk(const GraphSpace& g, int x, double alpha) {
    Measure m;
    int delta = g.max_degree();
    for (int y : g.neighbors(x)) m.w[y] = alpha / delta;
    m.w[x] += 1.0 - alpha * g.degree(x) / delta;
    return m;
}

double kappa_alpha(const GraphSpace& g, int x, int y, double alpha) {
    double w1 = w1_distance(g, lazy_walk(g, x, alpha), lazy_walk(g, y, alpha));
    return 1.0 - w1 / g.dist(x, y);
}

double lly_curvature(const GraphSpace& g, int x, int y) {
    double alpha = 1e-3;
    for (int halvings = 0; halvings <= 10; ++halvings) {
        double k1 = kappa_alpha(g, x, y, alpha) / alpha;
        double k2 = kappa_alpha(g, x, y, alpha / 2) / (alpha / 2);
        if (std::fabs(k1 - k2) <= 1e-6) return k2;
        alpha /= 2;
    }
    throw Error("NoConvergence", "kappa_alpha/alpha did not stabilize");
}

namespace {

// L0 f(z) = sum_{w ~ z} (f(w) - f(z))
double l0(const GraphSpace& g, const std::vector<double>& f, int z) {
    double acc = 0;
    for (int w : g.neighbors(z)) acc += f[w] - f[z];
    return acc;
}

// Gamma(f,h)(z) = 1/2 sum_{w ~ z} (f(w)-f(z))(h(w)-h(z))
double gamma1(const GraphSpace& g, const std::vector<double>& f, const std::vector<double>& h,
              int z) {
    double acc = 0;
    for (int w : g.neighbors(z)) acc += (f[w] - f[z]) * (h[w] - h[z]);
    return 0.5 * acc;
}

}  // namespace

double gamma2_bilinear(const GraphSpace& g, const std::vector<double>& f,
                       const std::vector<double>& h, int z) {
    std::vector<double> gam(g.n()), lf(g.n()), lh(g.n());
    for (int v = 0; v < g.n(); ++v) {
        gam[v] = gamma1(g, f, h, v);
        lf[v] = l0(g, f, v);
        lh[v] = l0(g, h, v);
    }
    return 0.5 * (l0(g, gam, z) - gamma1(g, f, lh, z) - gamma1(g, h, lf, z));
}

double gamma2(const GraphSpace& g, const std::vector<double>& f, int z) {
    return gamma2_bilinear(g, f, f, z);
}

double gamma2_commuting(const GraphSpace& g, const MoveSet& moves, const std::vector<double>& f,
                        int z) {
    // 2 Gamma2(f)(z) = 1/2 sum_{sigma,tau active at z} (f(ts z) - f(s z) - f(t z) + f(z))^2
    double acc = 0;
    for (int s = 0; s < moves.size(); ++s) {
        int sz = moves.apply(s, z);
        if (g.dist(z, sz) != 1) continue;
        for (int t = 0; t < moves.size(); ++t) {
            int tz = moves.apply(t, z);
            if (g.dist(z, tz) != 1) continue;
            double d = f[moves.apply(t, sz)] - f[sz] - f[tz] + f[z];
            acc += d * d;
        }
    }
    return 0.25 * acc;  // Gamma2 itself
}

bool moves_commute(const GraphSpace& g, const MoveSet& moves) {
    for (int s = 0; s < moves.size(); ++s)
        for (int t = s + 1; t < moves.size(); ++t)
            for (int z = 0; z < g.n(); ++z)
                if (moves.apply(s, moves.apply(t, z)) != moves.apply(t, moves.apply(s, z)))
                    return false;
    return true;
}

}  // namespace gsc
