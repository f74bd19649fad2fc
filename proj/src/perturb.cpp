#include "gsc/perturb.hpp"

#include <cmath>

#include "gsc/bridge.hpp"

namespace gsc {

GraphSpace perturbed_space(const GraphSpace& g, const Potential& v) {
    if ((int)v.size() != g.n()) throw Error("BadParameter", "potential size mismatch");
    std::vector<std::vector<double>> rate(g.n());
    std::vector<double> measure(g.n());
    for (int x = 0; x < g.n(); ++x) {
        measure[x] = std::exp(-v[x]) * g.measure(x);
        const auto& nb = g.neighbors(x);
        rate[x].resize(nb.size());
        for (size_t k = 0; k < nb.size(); ++k)
            rate[x][k] = std::exp(0.5 * (v[x] - v[nb[k]])) * g.rate(x, nb[k]);
    }
    return g.with_rates(std::move(rate), std::move(measure));
}

double discrete_laplacian(const GraphSpace& g, const Potential& v, int z, int zpp) {
    if (g.dist(z, zpp) != 2) throw Error("DistanceNotTwo", "Dv needs d(z,z'') = 2");
    double l2 = 0, acc = 0;
    for (int zp : g.neighbors(z)) {
        if (g.dist(zp, zpp) != 1) continue;
        double w = g.rate(z, zp) * g.rate(zp, zpp);
        l2 += w;
        acc += (v[zpp] + v[z] - 2 * v[zp]) * w;
    }
    return acc / l2;
}

double dtv(const GraphSpace& g, const Potential& v, int x, int y, double t) {
    int d = g.dist(x, y);
    if (d < 2) throw Error("DistanceBelowTwo", "D_t v needs d(x,y) >= 2");
    auto w = interval_weights(g, x, y);
    double acc = 0;
    for (size_t i = 0; i < w.verts.size(); ++i) {
        for (size_t j = 0; j < w.verts.size(); ++j) {
            if (w.layer[j] != w.layer[i] + 2) continue;
            int z = w.verts[i], zpp = w.verts[j];
            if (g.dist(z, zpp) != 2) continue;
            // L^2(z,z'') restricted to the interval equals the full L^2(z,z'')
            // because midpoints of geodesic pairs lie on geodesics
            double l2 = 0, dv_num = 0;
            for (int zp : g.neighbors(z)) {
                if (g.dist(zp, zpp) != 1) continue;
                double ww = g.rate(z, zp) * g.rate(zp, zpp);
                l2 += ww;
                dv_num += (v[zpp] + v[z] - 2 * v[zp]) * ww;
            }
            double r = w.fw[i] * w.bw[j] / w.total;  // r(x,z,z'',y)
            acc += dv_num * r * binomial_pmf(d - 2, w.layer[i], t);
        }
    }
    return acc;
}

double second_derivative(const GraphSpace& g, const Potential& v, int x, int y, double t) {
    int d = g.dist(x, y);
    if (d < 2) return 0.0;  // no distance-2 pairs on [x,y]
    return d * (d - 1) * dtv(g, v, x, y, t);
}

double perturbation_cost(const GraphSpace& g, const Potential& v, int x, int y, double t) {
    int d = g.dist(x, y);
    if (d < 2) return 0.0;
    return d * (d - 1) *
           integrate_against_qt([&](double s) { return dtv(g, v, x, y, s); }, t, 1e-10);
}

SolveResult perturbed_k(const GraphSpace& g, const Potential& v, int z,
                        const std::vector<int>& w, bool ktilde, const SolveOptions& opt) {
    auto p = ball_profile(g, z);
    std::vector<int> widx = w;
    if (widx.empty())
        for (int i = 0; i < (int)p.s2.size(); ++i) widx.push_back(i);
    std::vector<double> dv(p.s2.size(), 0.0);
    for (int i : widx) dv[i] = discrete_laplacian(g, v, z, p.s2[i]);
    auto inst = k_instance(g, p, widx, ktilde, &dv);
    return ktilde ? solve_k_tilde(inst, opt) : solve_k(inst, opt);
}

bool is_convex_subset(const GraphSpace& g, const std::vector<int>& c) {
    std::vector<char> in(g.n(), 0);
    for (int v : c) in[v] = 1;
    for (int x : c)
        for (int y : c)
            for (int u : interval(g, x, y))
                if (!in[u]) return false;
    return true;
}

GraphSpace restrict_space(const GraphSpace& g, const std::vector<int>& c) {
    GraphSpec spec;
    std::vector<char> in(g.n(), 0);
    for (int v : c) in[v] = 1;
    for (int v = 0; v < g.n(); ++v)
        if (in[v]) spec.vertices.push_back(g.label(v));
    for (int v = 0; v < g.n(); ++v) {
        if (!in[v]) continue;
        spec.measure[g.label(v)] = g.measure(v);
        for (int u : g.neighbors(v)) {
            if (!in[u]) continue;
            if (u > v) spec.edges.push_back({g.label(v), g.label(u)});
            spec.rates[{g.label(v), g.label(u)}] = g.rate(v, u);
        }
    }
    return GraphSpace::build(spec);
}

}  // namespace gsc
