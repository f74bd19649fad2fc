#include "gsc/bridge.hpp"

#include <cmath>

namespace gsc {

double binomial_pmf(int d, int k, double t) {
    if (k < 0 || k > d) return 0.0;
    if (t <= 0) return k == 0 ? 1.0 : 0.0;
    if (t >= 1) return k == d ? 1.0 : 0.0;
    double b = 1;
    for (int i = 1; i <= k; ++i) b = b * (d - k + i) / i;
    return b * std::pow(t, k) * std::pow(1 - t, d - k);
}

Measure dirac_bridge(const GraphSpace& g, int x, int y, double t) {
    if (t < 0 || t > 1) throw Error("BadParameter", "bridge time outside [0,1]");
    if (t == 0) return Measure::dirac(x);
    if (t == 1) return Measure::dirac(y);
    Measure nu;
    auto w = interval_weights(g, x, y);
    for (size_t i = 0; i < w.verts.size(); ++i) {
        double r = w.fw[i] * w.bw[i] / w.total;
        double mass = r * binomial_pmf(w.d, w.layer[i], t);
        if (mass > 0) nu.w[w.verts[i]] += mass;
    }
    return nu;
}

Measure mixture_bridge(const GraphSpace& g, const Coupling& pi, double t) {
    Measure nu;
    for (auto& [x, y, m] : pi.joint) {
        if (m <= 0) continue;
        auto b = dirac_bridge(g, x, y, t);
        for (auto& [z, p] : b.w) nu.w[z] += m * p;
    }
    return nu;
}

}  // namespace gsc
