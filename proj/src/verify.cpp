#include "gsc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gsc/curvature.hpp"
#include "gsc/models.hpp"

namespace gsc {

bool slack_ok(double slack, double rhs_scale) {
    return slack >= -1e-9 * (1.0 + std::fabs(rhs_scale));
}

Measure random_measure(const GraphSpace& g, Rng& rng, int max_support) {
    int k = 1 + (int)rng.below(std::min(max_support, g.n()));
    std::vector<int> verts(g.n());
    for (int i = 0; i < g.n(); ++i) verts[i] = i;
    for (int i = g.n() - 1; i > 0; --i) std::swap(verts[i], verts[rng.below(i + 1)]);
    auto wts = rng.dirichlet(k);
    Measure nu;
    for (int i = 0; i < k; ++i) nu.w[verts[i]] += wts[i];
    return nu;
}

Coupling random_coupling(const Measure& nu0, const Measure& nu1, Rng& rng) {
    std::vector<int> src, dst;
    for (auto& [v, m] : nu0.w)
        if (m > 0) src.push_back(v);
    for (auto& [v, m] : nu1.w)
        if (m > 0) dst.push_back(v);
    int ns = (int)src.size(), nd = (int)dst.size();
    std::vector<std::vector<double>> k(ns, std::vector<double>(nd));
    for (auto& row : k)
        for (auto& x : row) x = 0.05 + rng.u01();
    // iterative proportional fitting to the target marginals
    std::vector<double> a(ns), b(nd);
    for (int i = 0; i < ns; ++i) a[i] = nu0.at(src[i]);
    for (int j = 0; j < nd; ++j) b[j] = nu1.at(dst[j]);
    for (int it = 0; it < 500; ++it) {
        for (int i = 0; i < ns; ++i) {
            double s = 0;
            for (int j = 0; j < nd; ++j) s += k[i][j];
            for (int j = 0; j < nd; ++j) k[i][j] *= a[i] / s;
        }
        for (int j = 0; j < nd; ++j) {
            double s = 0;
            for (int i = 0; i < ns; ++i) s += k[i][j];
            for (int i = 0; i < ns; ++i) k[i][j] *= b[j] / s;
        }
    }
    // final row scaling keeps nu0 exact; nu1 matched to IPF precision
    for (int i = 0; i < ns; ++i) {
        double s = 0;
        for (int j = 0; j < nd; ++j) s += k[i][j];
        for (int j = 0; j < nd; ++j) k[i][j] *= a[i] / s;
    }
    std::vector<std::tuple<int, int, double>> joint;
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nd; ++j) joint.push_back({src[i], dst[j], k[i][j]});
    return Coupling::from_joint(std::move(joint));
}

VerifyOutcome check_displacement(const GraphSpace& g, const Measure& nu0, const Measure& nu1,
                                 CostKind kind, double kappa, const std::vector<double>& t_grid,
                                 const MoveSet* moves, int D) {
    VerifyOutcome out;
    if (!nu0.is_probability(1e-9) || !nu1.is_probability(1e-9))
        throw Error("MarginalsNotNormalized", "displacement check needs probabilities");
    Measure m = Measure::from_counting(g);
    auto pi = schrodinger_coupling(g, nu0, nu1);
    out.note = "zero-temperature Schroedinger coupling with " + std::to_string(pi.joint.size()) +
               " atoms (entropic selection among W1-optimal plans)";
    auto h0 = relative_entropy(nu0, m);
    auto h1 = relative_entropy(nu1, m);
    if (h0.infinite || h1.infinite) throw Error("InfiniteEntropy", "marginal not dominated by m");
    for (double t : t_grid) {
        if (t <= 0 || t >= 1) continue;
        CostParams params;
        params.t = t;
        params.D = D;
        params.moves = moves;
        auto cost = transport_cost(g, pi, kind, params);
        if (cost.infinite) throw Error("InfiniteCost", "cost infinite along the grid");
        auto ht = relative_entropy(mixture_bridge(g, pi, t), m);
        if (ht.infinite) throw Error("InfiniteEntropy", "bridge escapes supp m");
        double rhs = (1 - t) * h0.value + t * h1.value - 0.5 * t * (1 - t) * kappa * cost.value;
        double slack = rhs - ht.value;
        if (slack < out.slack) {
            out.slack = slack;
            if (!slack_ok(slack, rhs)) {
                out.holds = false;
                std::ostringstream os;
                os << "t=" << t << " lhs=" << ht.value << " rhs=" << rhs;
                out.witness = os.str();
            }
        }
        ++out.samples;
    }
    return out;
}

VerifyOutcome check_prekopa_leindler(const GraphSpace& g, const std::vector<double>& f,
                                     const std::vector<double>& g_fn,
                                     const std::vector<double>& h_fn, double t, double kappa_c,
                                     const std::function<double(int)>& c_t) {
    VerifyOutcome out;
    for (int x = 0; x < g.n(); ++x)
        for (int y = 0; y < g.n(); ++y) {
            double needed = (1 - t) * f[x] + t * g_fn[y] -
                            0.5 * kappa_c * t * (1 - t) * c_t(g.dist(x, y));
            double integral = 0;
            for (auto& [z, p] : dirac_bridge(g, x, y, t).w) integral += p * h_fn[z];
            double slack = integral - needed;
            out.slack = std::min(out.slack, slack);
            if (!slack_ok(slack, needed)) {
                out.holds = false;
                out.witness = "hypothesis fails at (" + g.label(x) + "," + g.label(y) + ")";
                throw Error("HypothesisFails", out.witness);
            }
        }
    double intf = 0, intg = 0, inth = 0;
    for (int v = 0; v < g.n(); ++v) {
        intf += std::exp(f[v]) * g.measure(v);
        intg += std::exp(g_fn[v]) * g.measure(v);
        inth += std::exp(h_fn[v]) * g.measure(v);
    }
    double lhs = std::pow(intf, 1 - t) * std::pow(intg, t);
    double slack = inth - lhs;
    out.slack = std::min(out.slack, slack);
    out.holds = slack_ok(slack, inth);
    if (!out.holds) out.witness = "integral inequality fails";
    out.samples = g.n() * g.n() + 1;
    return out;
}

std::vector<double> pl_minimal_h(const GraphSpace& g, const std::vector<double>& f,
                                 const std::vector<double>& g_fn, double t, double kappa_c,
                                 const std::function<double(int)>& c_t) {
    // h(z) := sup over pairs whose bridge charges z of the needed value;
    // pointwise domination implies the integral hypothesis
    std::vector<double> h(g.n(), -kInf);
    for (int x = 0; x < g.n(); ++x)
        for (int y = 0; y < g.n(); ++y) {
            double needed = (1 - t) * f[x] + t * g_fn[y] -
                            0.5 * kappa_c * t * (1 - t) * c_t(g.dist(x, y));
            for (int z : interval(g, x, y)) h[z] = std::max(h[z], needed);
        }
    for (auto& v : h)
        if (std::isinf(v)) v = 0;
    return h;
}

VerifyOutcome check_transport_entropy(const GraphSpace& g, const Measure& nu0, const Measure& nu1,
                                      const KappaPack& pack, const MoveSet* moves,
                                      int random_couplings, uint64_t seed) {
    VerifyOutcome out;
    out.seed = seed;
    Measure mu = Measure::mu(g);
    auto e0 = relative_entropy(nu0, mu), e1 = relative_entropy(nu1, mu);
    if (e0.infinite || e1.infinite) throw Error("InfiniteEntropy", "marginal not dominated by mu");
    double rhs = std::pow(std::sqrt(e0.value) + std::sqrt(e1.value), 2);

    auto w1pi = w1_coupling(g, nu0, nu1);
    Rng rng(seed);
    std::vector<Coupling> candidates;
    candidates.push_back(w1pi);
    for (int i = 0; i < random_couplings; ++i) candidates.push_back(random_coupling(nu0, nu1, rng));

    auto weak_inf = [&](CostKind kind, const CostParams& params) {
        double best = kInf;
        for (const auto& c : candidates) {
            auto v = transport_cost(g, c, kind, params);
            if (!v.infinite) best = std::min(best, v.value);
        }
        return best;  // an upper bound on the true infimum
    };

    auto consider = [&](const char* label, double kappa, double cost) {
        double lhs = 0.5 * kappa * cost;
        double slack = rhs - lhs;
        ++out.samples;
        if (slack < out.slack) out.slack = slack;
        if (!slack_ok(slack, rhs)) {
            out.holds = false;
            out.witness = std::string(label) + " violates the transport-entropy inequality";
        }
    };

    if (pack.kappa1) {
        double w1 = w1pi.cost(g);
        consider("kappa1 W1^2", *pack.kappa1, w1 * w1);
    }
    if (pack.kappa) {
        // exact infimum: LP with cost d(d-1)
        auto opt = optimal_coupling(nu0, nu1, [&](int x, int y) {
            double d = g.dist(x, y);
            return d * (d - 1);
        });
        double t2 = 0;
        for (auto& [x, y, m] : opt.joint) {
            double d = g.dist(x, y);
            t2 += m * d * (d - 1);
        }
        consider("kappa T2", *pack.kappa, t2);
    }
    if (pack.kappa_cbar) {
        auto opt = optimal_coupling(nu0, nu1,
                                    [&](int x, int y) { return cbar_star(g.dist(x, y)); });
        double c = 0;
        for (auto& [x, y, m] : opt.joint) c += m * cbar_star(g.dist(x, y));
        consider("kappa_cbar T_cbar*", *pack.kappa_cbar, c);
    }
    if (pack.kappa_tilde) consider("ktilde Ttilde", *pack.kappa_tilde, weak_inf(CostKind::Ttilde, {}));
    if (pack.kappa_tilde2) {
        if (!moves) throw Error("MissingMoves", "Ttilde2 needs a MoveSet");
        CostParams params;
        params.moves = moves;
        consider("ktilde2 Ttilde2", *pack.kappa_tilde2, weak_inf(CostKind::Ttilde2, params));
    }
    return out;
}

VerifyOutcome check_mlsi_poincare(const GraphSpace& g, double kappa_tilde, double kappa_tilde2,
                                  const MoveSet* moves, int samples, uint64_t seed, int D) {
    if (kappa_tilde <= 0 && kappa_tilde2 <= 0)
        throw Error("NonPositiveCurvature", "MLSI checks need positive curvature");
    VerifyOutcome out;
    out.seed = seed;
    Rng rng(seed);
    Measure mu = Measure::mu(g);

    auto record = [&](double slack, double scale, const char* label, int it) {
        if (slack < out.slack) out.slack = slack;
        if (!slack_ok(slack, scale)) {
            out.holds = false;
            out.witness = std::string(label) + " fails at sample " + std::to_string(it);
        }
    };

    for (int it = 0; it < samples; ++it) {
        std::vector<double> logf(g.n()), gfn(g.n());
        for (auto& v : logf) v = rng.uniform(-2, 2);
        for (auto& v : gfn) v = rng.uniform(-1, 1);

        double ent = 0, mean = 0;
        for (int v = 0; v < g.n(); ++v) mean += std::exp(logf[v]) * mu.at(v);
        for (int v = 0; v < g.n(); ++v) {
            double f = std::exp(logf[v]);
            ent += f * logf[v] * mu.at(v);
        }
        ent -= mean * std::log(mean);

        if (kappa_tilde > 0) {
            // Ent <= 1/(2 ktilde) int sup_{x'~x} [log f(x) - log f(x')]_+^2 f dmu
            double rhs = 0;
            for (int x = 0; x < g.n(); ++x) {
                double sup = 0;
                for (int y : g.neighbors(x)) sup = std::max(sup, std::max(0.0, logf[x] - logf[y]));
                rhs += sup * sup * std::exp(logf[x]) * mu.at(x);
            }
            rhs /= 2 * kappa_tilde;
            record(rhs - ent, rhs, "MLSI (sup form)", it);
            // Var <= 1/ktilde int sup [g(x)-g(x')]_+^2 dmu
            double var = 0, meang = 0, rhp = 0;
            for (int v = 0; v < g.n(); ++v) meang += gfn[v] * mu.at(v);
            for (int v = 0; v < g.n(); ++v) var += (gfn[v] - meang) * (gfn[v] - meang) * mu.at(v);
            for (int x = 0; x < g.n(); ++x) {
                double sup = 0;
                for (int y : g.neighbors(x)) sup = std::max(sup, std::max(0.0, gfn[x] - gfn[y]));
                rhp += sup * sup * mu.at(x);
            }
            rhp /= kappa_tilde;
            record(rhp - var, rhp, "Poincare (sup form)", it);
        }

        if (kappa_tilde2 > 0 && moves) {
            // Ent <= 1/(2 ktilde2) int sum_sigma [d_sigma log f]_-^2 f dmu
            double rhs = 0;
            for (int x = 0; x < g.n(); ++x) {
                double acc = 0;
                for (int s = 0; s < moves->size(); ++s) {
                    int y = moves->apply(s, x);
                    if (g.dist(x, y) != 1) continue;
                    double neg = std::max(0.0, -(logf[y] - logf[x]));
                    acc += neg * neg;
                }
                rhs += acc * std::exp(logf[x]) * mu.at(x);
            }
            rhs /= 2 * kappa_tilde2;
            record(rhs - ent, rhs, "MLSI (move form)", it);

            // refined form with h*
            double rhs2 = 0;
            for (int x = 0; x < g.n(); ++x) {
                double acc = 0;
                for (int s = 0; s < moves->size(); ++s) {
                    int y = moves->apply(s, x);
                    if (g.dist(x, y) != 1) continue;
                    double neg = std::max(0.0, -(logf[y] - logf[x]));
                    acc += 0.5 * kappa_tilde2 * D * D * hstar(2.0 / (D * kappa_tilde2) * neg);
                }
                rhs2 += acc * std::exp(logf[x]) * mu.at(x);
            }
            record(rhs2 - ent, rhs2, "MLSI (hstar form)", it);

            double var = 0, meang = 0;
            for (int v = 0; v < g.n(); ++v) meang += gfn[v] * mu.at(v);
            for (int v = 0; v < g.n(); ++v) var += (gfn[v] - meang) * (gfn[v] - meang) * mu.at(v);
            double rneg = 0, rsym = 0;
            for (int x = 0; x < g.n(); ++x) {
                double accn = 0, accs = 0;
                for (int s = 0; s < moves->size(); ++s) {
                    int y = moves->apply(s, x);
                    if (g.dist(x, y) != 1) continue;
                    double d = gfn[y] - gfn[x];
                    accn += std::max(0.0, -d) * std::max(0.0, -d);
                    accs += d * d;
                }
                rneg += accn * mu.at(x);
                rsym += accs * mu.at(x);
            }
            record(rneg / kappa_tilde2 - var, rneg, "Poincare (negative part)", it);
            record(rsym / (2 * kappa_tilde2) - var, rsym, "Poincare (symmetric)", it);
        }
    }
    out.samples = samples;
    return out;
}

BonnetMyers bonnet_myers_bound(const GraphSpace& g, ExtReal kappa) {
    BonnetMyers bm{1.0, g.diameter(), false};
    if (!kappa.infinite) {
        if (kappa.value <= 0) throw Error("NonPositiveCurvature", "Bonnet-Myers needs kappa > 0");
        double supm = 0, infm = kInf;
        for (int v = 0; v < g.n(); ++v) {
            supm = std::max(supm, g.measure(v));
            infm = std::min(infm, g.measure(v));
        }
        bm.bound = 8 * std::log(g.max_degree() * supm / infm) / kappa.value + 1;
    }
    bm.holds = bm.diameter <= bm.bound + 1e-12;
    return bm;
}

VerifyOutcome check_tensorization(const GraphSpace& g1, const GraphSpace& g2) {
    VerifyOutcome out;
    GraphSpace prod = product_space(g1, g2);
    auto rep1 = curvature_report(g1);
    auto rep2 = curvature_report(g2);
    auto rep = curvature_report(prod);
    int n2 = g2.n();
    for (int x = 0; x < g1.n(); ++x)
        for (int y = 0; y < g2.n(); ++y) {
            int z = x * n2 + y;
            const auto& vz = rep.per_vertex[z];
            ExtReal r1 = rep1.per_vertex[x].r, r2 = rep2.per_vertex[y].r;
            ExtReal rmin = ext_min(r1, r2);
            double bound;
            if (!rmin.infinite && rmin.value <= 0) {
                bound = rmin.value;  // negative branch: r(z) >= min r(z_i)
            } else {
                double em = rmin.infinite ? 0.0 : std::exp(-rmin.value / 2);
                bound = -2 * std::log(1 - 0.5 * (1 - em));
            }
            double rz = vz.r.infinite ? kInf : vz.r.value;
            double slack = rz - bound;
            if (slack < out.slack) out.slack = slack;
            if (!slack_ok(slack, bound)) {
                out.holds = false;
                out.witness = "r branch fails at " + prod.label(z);
            }
            double t1 = *rep1.per_vertex[x].rtilde2, t2v = *rep2.per_vertex[y].rtilde2;
            double tslack = *vz.rtilde2 - std::min(t1, t2v);
            if (tslack < out.slack) out.slack = tslack;
            if (!slack_ok(tslack, std::min(t1, t2v))) {
                out.holds = false;
                out.witness = "rtilde2 branch fails at " + prod.label(z);
            }
            ++out.samples;
        }
    return out;
}

}  // namespace gsc
