#include "gsc/transport.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>

namespace gsc {

double Measure::total() const {
    double s = 0;
    for (auto& [v, m] : w) s += m;
    return s;
}

Measure Measure::from_counting(const GraphSpace& g) {
    Measure m;
    for (int v = 0; v < g.n(); ++v) m.w[v] = g.measure(v);
    return m;
}

Measure Measure::mu(const GraphSpace& g) {
    Measure m = from_counting(g);
    double t = m.total();
    for (auto& [v, x] : m.w) x /= t;
    return m;
}

Coupling Coupling::from_joint(std::vector<std::tuple<int, int, double>> joint) {
    Coupling c;
    std::sort(joint.begin(), joint.end());
    for (auto& [x, y, m] : joint) {
        if (m <= 0) continue;
        c.joint.push_back({x, y, m});
        c.nu0.w[x] += m;
        c.nu1.w[y] += m;
    }
    return c;
}

Coupling Coupling::diagonal(const Measure& nu) {
    std::vector<std::tuple<int, int, double>> j;
    for (auto& [v, m] : nu.w) j.push_back({v, v, m});
    return from_joint(std::move(j));
}

double Coupling::cost(const GraphSpace& g) const {
    double c = 0;
    for (auto& [x, y, m] : joint) c += m * g.dist(x, y);
    return c;
}

std::map<int, double> Coupling::kernel_fwd(int x) const {
    std::map<int, double> k;
    double tot = nu0.at(x);
    if (tot <= 0) return k;
    for (auto& [a, b, m] : joint)
        if (a == x) k[b] += m / tot;
    return k;
}

std::map<int, double> Coupling::kernel_bwd(int y) const {
    std::map<int, double> k;
    double tot = nu1.at(y);
    if (tot <= 0) return k;
    for (auto& [a, b, m] : joint)
        if (b == y) k[a] += m / tot;
    return k;
}

ExtReal relative_entropy(const Measure& nu, const Measure& m) {
    double h = 0;
    for (auto& [v, p] : nu.w) {
        if (p <= 0) continue;  // 0 log 0 = 0
        double q = m.at(v);
        if (q <= 0) return ExtReal::inf();
        h += p * std::log(p / q);
    }
    return ExtReal::finite(h);
}

// ---- exact transportation LP ----------------------------------------------------

Coupling optimal_coupling(const Measure& nu0, const Measure& nu1,
                          const std::function<double(int, int)>& cost) {
    std::vector<int> src, dst;
    std::vector<double> supply, demand;
    for (auto& [v, m] : nu0.w)
        if (m > 0) {
            src.push_back(v);
            supply.push_back(m);
        }
    for (auto& [v, m] : nu1.w)
        if (m > 0) {
            dst.push_back(v);
            demand.push_back(m);
        }
    int ns = (int)src.size(), nd = (int)dst.size();
    if (std::fabs(std::accumulate(supply.begin(), supply.end(), 0.0) -
                  std::accumulate(demand.begin(), demand.end(), 0.0)) > 1e-9)
        throw Error("MarginalsNotNormalized", "total masses differ");
    std::vector<std::vector<double>> c(ns, std::vector<double>(nd));
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nd; ++j) c[i][j] = cost(src[i], dst[j]);

    std::vector<std::vector<double>> flow(ns, std::vector<double>(nd, 0.0));
    // nodes: 0..ns-1 sources, ns..ns+nd-1 sinks; potentials phi
    int nn = ns + nd;
    std::vector<double> phi(nn, 0.0);
    std::vector<double> rem_s = supply, rem_d = demand;

    auto any_supply = [&]() {
        for (double r : rem_s)
            if (r > 1e-15) return true;
        return false;
    };

    while (any_supply()) {
        // multi-source Dijkstra with reduced costs rc = c + phi[u] - phi[v]
        std::vector<double> dist(nn, kInf);
        std::vector<int> pred(nn, -1);
        std::vector<char> done(nn, 0);
        for (int i = 0; i < ns; ++i)
            if (rem_s[i] > 1e-15) dist[i] = 0;
        for (;;) {
            int u = -1;
            double best = kInf;
            for (int v = 0; v < nn; ++v)
                if (!done[v] && dist[v] < best) {
                    best = dist[v];
                    u = v;
                }
            if (u < 0) break;
            done[u] = 1;
            if (u < ns) {
                for (int j = 0; j < nd; ++j) {
                    double rc = c[u][j] + phi[u] - phi[ns + j];
                    if (rc < 0) rc = 0;  // round-off guard; exact for consistent potentials
                    if (dist[u] + rc < dist[ns + j] - 1e-15) {
                        dist[ns + j] = dist[u] + rc;
                        pred[ns + j] = u;
                    }
                }
            } else {
                int j = u - ns;
                for (int i = 0; i < ns; ++i)
                    if (flow[i][j] > 1e-15) {
                        double rc = -c[i][j] + phi[u] - phi[i];
                        if (rc < 0) rc = 0;
                        if (dist[u] + rc < dist[i] - 1e-15) {
                            dist[i] = dist[u] + rc;
                            pred[i] = u;
                        }
                    }
            }
        }
        int t = -1;
        double bestd = kInf;
        for (int j = 0; j < nd; ++j)
            if (rem_d[j] > 1e-15 && dist[ns + j] < bestd) {
                bestd = dist[ns + j];
                t = ns + j;
            }
        if (t < 0) throw Error("MarginalsNotNormalized", "no augmenting path left");

        // bottleneck along the path
        double push = rem_d[t - ns];
        for (int v = t; pred[v] >= 0; v = pred[v]) {
            int u = pred[v];
            if (v < ns) push = std::min(push, flow[v][u - ns]);  // backward arc sink->source
        }
        int root = t;
        while (pred[root] >= 0) root = pred[root];
        push = std::min(push, rem_s[root]);

        for (int v = t; pred[v] >= 0; v = pred[v]) {
            int u = pred[v];
            if (u < ns)
                flow[u][v - ns] += push;  // forward arc
            else
                flow[v][u - ns] -= push;  // backward arc
        }
        rem_s[root] -= push;
        rem_d[t - ns] -= push;
        for (int v = 0; v < nn; ++v)
            if (dist[v] < kInf) phi[v] += std::min(dist[v], bestd);
    }

    // independent optimality certificate: Bellman-Ford potentials on the residual
    // graph, then complementary slackness at 1e-9
    {
        std::vector<double> p(nn, 0.0);
        bool changed = true;
        int rounds = 0;
        while (changed && rounds <= nn + 1) {
            changed = false;
            ++rounds;
            for (int i = 0; i < ns; ++i)
                for (int j = 0; j < nd; ++j) {
                    if (p[i] + c[i][j] < p[ns + j] - 1e-12) {
                        p[ns + j] = p[i] + c[i][j];
                        changed = true;
                    }
                    if (flow[i][j] > 1e-12 && p[ns + j] - c[i][j] < p[i] - 1e-12) {
                        p[i] = p[ns + j] - c[i][j];
                        changed = true;
                    }
                }
        }
        if (rounds > nn + 1) throw Error("LPDefect", "negative residual cycle: flow not optimal");
        for (int i = 0; i < ns; ++i)
            for (int j = 0; j < nd; ++j)
                if (flow[i][j] > 1e-12 &&
                    std::fabs(c[i][j] + p[i] - p[ns + j]) > 1e-9 * std::max(1.0, std::fabs(c[i][j])))
                    throw Error("LPDefect", "complementary slackness violated");
    }

    std::vector<std::tuple<int, int, double>> joint;
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nd; ++j)
            if (flow[i][j] > 1e-15) joint.push_back({src[i], dst[j], flow[i][j]});
    auto out = Coupling::from_joint(std::move(joint));
    for (size_t k = 0; k < src.size(); ++k)
        if (std::fabs(out.nu0.at(src[k]) - supply[k]) > 1e-10)
            throw Error("LPDefect", "row sums do not reproduce nu0");
    for (size_t k = 0; k < dst.size(); ++k)
        if (std::fabs(out.nu1.at(dst[k]) - demand[k]) > 1e-10)
            throw Error("LPDefect", "column sums do not reproduce nu1");
    return out;
}

Coupling w1_coupling(const GraphSpace& g, const Measure& nu0, const Measure& nu1) {
    if (!nu0.is_probability(1e-9) || !nu1.is_probability(1e-9))
        throw Error("MarginalsNotNormalized", "w1_coupling expects probability measures");
    return optimal_coupling(nu0, nu1, [&](int x, int y) { return (double)g.dist(x, y); });
}

double w1_distance(const GraphSpace& g, const Measure& nu0, const Measure& nu1) {
    return w1_coupling(g, nu0, nu1).cost(g);
}

Coupling schrodinger_coupling(const GraphSpace& g, const Measure& nu0, const Measure& nu1) {
    if (!nu0.is_probability(1e-9) || !nu1.is_probability(1e-9))
        throw Error("MarginalsNotNormalized", "schrodinger_coupling expects probability measures");
    std::vector<int> src, dst;
    for (auto& [v, m] : nu0.w)
        if (m > 0) src.push_back(v);
    for (auto& [v, m] : nu1.w)
        if (m > 0) dst.push_back(v);
    int ns = (int)src.size(), nd = (int)dst.size();
    std::vector<double> la(ns), lb(nd);
    for (int i = 0; i < ns; ++i) la[i] = std::log(nu0.at(src[i]));
    for (int j = 0; j < nd; ++j) lb[j] = std::log(nu1.at(dst[j]));
    std::vector<std::vector<double>> cost(ns, std::vector<double>(nd)),
        logw(ns, std::vector<double>(nd));
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nd; ++j) {
            int d = g.dist(src[i], dst[j]);
            cost[i][j] = d;
            logw[i][j] = std::log(geodesic_weight(g, src[i], dst[j])) - std::lgamma(d + 1.0);
        }

    auto lse = [](const std::vector<double>& xs) {
        double mx = -kInf;
        for (double x : xs) mx = std::max(mx, x);
        if (std::isinf(mx)) return mx;
        double s = 0;
        for (double x : xs) s += std::exp(x - mx);
        return mx + std::log(s);
    };

    std::vector<double> phi(ns, 0.0), psi(nd, 0.0);
    for (double eps : {0.5, 0.2, 0.1, 0.05, 0.02}) {
        for (int it = 0; it < 20000; ++it) {
            for (int i = 0; i < ns; ++i) {
                std::vector<double> row(nd);
                for (int j = 0; j < nd; ++j)
                    row[j] = lb[j] + logw[i][j] + (psi[j] - cost[i][j]) / eps;
                phi[i] = -eps * lse(row);
            }
            double defect = 0;
            for (int j = 0; j < nd; ++j) {
                std::vector<double> col(ns);
                for (int i = 0; i < ns; ++i)
                    col[i] = la[i] + logw[i][j] + (phi[i] - cost[i][j]) / eps;
                double newpsi = -eps * lse(col);
                defect = std::max(defect, std::fabs(newpsi - psi[j]));
                psi[j] = newpsi;
            }
            if (defect < eps * 1e-14) break;
        }
    }
    double eps = 0.02;
    std::vector<std::tuple<int, int, double>> joint;
    for (int i = 0; i < ns; ++i) {
        std::vector<double> row(nd);
        for (int j = 0; j < nd; ++j)
            row[j] = la[i] + lb[j] + logw[i][j] + (phi[i] + psi[j] - cost[i][j]) / eps;
        double norm = lse(row) - std::log(nu0.at(src[i]));  // exact row marginals
        for (int j = 0; j < nd; ++j) {
            double m = std::exp(row[j] - norm);
            if (m > 1e-15) joint.push_back({src[i], dst[j], m});
        }
    }
    auto out = Coupling::from_joint(std::move(joint));
    // certify W1-optimality against the exact LP value
    double lp = w1_coupling(g, nu0, nu1).cost(g);
    if (std::fabs(out.cost(g) - lp) > 1e-7 * (1 + lp))
        throw Error("LPDefect", "Sinkhorn selection left the optimal face");
    return out;
}

double transport_bruteforce(const Measure& nu0, const Measure& nu1,
                            const std::function<double(int, int)>& cost) {
    std::vector<int> src, dst;
    std::vector<double> a, b;
    for (auto& [v, m] : nu0.w)
        if (m > 0) {
            src.push_back(v);
            a.push_back(m);
        }
    for (auto& [v, m] : nu1.w)
        if (m > 0) {
            dst.push_back(v);
            b.push_back(m);
        }
    int ns = (int)src.size(), nd = (int)dst.size();
    int ne = ns * nd, need = ns + nd - 1;
    double best = kInf;
    // enumerate spanning trees of the complete bipartite support graph; each
    // determines a unique (possibly infeasible) basic solution
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int start) {
        if ((int)pick.size() == need) {
            // solve flows on the tree by leaf peeling
            std::vector<std::vector<int>> inc(ns + nd);
            for (int e : pick) {
                int i = e / nd, j = e % nd;
                inc[i].push_back(e);
                inc[ns + j].push_back(e);
            }
            std::vector<double> bal(ns + nd);
            for (int i = 0; i < ns; ++i) bal[i] = a[i];
            for (int j = 0; j < nd; ++j) bal[ns + j] = b[j];
            std::vector<char> edge_done(ne, 0), node_done(ns + nd, 0);
            std::vector<double> fl(ne, 0.0);
            // check the edge set forms a tree: connected with need edges
            // leaf peeling
            for (int round = 0; round < need; ++round) {
                int leaf = -1, via = -1;
                for (int v = 0; v < ns + nd; ++v) {
                    if (node_done[v]) continue;
                    int live = 0, le = -1;
                    for (int e : inc[v])
                        if (!edge_done[e]) {
                            ++live;
                            le = e;
                        }
                    if (live == 1) {
                        leaf = v;
                        via = le;
                        break;
                    }
                }
                if (leaf < 0) return;  // cycle: not a tree
                double f = bal[leaf];
                fl[via] = f;
                int i = via / nd, j = via % nd;
                int other = (leaf == i) ? ns + j : i;
                bal[other] -= f;
                node_done[leaf] = 1;
                edge_done[via] = 1;
            }
            for (int e : pick)
                if (fl[e] < -1e-12) return;  // infeasible vertex
            double val = 0;
            for (int e : pick) val += fl[e] * cost(src[e / nd], dst[e % nd]);
            best = std::min(best, val);
            return;
        }
        for (int e = start; e < ne; ++e) {
            pick.push_back(e);
            rec(e + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return best;
}

// ---- cost functions --------------------------------------------------------------

double h_fn(double u) {
    if (u < 0) return kInf;
    if (u > 1 + 1e-12) return kInf;
    if (u >= 1) return 2.0;
    if (u == 0) return 0.0;
    return 2.0 * ((1 - u) * std::log(1 - u) + u);
}

double h_t(double t, double u) {
    if (t <= 0 || t >= 1) throw Error("BadParameter", "h_t needs t in (0,1)");
    double hu = h_fn(u);
    if (std::isinf(hu)) return kInf;
    return (t * hu - h_fn(t * u)) / (t * (1 - t));
}

double h1_fn(double u) {
    if (u < 0 || u >= 1) return u == 0 ? 0.0 : kInf;
    return -2.0 * std::log(1 - u) - 2.0 * u;
}

double hstar(double u) {
    // h*(2v)/2 = e^{-v} + v - 1  =>  h*(u) = 2(e^{-u/2} + u/2 - 1)
    return 2.0 * (std::exp(-u / 2) + u / 2 - 1.0);
}

namespace {

double binom(int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// rho_s^d(k) / (s(1-s)) = C(d,k) s^{k-1} (1-s)^{d-k-1}, polynomial for 2<=k<=d-2
double u_s_inner(double s, int d) {
    double acc = 0;
    for (int k = 2; k <= d - 2; ++k) {
        double w = std::sqrt((double)k * (k - 1) * (d - k) * (d - k - 1));
        acc += w * binom(d, k) * std::pow(s, k - 1) * std::pow(1 - s, d - k - 1);
    }
    return acc;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    if (depth > 40 || std::fabs(left + right - whole) < 15 * tol)
        return left + right + (left + right - whole) / 15;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth + 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth + 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (b <= a) return 0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 0);
}

}  // namespace

double u_t(double t, int d) {
    if (d <= 1) return 0;
    if (d == 2 || d == 3) return d * (d - 1) / 2.0;
    return 0.5 * (d * (d - 1) + u_s_inner(t, d));
}

double integrate_against_qt(const std::function<double(double)>& f, double t, double tol) {
    auto left = [&](double s) { return f(s) * 2 * s / t; };
    auto right = [&](double s) { return f(s) * 2 * (1 - s) / (1 - t); };
    return integrate(left, 0, t, tol / 2) + integrate(right, t, 1, tol / 2);
}

double cbar_cost(double t, int d) {
    if (t <= 0 || t >= 1) throw Error("BadParameter", "cbar_cost needs t in (0,1)");
    if (d <= 1) return 0;
    if (d <= 3) return d * (d - 1) / 2.0;
    return integrate_against_qt([&](double s) { return u_t(s, d); }, t, 1e-10);
}

double cbar_star(int d) {
    if (d <= 1) return 0;
    if (d < 4) return d * (d - 1) / 2.0;
    // harmonic tail sum_{j=3}^{d-1} 1/j <= log((d-1)/2); the (d-2)/2 variant
    // overshoots cbar_t at d = 4
    return d * (d - 1) - (d - 1) * (1.5 + std::log((d - 1) / 2.0));
}

double pi_sigma_fwd(const GraphSpace& g, const Coupling& pi, const MoveSet& moves, int s, int x) {
    double acc = 0;
    int sx = moves.apply(s, x);
    if (g.dist(x, sx) != 1) return 0;
    for (auto& [a, y, m] : pi.joint) {
        if (a != x || m <= 0) continue;
        int d = g.dist(x, y);
        if (d == 0) continue;
        if (g.dist(sx, y) != d - 1) continue;  // sigma(x) in ]x,y]
        double r = g.rate(x, sx) * geodesic_weight(g, sx, y) / geodesic_weight(g, x, y);
        acc += (m / pi.nu0.at(x)) * d * r;
    }
    return acc;
}

double pi_sigma_bwd(const GraphSpace& g, const Coupling& pi, const MoveSet& moves, int s, int y) {
    double acc = 0;
    int sy = moves.apply(s, y);
    if (g.dist(y, sy) != 1) return 0;
    for (auto& [x, b, m] : pi.joint) {
        if (b != y || m <= 0) continue;
        int d = g.dist(x, y);
        if (d == 0) continue;
        if (g.dist(sy, x) != d - 1) continue;
        double r = g.rate(y, sy) * geodesic_weight(g, sy, x) / geodesic_weight(g, y, x);
        acc += (m / pi.nu1.at(y)) * d * r;
    }
    return acc;
}

ExtReal transport_cost(const GraphSpace& g, const Coupling& pi, CostKind kind,
                       const CostParams& params) {
    switch (kind) {
        case CostKind::T2: {
            double c = 0;
            for (auto& [x, y, m] : pi.joint) {
                double d = g.dist(x, y);
                c += m * d * (d - 1);
            }
            return ExtReal::finite(c);
        }
        case CostKind::W1Sq: {
            double c = pi.cost(g);
            return ExtReal::finite(c * c);
        }
        case CostKind::Ttilde:
        case CostKind::TtildeSum: {
            double fwd = 0, bwd = 0;
            for (auto& [x, m] : pi.nu0.w) {
                double mean = 0;
                for (auto& [y, p] : pi.kernel_fwd(x)) mean += p * g.dist(x, y);
                fwd += m * mean * mean;
            }
            for (auto& [y, m] : pi.nu1.w) {
                double mean = 0;
                for (auto& [x, p] : pi.kernel_bwd(y)) mean += p * g.dist(x, y);
                bwd += m * mean * mean;
            }
            return ExtReal::finite(kind == CostKind::Ttilde ? std::max(fwd, bwd) : fwd + bwd);
        }
        case CostKind::Ttilde2: {
            if (!params.moves) throw Error("MissingMoves", "Ttilde2 needs a MoveSet");
            const auto& mv = *params.moves;
            double acc = 0;
            for (auto& [x, m] : pi.nu0.w)
                for (int s = 0; s < mv.size(); ++s) {
                    double v = pi_sigma_fwd(g, pi, mv, s, x);
                    acc += m * v * v;
                }
            for (auto& [y, m] : pi.nu1.w)
                for (int s = 0; s < mv.size(); ++s) {
                    double v = pi_sigma_bwd(g, pi, mv, s, y);
                    acc += m * v * v;
                }
            return ExtReal::finite(acc);
        }
        case CostKind::CtildeD: {
            if (!params.moves) throw Error("MissingMoves", "CtildeD needs a MoveSet");
            const auto& mv = *params.moves;
            double D = params.D, t = params.t;
            auto hfwd = [&](double u) { return t <= 0 ? h_fn(u) : t >= 1 ? h1_fn(u) : h_t(t, u); };
            auto hbwd = [&](double u) {
                double t2 = 1 - t;
                return t2 <= 0 ? h_fn(u) : t2 >= 1 ? h1_fn(u) : h_t(t2, u);
            };
            double acc = 0;
            for (auto& [x, m] : pi.nu0.w)
                for (int s = 0; s < mv.size(); ++s) {
                    double u = pi_sigma_fwd(g, pi, mv, s, x) / D;
                    if (u > 1 + 1e-12) return ExtReal::inf();
                    double hv = hfwd(std::min(u, 1.0));
                    if (std::isinf(hv)) return ExtReal::inf();
                    acc += m * D * D * hv;
                }
            for (auto& [y, m] : pi.nu1.w)
                for (int s = 0; s < mv.size(); ++s) {
                    double u = pi_sigma_bwd(g, pi, mv, s, y) / D;
                    if (u > 1 + 1e-12) return ExtReal::inf();
                    double hv = hbwd(std::min(u, 1.0));
                    if (std::isinf(hv)) return ExtReal::inf();
                    acc += m * D * D * hv;
                }
            return ExtReal::finite(acc);
        }
        case CostKind::CbarT: {
            double acc = 0;
            for (auto& [x, y, m] : pi.joint) acc += m * cbar_cost(params.t, g.dist(x, y));
            return ExtReal::finite(acc);
        }
    }
    throw Error("BadParameter", "unknown cost kind");
}

CostKind cost_kind_from_name(const std::string& name) {
    if (name == "t2") return CostKind::T2;
    if (name == "w1sq") return CostKind::W1Sq;
    if (name == "ttilde") return CostKind::Ttilde;
    if (name == "ttilde-sum") return CostKind::TtildeSum;
    if (name == "ttilde2") return CostKind::Ttilde2;
    if (name == "ctilde1" || name == "ctilded") return CostKind::CtildeD;
    if (name == "cbar") return CostKind::CbarT;
    throw Error("UsageError", "unknown cost kind: " + name);
}

const char* cost_kind_name(CostKind k) {
    switch (k) {
        case CostKind::T2: return "t2";
        case CostKind::W1Sq: return "w1sq";
        case CostKind::Ttilde: return "ttilde";
        case CostKind::TtildeSum: return "ttilde-sum";
        case CostKind::Ttilde2: return "ttilde2";
        case CostKind::CtildeD: return "ctilded";
        case CostKind::CbarT: return "cbar";
    }
    return "?";
}

}  // namespace gsc
