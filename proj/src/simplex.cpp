#include "gsc/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "gsc/spectral.hpp"

namespace gsc {

namespace {

constexpr double kFloor = 1e-12;

inline double fast_pow(double x, double e) {
    if (e == 1.0) return x;
    if (e == 0.5) return std::sqrt(x);
    if (e == 2.0) return x * x;
    return std::pow(x, e);
}
constexpr double kConvTol = 1e-12;
constexpr int kMaxIter = 10000;

std::vector<int> support_of(const std::vector<double>& a) {
    std::vector<int> s;
    for (int i = 0; i < (int)a.size(); ++i)
        if (a[i] > 1e-9) s.push_back(i);
    return s;
}

// lexicographically smallest support wins ties
bool better(double val, const std::vector<double>& arg, double best_val,
            const std::vector<double>& best_arg) {
    if (val > best_val + 1e-12) return true;
    if (val < best_val - 1e-12) return false;
    if (best_arg.empty()) return true;
    return support_of(arg) < support_of(best_arg);
}

void project_simplex(std::vector<double>& v) {
    // Euclidean projection onto the probability simplex
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cum = 0, theta = 0;
    int rho = 0;
    for (int i = 0; i < (int)u.size(); ++i) {
        cum += u[i];
        double t = (cum - 1.0) / (i + 1);
        if (u[i] - t > 0) {
            rho = i + 1;
            theta = t;
        }
    }
    (void)rho;
    double s = 0;
    for (auto& x : v) {
        x = std::max(0.0, x - theta);
        s += x;
    }
    if (s <= 0) {
        std::fill(v.begin(), v.end(), 1.0 / v.size());
    } else {
        for (auto& x : v) x /= s;
    }
}

void floor_and_normalize(std::vector<double>& a) {
    double s = 0;
    for (auto& x : a) {
        x = std::max(x, kFloor);
        s += x;
    }
    for (auto& x : a) x /= s;
}

std::vector<double> gradient(const SimplexInstance& inst, const std::vector<double>& a) {
    std::vector<double> g(inst.n_vars, 0.0);
    for (const auto& t : inst.terms) {
        double val = t.c;
        for (auto [j, e] : t.expo) val *= fast_pow(a[j], e);
        for (auto [j, e] : t.expo) g[j] += val * e / a[j];
    }
    for (auto [i, j] : inst.penalty_pairs) {
        g[i] -= 0.5 * std::sqrt(a[j] / a[i]);
        g[j] -= 0.5 * std::sqrt(a[i] / a[j]);
    }
    return g;
}

// Multiplicative (replicator) step for K-form objectives; all gradient entries
// are nonnegative there. Falls back to convex mixing when the full step fails.
double ascend_replicator(const SimplexInstance& inst, std::vector<double>& a) {
    floor_and_normalize(a);
    double f = inst.objective(a);
    for (int it = 0; it < kMaxIter; ++it) {
        auto g = gradient(inst, a);
        double denom = 0;
        for (int j = 0; j < inst.n_vars; ++j) denom += a[j] * g[j];
        if (denom <= 0) break;
        std::vector<double> target(inst.n_vars);
        for (int j = 0; j < inst.n_vars; ++j) target[j] = a[j] * g[j] / denom;
        double step = 1.0;
        bool improved = false;
        for (int ls = 0; ls < 30; ++ls) {
            std::vector<double> cand(inst.n_vars);
            for (int j = 0; j < inst.n_vars; ++j)
                cand[j] = (1 - step) * a[j] + step * target[j];
            floor_and_normalize(cand);
            double fc = inst.objective(cand);
            if (fc > f) {
                improved = fc - f > kConvTol;
                a = std::move(cand);
                f = fc;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;
    }
    return f;
}

// Projected gradient with backtracking; handles the Ktilde penalty whose
// gradient can be negative.
double ascend_projected(const SimplexInstance& inst, std::vector<double>& a) {
    floor_and_normalize(a);
    double f = inst.objective(a);
    double step = 0.5;
    for (int it = 0; it < kMaxIter; ++it) {
        auto g = gradient(inst, a);
        bool improved = false;
        double s = step;
        for (int ls = 0; ls < 40; ++ls) {
            std::vector<double> cand(inst.n_vars);
            for (int j = 0; j < inst.n_vars; ++j) cand[j] = a[j] + s * g[j];
            project_simplex(cand);
            floor_and_normalize(cand);
            double fc = inst.objective(cand);
            if (fc > f) {
                improved = fc - f > kConvTol;
                a = std::move(cand);
                f = fc;
                step = s * 2;
                break;
            }
            s *= 0.5;
        }
        if (!improved) break;
    }
    return f;
}

// exact value at a simplex vertex, without flooring
double vertex_value(const SimplexInstance& inst, int j) {
    double f = 0;
    for (const auto& t : inst.terms) {
        bool onj = true;
        for (auto [v, e] : t.expo)
            if (v != j && e > 0) {
                onj = false;
                break;
            }
        if (onj) f += t.c;  // a_j = 1, a_j^e = 1
    }
    return f;  // penalty pairs need two positive coordinates
}

struct GridHit {
    double val;
    std::vector<double> point;
};

// Dense enumeration of the simplex at resolution `res` (compositions of res into
// n parts), keeping the best `keep` points for later polishing.
std::vector<GridHit> grid_scan(const SimplexInstance& inst, int res, int keep) {
    int n = inst.n_vars;
    std::vector<double> logtab(res + 1, 0.0);
    for (int k = 1; k <= res; ++k) logtab[k] = std::log((double)k / res);
    std::vector<GridHit> heap;  // min-heap by value
    auto push = [&](double v, const std::vector<int>& comp) {
        if ((int)heap.size() < keep) {
            std::vector<double> p(n);
            for (int j = 0; j < n; ++j) p[j] = (double)comp[j] / res;
            heap.push_back({v, std::move(p)});
            std::push_heap(heap.begin(), heap.end(),
                           [](const GridHit& a, const GridHit& b) { return a.val > b.val; });
        } else if (v > heap.front().val) {
            std::pop_heap(heap.begin(), heap.end(),
                          [](const GridHit& a, const GridHit& b) { return a.val > b.val; });
            auto& slot = heap.back();
            slot.val = v;
            for (int j = 0; j < n; ++j) slot.point[j] = (double)comp[j] / res;
            std::push_heap(heap.begin(), heap.end(),
                           [](const GridHit& a, const GridHit& b) { return a.val > b.val; });
        }
    };
    std::vector<int> comp(n, 0);
    std::function<void(int, int)> rec = [&](int j, int rem) {
        if (j == n - 1) {
            comp[j] = rem;
            double f = 0;
            for (const auto& t : inst.terms) {
                double lg = 0;
                bool zero = false;
                for (auto [v, e] : t.expo) {
                    if (comp[v] == 0) {
                        zero = true;
                        break;
                    }
                    lg += e * logtab[comp[v]];
                }
                if (!zero) f += t.c * std::exp(lg);
            }
            for (auto [i, k] : inst.penalty_pairs)
                if (comp[i] > 0 && comp[k] > 0)
                    f -= std::exp(0.5 * (logtab[comp[i]] + logtab[comp[k]]));
            push(f, comp);
            return;
        }
        for (int v = 0; v <= rem; ++v) {
            comp[j] = v;
            rec(j + 1, rem - v);
        }
    };
    rec(0, res);
    std::sort(heap.begin(), heap.end(),
              [](const GridHit& a, const GridHit& b) { return a.val > b.val; });
    return heap;
}

bool is_class_c(const SimplexInstance& inst) {
    if (inst.ktilde || inst.terms.empty()) return false;
    std::set<std::pair<int, int>> pairs;
    for (const auto& t : inst.terms) {
        if (t.expo.size() != 2) return false;
        if (std::fabs(t.c - 2.0) > 1e-12) return false;
        auto [i, ei] = t.expo[0];
        auto [j, ej] = t.expo[1];
        if (i == j || std::fabs(ei - 1.0) > 1e-12 || std::fabs(ej - 1.0) > 1e-12) return false;
        if (!pairs.insert(std::minmax(i, j)).second) return false;  // duplicated pair
    }
    return true;
}

bool is_diagonal(const SimplexInstance& inst) {
    if (inst.ktilde) return false;
    for (const auto& t : inst.terms) {
        if (t.expo.size() != 1) return false;
        if (std::fabs(t.expo[0].second - 2.0) > 1e-12) return false;
    }
    return true;
}

// Ktilde instances whose positive part consists of 2*sqrt(b_i b_j) pair terms and
// whose penalty covers every ordered pair of variables evaluate to <= 0 with
// equality at any vertex, so the supremum is exactly 0.
bool ktilde_is_identically_pair_cancelled(const SimplexInstance& inst) {
    if (!inst.ktilde) return false;
    std::set<std::pair<int, int>> penalty;
    for (auto pr : inst.penalty_pairs) penalty.insert(pr);
    for (int i = 0; i < inst.n_vars; ++i)
        for (int j = 0; j < inst.n_vars; ++j)
            if (i != j && !penalty.count({i, j})) return false;
    for (const auto& t : inst.terms) {
        if (t.expo.size() != 2) return false;
        if (std::fabs(t.c - 2.0) > 1e-12) return false;
        if (std::fabs(t.expo[0].second - 0.5) > 1e-12 || std::fabs(t.expo[1].second - 0.5) > 1e-12)
            return false;
    }
    return true;
}

std::vector<std::vector<double>> build_seeds(const SimplexInstance& inst, const SolveOptions& opt) {
    int n = inst.n_vars;
    std::vector<std::vector<double>> seeds;
    seeds.push_back(std::vector<double>(n, 1.0 / n));
    // frequency-weighted: proportional to how often each variable appears
    {
        std::vector<double> w(n, kFloor);
        for (const auto& t : inst.terms)
            for (auto [j, e] : t.expo) w[j] += 1.0;
        double s = std::accumulate(w.begin(), w.end(), 0.0);
        for (auto& x : w) x /= s;
        seeds.push_back(std::move(w));
    }
    for (int j = 0; j < n; ++j) {
        std::vector<double> v(n, n > 1 ? 0.1 / (n - 1) : 0.0);
        v[j] = n > 1 ? 0.9 : 1.0;
        seeds.push_back(std::move(v));
    }
    Rng rng(0x5bd1e995u + 77 * n + inst.terms.size());
    while ((int)seeds.size() < opt.multistarts) seeds.push_back(rng.dirichlet(n));
    for (const auto& s : opt.extra_seeds) seeds.push_back(s);
    return seeds;
}

SolveResult solve_generic(const SimplexInstance& inst, const SolveOptions& opt) {
    SolveResult best;
    best.value = -kInf;
    auto consider = [&](const std::vector<double>& a, SolveMode m, bool exact) {
        double v = inst.objective(a);
        if (better(v, a, best.value, best.argmax)) {
            best.value = v;
            best.argmax = a;
            best.mode = m;
            best.exact = exact;
        }
    };

    int n = inst.n_vars;
    // simplex vertices are evaluated exactly (they realize e.g. K = 1 on lattices)
    for (int j = 0; j < n; ++j) {
        std::vector<double> v(n, 0.0);
        v[j] = 1.0;
        double f = vertex_value(inst, j);
        if (better(f, v, best.value, best.argmax)) {
            best.value = f;
            best.argmax = v;
        }
    }

    bool grid = opt.allow_grid && n <= (inst.ktilde ? 3 : 4);
    if (grid) {
        int res = n <= 3 ? 1000 : 100;
        auto hits = grid_scan(inst, res, 64);
        for (auto& h : hits) {
            consider(h.point, SolveMode::ExactEnumeration, true);
            std::vector<double> a = h.point;
            double f = inst.ktilde ? ascend_projected(inst, a) : ascend_replicator(inst, a);
            (void)f;
            consider(a, SolveMode::ExactEnumeration, true);
        }
        best.mode = SolveMode::ExactEnumeration;
        best.exact = true;
        best.certificate = "grid resolution 1/" + std::to_string(res) + " + polish";
        return best;
    }

    for (auto& seed : build_seeds(inst, opt)) {
        std::vector<double> a = seed;
        if (inst.ktilde)
            ascend_projected(inst, a);
        else
            ascend_replicator(inst, a);
        consider(a, SolveMode::MultistartAscent, false);
    }
    best.mode = SolveMode::MultistartAscent;
    best.exact = false;
    best.certificate = "best of " + std::to_string(opt.multistarts) + " ascents (lower bound)";
    return best;
}

}  // namespace

double SimplexInstance::objective(const std::vector<double>& a) const {
    double f = 0;
    for (const auto& t : terms) {
        double val = t.c;
        for (auto [j, e] : t.expo) {
            if (a[j] <= 0) {
                val = 0;
                break;
            }
            val *= fast_pow(a[j], e);
        }
        f += val;
    }
    for (auto [i, j] : penalty_pairs)
        if (a[i] > 0 && a[j] > 0) f -= std::sqrt(a[i]) * std::sqrt(a[j]);
    return f;
}

const char* mode_name(SolveMode m) {
    switch (m) {
        case SolveMode::ExactEnumeration: return "exact-enumeration";
        case SolveMode::CliqueReduction: return "clique-reduction";
        case SolveMode::MultistartAscent: return "multistart-ascent";
    }
    return "?";
}

SolveResult solve_k(const SimplexInstance& inst, const SolveOptions& opt) {
    for (const auto& t : inst.terms)
        if (t.c <= 0) throw Error("NonPositiveCoefficient", "K-form requires positive coefficients");
    SolveResult res;
    if (inst.terms.empty()) {  // K(z, emptyset) = 0
        res.value = 0;
        res.argmax.assign(inst.n_vars, inst.n_vars ? 1.0 / inst.n_vars : 0.0);
        res.mode = SolveMode::ExactEnumeration;
        return res;
    }
    if (opt.allow_clique && is_class_c(inst)) {
        // Motzkin-Straus: sup 2 sum_{ij in E} a_i a_j = 1 - 1/omega
        std::vector<std::vector<char>> adjm(inst.n_vars, std::vector<char>(inst.n_vars, 0));
        for (const auto& t : inst.terms) {
            int i = t.expo[0].first, j = t.expo[1].first;
            adjm[i][j] = adjm[j][i] = 1;
        }
        auto clq = max_clique(adjm);
        res.value = 1.0 - 1.0 / (double)clq.size();
        res.argmax.assign(inst.n_vars, 0.0);
        for (int v : clq) res.argmax[v] = 1.0 / clq.size();
        res.mode = SolveMode::CliqueReduction;
        res.exact = true;
        std::string wit = "clique {";
        for (int v : clq) wit += " " + std::to_string(v);
        res.certificate = wit + " }";
        return res;
    }
    if (opt.allow_diagonal && is_diagonal(inst)) {
        std::vector<double> per_var(inst.n_vars, 0.0);
        for (const auto& t : inst.terms) per_var[t.expo[0].first] += t.c;
        int arg = (int)(std::max_element(per_var.begin(), per_var.end()) - per_var.begin());
        res.value = per_var[arg];
        res.argmax.assign(inst.n_vars, 0.0);
        res.argmax[arg] = 1.0;
        res.mode = SolveMode::ExactEnumeration;
        res.certificate = "vertex optimum of diagonal quadratic";
        return res;
    }
    return solve_generic(inst, opt);
}

SolveResult solve_k_tilde(const SimplexInstance& inst, const SolveOptions& opt) {
    SolveResult res;
    if (inst.terms.empty()) {
        res.value = 0;
        res.argmax.assign(inst.n_vars, inst.n_vars ? 1.0 / inst.n_vars : 0.0);
        return res;
    }
    if (ktilde_is_identically_pair_cancelled(inst)) {
        res.value = 0.0;
        res.argmax.assign(inst.n_vars, 0.0);
        res.argmax[0] = 1.0;
        res.mode = SolveMode::ExactEnumeration;
        res.certificate = "pair terms cancelled by penalty; optimum at a vertex";
        return res;
    }
    return solve_generic(inst, opt);
}

SimplexInstance k_instance(const GraphSpace& g, const BallProfile& p, const std::vector<int>& w,
                           bool ktilde, const std::vector<double>* dv_offsets) {
    SimplexInstance inst;
    inst.ktilde = ktilde;
    std::map<int, int> var;  // vertex -> variable
    for (int wi : w)
        for (int zp : p.midpoints[wi])
            if (!var.count(zp)) {
                int id = (int)var.size();
                var[zp] = id;
            }
    inst.n_vars = (int)var.size();
    for (int wi : w) {
        SimplexInstance::Term t;
        t.c = p.l2[wi];
        if (dv_offsets) t.c *= std::exp(-0.5 * (*dv_offsets)[wi]);
        for (size_t k = 0; k < p.midpoints[wi].size(); ++k) {
            int zp = p.midpoints[wi][k];
            double ell = p.ell[wi][k];
            double e = ktilde ? ell : 2.0 * ell;
            t.c *= std::pow(g.rate(p.center, zp), -2.0 * ell);
            t.expo.push_back({var[zp], e});
        }
        inst.terms.push_back(std::move(t));
    }
    if (ktilde) {
        for (auto [u, iu] : var)
            for (auto [v, iv] : var)
                if (iu != iv) inst.penalty_pairs.push_back({iu, iv});
    }
    return inst;
}

// ---- K(S): alternating maximization -------------------------------------------

namespace {

struct SetProblem {
    // distance-2 arcs (z, z'') of C->(S) with their midpoint structure
    struct Arc {
        int z, zpp;
        double l2sym;                    // sqrt(L^2(z,z'') L^2(z'',z))
        std::vector<int> mids;
        std::vector<double> ell;
        std::vector<double> rate_fwd;    // L(z,z')
        std::vector<double> rate_bwd;    // L(z'',z')
    };
    std::vector<Arc> arcs;
    std::vector<int> zs;                               // Z(S) restricted to arc endpoints
    std::map<int, int> z_index;
};

SetProblem build_set_problem(const CyclicSet& s, const GraphSpace& g) {
    SetProblem P;
    for (auto [z, w] : s.c_fwd) {
        if (g.dist(z, w) != 2) continue;
        SetProblem::Arc a;
        a.z = z;
        a.zpp = w;
        double l2f = 0, l2b = 0;
        for (int zp = 0; zp < g.n(); ++zp) {
            if (g.dist(z, zp) == 1 && g.dist(zp, w) == 1) {
                a.mids.push_back(zp);
                l2f += g.rate(z, zp) * g.rate(zp, w);
                l2b += g.rate(w, zp) * g.rate(zp, z);
            }
        }
        a.l2sym = std::sqrt(l2f * l2b);
        for (int zp : a.mids) {
            a.ell.push_back(g.rate(z, zp) * g.rate(zp, w) / l2f);
            a.rate_fwd.push_back(g.rate(z, zp));
            a.rate_bwd.push_back(g.rate(w, zp));
        }
        P.arcs.push_back(std::move(a));
    }
    std::set<int> zset;
    for (const auto& a : P.arcs) {
        zset.insert(a.z);
        zset.insert(a.zpp);
    }
    P.zs.assign(zset.begin(), zset.end());
    for (int i = 0; i < (int)P.zs.size(); ++i) P.z_index[P.zs[i]] = i;
    return P;
}

}  // namespace

SolveResult solve_k_set(const CyclicSet& s, const GraphSpace& g, uint64_t seed) {
    SolveResult res;
    SetProblem P = build_set_problem(s, g);
    if (P.arcs.empty()) {  // all pairs at distance <= 1
        res.value = 0;
        res.mode = SolveMode::ExactEnumeration;
        return res;
    }

    // Variables: per z a unit-mass distribution gamma_z over V->(z) midpoint arcs,
    // plus weights b_z with sum b^2 = 1 (and delta / a on the backward side).
    // F = sum_arcs b_z a_{z''} * l2sym * prod ((gamma_z(z') delta_{z''}(z')) / (L L))^ell
    // Alternate singular-vector steps in (b,a) with per-z replicator steps on gamma.
    struct Side {
        std::map<int, std::map<int, double>> w;  // z -> (midpoint vertex -> weight), normalized per z
    };
    int nz = (int)P.zs.size();

    auto arc_factor = [&](const SetProblem::Arc& a, const Side& fwd, const Side& bwd) {
        double f = a.l2sym;
        const auto& gz = fwd.w.at(a.z);
        const auto& dz = bwd.w.at(a.zpp);
        for (size_t k = 0; k < a.mids.size(); ++k) {
            int zp = a.mids[k];
            double num = gz.at(zp) * dz.at(zp);
            double den = a.rate_fwd[k] * a.rate_bwd[k];
            f *= std::pow(num / den, a.ell[k]);
        }
        return f;
    };

    auto best_value = -kInf;
    Rng rng(seed);
    for (int start = 0; start < 8; ++start) {
        Side fwd, bwd;
        for (const auto& a : P.arcs) {
            for (int zp : a.mids) {
                fwd.w[a.z][zp] = 1.0;
                bwd.w[a.zpp][zp] = 1.0;
            }
        }
        auto randomize = [&](Side& S) {
            for (auto& [z, m] : S.w) {
                double tot = 0;
                for (auto& [zp, v] : m) {
                    v = start == 0 ? 1.0 : rng.exponential();
                    tot += v;
                }
                for (auto& [zp, v] : m) v /= tot;
            }
        };
        randomize(fwd);
        randomize(bwd);

        std::vector<double> b(nz, 1.0 / std::sqrt((double)nz)), av = b;
        double value = 0;
        for (int it = 0; it < 400; ++it) {
            // matrix M(z index, z'' index) with current gamma/delta
            std::vector<std::vector<double>> M(nz, std::vector<double>(nz, 0.0));
            for (const auto& a : P.arcs)
                M[P.z_index[a.z]][P.z_index[a.zpp]] += arc_factor(a, fwd, bwd);
            // power iteration for leading singular pair
            for (int pi = 0; pi < 200; ++pi) {
                std::vector<double> bn(nz, 0.0);
                for (int i = 0; i < nz; ++i)
                    for (int j = 0; j < nz; ++j) bn[i] += M[i][j] * av[j];
                double nb = std::sqrt(std::inner_product(bn.begin(), bn.end(), bn.begin(), 0.0));
                if (nb == 0) break;
                for (auto& x : bn) x /= nb;
                std::vector<double> an(nz, 0.0);
                for (int j = 0; j < nz; ++j)
                    for (int i = 0; i < nz; ++i) an[j] += M[i][j] * bn[i];
                double na = std::sqrt(std::inner_product(an.begin(), an.end(), an.begin(), 0.0));
                if (na == 0) break;
                for (auto& x : an) x /= na;
                b = bn;
                av = an;
            }
            double val = 0;
            for (int i = 0; i < nz; ++i)
                for (int j = 0; j < nz; ++j) val += b[i] * M[i][j] * av[j];

            // replicator step on each gamma_z (objective linear in prod gamma^ell per arc)
            auto update_side = [&](Side& S, bool forward) {
                for (auto& [z, m] : S.w) {
                    std::map<int, double> grad;
                    for (auto& [zp, v] : m) grad[zp] = 0;
                    for (const auto& a : P.arcs) {
                        int zkey = forward ? a.z : a.zpp;
                        if (zkey != z) continue;
                        double f = arc_factor(a, fwd, bwd) * b[P.z_index[a.z]] * av[P.z_index[a.zpp]];
                        for (size_t k = 0; k < a.mids.size(); ++k)
                            grad[a.mids[k]] += f * a.ell[k] / m[a.mids[k]];
                    }
                    double denom = 0;
                    for (auto& [zp, v] : m) denom += v * grad[zp];
                    if (denom <= 0) continue;
                    double tot = 0;
                    for (auto& [zp, v] : m) {
                        v = std::max(v * grad[zp] / denom, kFloor);
                        tot += v;
                    }
                    for (auto& [zp, v] : m) v /= tot;
                }
            };
            update_side(fwd, true);
            update_side(bwd, false);
            if (std::fabs(val - value) < kConvTol * std::max(1.0, std::fabs(val))) {
                value = val;
                break;
            }
            value = val;
        }
        best_value = std::max(best_value, value);
    }
    res.value = best_value;
    res.mode = SolveMode::MultistartAscent;
    res.exact = false;
    return res;
}

double solve_r1_set(const CyclicSet& s, const GraphSpace& g) {
    double sup = 0;
    for (int z : s.z_of) {
        auto p = ball_profile(g, z);
        std::map<int, int> s2_index;
        for (int i = 0; i < (int)p.s2.size(); ++i) s2_index[p.s2[i]] = i;
        auto k_of = [&](const std::vector<int>& verts) {
            std::vector<int> w;
            for (int v : verts) w.push_back(s2_index.at(v));
            return solve_k(k_instance(g, p, w, false)).value;
        };
        double term = 0;
        auto vf = s.v_fwd.count(z) ? s.v_fwd.at(z) : std::vector<int>{};
        auto vb = s.v_bwd.count(z) ? s.v_bwd.at(z) : std::vector<int>{};
        auto wf = s.vv_fwd.count(z) ? s.vv_fwd.at(z) : std::vector<int>{};
        auto wb = s.vv_bwd.count(z) ? s.vv_bwd.at(z) : std::vector<int>{};
        if (!vf.empty()) {
            double K = k_of(wf);
            if (K >= 1.0 - 1e-12) throw Error("KAtLeastOne", "K(z,VV->) >= 1 at " + g.label(z));
            term += 1.0 / (1.0 - K);
        }
        if (!vb.empty()) {
            double K = k_of(wb);
            if (K >= 1.0 - 1e-12) throw Error("KAtLeastOne", "K(z,VV<-) >= 1 at " + g.label(z));
            term += 1.0 / (1.0 - K);
        }
        sup = std::max(sup, term);
    }
    if (sup == 0) return kInf;
    return 4.0 / sup;
}

}  // namespace gsc
