#include "gsc/curvature.hpp"

#include "gsc/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <thread>

namespace gsc {

namespace {

// memoized K(z, W) over subsets of S_2(z) given as bitmasks
struct KCache {
    const GraphSpace& g;
    const BallProfile& p;
    const SolveOptions& opt;
    std::map<uint64_t, double> cache;

    double operator()(uint64_t mask) {
        auto it = cache.find(mask);
        if (it != cache.end()) return it->second;
        std::vector<int> w;
        for (int i = 0; i < (int)p.s2.size(); ++i)
            if (mask >> i & 1) w.push_back(i);
        double v = solve_k(k_instance(g, p, w, false), opt).value;
        cache.emplace(mask, v);
        return v;
    }
};

}  // namespace

LocalR r_local(const GraphSpace& g, int z, const SolveOptions& opt) {
    LocalR out;
    auto p = ball_profile(g, z);
    if (p.s2.empty()) {
        out.r = ExtReal::inf();
        out.K = 0.0;
        return out;
    }
    std::vector<int> w(p.s2.size());
    for (int i = 0; i < (int)w.size(); ++i) w[i] = i;
    auto res = solve_k(k_instance(g, p, w, false), opt);
    out.K = res.value;
    out.mode = res.mode;
    out.exact = res.exact;
    out.r = ExtReal::finite(-2.0 * std::log(res.value));
    return out;
}

BicliqueList maximal_bicliques(const std::vector<uint64_t>& rel, int n, size_t cap) {
    BicliqueList out;
    auto nbr_of = [&](uint64_t set) {
        uint64_t inter = n == 64 ? ~0ull : (1ull << n) - 1;
        for (int v = 0; v < n; ++v)
            if (set >> v & 1) inter &= rel[v];
        return inter;
    };
    std::set<uint64_t> closed;
    std::vector<uint64_t> queue;
    for (int v = 0; v < n; ++v) {
        uint64_t s = rel[v];
        if (s && closed.insert(s).second) queue.push_back(s);
    }
    for (size_t qi = 0; qi < queue.size() && closed.size() < cap; ++qi) {
        for (int v = 0; v < n; ++v) {
            uint64_t s = queue[qi] & rel[v];
            if (s && closed.insert(s).second) queue.push_back(s);
        }
    }
    out.capped = closed.size() >= cap;
    std::set<std::pair<uint64_t, uint64_t>> seen;
    for (uint64_t y : closed) {
        uint64_t x = nbr_of(y);
        if (!x) continue;
        uint64_t yy = nbr_of(x);  // close the pair
        auto key = std::minmax(x, yy);
        if (seen.insert({key.first, key.second}).second) out.pairs.push_back({x, yy});
    }
    return out;
}

LocalBound r1_local(const GraphSpace& g, int z, const SolveOptions& opt) {
    LocalBound out;
    auto p = ball_profile(g, z);
    int m = (int)p.s2.size();
    if (m > 62) throw Error("TooLarge", "S_2(z) exceeds the 62-element bitmask limit");
    KCache K{g, p, opt, {}};

    auto f = [&](uint64_t mask) {
        double k = K(mask);
        if (k >= 1.0 - 1e-12) throw Error("KAtLeastOne", "K(z,W) >= 1 at " + g.label(z));
        return 1.0 / (1.0 - k);
    };

    double sup = 0.0;
    // no-W case: V+/V- nonempty need two neighbours at distance 2
    bool has_d2_neighbours = false;
    for (int a : p.s1)
        for (int b : p.s1)
            if (a < b && g.dist(a, b) == 2) has_d2_neighbours = true;
    if (!p.s1.empty()) sup = std::max(sup, has_d2_neighbours ? 2.0 : 1.0);

    if (m > 0) {
        uint64_t full = (1ull << m) - 1;
        sup = std::max(sup, f(full));  // single-sided, W- = S_2(z)

        // single-sided with a witness v+ at distance 2 from every midpoint of W-
        for (int vp : p.s1) {
            uint64_t mask = 0;
            for (int i = 0; i < m; ++i) {
                bool ok = true;
                for (int u : p.midpoints[i])
                    if (g.dist(u, vp) != 2) ok = false;
                if (ok) mask |= 1ull << i;
            }
            if (mask) sup = std::max(sup, 1.0 + f(mask));
        }

        // two-sided: compatibility R(a,b) = [d=4 and all midpoint cross-distances = 2]
        std::vector<uint64_t> rel(m, 0);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                if (a == b) continue;
                if (g.dist(p.s2[a], p.s2[b]) != 4) continue;
                bool ok = true;
                for (int u : p.midpoints[a])
                    for (int v : p.midpoints[b])
                        if (g.dist(u, v) != 2) ok = false;
                if (ok) rel[a] |= 1ull << b;
            }
        auto bicliques = maximal_bicliques(rel, m);
        out.capped = bicliques.capped;
        for (auto [X, Y] : bicliques.pairs) sup = std::max(sup, f(X) + f(Y));
    }

    if (sup <= 0) {
        out.value = kInf;
        return out;
    }
    out.value = 4.0 / sup;
    return out;
}

LocalBound rbar_local(const GraphSpace& g, int z, const SolveOptions& opt) {
    LocalBound out;
    auto p = ball_profile(g, z);
    int m = (int)p.s2.size();
    if (m == 0) throw Error("NonPositiveR", "S_2(z) empty: r(z) = +inf, rbar undefined here");
    if (m > 62) throw Error("TooLarge", "S_2(z) exceeds the 62-element bitmask limit");
    KCache K{g, p, opt, {}};

    auto f = [&](uint64_t mask) {
        double k = K(mask);
        if (k >= 1.0 - 1e-12) throw Error("NonPositiveR", "K(z,W) >= 1 at " + g.label(z));
        return 1.0 / (-std::log(k));
    };

    uint64_t full = (1ull << m) - 1;
    double sup = f(full);  // single-sided optimum by monotonicity

    std::vector<uint64_t> rel(m, 0);  // distance-4 relation on S_2(z)
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (a != b && g.dist(p.s2[a], p.s2[b]) == 4) rel[a] |= 1ull << b;
    auto bicliques = maximal_bicliques(rel, m);
    out.capped = bicliques.capped;
    for (auto [X, Y] : bicliques.pairs) sup = std::max(sup, f(X) + f(Y));

    out.value = 4.0 / sup;
    return out;
}

LocalBound rtilde2_local(const GraphSpace& g, int z, int subset_cap, const SolveOptions& opt) {
    LocalBound out;
    auto p = ball_profile(g, z);
    int m = (int)p.s2.size();
    if (m == 0) {
        out.value = 1.0;  // Ktilde(z, emptyset) = 0
        return out;
    }
    SolveOptions kopt = opt;  // enumeration takes a max; fewer starts per subset suffice
    kopt.multistarts = std::min(opt.multistarts, 24);
    auto ktilde_of = [&](const std::vector<int>& w) {
        return solve_k_tilde(k_instance(g, p, w, true), kopt).value;
    };
    double best = 0.0;
    if (m <= subset_cap) {
        for (uint64_t mask = 1; mask < (1ull << m); ++mask) {
            std::vector<int> w;
            for (int i = 0; i < m; ++i)
                if (mask >> i & 1) w.push_back(i);
            best = std::max(best, ktilde_of(w));
        }
    } else {
        out.capped = true;
        std::vector<int> w;
        std::vector<char> used(m, 0);
        for (int step = 0; step < m; ++step) {
            int arg = -1;
            double argval = -kInf;
            for (int i = 0; i < m; ++i) {
                if (used[i]) continue;
                w.push_back(i);
                double v = ktilde_of(w);
                w.pop_back();
                if (v > argval) {
                    argval = v;
                    arg = i;
                }
            }
            used[arg] = 1;
            w.push_back(arg);
            best = std::max(best, argval);
        }
    }
    out.value = 1.0 - best;
    return out;
}

MotzkinStraus motzkin_strauss_k(const GraphSpace& g, int z) {
    MotzkinStraus out{0.0, 0, true, ""};
    auto p = ball_profile(g, z);
    std::set<std::pair<int, int>> pairs;
    for (int i = 0; i < (int)p.s2.size(); ++i) {
        if (p.midpoints[i].size() != 2) {
            out.class_c = false;
            out.reason = "|]z,z''[| != 2 at z'' = " + g.label(p.s2[i]);
            return out;
        }
        auto key = std::minmax(p.midpoints[i][0], p.midpoints[i][1]);
        if (!pairs.insert(key).second) {
            out.class_c = false;
            out.reason = "midpoint pair shared by two vertices of S_2(z)";
            return out;
        }
    }
    std::map<int, int> var;
    for (int u : p.s1) {
        int id = (int)var.size();
        var[u] = id;
    }
    std::vector<std::vector<char>> adj(var.size(), std::vector<char>(var.size(), 0));
    for (auto [a, b] : pairs) adj[var[a]][var[b]] = adj[var[b]][var[a]] = 1;
    auto clq = max_clique(adj);
    out.clique_number = (int)clq.size();
    out.value = p.s2.empty() ? 0.0 : 1.0 - 1.0 / out.clique_number;
    return out;
}

MidpointDiagnostic midpoint_conditions(const GraphSpace& g, int z) {
    MidpointDiagnostic d;
    auto p = ball_profile(g, z);
    int m = (int)p.s2.size();
    auto union_size = [&](const std::vector<int>& idx) {
        std::set<int> u;
        for (int i : idx)
            for (int v : p.midpoints[i]) u.insert(v);
        return (int)u.size();
    };
    for (int i = 0; i < m; ++i)
        if (union_size({i}) <= 1)
            d.violations.push_back("|W|=1: single midpoint for z'' = " + g.label(p.s2[i]));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (union_size({i, j}) <= 2)
                d.violations.push_back("|W|=2: |]z,W[| <= 2 for {" + g.label(p.s2[i]) + "," +
                                       g.label(p.s2[j]) + "}");
    // families with identical midpoint sets
    std::map<std::vector<int>, std::vector<int>> groups;
    for (int i = 0; i < m; ++i) {
        auto key = p.midpoints[i];
        std::sort(key.begin(), key.end());
        groups[key].push_back(i);
    }
    for (const auto& [mids, members] : groups)
        if ((int)mids.size() <= (int)members.size() && members.size() > 1)
            d.violations.push_back("shared-midpoint family of size " +
                                   std::to_string(members.size()) + " with " +
                                   std::to_string(mids.size()) + " midpoints");
    d.ok = d.violations.empty();
    return d;
}

namespace {

VertexCurvature vertex_curvature(const GraphSpace& g, int z, int subset_cap,
                                 const SolveOptions& opt) {
    VertexCurvature vc;
    auto lr = r_local(g, z, opt);
    vc.r = lr.r;
    vc.K = lr.K;
    vc.mode = lr.r.infinite ? "exact-enumeration" : mode_name(lr.mode);
    try {
        auto b = r1_local(g, z, opt);
        vc.r1 = b.value;
        if (b.capped) vc.flags.push_back("EnumerationCapped");
    } catch (const Error& e) {
        vc.flags.push_back(e.code());
    }
    try {
        auto b = rbar_local(g, z, opt);
        vc.rbar = b.value;
        if (b.capped) vc.flags.push_back("EnumerationCapped");
    } catch (const Error& e) {
        if (e.code() != "NonPositiveR") vc.flags.push_back(e.code());
        // NonPositiveR with S_2 = emptyset still has rbar <= 2r = +inf; leave unset
        if (e.code() == "NonPositiveR" && !vc.r.infinite && vc.K >= 1.0 - 1e-12)
            vc.flags.push_back("NonPositiveR");
    }
    auto rt = rtilde2_local(g, z, subset_cap, opt);
    vc.rtilde2 = rt.value;
    if (rt.capped) vc.flags.push_back("EnumerationCapped");
    std::sort(vc.flags.begin(), vc.flags.end());
    vc.flags.erase(std::unique(vc.flags.begin(), vc.flags.end()), vc.flags.end());
    return vc;
}

}  // namespace

CurvatureReport curvature_report(const GraphSpace& g, const std::vector<char>* interior,
                                 int subset_cap, const SolveOptions& opt, int threads) {
    CurvatureReport rep;
    rep.per_vertex.resize(g.n());
    std::vector<int> todo;
    for (int z = 0; z < g.n(); ++z) {
        if (interior && !(*interior)[z]) {
            rep.per_vertex[z].boundary = true;
            rep.per_vertex[z].mode = "boundary-clipped";
        } else {
            todo.push_back(z);
        }
    }
    int nt = threads > 0 ? threads : (int)std::min<size_t>(std::thread::hardware_concurrency(),
                                                           todo.size());
    nt = std::max(nt, 1);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= todo.size()) break;
            int z = todo[i];
            rep.per_vertex[z] = vertex_curvature(g, z, subset_cap, opt);
        }
    };
    if (nt == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (int z = 0; z < g.n(); ++z) {
        const auto& vc = rep.per_vertex[z];
        if (vc.boundary) continue;
        rep.inf_r = rep.inf_r ? ext_min(*rep.inf_r, vc.r) : vc.r;
        auto fold = [](std::optional<double>& acc, const std::optional<double>& v) {
            if (v) acc = acc ? std::min(*acc, *v) : *v;
        };
        fold(rep.inf_r1, vc.r1);
        fold(rep.inf_rbar, vc.rbar);
        fold(rep.inf_rtilde2, vc.rtilde2);
    }
    return rep;
}

}  // namespace gsc
