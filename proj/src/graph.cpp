#include "gsc/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

namespace gsc {

GraphSpace GraphSpace::build(const GraphSpec& spec) {
    GraphSpace g;
    g.labels_ = spec.vertices;
    for (int i = 0; i < (int)g.labels_.size(); ++i) {
        if (!g.index_.emplace(g.labels_[i], i).second)
            throw Error("DuplicateVertex", "vertex listed twice: " + g.labels_[i]);
    }
    int n = g.n();
    if (n == 0) throw Error("EmptyGraph", "no vertices");

    g.adj_.assign(n, {});
    std::set<std::pair<int, int>> seen;
    for (const auto& [a, b] : spec.edges) {
        int u = g.vertex(a), v = g.vertex(b);
        if (u == v) throw Error("SelfLoop", "self-loop at " + a);
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second) continue;  // ignore repeated edge lines
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
    }
    for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());

    g.measure_.assign(n, 1.0);
    if (!spec.measure.empty()) {
        for (const auto& [lbl, m] : spec.measure) {
            if (m <= 0) throw Error("NonPositiveMeasure", "m(" + lbl + ") <= 0");
            g.measure_[g.vertex(lbl)] = m;
        }
    }
    bool counting = spec.measure.empty();

    g.rate_.assign(n, {});
    auto default_rate = [&](int u, int v) -> double {
        Generator gen = spec.generator;
        if (gen == Generator::Explicit) gen = counting ? Generator::L0 : Generator::L1;
        switch (gen) {
            case Generator::L0: return 1.0;
            case Generator::L1: return std::sqrt(g.measure_[v] / g.measure_[u]);
            case Generator::L2: return 0.5 * (1.0 + g.measure_[v] / g.measure_[u]);
            default: return 1.0;
        }
    };
    for (int u = 0; u < n; ++u) {
        g.rate_[u].resize(g.adj_[u].size());
        for (size_t k = 0; k < g.adj_[u].size(); ++k) {
            int v = g.adj_[u][k];
            double r;
            if (!spec.rates.empty()) {
                auto it = spec.rates.find({g.labels_[u], g.labels_[v]});
                if (it == spec.rates.end() || it->second <= 0)
                    throw Error("ZeroRateOnEdge",
                                "missing or non-positive rate " + g.labels_[u] + "->" + g.labels_[v]);
                r = it->second;
            } else {
                r = default_rate(u, v);
            }
            g.rate_[u][k] = r;
        }
    }

    // connectivity + distance cache
    if (n <= 4096) {
        g.distmat_.assign((size_t)n * n, 0);
        for (int s = 0; s < n; ++s) {
            auto d = g.bfs(s);
            for (int v = 0; v < n; ++v) {
                if (d[v] < 0) throw Error("NotConnected", "no path " + g.labels_[s] + " .. " + g.labels_[v]);
                g.distmat_[(size_t)s * n + v] = (uint16_t)d[v];
            }
        }
        g.has_distmat_ = true;
    } else {
        auto d = g.bfs(0);
        for (int v = 0; v < n; ++v)
            if (d[v] < 0) throw Error("NotConnected", "vertex unreachable: " + g.labels_[v]);
    }

    g.validate_reversibility();
    return g;
}

int GraphSpace::vertex(const std::string& lbl) const {
    auto it = index_.find(lbl);
    if (it == index_.end()) throw Error("UnknownVertex", lbl);
    return it->second;
}

int GraphSpace::max_degree() const {
    int d = 0;
    for (const auto& nb : adj_) d = std::max<int>(d, (int)nb.size());
    return d;
}

double GraphSpace::rate(int u, int v) const {
    const auto& nb = adj_[u];
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) return 0.0;
    return rate_[u][it - nb.begin()];
}

double GraphSpace::total_measure() const {
    if (total_measure_ < 0)
        total_measure_ = std::accumulate(measure_.begin(), measure_.end(), 0.0);
    return total_measure_;
}

std::vector<int> GraphSpace::bfs(int src) const {
    std::vector<int> d(n(), -1);
    std::deque<int> q{src};
    d[src] = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int v : adj_[u])
            if (d[v] < 0) {
                d[v] = d[u] + 1;
                q.push_back(v);
            }
    }
    return d;
}

int GraphSpace::dist(int u, int v) const {
    if (has_distmat_) return distmat_[(size_t)u * n() + v];
    return bfs(u)[v];
}

int GraphSpace::diameter() const {
    int d = 0;
    for (int u = 0; u < n(); ++u) {
        if (has_distmat_) {
            for (int v = 0; v < n(); ++v) d = std::max<int>(d, dist(u, v));
        } else {
            auto dd = bfs(u);
            d = std::max(d, *std::max_element(dd.begin(), dd.end()));
        }
    }
    return d;
}

void GraphSpace::validate_reversibility() const {
    double worst = 0;
    int wu = -1, wv = -1;
    for (int u = 0; u < n(); ++u) {
        for (size_t k = 0; k < adj_[u].size(); ++k) {
            int v = adj_[u][k];
            if (v < u) continue;
            double a = measure_[u] * rate_[u][k];
            double b = measure_[v] * rate(v, u);
            double rel = std::fabs(a - b) / std::max({1e-300, std::fabs(a), std::fabs(b)});
            if (rel > worst) {
                worst = rel;
                wu = u;
                wv = v;
            }
        }
    }
    if (worst > 1e-12) {
        std::ostringstream os;
        os << "worst edge (" << labels_[wu] << "," << labels_[wv] << "), relative defect " << worst;
        throw Error("NotReversible", os.str());
    }
}

GraphSpace GraphSpace::with_rates(std::vector<std::vector<double>> rate,
                                  std::vector<double> measure) const {
    GraphSpace g = *this;
    g.rate_ = std::move(rate);
    g.measure_ = std::move(measure);
    g.total_measure_ = -1.0;
    g.validate_reversibility();
    return g;
}

std::vector<int> interval(const GraphSpace& g, int x, int y) {
    std::vector<int> out;
    int d = g.dist(x, y);
    for (int u = 0; u < g.n(); ++u)
        if (g.dist(x, u) + g.dist(u, y) == d) out.push_back(u);
    return out;
}

IntervalWeights interval_weights(const GraphSpace& g, int x, int y) {
    IntervalWeights w;
    w.d = g.dist(x, y);
    w.verts = interval(g, x, y);
    std::sort(w.verts.begin(), w.verts.end(), [&](int a, int b) {
        int la = g.dist(x, a), lb = g.dist(x, b);
        return la != lb ? la < lb : a < b;
    });
    int m = (int)w.verts.size();
    w.layer.resize(m);
    w.fw.assign(m, 0.0);
    w.bw.assign(m, 0.0);
    std::unordered_map<int, int> pos;
    for (int i = 0; i < m; ++i) {
        w.layer[i] = g.dist(x, w.verts[i]);
        pos[w.verts[i]] = i;
    }
    // forward pass over DAG layers
    for (int i = 0; i < m; ++i) {
        int u = w.verts[i];
        if (u == x) {
            w.fw[i] = 1.0;
            continue;
        }
        double acc = 0;
        for (int p : g.neighbors(u)) {
            auto it = pos.find(p);
            if (it != pos.end() && w.layer[it->second] == w.layer[i] - 1)
                acc += w.fw[it->second] * g.rate(p, u);
        }
        w.fw[i] = acc;
    }
    // backward pass
    for (int i = m - 1; i >= 0; --i) {
        int u = w.verts[i];
        if (u == y) {
            w.bw[i] = 1.0;
            continue;
        }
        double acc = 0;
        for (int s : g.neighbors(u)) {
            auto it = pos.find(s);
            if (it != pos.end() && w.layer[it->second] == w.layer[i] + 1)
                acc += g.rate(u, s) * w.bw[it->second];
        }
        w.bw[i] = acc;
    }
    w.total = w.fw[pos[y]];
    return w;
}

int IntervalWeights::pos(int v) const {
    for (int i = 0; i < (int)verts.size(); ++i)
        if (verts[i] == v) return i;
    return -1;
}

double geodesic_weight(const GraphSpace& g, int x, int y) {
    if (x == y) return 1.0;
    return interval_weights(g, x, y).total;
}

double bridge_ratio(const GraphSpace& g, int x, int z, int v, int y) {
    return geodesic_weight(g, x, z) * geodesic_weight(g, v, y) / geodesic_weight(g, x, y);
}

BallProfile ball_profile(const GraphSpace& g, int z) {
    BallProfile p;
    p.center = z;
    for (int u = 0; u < g.n(); ++u) {
        int d = g.dist(z, u);
        if (d == 1) p.s1.push_back(u);
        if (d == 2) p.s2.push_back(u);
    }
    for (int zpp : p.s2) {
        std::vector<int> mid;
        for (int zp : p.s1)
            if (g.dist(zp, zpp) == 1) mid.push_back(zp);
        double l2 = 0;
        for (int zp : mid) l2 += g.rate(z, zp) * g.rate(zp, zpp);
        std::vector<double> e;
        e.reserve(mid.size());
        for (int zp : mid) e.push_back(g.rate(z, zp) * g.rate(zp, zpp) / l2);
        p.midpoints.push_back(std::move(mid));
        p.l2.push_back(l2);
        p.ell.push_back(std::move(e));
    }
    return p;
}

// ---- structured graph validation ---------------------------------------------

namespace {

// Kuhn's matching on the compatibility graph sigma -> {sigma' : t s(z) = s' t(z)}.
bool perfect_matching(const std::vector<std::vector<int>>& compat, int right_size) {
    int nl = (int)compat.size();
    std::vector<int> match_r(right_size, -1);
    for (int u = 0; u < nl; ++u) {
        std::vector<char> used(right_size, 0);
        std::function<bool(int)> tryk = [&](int a) -> bool {
            for (int b : compat[a]) {
                if (used[b]) continue;
                used[b] = 1;
                if (match_r[b] < 0 || tryk(match_r[b])) {
                    match_r[b] = a;
                    return true;
                }
            }
            return false;
        };
        if (!tryk(u)) return false;
    }
    return true;
}

}  // namespace

MoveDiagnostic validate_moves(const GraphSpace& g, const MoveSet& moves) {
    MoveDiagnostic diag;
    int n = g.n(), S = moves.size();
    auto fail = [&](int ax, const std::string& wit) {
        diag.ok = false;
        diag.axiom = ax;
        diag.witness = wit;
        return diag;
    };

    // (i) d(z, sigma(z)) <= 1
    for (int s = 0; s < S; ++s)
        for (int z = 0; z < n; ++z)
            if (g.dist(z, moves.apply(s, z)) > 1)
                return fail(1, moves.names[s] + " moves " + g.label(z) + " at distance > 1");

    // (ii) each directed edge realized by exactly one move
    for (int z = 0; z < n; ++z) {
        for (int zp : g.neighbors(z)) {
            int count = 0;
            for (int s = 0; s < S; ++s)
                if (moves.apply(s, z) == zp) ++count;
            if (count != 1)
                return fail(2, "edge (" + g.label(z) + "," + g.label(zp) + ") realized by " +
                                   std::to_string(count) + " moves");
        }
    }

    auto active = [&](int z) {
        std::vector<int> out;
        for (int s = 0; s < S; ++s)
            if (g.dist(z, moves.apply(s, z)) == 1) out.push_back(s);
        return out;
    };

    for (int z = 0; z < n; ++z) {
        for (int t = 0; t < S; ++t) {
            int tz = moves.apply(t, z);
            // S_z^{.->t}: active sigma at z with d(z, t sigma(z)) = 2
            std::vector<int> fwd;
            for (int s : active(z))
                if (g.dist(z, moves.apply(t, moves.apply(s, z))) == 2) fwd.push_back(s);
            // S_z^{t->.}: active sigma at t(z) with d(z, sigma t(z)) = 2
            std::vector<int> bwd;
            for (int s : active(tz))
                if (g.dist(z, moves.apply(s, tz)) == 2) bwd.push_back(s);

            if (fwd.empty() != bwd.empty())
                return fail(3, "emptiness mismatch at z=" + g.label(z) + ", tau=" + moves.names[t]);
            if (fwd.empty()) continue;
            if (fwd.size() != bwd.size())
                return fail(4, "no bijection (sizes differ) at z=" + g.label(z) + ", tau=" + moves.names[t]);

            std::vector<std::vector<int>> compat(fwd.size());
            for (size_t a = 0; a < fwd.size(); ++a) {
                int target = moves.apply(t, moves.apply(fwd[a], z));
                for (size_t b = 0; b < bwd.size(); ++b)
                    if (moves.apply(bwd[b], tz) == target) compat[a].push_back((int)b);
            }
            if (!perfect_matching(compat, (int)bwd.size()))
                return fail(4, "no commutation bijection at z=" + g.label(z) + ", tau=" + moves.names[t]);
        }
    }
    return diag;
}

bool moves_idempotent_within_one(const GraphSpace& g, const MoveSet& moves) {
    for (int s = 0; s < moves.size(); ++s)
        for (int z = 0; z < g.n(); ++z)
            if (g.dist(z, moves.apply(s, moves.apply(s, z))) > 1) return false;
    return true;
}

bool rates_commute_on_moves(const GraphSpace& g, const MoveSet& moves) {
    for (int z = 0; z < g.n(); ++z)
        for (int s = 0; s < moves.size(); ++s)
            for (int t = 0; t < moves.size(); ++t) {
                int sz = moves.apply(s, z);
                int tsz = moves.apply(t, sz);
                if (g.dist(z, tsz) != 2) continue;
                int tz = moves.apply(t, z);
                double lhs = g.rate(z, sz) * g.rate(sz, tsz);
                double rhs = g.rate(z, tz) * g.rate(tz, tsz);
                if (std::fabs(lhs - rhs) > 1e-12 * std::max(1.0, std::fabs(lhs))) return false;
            }
    return true;
}

// ---- cyclic sets ---------------------------------------------------------------

namespace {

bool check_tuple(const GraphSpace& g, const std::vector<std::pair<int, int>>& tup,
                 const std::vector<int>& perm) {
    long lhs = 0, rhs = 0;
    for (size_t i = 0; i < tup.size(); ++i) {
        lhs += g.dist(tup[i].first, tup[i].second);
        rhs += g.dist(tup[i].first, tup[perm[i]].second);
    }
    return lhs <= rhs;
}

}  // namespace

CyclicSet cyclic_set(const GraphSpace& g, const std::vector<std::pair<int, int>>& pairs,
                     int exact_cap, int samples, uint64_t seed) {
    CyclicSet S;
    S.pairs = pairs;
    int N = (int)pairs.size();

    // exhaustive over subsets of size <= exact_cap, all permutations
    std::vector<int> idx(N);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<int> comb;
    std::function<void(int, int)> subsets = [&](int start, int need) {
        if (need == 0) {
            std::vector<std::pair<int, int>> tup;
            for (int i : comb) tup.push_back(pairs[i]);
            std::vector<int> perm((int)tup.size());
            std::iota(perm.begin(), perm.end(), 0);
            do {
                if (!check_tuple(g, tup, perm)) {
                    std::ostringstream os;
                    os << "cycle over {";
                    for (int i : comb) os << " (" << g.label(pairs[i].first) << "," << g.label(pairs[i].second) << ")";
                    os << " }";
                    throw Error("NotCyclicallyMonotone", os.str());
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
            return;
        }
        for (int i = start; i <= N - need; ++i) {
            comb.push_back(i);
            subsets(i + 1, need - 1);
            comb.pop_back();
        }
    };
    for (int k = 2; k <= std::min(exact_cap, N); ++k) subsets(0, k);

    if (N > exact_cap) {
        S.sampled_check = true;
        Rng rng(seed);
        for (int it = 0; it < samples; ++it) {
            int k = exact_cap + 1 + (int)rng.below(std::max(1, std::min(8, N) - exact_cap));
            k = std::min(k, N);
            std::vector<std::pair<int, int>> tup;
            for (int j = 0; j < k; ++j) tup.push_back(pairs[rng.below(N)]);
            std::vector<int> perm(k);
            std::iota(perm.begin(), perm.end(), 0);
            for (int j = k - 1; j > 0; --j) std::swap(perm[j], perm[rng.below(j + 1)]);
            if (!check_tuple(g, tup, perm))
                throw Error("NotCyclicallyMonotone", "sampled tuple violates monotonicity");
        }
    }

    // derived index sets
    std::set<int> zset;
    for (auto [x, y] : pairs) {
        int d = g.dist(x, y);
        auto iv = interval(g, x, y);
        for (int z : iv) zset.insert(z);
        for (int z : iv)
            for (int w : iv) {
                if (z == w) continue;
                if (g.dist(x, z) + g.dist(z, w) + g.dist(w, y) == d) S.c_fwd.insert({z, w});
            }
    }
    S.z_of.assign(zset.begin(), zset.end());
    for (int z : S.z_of) {
        auto& vf = S.v_fwd[z];
        auto& vb = S.v_bwd[z];
        auto& wf = S.vv_fwd[z];
        auto& wb = S.vv_bwd[z];
        for (int u : zset) {
            if (u == z) continue;
            int d = g.dist(z, u);
            bool fwd = S.c_fwd.count({z, u}) > 0;
            bool bwd = S.c_fwd.count({u, z}) > 0;
            if (d == 1 && fwd) vf.push_back(u);
            if (d == 1 && bwd) vb.push_back(u);
            if (d == 2 && fwd) wf.push_back(u);
            if (d == 2 && bwd) wb.push_back(u);
        }
    }
    return S;
}

}  // namespace gsc
