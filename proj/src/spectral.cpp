#include "gsc/spectral.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <deque>
#include <numeric>

namespace gsc {

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    SymMatrix m((int)rows.size());
    for (int i = 0; i < m.n_; ++i) {
        if ((int)rows[i].size() != m.n_) throw Error("NotSymmetric", "ragged rows");
        for (int j = 0; j < m.n_; ++j) m.at(i, j) = rows[i][j];
    }
    m.check_symmetric();
    return m;
}

void SymMatrix::check_symmetric(double tol) const {
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (std::fabs(at(i, j) - at(j, i)) > tol * std::max(1.0, std::fabs(at(i, j))))
                throw Error("NotSymmetric", "a[i][j] != a[j][i]");
}

double SymMatrix::max_abs() const {
    double m = 0;
    for (double v : a_) m = std::max(m, std::fabs(v));
    return m;
}

std::vector<double> sym_eigs(SymMatrix m) {
    int n = m.n();
    if (n == 0) return {};
    auto offnorm = [&]() {
        double s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += m.at(i, j) * m.at(i, j);
        return std::sqrt(2 * s);
    };
    double scale = std::max(1.0, m.max_abs());
    for (int sweep = 0; sweep < 100 && offnorm() > 1e-12 * scale; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = m.at(p, q);
                if (std::fabs(apq) < 1e-300) continue;
                double app = m.at(p, p), aqq = m.at(q, q);
                double theta = 0.5 * (aqq - app) / apq;
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = m.at(k, p), akq = m.at(k, q);
                    m.at(k, p) = c * akp - s * akq;
                    m.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = m.at(p, k), aqk = m.at(q, k);
                    m.at(p, k) = c * apk - s * aqk;
                    m.at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = m.at(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

double lambda2(const GraphSpace& g) {
    int n = g.n();
    if (n < 2) throw Error("TooSmall", "lambda2 needs at least two vertices");
    // L2 generator of the measure; symmetrized by D^{1/2} (-L2) D^{-1/2}
    SymMatrix s(n);
    for (int x = 0; x < n; ++x) {
        double diag = 0;
        for (int y : g.neighbors(x)) {
            double l2xy = 0.5 * (1.0 + g.measure(y) / g.measure(x));
            diag += l2xy;
            s.at(x, y) = -l2xy * std::sqrt(g.mu(x) / g.mu(y));
        }
        s.at(x, x) = diag;
    }
    // clean tiny asymmetry from the sqrt ratios
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double v = 0.5 * (s.at(i, j) + s.at(j, i));
            s.at(i, j) = s.at(j, i) = v;
        }
    auto eig = sym_eigs(s);
    if (std::fabs(eig[0]) > 1e-9)
        throw Error("SpectralDefect", "smallest eigenvalue of -L2 is not 0");
    return eig[1];
}

CheegerConstants cheeger_constants(const GraphSpace& g, bool allow_sampling, uint64_t seed) {
    int n = g.n();
    CheegerConstants out{kInf, kInf, kInf, kInf, true};
    double mtot = g.total_measure();

    auto eval = [&](uint64_t mask) {
        int size = 0;
        double muA = 0;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1) {
                ++size;
                muA += g.mu(v);
            }
        if (size == 0) return;
        int bedges = 0;
        double bmass = 0, in_mass = 0, out_mass = 0;
        for (int v = 0; v < n; ++v) {
            bool vin = mask >> v & 1;
            bool border = false;
            for (int u : g.neighbors(v)) {
                bool uin = mask >> u & 1;
                if (vin && !uin) {
                    ++bedges;
                    bmass += g.mu(v);
                }
                if (uin != vin) border = true;
            }
            if (border && vin) in_mass += g.mu(v);
            if (border && !vin) out_mass += g.mu(v);
        }
        if (2 * size <= n) out.h_g = std::min(out.h_g, (double)bedges / size);
        if (muA <= 0.5 + 1e-15) {
            out.g_in = std::min(out.g_in, in_mass / muA);
            out.g_out = std::min(out.g_out, out_mass / muA);
            out.phi_mu = std::min(out.phi_mu, bmass / muA);
        }
        (void)mtot;
    };

    if (n <= 24) {
        for (uint64_t mask = 1; mask + 1 < (1ull << n); ++mask) eval(mask);
        return out;
    }
    if (!allow_sampling) throw Error("TooLargeForExact", "|X| > 24; pass the sampling flag");
    out.exact = false;
    Rng rng(seed);
    for (int it = 0; it < 100000; ++it) {
        uint64_t mask = 0;
        int target = 1 + (int)rng.below(n - 1);
        for (int j = 0; j < target; ++j) mask |= 1ull << rng.below(n);
        eval(mask);
        // single-vertex local moves
        for (int mv = 0; mv < 8; ++mv) {
            uint64_t m2 = mask ^ (1ull << rng.below(n));
            if (m2 && m2 + 1 != (1ull << n)) eval(m2);
        }
    }
    return out;
}

bool gershgorin_dominant(const SymMatrix& m) {
    for (int i = 0; i < m.n(); ++i) {
        double r = 0;
        for (int j = 0; j < m.n(); ++j)
            if (j != i) r += std::fabs(m.at(i, j));
        if (m.at(i, i) < r) return false;
    }
    return true;
}

namespace {

void bron_kerbosch(const std::vector<uint64_t>& nbr, uint64_t R, uint64_t P, uint64_t X,
                   uint64_t& best, int& best_size) {
    if (!P && !X) {
        int sz = __builtin_popcountll(R);
        if (sz > best_size) {
            best_size = sz;
            best = R;
        } else if (sz == best_size && R < best) {
            best = R;
        }
        return;
    }
    uint64_t PX = P | X;
    int pivot = -1, deg = -1;
    for (int v = 0; v < 64; ++v)
        if (PX >> v & 1) {
            int d = __builtin_popcountll(P & nbr[v]);
            if (d > deg) {
                deg = d;
                pivot = v;
            }
        }
    uint64_t cand = P & ~nbr[pivot];
    for (int v = 0; v < 64; ++v) {
        if (!(cand >> v & 1)) continue;
        bron_kerbosch(nbr, R | (1ull << v), P & nbr[v], X & nbr[v], best, best_size);
        P &= ~(1ull << v);
        X |= 1ull << v;
    }
}

}  // namespace

std::vector<int> max_clique(const std::vector<std::vector<char>>& adj) {
    int n = (int)adj.size();
    if (n == 0) return {};
    if (n > 64) throw Error("TooLarge", "max_clique limited to 64 vertices");
    std::vector<uint64_t> nbr(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && adj[i][j]) nbr[i] |= 1ull << j;
    uint64_t best = 0;
    int best_size = 0;
    bron_kerbosch(nbr, 0, n == 64 ? ~0ull : (1ull << n) - 1, 0, best, best_size);
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (best >> v & 1) out.push_back(v);
    return out;
}

int girth(const GraphSpace& g) {
    int best = INT_MAX;
    for (int s = 0; s < g.n(); ++s) {
        std::vector<int> d(g.n(), -1), parent(g.n(), -1);
        std::deque<int> q{s};
        d[s] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (int v : g.neighbors(u)) {
                if (d[v] < 0) {
                    d[v] = d[u] + 1;
                    parent[v] = u;
                    q.push_back(v);
                } else if (v != parent[u]) {
                    best = std::min(best, d[u] + d[v] + 1);
                }
            }
        }
    }
    return best;
}

}  // namespace gsc
