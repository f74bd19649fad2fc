#include "gsc/models.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace gsc {

namespace {

Model finish(GraphSpec spec, std::optional<MoveSet> moves, std::string name) {
    Model m{GraphSpace::build(spec), std::move(moves), {}, std::move(name)};
    m.interior.assign(m.g.n(), 1);
    return m;
}

std::vector<int> parse_ints(const std::string& s, char sep) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(std::stoi(tok));
    return out;
}

}  // namespace

Model hypercube(int n) {
    if (n < 1 || n > 10) throw Error("TooLarge", "hypercube supports 1 <= n <= 10");
    GraphSpec spec;
    int N = 1 << n;
    auto lbl = [&](int z) {
        std::string s(n, '0');
        for (int i = 0; i < n; ++i)
            if (z >> i & 1) s[i] = '1';
        return s;
    };
    for (int z = 0; z < N; ++z) spec.vertices.push_back(lbl(z));
    for (int z = 0; z < N; ++z)
        for (int i = 0; i < n; ++i)
            if (!(z >> i & 1)) spec.edges.push_back({lbl(z), lbl(z | (1 << i))});
    MoveSet mv;
    for (int i = 0; i < n; ++i) {
        mv.names.push_back("flip" + std::to_string(i + 1));
        std::vector<int> map(N);
        for (int z = 0; z < N; ++z) map[z] = z ^ (1 << i);
        mv.map.push_back(std::move(map));
    }
    return finish(spec, mv, "hypercube:" + std::to_string(n));
}

Model lattice_box(const std::vector<int>& dims) {
    long total = 1;
    for (int d : dims) {
        if (d < 1) throw Error("TooLarge", "box dimension < 1");
        total *= d;
    }
    if (total > 4096) throw Error("TooLarge", "box has more than 4096 vertices");
    int n = (int)dims.size();
    GraphSpec spec;
    std::vector<int> strides(n, 1);
    for (int i = 1; i < n; ++i) strides[i] = strides[i - 1] * dims[i - 1];
    auto coord = [&](int v) {
        std::vector<int> c(n);
        for (int i = 0; i < n; ++i) c[i] = (v / strides[i]) % dims[i];
        return c;
    };
    auto lbl = [&](int v) {
        auto c = coord(v);
        std::string s;
        for (int i = 0; i < n; ++i) s += (i ? "," : "") + std::to_string(c[i]);
        return s;
    };
    for (int v = 0; v < total; ++v) spec.vertices.push_back(lbl(v));
    for (int v = 0; v < total; ++v) {
        auto c = coord(v);
        for (int i = 0; i < n; ++i)
            if (c[i] + 1 < dims[i]) spec.edges.push_back({lbl(v), lbl(v + strides[i])});
    }
    MoveSet mv;
    for (int i = 0; i < n; ++i)
        for (int dir : {+1, -1}) {
            mv.names.push_back((dir > 0 ? "step+" : "step-") + std::to_string(i + 1));
            std::vector<int> map(total);
            for (int v = 0; v < total; ++v) {
                auto c = coord(v);
                int ci = c[i] + dir;
                map[v] = (ci < 0 || ci >= dims[i]) ? v : v + dir * strides[i];
            }
            mv.map.push_back(std::move(map));
        }
    std::string name = "lattice-box:";
    for (size_t i = 0; i < dims.size(); ++i) name += (i ? "x" : "") + std::to_string(dims[i]);
    Model m = finish(spec, mv, name);
    for (int v = 0; v < total; ++v) {
        auto c = coord(v);
        bool inter = true;
        for (int i = 0; i < n; ++i)
            if (c[i] < 2 || c[i] > dims[i] - 3) inter = false;
        m.interior[v] = inter;
    }
    return m;
}

Model bernoulli_laplace(int n, int m) {
    if (n < 2 || n > 16 || m < 1 || m >= n) throw Error("TooLarge", "bernoulli-laplace bounds");
    GraphSpec spec;
    std::vector<int> verts;
    for (int z = 0; z < (1 << n); ++z)
        if (__builtin_popcount(z) == m) verts.push_back(z);
    auto lbl = [&](int z) {
        std::string s(n, '0');
        for (int i = 0; i < n; ++i)
            if (z >> i & 1) s[i] = '1';
        return s;
    };
    for (int z : verts) spec.vertices.push_back(lbl(z));
    for (int z : verts)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if ((z >> i & 1) && !(z >> j & 1)) {
                    int w = (z ^ (1 << i)) | (1 << j);
                    if (w > z) spec.edges.push_back({lbl(z), lbl(w)});
                }
    MoveSet mv;
    std::map<int, int> index;
    for (int k = 0; k < (int)verts.size(); ++k) index[verts[k]] = k;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            mv.names.push_back("swap" + std::to_string(i + 1) + std::to_string(j + 1));
            std::vector<int> map(verts.size());
            for (int k = 0; k < (int)verts.size(); ++k) {
                int z = verts[k];
                int bi = z >> i & 1, bj = z >> j & 1;
                int w = z & ~((1 << i) | (1 << j));
                w |= bj << i;
                w |= bi << j;
                map[k] = index[w];
            }
            mv.map.push_back(std::move(map));
        }
    return finish(spec, mv, "bernoulli-laplace:" + std::to_string(n) + "," + std::to_string(m));
}

Model transposition(int n) {
    if (n < 2 || n > 5) throw Error("TooLarge", "transposition supports 2 <= n <= 5");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    auto lbl = [&](const std::vector<int>& q) {
        std::string s;
        for (int x : q) s += std::to_string(x + 1);
        return s;
    };
    std::map<std::vector<int>, int> index;
    for (int k = 0; k < (int)perms.size(); ++k) index[perms[k]] = k;
    GraphSpec spec;
    for (auto& q : perms) spec.vertices.push_back(lbl(q));
    MoveSet mv;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            mv.names.push_back("t" + std::to_string(i + 1) + std::to_string(j + 1));
            std::vector<int> map(perms.size());
            for (int k = 0; k < (int)perms.size(); ++k) {
                auto q = perms[k];
                std::swap(q[i], q[j]);  // right multiplication by (ij)
                map[k] = index[q];
                if (map[k] > k) spec.edges.push_back({lbl(perms[k]), lbl(q)});
            }
            mv.map.push_back(std::move(map));
        }
    return finish(spec, mv, "transposition:" + std::to_string(n));
}

Model cycle(int k) {
    if (k < 3) throw Error("TooLarge", "cycle needs k >= 3");
    GraphSpec spec;
    for (int i = 0; i < k; ++i) spec.vertices.push_back("c" + std::to_string(i));
    for (int i = 0; i < k; ++i)
        spec.edges.push_back({"c" + std::to_string(i), "c" + std::to_string((i + 1) % k)});
    MoveSet mv;
    for (int dir : {+1, -1}) {
        mv.names.push_back(dir > 0 ? "rot+" : "rot-");
        std::vector<int> map(k);
        for (int i = 0; i < k; ++i) map[i] = ((i + dir) % k + k) % k;
        mv.map.push_back(std::move(map));
    }
    return finish(spec, mv, "cycle:" + std::to_string(k));
}

Model path(int k) {
    if (k < 2) throw Error("TooLarge", "path needs k >= 2");
    GraphSpec spec;
    for (int i = 0; i < k; ++i) spec.vertices.push_back("p" + std::to_string(i));
    for (int i = 0; i + 1 < k; ++i)
        spec.edges.push_back({"p" + std::to_string(i), "p" + std::to_string(i + 1)});
    MoveSet mv;
    for (int dir : {+1, -1}) {
        mv.names.push_back(dir > 0 ? "step+" : "step-");
        std::vector<int> map(k);
        for (int i = 0; i < k; ++i) {
            int j = i + dir;
            map[i] = (j < 0 || j >= k) ? i : j;
        }
        mv.map.push_back(std::move(map));
    }
    return finish(spec, mv, "path:" + std::to_string(k));
}

Model complete(int n) {
    if (n < 2) throw Error("TooLarge", "complete needs n >= 2");
    GraphSpec spec;
    for (int i = 0; i < n; ++i) spec.vertices.push_back("v" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            spec.edges.push_back({"v" + std::to_string(i), "v" + std::to_string(j)});
    MoveSet mv;  // Cayley graph of Z_n with all nonzero shifts
    for (int s = 1; s < n; ++s) {
        mv.names.push_back("shift" + std::to_string(s));
        std::vector<int> map(n);
        for (int i = 0; i < n; ++i) map[i] = (i + s) % n;
        mv.map.push_back(std::move(map));
    }
    return finish(spec, mv, "complete:" + std::to_string(n));
}

Model petersen() {
    GraphSpec spec;
    for (int i = 0; i < 10; ++i) spec.vertices.push_back("v" + std::to_string(i));
    auto e = [&](int a, int b) {
        spec.edges.push_back({"v" + std::to_string(a), "v" + std::to_string(b)});
    };
    for (int i = 0; i < 5; ++i) {
        e(i, (i + 1) % 5);      // outer pentagon
        e(i, i + 5);            // spokes
        e(i + 5, (i + 2) % 5 + 5);  // inner pentagram
    }
    return finish(spec, std::nullopt, "petersen");
}

Model windmill(int k, int m) {
    if (k < 2 || m < 1) throw Error("TooLarge", "windmill needs k >= 2, m >= 1");
    GraphSpec spec;
    spec.vertices.push_back("hub");
    for (int c = 0; c < m; ++c)
        for (int i = 0; i + 1 < k; ++i)
            spec.vertices.push_back("w" + std::to_string(c) + "_" + std::to_string(i));
    for (int c = 0; c < m; ++c) {
        std::vector<std::string> copy{"hub"};
        for (int i = 0; i + 1 < k; ++i)
            copy.push_back("w" + std::to_string(c) + "_" + std::to_string(i));
        for (size_t a = 0; a < copy.size(); ++a)
            for (size_t b = a + 1; b < copy.size(); ++b) spec.edges.push_back({copy[a], copy[b]});
    }
    return finish(spec, std::nullopt, "windmill:" + std::to_string(k) + "," + std::to_string(m));
}

Model petal(int n) {
    if (n < 1 || n > 200) throw Error("TooLarge", "petal supports 1 <= n <= 200");
    GraphSpec spec;
    spec.vertices.push_back("z0");
    for (int i = 1; i <= n + 2; ++i) spec.vertices.push_back("a" + std::to_string(i));
    for (int i = 1; i <= n; ++i) spec.vertices.push_back("b" + std::to_string(i));
    for (int i = 1; i <= n + 2; ++i) spec.edges.push_back({"z0", "a" + std::to_string(i)});
    for (int i = 1; i <= n; ++i) {
        spec.edges.push_back({"b" + std::to_string(i), "a1"});
        spec.edges.push_back({"b" + std::to_string(i), "a2"});
        spec.edges.push_back({"b" + std::to_string(i), "a" + std::to_string(i + 2)});
    }
    return finish(spec, std::nullopt, "petal:" + std::to_string(n));
}

GraphSpace product_space(const GraphSpace& a, const GraphSpace& b) {
    GraphSpec spec;
    auto lbl = [&](int x, int y) { return "(" + a.label(x) + "|" + b.label(y) + ")"; };
    for (int x = 0; x < a.n(); ++x)
        for (int y = 0; y < b.n(); ++y) {
            spec.vertices.push_back(lbl(x, y));
            spec.measure[lbl(x, y)] = a.measure(x) * b.measure(y);
        }
    for (int x = 0; x < a.n(); ++x)
        for (int y = 0; y < b.n(); ++y) {
            for (int xp : a.neighbors(x)) {
                spec.edges.push_back({lbl(x, y), lbl(xp, y)});
                spec.rates[{lbl(x, y), lbl(xp, y)}] = a.rate(x, xp);
            }
            for (int yp : b.neighbors(y)) {
                spec.edges.push_back({lbl(x, y), lbl(x, yp)});
                spec.rates[{lbl(x, y), lbl(x, yp)}] = b.rate(y, yp);
            }
        }
    return GraphSpace::build(spec);
}

Model product_space(const Model& a, const Model& b) {
    Model m{product_space(a.g, b.g), std::nullopt, {}, "product:" + a.name + "+" + b.name};
    int nb = b.g.n();
    auto id = [&](int x, int y) { return x * nb + y; };
    if (a.moves && b.moves) {
        MoveSet mv;
        for (int s = 0; s < a.moves->size(); ++s) {
            mv.names.push_back("L:" + a.moves->names[s]);
            std::vector<int> map(m.g.n());
            for (int x = 0; x < a.g.n(); ++x)
                for (int y = 0; y < nb; ++y) map[id(x, y)] = id(a.moves->apply(s, x), y);
            mv.map.push_back(std::move(map));
        }
        for (int s = 0; s < b.moves->size(); ++s) {
            mv.names.push_back("R:" + b.moves->names[s]);
            std::vector<int> map(m.g.n());
            for (int x = 0; x < a.g.n(); ++x)
                for (int y = 0; y < nb; ++y) map[id(x, y)] = id(x, b.moves->apply(s, y));
            mv.map.push_back(std::move(map));
        }
        m.moves = std::move(mv);
    }
    m.interior.assign(m.g.n(), 1);
    for (int x = 0; x < a.g.n(); ++x)
        for (int y = 0; y < nb; ++y) m.interior[id(x, y)] = a.interior[x] && b.interior[y];
    return m;
}

Model make_model(const std::string& spec) {
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    std::string params = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "hypercube") return hypercube(std::stoi(params));
    if (kind == "lattice-box") return lattice_box(parse_ints(params, 'x'));
    if (kind == "bernoulli-laplace") {
        auto v = parse_ints(params, ',');
        return bernoulli_laplace(v.at(0), v.at(1));
    }
    if (kind == "transposition") return transposition(std::stoi(params));
    if (kind == "cycle") return cycle(std::stoi(params));
    if (kind == "path") return path(std::stoi(params));
    if (kind == "complete") return complete(std::stoi(params));
    if (kind == "petersen") return petersen();
    if (kind == "windmill") {
        auto v = parse_ints(params, ',');
        return windmill(v.at(0), v.at(1));
    }
    if (kind == "petal") return petal(std::stoi(params));
    if (kind == "product") {
        auto plus = params.find('+');
        if (plus == std::string::npos) throw Error("UsageError", "product:<spec>+<spec>");
        return product_space(make_model(params.substr(0, plus)), make_model(params.substr(plus + 1)));
    }
    throw Error("UsageError", "unknown model: " + kind);
}

// ---- Ising ------------------------------------------------------------------------

Potential ising_potential(const IsingSpec& spec, const GraphSpace& cube) {
    int n = (int)spec.field.size();
    if ((int)spec.interaction.size() != n) throw Error("BadParameter", "T/interaction size mismatch");
    Potential v(cube.n());
    for (int z = 0; z < cube.n(); ++z) {
        const std::string& lbl = cube.label(z);
        if ((int)lbl.size() != n || lbl.find_first_not_of("01") != std::string::npos)
            throw Error("BadParameter", "quadratic potentials need hypercube vertex labels");
        double val = 0;
        if (!spec.spin) {
            for (int i = 0; i < n; ++i) {
                double zi = lbl[i] - '0';
                val += spec.field[i] * zi;
                for (int j = 0; j < n; ++j)
                    if (j != i) val += 0.5 * spec.interaction[i][j] * zi * (lbl[j] - '0');
            }
        } else {
            for (int i = 0; i < n; ++i) {
                double si = lbl[i] == '1' ? 1.0 : -1.0;
                val -= spec.field[i] * si;
                for (int j = 0; j < n; ++j)
                    if (j != i) val -= 0.5 * spec.beta * spec.interaction[i][j] * si * (lbl[j] == '1' ? 1.0 : -1.0);
            }
        }
        v[z] = val;
    }
    return v;
}

SymMatrix ising_hessian(const GraphSpace& cube, const Potential& v, int z) {
    const std::string& lbl = cube.label(z);
    int n = (int)lbl.size();
    SymMatrix h(n);
    auto flip_to = [&](std::string s, int i, char c) {
        s[i] = c;
        return s;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto at = [&](char ci, char cj) {
                return v[cube.vertex(flip_to(flip_to(lbl, i, ci), j, cj))];
            };
            double d2 = at('1', '1') + at('0', '0') - at('0', '1') - at('1', '0');
            h.at(i, j) = h.at(j, i) = d2;
        }
    return h;
}

SymMatrix ising_hessian(const IsingSpec& spec, int /*z*/) {
    int n = (int)spec.field.size();
    SymMatrix h(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            h.at(i, j) = spec.spin ? -4.0 * spec.beta * spec.interaction[i][j]
                                   : spec.interaction[i][j];
        }
    return h;
}

double k_series(double s) {
    if (s == 0) return 0.0;
    if (std::fabs(s) < 1e-4) return s / 2 + s * s / 6 + s * s * s / 24;
    return (std::exp(s) - s - 1) / s;
}

double rho_v(const GraphSpace& cube, const Potential& v) {
    int n = (int)cube.label(0).size();
    double lmin = kInf, lmax_abs = -kInf, hmax = 0;
    // constant-Hessian shortcut: one eigensolve instead of 2^n of them
    SymMatrix h0 = ising_hessian(cube, v, 0);
    bool constant = true;
    for (int z = 1; z < cube.n() && constant; ++z) {
        SymMatrix hz = ising_hessian(cube, v, z);
        for (int i = 0; i < n && constant; ++i)
            for (int j = 0; j < n; ++j)
                if (std::fabs(hz.at(i, j) - h0.at(i, j)) > 1e-12) {
                    constant = false;
                    break;
                }
        if (!constant) break;
    }
    auto absorb = [&](const SymMatrix& h) {
        SymMatrix habs(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) habs.at(i, j) = std::fabs(h.at(i, j));
        auto e = sym_eigs(h);
        auto ea = sym_eigs(habs);
        lmin = std::min(lmin, e.front());
        lmax_abs = std::max(lmax_abs, ea.back());
        hmax = std::max(hmax, h.max_abs());
    };
    if (constant) {
        absorb(h0);
    } else {
        for (int z = 0; z < cube.n(); ++z) absorb(ising_hessian(cube, v, z));
    }
    return 1.0 + lmin / 2 - (lmax_abs / 2) * k_series(hmax / 2);
}

double rho_tilde(const SymMatrix& w, double beta) {
    if (beta <= 0) throw Error("BadParameter", "rho_tilde needs beta > 0");
    w.check_symmetric();
    for (int i = 0; i < w.n(); ++i)
        if (w.at(i, i) != 0) throw Error("BadParameter", "interaction matrix must have zero diagonal");
    SymMatrix wabs(w.n());
    for (int i = 0; i < w.n(); ++i)
        for (int j = 0; j < w.n(); ++j) wabs.at(i, j) = std::fabs(w.at(i, j));
    double lmax = sym_eigs(w).back();
    double lmax_abs = sym_eigs(wabs).back();
    return 1.0 - 2 * beta * lmax - 2 * beta * lmax_abs * k_series(2 * beta * w.max_abs());
}

SymMatrix sk_sample(int n, uint64_t seed) {
    Rng rng(seed);
    SymMatrix w(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) w.at(i, j) = w.at(j, i) = rng.normal();
    return w;
}

// ---- lattice ----------------------------------------------------------------------

LatticeBox lattice_box_geometry(const std::vector<int>& dims) {
    LatticeBox box{dims, lattice_box(dims).g};
    return box;
}

std::vector<int> LatticeBox::coord(int v) const {
    std::vector<int> c(dims.size());
    int stride = 1;
    for (size_t i = 0; i < dims.size(); ++i) {
        c[i] = (v / stride) % dims[i];
        stride *= dims[i];
    }
    return c;
}

int LatticeBox::vertex(const std::vector<int>& pt) const {
    int v = 0, stride = 1;
    for (size_t i = 0; i < dims.size(); ++i) {
        if (pt[i] < 0 || pt[i] >= dims[i]) throw Error("BoundaryVertex", "point outside box");
        v += pt[i] * stride;
        stride *= dims[i];
    }
    return v;
}

bool LatticeBox::margin_at_least(int v, int k) const {
    auto c = coord(v);
    for (size_t i = 0; i < dims.size(); ++i)
        if (c[i] < k || c[i] > dims[i] - 1 - k) return false;
    return true;
}

LatticeAv lattice_av(const LatticeBox& box, const Potential& v, int z) {
    int n = (int)box.dims.size();
    if (!box.margin_at_least(z, 2))
        throw Error("BoundaryVertex", "Av(z) needs margin >= 2 in every axis");
    auto shift = [&](int vtx, int axis, int by) {
        auto c = box.coord(vtx);
        c[axis] += by;
        return box.vertex(c);
    };
    // directed second differences Dv(z, z'') along the two-step targets
    auto dv_axis = [&](int i, int eps) {
        return v[shift(z, i, 2 * eps)] + v[z] - 2 * v[shift(z, i, eps)];
    };
    auto dv_diag = [&](int i, int ei, int j, int ej) {
        double acc = v[shift(shift(z, i, ei), j, ej)] + v[z];
        acc -= v[shift(z, i, ei)] + v[shift(z, j, ej)];
        return acc;
    };
    LatticeAv out{SymMatrix(n), 0, false, 0, 0, false};
    for (int i = 0; i < n; ++i) {
        double aii = std::min(dv_axis(i, +1), dv_axis(i, -1));
        out.av.at(i, i) = std::exp(-aii / 2) - 1;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double aij = std::max({-dv_diag(i, +1, j, +1), -dv_diag(i, -1, j, -1),
                                   -dv_diag(i, -1, j, +1), -dv_diag(i, +1, j, -1)});
            out.av.at(i, j) = out.av.at(j, i) = std::exp(aij / 2) - 1;
        }
    out.lambda_max = sym_eigs(out.av).back();
    out.k_bound_valid = out.lambda_max <= 0;
    out.k_bound = 1 + out.lambda_max / n;
    out.ktilde_bound = 1 + out.lambda_max;
    SymMatrix neg(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) neg.at(i, j) = -out.av.at(i, j);
    out.dominant = gershgorin_dominant(neg);
    return out;
}

}  // namespace gsc
