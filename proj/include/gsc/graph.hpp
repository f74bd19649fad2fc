#ifndef gsc_graph_hpp
#define gsc_graph_hpp

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gsc/common.hpp"

namespace gsc {

enum class Generator { Explicit, L0, L1, L2 };

// Build input for a graph space (X, d, L, m). Vertex order is preserved.
struct GraphSpec {
    std::vector<std::string> vertices;
    std::vector<std::pair<std::string, std::string>> edges;
    std::map<std::pair<std::string, std::string>, double> rates;  // ordered pairs, optional
    std::map<std::string, double> measure;                        // optional, default counting
    Generator generator = Generator::Explicit;  // used when rates empty
};

class GraphSpace {
public:
    static GraphSpace build(const GraphSpec& spec);

    int n() const { return (int)labels_.size(); }
    const std::string& label(int v) const { return labels_[v]; }
    int vertex(const std::string& lbl) const;
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return (int)adj_[v].size(); }
    int max_degree() const;
    bool adjacent(int u, int v) const { return dist(u, v) == 1; }

    double rate(int u, int v) const;  // L(u,v); 0 when u,v not neighbours
    double measure(int v) const { return measure_[v]; }
    double total_measure() const;
    // normalized probability mu = m/m(X)
    double mu(int v) const { return measure_[v] / total_measure(); }

    int dist(int u, int v) const;
    int diameter() const;

    // m(x) L(x,y) = m(y) L(y,x) on every edge, relative tolerance 1e-12
    void validate_reversibility() const;

    // Derived space with same adjacency but new measure/rates (already validated by caller
    // through build()); used by perturbation and restriction.
    GraphSpace with_rates(std::vector<std::vector<double>> rate, std::vector<double> measure) const;

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<int>> adj_;            // sorted
    std::vector<std::vector<double>> rate_;        // aligned with adj_
    std::vector<double> measure_;
    mutable double total_measure_ = -1.0;

    // full matrix for n <= 4096, else BFS on demand
    std::vector<uint16_t> distmat_;
    bool has_distmat_ = false;
    std::vector<int> bfs(int src) const;

    friend GraphSpace product_space(const GraphSpace&, const GraphSpace&);
};

// All vertices u with d(x,u) + d(u,y) = d(x,y).
std::vector<int> interval(const GraphSpace& g, int x, int y);

// Geodesic weight L^{d(x,y)}(x,y): sum over geodesics of the product of jump
// rates, by dynamic programming over the geodesic DAG.
double geodesic_weight(const GraphSpace& g, int x, int y);

// Forward/backward geodesic weights on [x,y]: fw[i] = L^{d(x,z_i)}(x,z_i),
// bw[i] = L^{d(z_i,y)}(z_i,y). fw(y) equals the full geodesic weight.
struct IntervalWeights {
    std::vector<int> verts;   // [x,y], sorted by (layer, id)
    std::vector<int> layer;   // d(x, z)
    std::vector<double> fw, bw;
    double total;             // L^{d(x,y)}(x,y)
    int d;
    int pos(int v) const;     // index in verts, -1 if absent
};
IntervalWeights interval_weights(const GraphSpace& g, int x, int y);

// r(x,z,v,y) = L^{d(x,z)}(x,z) L^{d(v,y)}(v,y) / L^{d(x,y)}(x,y)
double bridge_ratio(const GraphSpace& g, int x, int z, int v, int y);

// Local data of the 2-ball at z: spheres, midpoint sets, two-step rates and
// the exponents l(z,z',z'') = L(z,z')L(z',z'')/L^2(z,z'').
struct BallProfile {
    int center;
    std::vector<int> s1, s2;
    std::vector<std::vector<int>> midpoints;          // per element of s2
    std::vector<double> l2;                           // L^2(z,z'') per element of s2
    std::vector<std::vector<double>> ell;             // exponents, aligned with midpoints
};
BallProfile ball_profile(const GraphSpace& g, int z);

// ---- Structured graphs -------------------------------------------------------

struct MoveSet {
    std::vector<std::string> names;
    std::vector<std::vector<int>> map;  // map[s][z] = sigma_s(z), total maps

    int size() const { return (int)map.size(); }
    int apply(int s, int z) const { return map[s][z]; }
};

struct MoveDiagnostic {
    bool ok = true;
    int axiom = 0;           // 1..4 when violated
    std::string witness;
};

// Checks axioms (i)-(iv) of structured graphs; axiom (iv) searches for the
// commutation bijection psi by bipartite matching.
MoveDiagnostic validate_moves(const GraphSpace& g, const MoveSet& moves);

// d(z, sigma sigma(z)) <= 1 for all z, sigma (each move used at most once on geodesics)
bool moves_idempotent_within_one(const GraphSpace& g, const MoveSet& moves);
// L(z,s(z))L(s(z),ts(z)) = L(z,t(z))L(t(z),ts(z)) whenever d(z,ts(z)) = 2
bool rates_commute_on_moves(const GraphSpace& g, const MoveSet& moves);

// ---- d-cyclically monotone pair sets -----------------------------------------

struct CyclicSet {
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> z_of;                              // Z(S)
    std::set<std::pair<int, int>> c_fwd;                // C->(S)
    std::map<int, std::vector<int>> v_fwd, v_bwd;       // V->^S(z), V<-^S(z) in S_1(z)
    std::map<int, std::vector<int>> vv_fwd, vv_bwd;     // in S_2(z)
    bool sampled_check = false;                         // larger tuples only sampled
};

// Verifies monotonicity exhaustively for sub-tuples of size <= exact_cap and for
// `samples` random larger tuples, then populates the derived index sets.
CyclicSet cyclic_set(const GraphSpace& g, const std::vector<std::pair<int, int>>& pairs,
                     int exact_cap = 4, int samples = 200, uint64_t seed = 17);

}  // namespace gsc

#endif
