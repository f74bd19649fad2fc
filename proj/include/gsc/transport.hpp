#ifndef gsc_transport_hpp
#define gsc_transport_hpp

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gsc/common.hpp"
#include "gsc/graph.hpp"

namespace gsc {

// Finite nonnegative measure as a sparse map vertex -> mass.
struct Measure {
    std::map<int, double> w;

    double total() const;
    double at(int v) const {
        auto it = w.find(v);
        return it == w.end() ? 0.0 : it->second;
    }
    bool is_probability(double tol = 1e-12) const { return std::fabs(total() - 1.0) <= tol; }
    static Measure dirac(int v) { return Measure{{{v, 1.0}}}; }
    static Measure from_counting(const GraphSpace& g);  // reference measure m
    static Measure mu(const GraphSpace& g);             // normalized m / m(X)
};

// Joint distribution with cached marginals and the two kernels pi->(y|x), pi<-(x|y).
struct Coupling {
    std::vector<std::tuple<int, int, double>> joint;  // (x, y, mass), sorted
    Measure nu0, nu1;

    double cost(const GraphSpace& g) const;  // integral of d(x,y)
    // conditional rows; normalized on support
    std::map<int, double> kernel_fwd(int x) const;
    std::map<int, double> kernel_bwd(int y) const;
    static Coupling diagonal(const Measure& nu);
    static Coupling from_joint(std::vector<std::tuple<int, int, double>> joint);
};

// relative entropy H(nu|m) = sum nu log(nu/m); +inf when supp nu is not in supp m
ExtReal relative_entropy(const Measure& nu, const Measure& m);

// Exact optimal transport between two equal-mass measures for an arbitrary
// nonnegative cost; successive shortest paths with potentials plus a final
// complementary-slackness check.
Coupling optimal_coupling(const Measure& nu0, const Measure& nu1,
                          const std::function<double(int, int)>& cost);

// W1-optimal coupling (cost = graph distance). MarginalsNotNormalized unless
// both arguments are probability measures.
Coupling w1_coupling(const GraphSpace& g, const Measure& nu0, const Measure& nu1);
double w1_distance(const GraphSpace& g, const Measure& nu0, const Measure& nu1);

// The W1-optimal coupling selected by the zero-temperature Schroedinger limit:
// among optimal couplings, the I-projection of nu0 x nu1 weighted by the
// geodesic factor L^{d(x,y)}(x,y)/d(x,y)!. Computed by log-domain Sinkhorn with
// a decreasing temperature schedule; integer costs keep the optimal face at
// dual gap >= 1, so the smallest temperature already sits on it.
Coupling schrodinger_coupling(const GraphSpace& g, const Measure& nu0, const Measure& nu1);

// Independent oracle for tests: minimum over all spanning-tree vertices of the
// transportation polytope (exact for small supports).
double transport_bruteforce(const Measure& nu0, const Measure& nu1,
                            const std::function<double(int, int)>& cost);

// ---- displacement-convexity costs ---------------------------------------------

// h of the structured-cost family and its relatives.
double h_fn(double u);        // 2[(1-u)log(1-u)+u] on [0,1], +inf beyond
double h_t(double t, double u);
double h1_fn(double u);       // -2 log(1-u) - 2u on [0,1), +inf beyond
double hstar(double u);       // h*(u) with h*(2v)/2 = e^{-v} + v - 1

// u_t(d) and cbar_t(d) = int_0^1 u_s(d) q_t(s) ds by adaptive quadrature.
double u_t(double t, int d);
double cbar_cost(double t, int d);
double cbar_star(int d);

// pi^sigma_->(x): kernel mass moved along move sigma out of x.
double pi_sigma_fwd(const GraphSpace& g, const Coupling& pi, const MoveSet& moves, int s, int x);
double pi_sigma_bwd(const GraphSpace& g, const Coupling& pi, const MoveSet& moves, int s, int y);

enum class CostKind { T2, W1Sq, Ttilde, TtildeSum, Ttilde2, CtildeD, CbarT };

struct CostParams {
    double t = 0.5;                 // for CtildeD / CbarT
    int D = 1;                      // for CtildeD
    const MoveSet* moves = nullptr; // for Ttilde2 / CtildeD
};

// Exact evaluation of the transport cost of a coupling. Returns +inf (tagged)
// when an h-argument exceeds 1.
ExtReal transport_cost(const GraphSpace& g, const Coupling& pi, CostKind kind,
                       const CostParams& params = {});

CostKind cost_kind_from_name(const std::string& name);
const char* cost_kind_name(CostKind k);

}  // namespace gsc

#endif
