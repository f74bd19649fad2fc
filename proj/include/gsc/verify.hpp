#ifndef gsc_verify_hpp
#define gsc_verify_hpp

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gsc/bridge.hpp"
#include "gsc/graph.hpp"
#include "gsc/transport.hpp"

namespace gsc {

struct VerifyOutcome {
    bool holds = true;
    double slack = kInf;        // min over checks of RHS - LHS (>= 0 means satisfied)
    std::string witness;        // offending inputs when violated
    int samples = 0;
    uint64_t seed = 0;
    std::string note;           // e.g. which coupling was used
};

// slack >= -1e-9 (1 + |rhs|) counts as holding
bool slack_ok(double slack, double rhs_scale);

// Seeded random probability measure: Dirichlet weights over a random support
// of size <= max_support.
Measure random_measure(const GraphSpace& g, Rng& rng, int max_support = 6);

// Random coupling of two given marginals: iterative proportional fitting of a
// random positive kernel (used to approximate infima of weak costs).
Coupling random_coupling(const Measure& nu0, const Measure& nu1, Rng& rng);

// H(hat nu_t | m) <= (1-t) H(nu0|m) + t H(nu1|m) - t(1-t)/2 kappa C_t(pi)
VerifyOutcome check_displacement(const GraphSpace& g, const Measure& nu0, const Measure& nu1,
                                 CostKind kind, double kappa, const std::vector<double>& t_grid,
                                 const MoveSet* moves = nullptr, int D = 1);

// Curved Prekopa-Leindler: checks the hypothesis
//   (1-t) f(x) + t g(y) <= int h dnu_t^{x,y} + kappa_c/2 t(1-t) c_t(d(x,y))
// for all pairs, then the three-integral inequality.
VerifyOutcome check_prekopa_leindler(const GraphSpace& g, const std::vector<double>& f,
                                     const std::vector<double>& g_fn,
                                     const std::vector<double>& h_fn, double t, double kappa_c,
                                     const std::function<double(int)>& c_t);

// smallest h satisfying the hypothesis pointwise (max-construction)
std::vector<double> pl_minimal_h(const GraphSpace& g, const std::vector<double>& f,
                                 const std::vector<double>& g_fn, double t, double kappa_c,
                                 const std::function<double(int)>& c_t);

struct KappaPack {
    std::optional<double> kappa;        // T2 curvature
    std::optional<double> kappa1;       // W1
    std::optional<double> kappa_tilde;  // Ttilde
    std::optional<double> kappa_tilde2; // Ttilde2 (structured)
    std::optional<double> kappa_cbar;   // T_cbar
};

// 1/2 max(kappa1 W1^2, ktilde Ttilde, kappa T2, kcbar T_cbar*, ktilde2 Ttilde2)
//   <= (sqrt H(nu0|mu) + sqrt H(nu1|mu))^2
// Weak-cost infima are approximated from above (only strengthens the check).
VerifyOutcome check_transport_entropy(const GraphSpace& g, const Measure& nu0, const Measure& nu1,
                                      const KappaPack& pack, const MoveSet* moves = nullptr,
                                      int random_couplings = 50, uint64_t seed = 11);

// Modified log-Sobolev and Poincare inequalities for `samples` random positive f
// (log f uniform in [-2,2]) and random g.
VerifyOutcome check_mlsi_poincare(const GraphSpace& g, double kappa_tilde, double kappa_tilde2,
                                  const MoveSet* moves, int samples, uint64_t seed, int D = 1);

struct BonnetMyers {
    double bound;
    int diameter;
    bool holds;
};
// Diam <= 8 log(Delta sup m / inf m) / kappa + 1; kappa = +inf gives the limit 1.
BonnetMyers bonnet_myers_bound(const GraphSpace& g, ExtReal kappa);

// Tensorization of r and rtilde2 over a Cartesian product of two factors.
VerifyOutcome check_tensorization(const GraphSpace& g1, const GraphSpace& g2);

}  // namespace gsc

#endif
