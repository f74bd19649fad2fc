#ifndef gsc_compare_hpp
#define gsc_compare_hpp

#include "gsc/graph.hpp"
#include "gsc/transport.hpp"

namespace gsc {

// alpha-lazy walk m_x^alpha: alpha/Delta(G) on neighbours, remainder at x
Measure lazy_walk(const GraphSpace& g, int x, double alpha);

// kappa_alpha(x,y) = 1 - W1(m_x^alpha, m_y^alpha)/d(x,y)
double kappa_alpha(const GraphSpace& g, int x, int y, double alpha);

// Lin-Lu-Yau curvature: limit of kappa_alpha/alpha as alpha -> 0, evaluated at
// two small alphas which must agree to 1e-6 (kappa_alpha is piecewise linear
// near 0); halves alpha up to 10 times, then NoConvergence.
double lly_curvature(const GraphSpace& g, int x, int y);

// Bakry-Emery iterated carre du champ at z for the counting-measure generator:
// 2 Gamma2(f) = L0 Gamma(f) - 2 Gamma(f, L0 f).
double gamma2(const GraphSpace& g, const std::vector<double>& f, int z);
double gamma2_bilinear(const GraphSpace& g, const std::vector<double>& f,
                       const std::vector<double>& h, int z);

// closed square-sum identity, valid when all moves pairwise commute
double gamma2_commuting(const GraphSpace& g, const MoveSet& moves, const std::vector<double>& f,
                        int z);
bool moves_commute(const GraphSpace& g, const MoveSet& moves);

}  // namespace gsc

#endif
