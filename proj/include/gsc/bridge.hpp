#ifndef gsc_bridge_hpp
#define gsc_bridge_hpp

#include "gsc/graph.hpp"
#include "gsc/transport.hpp"

namespace gsc {

// Schroedinger bridge at zero temperature between Dirac measures:
// nu_t^{x,y}(z) = 1_{[x,y]}(z) r(x,z,z,y) rho_t^{d(x,y)}(d(x,z)).
// Endpoints t in {0,1} are exact Diracs.
Measure dirac_bridge(const GraphSpace& g, int x, int y, double t);

// hat nu_t(z) = sum_{x,y} nu_t^{x,y}(z) pi(x,y)
Measure mixture_bridge(const GraphSpace& g, const Coupling& pi, double t);

// binomial rho_t^d(k)
double binomial_pmf(int d, int k, double t);

}  // namespace gsc

#endif
