#ifndef gsc_perturb_hpp
#define gsc_perturb_hpp

#include <functional>
#include <vector>

#include "gsc/graph.hpp"
#include "gsc/simplex.hpp"

namespace gsc {

// Potential v: X -> R, indexed like the graph's vertices.
using Potential = std::vector<double>;

// (X, d, m_v, L_v) with m_v = e^{-v} m and L_v(x,y) = e^{(v(x)-v(y))/2} L(x,y).
// Schroedinger bridges are unchanged by this perturbation.
GraphSpace perturbed_space(const GraphSpace& g, const Potential& v);

// Dv(z,z'') = sum_{z' in ]z,z''[} (v(z'') + v(z) - 2 v(z')) l(z,z',z'')
double discrete_laplacian(const GraphSpace& g, const Potential& v, int z, int zpp);

// D_t v(x,y) = sum over ordered distance-2 pairs on [x,y] of
// Dv(z,z'') L^2(z,z'') r(x,z,z'',y) rho_t^{d-2}(d(x,z)).
double dtv(const GraphSpace& g, const Potential& v, int x, int y, double t);

// R''(t) for R(t) = int v dnu_t^{x,y}; equals d(d-1) D_t v(x,y).
double second_derivative(const GraphSpace& g, const Potential& v, int x, int y, double t);

// c^v_t(x,y) = d(d-1) int_0^1 D_s v(x,y) q_t(s) ds
double perturbation_cost(const GraphSpace& g, const Potential& v, int x, int y, double t);

// K^v(z,W) / Ktilde^v(z,W): ball instance with coefficients scaled by e^{-Dv/2}.
// W indexes into ball_profile(g,z).s2; empty W means the full sphere.
SolveResult perturbed_k(const GraphSpace& g, const Potential& v, int z,
                        const std::vector<int>& w, bool ktilde = false,
                        const SolveOptions& opt = {});

// [x,y] subset of C for all x,y in C
bool is_convex_subset(const GraphSpace& g, const std::vector<int>& c);

// Graph space restricted to a subset (measure and rates restricted); the caller
// is responsible for C being convex when bridge invariance is expected.
GraphSpace restrict_space(const GraphSpace& g, const std::vector<int>& c);

// shared quadrature: int_0^1 f(s) q_t(s) ds with q_t(s) = 2s/t on [0,t], 2(1-s)/(1-t) on [t,1]
double integrate_against_qt(const std::function<double(double)>& f, double t, double tol = 1e-10);

}  // namespace gsc

#endif
