#ifndef gsc_models_hpp
#define gsc_models_hpp

#include <optional>
#include <string>
#include <vector>

#include "gsc/graph.hpp"
#include "gsc/perturb.hpp"
#include "gsc/spectral.hpp"

namespace gsc {

struct Model {
    GraphSpace g;
    std::optional<MoveSet> moves;
    std::vector<char> interior;  // vertices whose 2-ball is unclipped
    std::string name;
};

// Named constructors: hypercube:N, lattice-box:DxD[xD...], bernoulli-laplace:N,M,
// transposition:N, cycle:N, path:N, complete:N, petersen, windmill:K,M, petal:N,
// product:<spec>+<spec>.
Model make_model(const std::string& spec);

Model hypercube(int n);
Model lattice_box(const std::vector<int>& dims);
Model bernoulli_laplace(int n, int m);
Model transposition(int n);
Model cycle(int k);
Model path(int k);
Model complete(int n);
Model petersen();
Model windmill(int k, int m);
Model petal(int n);

// Cartesian product: l1 distance, product measure, direct-sum generator;
// movesets combine when both factors carry one.
Model product_space(const Model& a, const Model& b);
GraphSpace product_space(const GraphSpace& a, const GraphSpace& b);

// ---- Ising screening ------------------------------------------------------------

struct IsingSpec {
    std::vector<double> field;            // T
    std::vector<std::vector<double>> interaction;  // V on {0,1}^n or W on spins
    double beta = 1.0;                    // only for the spin convention
    bool spin = false;                    // false: v(z) = sum T z + 1/2 sum V z z on {0,1}^n
};

// potential on the hypercube(n) vertex order induced by the parameters
Potential ising_potential(const IsingSpec& spec, const GraphSpace& cube);

// Hv(z): off-diagonal matrix of discrete second differences of an arbitrary
// potential on the hypercube; for quadratic potentials Hv(z) = V for all z.
SymMatrix ising_hessian(const GraphSpace& cube, const Potential& v, int z);

// Hv(z) of a quadratic spec: constant in z and equal to V ({0,1} convention)
// resp. -4 beta W (spin convention), with no floating cancellation.
SymMatrix ising_hessian(const IsingSpec& spec, int z);

double k_series(double s);  // k(s) = (e^s - s - 1)/s, k(0) = 0

// rho(v) = 1 + lambda_min^inf(Hv)/2 - (lambda_max^inf|Hv|/2) k(|Hv|_max_inf / 2)
double rho_v(const GraphSpace& cube, const Potential& v);

// rho_tilde(W) = 1 - 2 beta lambda_max(W) - 2 beta lambda_max|W| k(2 beta |W|_max)
double rho_tilde(const SymMatrix& w, double beta);

// single-sample spin-glass screening: a seeded symmetric standard-Gaussian
// interaction matrix with zero diagonal (asymptotics are out of scope)
SymMatrix sk_sample(int n, uint64_t seed);

// ---- lattice curvature certificates ----------------------------------------------

struct LatticeBox {
    std::vector<int> dims;                // sizes per axis
    GraphSpace g;                         // built by lattice_box
    std::vector<int> coord(int v) const;  // vertex -> lattice point
    int vertex(const std::vector<int>& pt) const;
    bool margin_at_least(int v, int k) const;  // distance >= k from every wall
};
LatticeBox lattice_box_geometry(const std::vector<int>& dims);

struct LatticeAv {
    SymMatrix av;
    double lambda_max;
    bool k_bound_valid;        // lambda_max <= 0
    double k_bound;            // 1 + lambda_max/n
    double ktilde_bound;       // 1 + lambda_max
    bool dominant;             // -Av diagonally dominant (Gershgorin certificate)
};
// Av(z) from the directed second differences; z must have margin >= 2
// in every axis (BoundaryVertex otherwise).
LatticeAv lattice_av(const LatticeBox& box, const Potential& v, int z);

}  // namespace gsc

#endif
