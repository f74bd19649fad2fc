#ifndef gsc_spectral_hpp
#define gsc_spectral_hpp

#include <vector>

#include "gsc/common.hpp"
#include "gsc/graph.hpp"

namespace gsc {

class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(int n) : n_(n), a_(n * n, 0.0) {}
    static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);

    int n() const { return n_; }
    double& at(int i, int j) { return a_[i * n_ + j]; }
    double at(int i, int j) const { return a_[i * n_ + j]; }
    void check_symmetric(double tol = 1e-12) const;
    double max_abs() const;  // max |a_ij|

private:
    int n_ = 0;
    std::vector<double> a_;
};

// Cyclic Jacobi to off-diagonal norm < 1e-12; eigenvalues ascending.
std::vector<double> sym_eigs(SymMatrix m);

// Second-smallest eigenvalue of the nonnegative operator g -> -L_2 g,
// self-adjoint in L^2(mu). The smallest eigenvalue must vanish (checked to 1e-9).
double lambda2(const GraphSpace& g);

struct CheegerConstants {
    double h_g;      // min |boundary edges| / |A| over |A| <= |X|/2
    double g_in;     // inner vertex expansion wrt mu
    double g_out;    // outer vertex expansion wrt mu
    double phi_mu;   // conductance wrt mu
    bool exact;      // exhaustive subsets vs sampled upper bounds
};
CheegerConstants cheeger_constants(const GraphSpace& g, bool allow_sampling = false,
                                   uint64_t seed = 5);

// B_ii >= sum_{j != i} |B_ij| for every row.
bool gershgorin_dominant(const SymMatrix& m);

// Exact maximum clique via Bron-Kerbosch with pivoting; returns one maximum
// clique (lexicographically smallest among maximums).
std::vector<int> max_clique(const std::vector<std::vector<char>>& adj);

// Length of the shortest cycle; INT_MAX for forests.
int girth(const GraphSpace& g);

}  // namespace gsc

#endif
