#ifndef gsc_simplex_hpp
#define gsc_simplex_hpp

#include <string>
#include <utility>
#include <vector>

#include "gsc/common.hpp"
#include "gsc/graph.hpp"

namespace gsc {

// Constrained maximization over the probability simplex.
//
// K-form:      F(a) = sum_w c_w prod_j a_j^{e_wj}          with sum_j e_wj = 2
// Ktilde-form: F(b) = sum_w c_w prod_j b_j^{e_wj}
//                     - sum_{(i,j) in penalty_pairs} sqrt(b_i) sqrt(b_j)
//              with sum_j e_wj = 1 and penalty_pairs listing ordered pairs.
struct SimplexInstance {
    struct Term {
        double c;
        std::vector<std::pair<int, double>> expo;  // (variable, exponent)
    };
    int n_vars = 0;
    std::vector<Term> terms;
    std::vector<std::pair<int, int>> penalty_pairs;
    bool ktilde = false;

    double objective(const std::vector<double>& a) const;
};

enum class SolveMode { ExactEnumeration, CliqueReduction, MultistartAscent };

struct SolveResult {
    double value = 0.0;
    std::vector<double> argmax;
    SolveMode mode = SolveMode::ExactEnumeration;
    bool exact = true;
    std::string certificate;
};

struct SolveOptions {
    bool allow_clique = true;
    bool allow_diagonal = true;
    bool allow_grid = true;
    int multistarts = 64;
    std::vector<std::vector<double>> extra_seeds;
};

const char* mode_name(SolveMode m);

// sup of a K-form instance over the simplex. Empty term list gives 0.
SolveResult solve_k(const SimplexInstance& inst, const SolveOptions& opt = {});

// sup of a Ktilde-form instance.
SolveResult solve_k_tilde(const SimplexInstance& inst, const SolveOptions& opt = {});

// Instances for K_L(z,W) / Ktilde_L(z,W) on the ball of a graph space.
// W is given as indices into profile.s2. dv_offsets, when present, multiplies
// the coefficient of z'' by exp(-Dv(z,z'')/2) (perturbed kernels K^v, Ktilde^v).
SimplexInstance k_instance(const GraphSpace& g, const BallProfile& p, const std::vector<int>& w,
                           bool ktilde, const std::vector<double>* dv_offsets = nullptr);

// K_L(S): alternating maximization over the two sides of a d-cyclically
// monotone set, each inner step a solve_k-type problem under a quadratic-sum
// normalization.
SolveResult solve_k_set(const CyclicSet& s, const GraphSpace& g, uint64_t seed = 23);

// Local lower bound on R_1(S): 4 / sup_z { 1/(1-K(z,VV->)) + 1/(1-K(z,VV<-)) }.
// Throws KAtLeastOne when some involved K reaches 1.
double solve_r1_set(const CyclicSet& s, const GraphSpace& g);

}  // namespace gsc

#endif
