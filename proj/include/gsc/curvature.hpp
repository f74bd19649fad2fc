#ifndef gsc_curvature_hpp
#define gsc_curvature_hpp

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gsc/common.hpp"
#include "gsc/graph.hpp"
#include "gsc/simplex.hpp"

namespace gsc {

// r(z) = -2 log K(z, S_2(z)); +infinity when S_2(z) is empty.
struct LocalR {
    ExtReal r;
    double K = 0.0;
    SolveMode mode = SolveMode::ExactEnumeration;
    bool exact = true;
};
LocalR r_local(const GraphSpace& g, int z, const SolveOptions& opt = {});

// Local lower bound on the W1-entropic curvature:
// 4 / sup over families (V-,V+,W-,W+) with d(v-,v+)=2 and d(w-,w+)=4.
// The supremum is reduced to maximal bicliques of the compatibility relation
// (monotonicity of K makes maximal families optimal). Throws KAtLeastOne.
struct LocalBound {
    double value = 0.0;
    bool capped = false;  // biclique enumeration hit its cap
};
LocalBound r1_local(const GraphSpace& g, int z, const SolveOptions& opt = {});

// rbar(z) = 4 / sup over W+,W- in S_2(z) at pairwise distance 4 of
// 1/(-log K(z,W+)) + 1/(-log K(z,W-)). Requires r(z) > 0 (NonPositiveR).
LocalBound rbar_local(const GraphSpace& g, int z, const SolveOptions& opt = {});

// rtilde2(z) = 1 - sup_W Ktilde(z,W), all W enumerated when |S_2(z)| <= cap,
// greedy growth beyond (tagged capped).
LocalBound rtilde2_local(const GraphSpace& g, int z, int subset_cap = 12,
                         const SolveOptions& opt = {});

// Motzkin-Straus shortcut on class-C balls: K(z,S_2(z)) = 1 - 1/omega(G*_z).
struct MotzkinStraus {
    double value;
    int clique_number;
    bool class_c;
    std::string reason;  // why not class C
};
MotzkinStraus motzkin_strauss_k(const GraphSpace& g, int z);

// Necessary midpoint-spreading conditions; violations certify r(z) <= 0.
struct MidpointDiagnostic {
    bool ok = true;
    std::vector<std::string> violations;
};
MidpointDiagnostic midpoint_conditions(const GraphSpace& g, int z);

struct VertexCurvature {
    ExtReal r{0, false};
    double K = 0.0;
    std::optional<double> r1, rbar, rtilde2;
    std::string mode;
    std::vector<std::string> flags;  // KAtLeastOne, NonPositiveR, EnumerationCapped, ...
    bool boundary = false;           // clipped 2-ball: local bounds suppressed
};

struct CurvatureReport {
    std::vector<VertexCurvature> per_vertex;
    std::optional<ExtReal> inf_r;
    std::optional<double> inf_r1, inf_rbar, inf_rtilde2;
};

// Per-vertex curvature bounds and graph-level infima; vertices not in
// `interior` (when given) are flagged and skipped. Parallel over vertices.
CurvatureReport curvature_report(const GraphSpace& g,
                                 const std::vector<char>* interior = nullptr,
                                 int subset_cap = 12, const SolveOptions& opt = {},
                                 int threads = 0);

// Maximal bicliques (X,Y), X x Y inside the symmetric relation `rel`;
// enumeration by closure of neighbourhood intersections, capped.
struct BicliqueList {
    std::vector<std::pair<uint64_t, uint64_t>> pairs;
    bool capped = false;
};
BicliqueList maximal_bicliques(const std::vector<uint64_t>& rel, int n, size_t cap = 10000);

}  // namespace gsc

#endif
