#ifndef gsc_io_hpp
#define gsc_io_hpp

#include <string>

#include "json.hpp"

#include "gsc/curvature.hpp"
#include "gsc/graph.hpp"
#include "gsc/models.hpp"
#include "gsc/transport.hpp"
#include "gsc/verify.hpp"

namespace gsc {

using nlohmann::json;

// {"vertices":[...], "edges":[[a,b],...], "rates":{"a->b":r}?, "measure":{"a":m}?, "moves":{...}?}
struct GraphInput {
    GraphSpace g;
    std::optional<MoveSet> moves;
};
GraphInput parse_graph_json(const json& j, Generator gen = Generator::Explicit);
GraphInput load_graph_file(const std::string& path, Generator gen = Generator::Explicit);

Measure parse_measure_json(const GraphSpace& g, const json& j);
json measure_to_json(const GraphSpace& g, const Measure& m);

Potential parse_potential_json(const GraphSpace& g, const json& j);

IsingSpec parse_ising_json(const json& j);

json report_to_json(const GraphSpace& g, const CurvatureReport& rep);
std::string report_to_csv(const GraphSpace& g, const CurvatureReport& rep);

json outcome_to_json(const VerifyOutcome& o);
json coupling_to_json(const GraphSpace& g, const Coupling& c);

// every double rounded to 12 significant digits, keys sorted by nlohmann's map
json num(double x);

}  // namespace gsc

#endif
