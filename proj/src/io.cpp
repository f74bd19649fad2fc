#include "gsc/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace gsc {

json num(double x) {
    if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
    return round_sig(x, 12);
}

GraphInput parse_graph_json(const json& j, Generator gen) {
    GraphSpec spec;
    spec.generator = gen;
    for (const auto& v : j.at("vertices")) spec.vertices.push_back(v.get<std::string>());
    for (const auto& e : j.at("edges"))
        spec.edges.push_back({e.at(0).get<std::string>(), e.at(1).get<std::string>()});
    if (j.contains("rates"))
        for (auto& [key, val] : j.at("rates").items()) {
            auto arrow = key.find("->");
            if (arrow == std::string::npos) throw Error("UsageError", "rate key must be a->b");
            spec.rates[{key.substr(0, arrow), key.substr(arrow + 2)}] = val.get<double>();
        }
    if (j.contains("measure"))
        for (auto& [key, val] : j.at("measure").items()) spec.measure[key] = val.get<double>();
    GraphInput in{GraphSpace::build(spec), std::nullopt};
    if (j.contains("moves")) {
        MoveSet mv;
        for (auto& [name, mapping] : j.at("moves").items()) {
            std::vector<int> map(in.g.n(), -1);
            for (auto& [from, to] : mapping.items())
                map[in.g.vertex(from)] = in.g.vertex(to.get<std::string>());
            for (int v = 0; v < in.g.n(); ++v)
                if (map[v] < 0) map[v] = v;  // unspecified vertices fixed
            mv.names.push_back(name);
            mv.map.push_back(std::move(map));
        }
        in.moves = std::move(mv);
    }
    return in;
}

GraphInput load_graph_file(const std::string& path, Generator gen) {
    std::ifstream f(path);
    if (!f) throw Error("UsageError", "cannot open " + path);
    json j;
    f >> j;
    return parse_graph_json(j, gen);
}

Measure parse_measure_json(const GraphSpace& g, const json& j) {
    Measure m;
    for (auto& [key, val] : j.items()) m.w[g.vertex(key)] = val.get<double>();
    return m;
}

json measure_to_json(const GraphSpace& g, const Measure& m) {
    json j = json::object();
    for (auto& [v, x] : m.w)
        if (x != 0) j[g.label(v)] = num(x);
    return j;
}

Potential parse_potential_json(const GraphSpace& g, const json& j) {
    Potential v(g.n(), 0.0);
    for (auto& [key, val] : j.items()) v[g.vertex(key)] = val.get<double>();
    return v;
}

IsingSpec parse_ising_json(const json& j) {
    IsingSpec s;
    for (const auto& t : j.at("T")) s.field.push_back(t.get<double>());
    const char* mat = j.contains("V") ? "V" : "W";
    s.spin = !j.contains("V");
    for (const auto& row : j.at(mat)) {
        std::vector<double> r;
        for (const auto& x : row) r.push_back(x.get<double>());
        s.interaction.push_back(std::move(r));
    }
    if (j.contains("beta")) s.beta = j.at("beta").get<double>();
    return s;
}

namespace {

json ext_to_json(const ExtReal& r) { return r.infinite ? json("+inf") : num(r.value); }

json vertex_to_json(const VertexCurvature& vc) {
    json j;
    if (vc.boundary) {
        j["boundary"] = true;
        return j;
    }
    j["r"] = ext_to_json(vc.r);
    j["K"] = num(vc.K);
    j["mode"] = vc.mode;
    if (vc.r1) j["r1"] = num(*vc.r1);
    if (vc.rbar) j["rbar"] = num(*vc.rbar);
    if (vc.rtilde2) j["rtilde2"] = num(*vc.rtilde2);
    if (!vc.flags.empty()) j["flags"] = vc.flags;
    return j;
}

}  // namespace

json report_to_json(const GraphSpace& g, const CurvatureReport& rep) {
    json j;
    json verts = json::object();
    for (int v = 0; v < g.n(); ++v) verts[g.label(v)] = vertex_to_json(rep.per_vertex[v]);
    j["vertices"] = verts;
    json inf = json::object();
    if (rep.inf_r) inf["r"] = ext_to_json(*rep.inf_r);
    if (rep.inf_r1) inf["r1"] = num(*rep.inf_r1);
    if (rep.inf_rbar) inf["rbar"] = num(*rep.inf_rbar);
    if (rep.inf_rtilde2) inf["rtilde2"] = num(*rep.inf_rtilde2);
    j["inf"] = inf;
    return j;
}

std::string report_to_csv(const GraphSpace& g, const CurvatureReport& rep) {
    std::ostringstream os;
    os << std::setprecision(12);
    os << "vertex,r,r1,rbar,rtilde2,K,mode\n";
    auto put = [&](const std::optional<double>& v) {
        if (v) os << round_sig(*v, 12);
        os << ",";
    };
    for (int v = 0; v < g.n(); ++v) {
        const auto& vc = rep.per_vertex[v];
        os << g.label(v) << ",";
        if (vc.boundary) {
            os << ",,,,,boundary-clipped\n";
            continue;
        }
        if (vc.r.infinite)
            os << "+inf,";
        else
            os << round_sig(vc.r.value, 12) << ",";
        put(vc.r1);
        put(vc.rbar);
        put(vc.rtilde2);
        os << round_sig(vc.K, 12) << "," << vc.mode << "\n";
    }
    return os.str();
}

json outcome_to_json(const VerifyOutcome& o) {
    json j;
    j["holds"] = o.holds;
    j["slack"] = num(o.slack);
    j["samples"] = o.samples;
    j["seed"] = o.seed;
    if (!o.witness.empty()) j["witness"] = o.witness;
    if (!o.note.empty()) j["note"] = o.note;
    return j;
}

json coupling_to_json(const GraphSpace& g, const Coupling& c) {
    json rows = json::array();
    for (auto& [x, y, m] : c.joint) {
        json row;
        row["from"] = g.label(x);
        row["to"] = g.label(y);
        row["mass"] = num(m);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace gsc
