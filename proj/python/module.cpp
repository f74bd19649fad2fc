#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gsc/compare.hpp"
#include "gsc/curvature.hpp"
#include "gsc/io.hpp"
#include "gsc/models.hpp"
#include "gsc/perturb.hpp"
#include "gsc/verify.hpp"

namespace py = pybind11;
using namespace gsc;

namespace {

Measure measure_from_dict(const GraphSpace& g, const py::dict& d) {
    Measure m;
    for (auto item : d) m.w[g.vertex(py::cast<std::string>(item.first))] = py::cast<double>(item.second);
    return m;
}

py::dict measure_to_dict(const GraphSpace& g, const Measure& m) {
    py::dict d;
    for (auto& [v, x] : m.w)
        if (x != 0) d[py::str(g.label(v))] = x;
    return d;
}

}  // namespace

PYBIND11_MODULE(gsc, m) {
    m.doc() = "entropic curvature bounds, Schroedinger bridges and W1 transport on graph spaces";

    py::register_exception<Error>(m, "GscError");

    py::class_<Model>(m, "Model")
        .def_property_readonly("name", [](const Model& md) { return md.name; })
        .def_property_readonly("n", [](const Model& md) { return md.g.n(); })
        .def("label", [](const Model& md, int v) { return md.g.label(v); })
        .def("vertex", [](const Model& md, const std::string& s) { return md.g.vertex(s); })
        .def("dist", [](const Model& md, const std::string& x, const std::string& y) {
            return md.g.dist(md.g.vertex(x), md.g.vertex(y));
        })
        .def("diameter", [](const Model& md) { return md.g.diameter(); })
        .def("structured", [](const Model& md) {
            return md.moves && validate_moves(md.g, *md.moves).ok;
        });

    m.def("make_model", &make_model, py::arg("spec"),
          "hypercube:N, lattice-box:AxB, petersen, windmill:K,M, petal:N, product:a+b, ...");

    m.def("load_graph_json", [](const std::string& text) {
        auto in = parse_graph_json(json::parse(text));
        Model md{in.g, in.moves, std::vector<char>(in.g.n(), 1), "json"};
        return md;
    });

    m.def("curvature_report", [](const Model& md, int subset_cap) {
        auto rep = curvature_report(md.g, md.interior.empty() ? nullptr : &md.interior, subset_cap);
        return py::module_::import("json").attr("loads")(report_to_json(md.g, rep).dump());
    }, py::arg("model"), py::arg("subset_cap") = 12);

    m.def("r_local", [](const Model& md, const std::string& z) {
        auto r = r_local(md.g, md.g.vertex(z));
        return py::make_tuple(r.r.infinite ? kInf : r.r.value, r.K);
    }, "returns (r(z), K(z,S2(z)))");

    m.def("bridge", [](const Model& md, const std::string& x, const std::string& y, double t) {
        return measure_to_dict(md.g, dirac_bridge(md.g, md.g.vertex(x), md.g.vertex(y), t));
    });

    m.def("w1", [](const Model& md, const py::dict& nu0, const py::dict& nu1) {
        return w1_distance(md.g, measure_from_dict(md.g, nu0), measure_from_dict(md.g, nu1));
    });

    m.def("relative_entropy", [](const Model& md, const py::dict& nu) {
        auto h = relative_entropy(measure_from_dict(md.g, nu), Measure::from_counting(md.g));
        return h.infinite ? kInf : h.value;
    });

    m.def("lambda2", [](const Model& md) { return lambda2(md.g); });

    m.def("max_clique_number", [](const std::vector<std::vector<int>>& adj) {
        std::vector<std::vector<char>> a(adj.size());
        for (size_t i = 0; i < adj.size(); ++i) a[i].assign(adj[i].begin(), adj[i].end());
        return (int)max_clique(a).size();
    });

    m.def("rho_tilde", [](const std::vector<std::vector<double>>& w, double beta) {
        return rho_tilde(SymMatrix::from_rows(w), beta);
    });

    m.def("lly_curvature", [](const Model& md, const std::string& x, const std::string& y) {
        return lly_curvature(md.g, md.g.vertex(x), md.g.vertex(y));
    });

    m.def("verify_displacement",
          [](const Model& md, const std::string& cost, double kappa, int samples, uint64_t seed) {
              Rng rng(seed);
              CostKind kind = cost_kind_from_name(cost);
              const MoveSet* moves = md.moves ? &*md.moves : nullptr;
              double worst = kInf;
              bool holds = true;
              for (int i = 0; i < samples; ++i) {
                  auto nu0 = random_measure(md.g, rng);
                  auto nu1 = random_measure(md.g, rng);
                  auto o = check_displacement(md.g, nu0, nu1, kind, kappa,
                                              {0.1, 0.3, 0.5, 0.7, 0.9}, moves, 1);
                  worst = std::min(worst, o.slack);
                  holds = holds && o.holds;
              }
              return py::make_tuple(holds, worst);
          },
          py::arg("model"), py::arg("cost"), py::arg("kappa"), py::arg("samples") = 10,
          py::arg("seed") = 1);
}
