#include <climits>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "gsc/compare.hpp"
#include "gsc/io.hpp"
#include "gsc/perturb.hpp"
#include "gsc/verify.hpp"

using namespace gsc;

namespace {

struct SourceOpts {
    std::string model, graph_file, measure = "default", generator = "default";
    std::string potential_file;
};

void add_source_opts(CLI::App* cmd, SourceOpts& s) {
    auto* m = cmd->add_option("--model", s.model, "model spec, e.g. hypercube:4");
    auto* f = cmd->add_option("--graph", s.graph_file, "graph JSON file");
    m->excludes(f);
    cmd->add_option("--measure", s.measure, "uniform|FILE (default: from input)");
    cmd->add_option("--generator", s.generator, "l0|l1|l2 (default: l0 for counting m, else l1)");
    cmd->add_option("--potential", s.potential_file,
                    "potential JSON (vertex map, or {T,V} on hypercubes); builds (m_v, L_v)");
}

Generator parse_generator(const std::string& s) {
    if (s == "default") return Generator::Explicit;
    if (s == "l0") return Generator::L0;
    if (s == "l1") return Generator::L1;
    if (s == "l2") return Generator::L2;
    throw Error("UsageError", "unknown generator: " + s);
}

json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("UsageError", "cannot open " + path);
    json j;
    f >> j;
    return j;
}

Model load_source(const SourceOpts& s) {
    Model model;
    if (!s.model.empty()) {
        model = make_model(s.model);
        Generator gen = parse_generator(s.generator);
        bool uniform_override = s.measure == "uniform";
        if ((!uniform_override && s.measure != "default") || gen != Generator::Explicit) {
            GraphSpec spec;
            for (int v = 0; v < model.g.n(); ++v) spec.vertices.push_back(model.g.label(v));
            for (int v = 0; v < model.g.n(); ++v)
                for (int u : model.g.neighbors(v))
                    if (u > v) spec.edges.push_back({model.g.label(v), model.g.label(u)});
            spec.generator = gen;
            if (s.measure != "default" && !uniform_override) {
                auto j = load_json(s.measure);
                for (auto& [k, v] : j.items()) spec.measure[k] = v.get<double>();
            }
            model.g = GraphSpace::build(spec);
        }
    } else if (!s.graph_file.empty()) {
        auto in = load_graph_file(s.graph_file, parse_generator(s.generator));
        model.g = in.g;
        model.moves = in.moves;
        model.interior.assign(model.g.n(), 1);
        model.name = s.graph_file;
    } else {
        throw Error("UsageError", "exactly one of --model/--graph is required");
    }
    if (!s.potential_file.empty()) {
        auto j = load_json(s.potential_file);
        Potential v;
        if (j.contains("T")) {
            auto spec = parse_ising_json(j);
            v = ising_potential(spec, model.g);
        } else {
            v = parse_potential_json(model.g, j);
        }
        model.g = perturbed_space(model.g, v);
    }
    return model;
}

void emit(const json& j, const std::string& out_file) {
    std::string text = j.dump(2) + "\n";
    if (!out_file.empty()) {
        std::ofstream f(out_file);
        f << text;
    }
    std::cout << text;
}

std::vector<double> parse_grid(const std::string& s) {
    std::vector<double> g;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) g.push_back(std::stod(tok));
    return g;
}

int cmd_curvature(const SourceOpts& src, const std::string& out, int subset_cap, bool csv,
                  bool heuristic) {
    Model m = load_source(src);
    SolveOptions opt;
    if (heuristic) opt.allow_grid = false;
    auto rep = curvature_report(m.g, m.interior.empty() ? nullptr : &m.interior, subset_cap, opt);
    if (csv) {
        auto text = report_to_csv(m.g, rep);
        if (!out.empty()) std::ofstream(out) << text;
        std::cout << text;
    } else {
        emit(report_to_json(m.g, rep), out);
    }
    if (rep.inf_r) {
        if (rep.inf_r->infinite)
            std::cerr << "inf r = +inf (complete graph)\n";
        else
            std::cerr << "inf r = " << std::setprecision(12) << round_sig(rep.inf_r->value, 12)
                      << "\n";
    }
    return 0;
}

int cmd_bridge(const SourceOpts& src, const std::string& from, const std::string& to, double t,
               const std::string& out) {
    Model m = load_source(src);
    auto nu = dirac_bridge(m.g, m.g.vertex(from), m.g.vertex(to), t);
    emit(measure_to_json(m.g, nu), out);
    return 0;
}

int cmd_w1(const SourceOpts& src, const std::string& nu0f, const std::string& nu1f,
           const std::string& out) {
    Model m = load_source(src);
    auto nu0 = parse_measure_json(m.g, load_json(nu0f));
    auto nu1 = parse_measure_json(m.g, load_json(nu1f));
    auto pi = w1_coupling(m.g, nu0, nu1);
    json j;
    j["cost"] = num(pi.cost(m.g));
    j["coupling"] = coupling_to_json(m.g, pi);
    emit(j, out);
    return 0;
}

int finish_verification(const VerifyOutcome& o, const std::string& out) {
    emit(outcome_to_json(o), out);
    return o.holds ? 0 : 1;
}

int cmd_verify(const std::string& what, const SourceOpts& src, const std::string& model2,
               const std::string& cost_name, std::optional<double> kappa_flag, int samples,
               uint64_t seed, const std::string& t_grid_str, const std::string& out) {
    Model m = load_source(src);
    if (what == "tensorization") {
        if (model2.empty()) throw Error("UsageError", "tensorization needs --model2");
        Model m2 = make_model(model2);
        return finish_verification(check_tensorization(m.g, m2.g), out);
    }
    if (what == "bonnet-myers") {
        auto rep = curvature_report(m.g, m.interior.empty() ? nullptr : &m.interior);
        ExtReal kappa = kappa_flag ? ExtReal::finite(*kappa_flag) : *rep.inf_r;
        auto bm = bonnet_myers_bound(m.g, kappa);
        json j;
        j["bound"] = num(bm.bound);
        j["diameter"] = bm.diameter;
        j["holds"] = bm.holds;
        emit(j, out);
        return bm.holds ? 0 : 1;
    }

    auto rep = curvature_report(m.g, m.interior.empty() ? nullptr : &m.interior);
    Rng rng(seed);
    if (what == "displacement") {
        CostKind kind = cost_kind_from_name(cost_name);
        double kappa;
        if (kappa_flag) {
            kappa = *kappa_flag;
        } else {
            switch (kind) {
                case CostKind::T2: kappa = rep.inf_r ? (rep.inf_r->infinite ? 0 : rep.inf_r->value) : 0; break;
                case CostKind::W1Sq: kappa = rep.inf_r1.value_or(0); break;
                case CostKind::Ttilde:
                case CostKind::TtildeSum:
                    kappa = rep.inf_r ? 1 - std::exp(-(rep.inf_r->infinite ? kInf : rep.inf_r->value)) : 0;
                    break;
                case CostKind::CbarT: kappa = rep.inf_rbar.value_or(0); break;
                default: kappa = rep.inf_rtilde2.value_or(0); break;
            }
        }
        const MoveSet* moves = m.moves ? &*m.moves : nullptr;
        int D = 1;
        if (kind == CostKind::CtildeD && moves && !moves_idempotent_within_one(m.g, *moves))
            D = m.g.diameter();
        std::vector<double> grid = t_grid_str.empty()
                                       ? std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}
                                       : parse_grid(t_grid_str);
        VerifyOutcome agg;
        agg.seed = seed;
        for (int i = 0; i < samples; ++i) {
            auto nu0 = random_measure(m.g, rng);
            auto nu1 = random_measure(m.g, rng);
            auto o = check_displacement(m.g, nu0, nu1, kind, kappa, grid, moves, D);
            agg.samples += o.samples;
            if (o.slack < agg.slack) {
                agg.slack = o.slack;
                agg.witness = o.witness;
            }
            agg.holds = agg.holds && o.holds;
        }
        agg.note = "cost " + std::string(cost_kind_name(kind)) + ", kappa " +
                   std::to_string(kappa);
        return finish_verification(agg, out);
    }
    if (what == "pl") {
        double kappa_c = kappa_flag ? *kappa_flag
                                    : (rep.inf_r && !rep.inf_r->infinite ? rep.inf_r->value : 0.0);
        auto c_t = [](int d) { return (double)d * (d - 1); };
        double tt = t_grid_str.empty() ? 0.5 : parse_grid(t_grid_str).front();
        VerifyOutcome agg;
        agg.seed = seed;
        for (int i = 0; i < samples; ++i) {
            std::vector<double> f(m.g.n()), gg(m.g.n());
            for (auto& x : f) x = rng.uniform(-1, 1);
            for (auto& x : gg) x = rng.uniform(-1, 1);
            auto h = pl_minimal_h(m.g, f, gg, tt, kappa_c, c_t);
            auto o = check_prekopa_leindler(m.g, f, gg, h, tt, kappa_c, c_t);
            agg.samples += o.samples;
            if (o.slack < agg.slack) {
                agg.slack = o.slack;
                agg.witness = o.witness;
            }
            agg.holds = agg.holds && o.holds;
        }
        return finish_verification(agg, out);
    }
    if (what == "transport-entropy") {
        KappaPack pack;
        if (rep.inf_r && !rep.inf_r->infinite && rep.inf_r->value > 0) {
            pack.kappa = rep.inf_r->value;
            pack.kappa_tilde = 1 - std::exp(-rep.inf_r->value);
        }
        if (rep.inf_r1 && *rep.inf_r1 > 0) pack.kappa1 = *rep.inf_r1;
        if (rep.inf_rbar && *rep.inf_rbar > 0) pack.kappa_cbar = *rep.inf_rbar;
        if (rep.inf_rtilde2 && *rep.inf_rtilde2 > 0 && m.moves) pack.kappa_tilde2 = *rep.inf_rtilde2;
        VerifyOutcome agg;
        agg.seed = seed;
        for (int i = 0; i < samples; ++i) {
            auto nu0 = random_measure(m.g, rng);
            auto nu1 = random_measure(m.g, rng);
            auto o = check_transport_entropy(m.g, nu0, nu1, pack, m.moves ? &*m.moves : nullptr,
                                             50, seed + i);
            agg.samples += o.samples;
            if (o.slack < agg.slack) {
                agg.slack = o.slack;
                agg.witness = o.witness;
            }
            agg.holds = agg.holds && o.holds;
        }
        return finish_verification(agg, out);
    }
    if (what == "mlsi") {
        double ktilde = 0, ktilde2 = 0;
        if (rep.inf_r && !rep.inf_r->infinite && rep.inf_r->value > 0)
            ktilde = 1 - std::exp(-rep.inf_r->value);
        if (rep.inf_r && rep.inf_r->infinite) ktilde = 1;
        if (rep.inf_rtilde2 && m.moves) ktilde2 = *rep.inf_rtilde2;
        if (kappa_flag) ktilde2 = *kappa_flag;
        int D = 1;
        if (m.moves && !moves_idempotent_within_one(m.g, *m.moves)) D = m.g.diameter();
        auto o = check_mlsi_poincare(m.g, ktilde, ktilde2, m.moves ? &*m.moves : nullptr, samples,
                                     seed, D);
        return finish_verification(o, out);
    }
    throw Error("UsageError", "unknown verification: " + what);
}

int cmd_ising(const std::string& spec_file, const std::string& sweep, int sk_n, uint64_t seed,
              const std::string& out) {
    IsingSpec spec;
    if (sk_n > 0) {
        auto w = sk_sample(sk_n, seed);
        spec.spin = true;
        spec.field.assign(sk_n, 0.0);
        spec.interaction.assign(sk_n, std::vector<double>(sk_n, 0.0));
        for (int i = 0; i < sk_n; ++i)
            for (int j = 0; j < sk_n; ++j) spec.interaction[i][j] = w.at(i, j);
        spec.beta = 0.25 / std::sqrt((double)sk_n);
    } else {
        spec = parse_ising_json(load_json(spec_file));
    }
    int n = (int)spec.field.size();
    if (!sweep.empty()) {
        // beta sweep of rho_tilde for the spin convention: "a:b:step"
        auto c1 = sweep.find(':'), c2 = sweep.rfind(':');
        if (c1 == std::string::npos || c2 == c1) throw Error("UsageError", "--beta-sweep a:b:step");
        double a = std::stod(sweep.substr(0, c1));
        double b = std::stod(sweep.substr(c1 + 1, c2 - c1 - 1));
        double step = std::stod(sweep.substr(c2 + 1));
        SymMatrix w(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) w.at(i, j) = i == j ? 0.0 : spec.interaction[i][j];
        std::ostringstream os;
        os << std::setprecision(12);
        os << "beta,rho_tilde\n";
        for (double beta = a; beta <= b + 1e-12; beta += step) {
            if (beta <= 0) continue;
            os << round_sig(beta, 12) << "," << round_sig(rho_tilde(w, beta), 12) << "\n";
        }
        if (!out.empty()) std::ofstream(out) << os.str();
        std::cout << os.str();
        return 0;
    }
    json j;
    if (n <= 10) {
        auto cube = hypercube(n);
        auto v = ising_potential(spec, cube.g);
        j["rho_v"] = num(rho_v(cube.g, v));
    }
    if (spec.spin) {
        SymMatrix w(n);
        for (int i = 0; i < n; ++i)
            for (int jx = 0; jx < n; ++jx) w.at(i, jx) = i == jx ? 0.0 : spec.interaction[i][jx];
        j["rho_tilde"] = num(rho_tilde(w, spec.beta));
    }
    const char* cert = j.contains("rho_tilde") ? "rho_tilde" : j.contains("rho_v") ? "rho_v" : "";
    if (*cert) {
        double rho = j[cert].get<double>();
        if (rho > 0) {  // curvature consequences of a positive certificate
            j["kappa1_lower"] = num(4 * rho / n);
            j["kappa_tilde2_lower"] = num(rho);
            j["kappa_cbar_lower"] = num(4 * rho / n);
        }
    }
    emit(j, out);
    return 0;
}

int cmd_lattice(const std::string& dims_str, const std::string& potential_file,
                const std::string& out) {
    std::vector<int> dims;
    std::stringstream ss(dims_str);
    std::string tok;
    while (std::getline(ss, tok, 'x')) dims.push_back(std::stoi(tok));
    auto box = lattice_box_geometry(dims);
    auto j = load_json(potential_file);
    Potential v = parse_potential_json(box.g, j);
    json rows = json::object();
    for (int z = 0; z < box.g.n(); ++z) {
        if (!box.margin_at_least(z, 2)) continue;
        auto av = lattice_av(box, v, z);
        json row;
        row["lambda_max"] = num(av.lambda_max);
        row["gershgorin_dominant"] = av.dominant;
        if (av.k_bound_valid) {
            row["K_bound"] = num(av.k_bound);
            row["Ktilde_bound"] = num(av.ktilde_bound);
        }
        rows[box.g.label(z)] = row;
    }
    json top;
    top["interior"] = rows;
    emit(top, out);
    return 0;
}

int cmd_compare(const SourceOpts& src, uint64_t seed, const std::string& out) {
    Model m = load_source(src);
    auto rep = curvature_report(m.g, m.interior.empty() ? nullptr : &m.interior);
    json j;
    json verts = json::object();
    Rng rng(seed);
    for (int z = 0; z < m.g.n(); ++z) {
        json row;
        const auto& vc = rep.per_vertex[z];
        row["r"] = vc.r.infinite ? json("+inf") : num(vc.r.value);
        double g2min = kInf;
        for (int s = 0; s < 50; ++s) {
            std::vector<double> f(m.g.n());
            for (auto& x : f) x = rng.uniform(-1, 1);
            g2min = std::min(g2min, gamma2(m.g, f, z));
        }
        row["gamma2_min"] = num(g2min);
        verts[m.g.label(z)] = row;
    }
    j["vertices"] = verts;
    json edges = json::array();
    for (int x = 0; x < m.g.n(); ++x)
        for (int y : m.g.neighbors(x)) {
            if (y < x) continue;
            json e;
            e["edge"] = m.g.label(x) + "-" + m.g.label(y);
            e["lly"] = num(lly_curvature(m.g, x, y));
            edges.push_back(e);
        }
    j["edges"] = edges;
    emit(j, out);
    return 0;
}

int cmd_model_info(const SourceOpts& src, const std::string& out) {
    Model m = load_source(src);
    json j;
    j["name"] = m.name;
    j["vertices"] = m.g.n();
    int edges = 0;
    for (int v = 0; v < m.g.n(); ++v) edges += m.g.degree(v);
    j["edges"] = edges / 2;
    j["diameter"] = m.g.diameter();
    j["max_degree"] = m.g.max_degree();
    j["girth"] = girth(m.g) == INT_MAX ? json("acyclic") : json(girth(m.g));
    if (m.moves) {
        auto d = validate_moves(m.g, *m.moves);
        j["moves"] = m.moves->size();
        j["structured"] = d.ok;
        if (!d.ok) j["axiom_violated"] = d.axiom;
        else {
            j["moves_idempotent_within_one"] = moves_idempotent_within_one(m.g, *m.moves);
            j["rates_commute"] = rates_commute_on_moves(m.g, *m.moves);
        }
    }
    emit(j, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropic curvature bounds, bridges and functional-inequality checks on graph spaces"};
    app.require_subcommand(1);

    SourceOpts src;
    std::string out, model2, cost = "t2", t_grid, what;
    std::string from, to, nu0f, nu1f, spec_file, sweep, dims;
    double t = 0.5;
    std::optional<double> kappa_flag;
    double kappa_val = 0;
    int samples = 20, subset_cap = 12;
    uint64_t seed = 1;
    bool csv = false, heuristic = false;

    auto* c_curv = app.add_subcommand("curvature", "per-vertex curvature report");
    add_source_opts(c_curv, src);
    c_curv->add_option("--out", out);
    c_curv->add_option("--subset-cap", subset_cap, "full W enumeration cap (default 12)");
    c_curv->add_flag("--csv", csv, "CSV instead of JSON");
    bool exact = false;
    c_curv->add_flag("--exact", exact, "exact/clique modes where applicable (default)");
    c_curv->add_flag("--heuristic", heuristic, "skip grid-exact mode");

    auto* c_bridge = app.add_subcommand("bridge", "Schroedinger bridge between Dirac measures");
    add_source_opts(c_bridge, src);
    c_bridge->add_option("--from", from)->required();
    c_bridge->add_option("--to", to)->required();
    c_bridge->add_option("--t", t)->required();
    c_bridge->add_option("--out", out);

    auto* c_w1 = app.add_subcommand("w1", "W1-optimal coupling via exact LP");
    add_source_opts(c_w1, src);
    c_w1->add_option("--nu0", nu0f)->required();
    c_w1->add_option("--nu1", nu1f)->required();
    c_w1->add_option("--out", out);

    auto* c_verify = app.add_subcommand(
        "verify", "displacement | pl | transport-entropy | mlsi | bonnet-myers | tensorization");
    add_source_opts(c_verify, src);
    c_verify->add_option("what", what)->required();
    c_verify->add_option("--model2", model2, "second factor for tensorization");
    c_verify->add_option("--cost", cost, "t2|w1sq|ttilde|ttilde2|ctilde1|cbar");
    auto* kopt = c_verify->add_option("--kappa", kappa_val, "override the curvature constant");
    c_verify->add_option("--samples", samples);
    c_verify->add_option("--seed", seed);
    c_verify->add_option("--t-grid", t_grid, "comma-separated interior times");
    c_verify->add_option("--out", out);

    int sk_n = 0;
    auto* c_ising = app.add_subcommand("ising", "rho/rho_tilde screening for Ising potentials");
    auto* ispec = c_ising->add_option("--spec", spec_file);
    auto* isk = c_ising->add_option("--sk", sk_n, "draw one seeded Gaussian interaction sample");
    ispec->excludes(isk);
    c_ising->add_option("--seed", seed);
    c_ising->add_option("--beta-sweep", sweep, "a:b:step CSV sweep of rho_tilde");
    c_ising->add_option("--out", out);

    auto* c_lattice = app.add_subcommand("lattice", "Av(z) certificates on a lattice box");
    c_lattice->add_option("--dims", dims)->required();
    c_lattice->add_option("--potential", spec_file)->required();
    c_lattice->add_option("--out", out);

    auto* c_compare = app.add_subcommand("compare", "entropic vs Lin-Lu-Yau vs Gamma2 table");
    add_source_opts(c_compare, src);
    c_compare->add_option("--seed", seed);
    c_compare->add_option("--out", out);

    auto* c_info = app.add_subcommand("model-info", "size, diameter, moveset diagnostics");
    add_source_opts(c_info, src);
    c_info->add_option("--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (kopt->count()) kappa_flag = kappa_val;
        if (c_curv->parsed()) return cmd_curvature(src, out, subset_cap, csv, heuristic);
        if (c_bridge->parsed()) return cmd_bridge(src, from, to, t, out);
        if (c_w1->parsed()) return cmd_w1(src, nu0f, nu1f, out);
        if (c_verify->parsed())
            return cmd_verify(what, src, model2, cost, kappa_flag, samples, seed, t_grid, out);
        if (c_ising->parsed()) {
            if (spec_file.empty() && sk_n <= 0)
                throw Error("UsageError", "ising needs --spec or --sk");
            return cmd_ising(spec_file, sweep, sk_n, seed, out);
        }
        if (c_lattice->parsed()) return cmd_lattice(dims, spec_file, out);
        if (c_compare->parsed()) return cmd_compare(src, seed, out);
        if (c_info->parsed()) return cmd_model_info(src, out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == "UsageError" ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
