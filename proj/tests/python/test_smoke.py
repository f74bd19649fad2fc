import json
import math

import pytest

gsc = pytest.importorskip("gsc")


def test_hypercube_curvature_closed_forms():
    m = gsc.make_model("hypercube:3")
    assert m.n == 8
    assert m.structured()
    r, K = gsc.r_local(m, "000")
    assert K == pytest.approx(2.0 / 3, abs=1e-9)
    assert r == pytest.approx(-2 * math.log(2.0 / 3), abs=1e-9)

    rep = gsc.curvature_report(m)
    assert rep["inf"]["r1"] == pytest.approx(4.0 / 3, abs=1e-8)
    assert rep["inf"]["rtilde2"] == pytest.approx(1.0, abs=1e-10)


def test_complete_graph_is_infinitely_curved():
    m = gsc.make_model("complete:5")
    rep = gsc.curvature_report(m)
    assert rep["inf"]["r"] == "+inf"


def test_bridge_normalization_and_endpoints():
    m = gsc.make_model("hypercube:2")
    nu = gsc.bridge(m, "00", "11", 0.5)
    assert sum(nu.values()) == pytest.approx(1.0, abs=1e-12)
    assert all(abs(p - 0.25) < 1e-12 for p in nu.values())
    assert gsc.bridge(m, "00", "11", 0.0) == {"00": 1.0}


def test_w1_is_the_graph_distance_on_diracs():
    m = gsc.make_model("petersen")
    assert gsc.w1(m, {"v0": 1.0}, {"v7": 1.0}) == pytest.approx(m.dist("v0", "v7"))


def test_relative_entropy():
    m = gsc.make_model("hypercube:3")
    unif = {m.label(v): 1.0 / 8 for v in range(8)}
    assert gsc.relative_entropy(m, unif) == pytest.approx(-3 * math.log(2), abs=1e-12)


def test_lambda2_and_clique():
    assert gsc.lambda2(gsc.make_model("hypercube:4")) == pytest.approx(2.0, abs=1e-9)
    adj = [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    assert gsc.max_clique_number(adj) == 3


def test_rho_tilde_signs():
    w = [[0.0 if i == j else 1.0 for j in range(10)] for i in range(10)]
    assert gsc.rho_tilde(w, 0.04) > 0
    assert gsc.rho_tilde(w, 0.2) < 0


def test_lly_windmill():
    m = gsc.make_model("windmill:4,2")
    assert gsc.lly_curvature(m, "w0_0", "w0_1") == pytest.approx(2.0 / 3, abs=1e-6)


def test_verify_displacement():
    m = gsc.make_model("hypercube:3")
    holds, slack = gsc.verify_displacement(m, "t2", -2 * math.log(2.0 / 3), samples=5, seed=3)
    assert holds
    assert slack >= -1e-9


def test_graph_json_roundtrip():
    spec = {
        "vertices": ["a", "b", "c"],
        "edges": [["a", "b"], ["b", "c"], ["a", "c"]],
    }
    m = gsc.load_graph_json(json.dumps(spec))
    assert m.n == 3
    assert m.diameter() == 1
