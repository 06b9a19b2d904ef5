import random
from fractions import Fraction

import pytest

from oracles import lp_kappa
from ricci_sharp.curvature import curvature_sweep, kappa_lly, kappa_p, lly_idleness
from ricci_sharp.graphs import Graph, GraphError, complete_graph, cycle_graph, generate, path_graph


def test_kappa_p_examples():
    assert kappa_p(complete_graph(2), 0, 1, 0) == 0
    K3 = complete_graph(3)
    assert all(kappa_p(K3, x, y, Fraction(1, 3)) == 1 for x, y in K3.edges())
    assert kappa_p(cycle_graph(4), 0, 1, Fraction(1, 3)) == Fraction(2, 3)


def test_kappa_lly_examples():
    assert kappa_lly(complete_graph(2), 0, 1) == 2
    G = generate("G:1,2")
    # vertices u1 u2 v1 v2 -> 0 1 2 3
    assert kappa_lly(G, 2, 3) == Fraction(4, 3)
    C4 = cycle_graph(4)
    assert all(kappa_lly(C4, x, y) == 1 for x, y in C4.edges())


def test_non_edge_rejected():
    with pytest.raises(GraphError):
        kappa_lly(cycle_graph(4), 0, 2)
    with pytest.raises(GraphError):
        kappa_p(cycle_graph(4), 0, 2, Fraction(1, 2))


def test_sweep_g21():
    rep = curvature_sweep(generate("G:2,1"))
    assert {e.kappa_lly for e in rep.edges} == {1}
    assert rep.min_curvature == 1 and rep.diameter == 2


@pytest.mark.parametrize("expr, value", [("Q:3", Fraction(2, 3)), ("K:4", Fraction(4, 3))])
def test_sweep_against_oracle(expr, value):
    G = generate(expr)
    rep = curvature_sweep(G)
    for e in rep.edges:
        x, y = e.edge
        p = lly_idleness(G, x, y)
        assert lp_kappa(G, x, y, p) / (1 - p) == e.kappa_lly == value


def test_sweep_order_and_table():
    G = generate("AT:1,2,2")
    rep = curvature_sweep(G)
    assert [e.edge for e in rep.edges] == G.edges()
    table = rep.table(G)
    assert "kappa_LLY" in table and "min kappa_LLY" in table


def test_sweep_rejects_disconnected():
    with pytest.raises(GraphError):
        curvature_sweep(Graph.from_edges(4, [(0, 1), (2, 3)]))


def test_sweep_parallel_matches_serial():
    G = generate("CP:3")
    assert curvature_sweep(G, jobs=2) == curvature_sweep(G)


FIXTURES = ["Q:3", "G:2,3", "AT:1,2,4,2,1", "J:5,2", "CP:3", "K:2*K:3", "AT:2,3,1", "DemiQ:4"]


def _fixture_edges(seed, count):
    rng = random.Random(seed)
    graphs = [generate(e) for e in FIXTURES] + [cycle_graph(5), path_graph(4), cycle_graph(7)]
    for _ in range(count):
        G = rng.choice(graphs)
        yield rng, G, rng.choice(G.edges())


def test_idleness_linearity_on_final_piece():
    for rng, G, (x, y) in _fixture_edges(11, 40):
        k = kappa_lly(G, x, y)
        lo = lly_idleness(G, x, y)
        for _ in range(3):
            p = lo + (1 - lo) * Fraction(rng.randint(0, 12), 12)
            assert kappa_p(G, x, y, p) == (1 - p) * k


def test_concavity():
    for rng, G, (x, y) in _fixture_edges(12, 25):
        ps = sorted({Fraction(rng.randint(0, 24), 24) for _ in range(3)})
        if len(ps) < 3:
            continue
        p1, p2, p3 = ps
        k1, k2, k3 = (kappa_p(G, x, y, p) for p in ps)
        chord = k1 + (k3 - k1) * (p2 - p1) / (p3 - p1)
        assert k2 >= chord


def test_symmetry_and_upper_bound():
    for _, G, (x, y) in _fixture_edges(13, 30):
        assert kappa_lly(G, x, y) == kappa_lly(G, y, x)
        assert kappa_lly(G, x, y) <= 2


@pytest.mark.parametrize(
    "expr", FIXTURES + ["K:5", "CP:4", "Q:4", "AT:1,3,3,1", "AT:1,1,3,1,1", "G:1,4", "Q:2*K:3"]
)
def test_bonnet_myers_inequality(expr):
    rep = curvature_sweep(generate(expr))
    if rep.min_curvature > 0:
        assert rep.min_curvature <= Fraction(2, rep.diameter)
