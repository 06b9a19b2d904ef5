import itertools

import numpy as np
import pytest

from ricci_sharp.graphs import (
    UNREACHABLE,
    DisconnectedGraphError,
    Graph,
    GraphError,
    build_graph,
    cartesian_product,
    complement,
    complete_graph,
    cycle_graph,
    diameter,
    format_edge_list,
    generate,
    matching_complement_decompose,
    parse_edge_list,
    parse_family,
    path_graph,
)


def test_build_k2():
    G = build_graph(2, [(0, 1)])
    assert G.edges() == [(0, 1)]
    assert diameter(G) == 1


def test_build_c4_is_cp2():
    G = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    H = generate("CP:2")
    assert sorted(G.degrees()) == sorted(H.degrees()) == [2] * 4
    assert matching_complement_decompose(G) == (2, 0)


def test_build_disconnected():
    G = build_graph(3, [])
    assert (G.distances[0, 1:] == UNREACHABLE).all()
    assert not G.is_connected()
    with pytest.raises(DisconnectedGraphError):
        diameter(G)


def test_build_deduplicates_and_symmetrizes():
    G = build_graph(3, [(0, 1), (1, 0), (0, 1)])
    assert G.edges() == [(0, 1)]
    assert G.has_edge(1, 0)


@pytest.mark.parametrize("edges", [[(0, 3)], [(1, 1)], [(-1, 0)]])
def test_build_rejects(edges):
    with pytest.raises(GraphError):
        build_graph(3, edges)


def test_gab_1_2():
    G = generate("G:1,2")
    assert G.n == 4 and G.edge_count == 5
    assert not G.has_edge(0, 1)
    assert diameter(G) == 2


def test_antitree_1331():
    G = generate("AT:1,3,3,1")
    assert G.n == 8
    assert diameter(G) == 3
    assert all(G.distance(0, v) == 3 for v in (7,))


def test_hypercube_q3():
    G = generate("Q:3")
    assert G.n == 8 and set(G.degrees()) == {3} and diameter(G) == 3


def test_distances():
    assert cycle_graph(4).distance(0, 2) == 2
    D = complete_graph(5).distances
    assert (D == 1 - np.eye(5, dtype=int)).all()


@pytest.mark.parametrize(
    "expr, diam",
    [("K:1", 0), ("K:5", 1), ("G:2,1", 2), ("AT:1,1,5,4,5,1,1", 6), ("J:6,3", 3), ("DemiQ:6", 3)],
)
def test_diameters(expr, diam):
    assert diameter(generate(expr)) == diam


def test_complement_examples():
    assert complement(complete_graph(5)).edge_count == 0
    assert complement(cycle_graph(4)).edges() == [(0, 2), (1, 3)]
    H = complement(generate("G:1,2"))
    assert H.edges() == [(0, 1)]
    assert H.degrees() == [1, 1, 0, 0]


def test_cartesian_products():
    C4 = cartesian_product(complete_graph(2), complete_graph(2))
    assert sorted(C4.degrees()) == [2] * 4 and C4.edge_count == 4 and diameter(C4) == 2
    Q3 = cartesian_product(generate("Q:2"), generate("Q:1"))
    assert Q3.n == 8 and set(Q3.degrees()) == {3} and diameter(Q3) == 3
    P = generate("CP:3*CP:3")
    assert P.n == 36 and set(P.degrees()) == {8} and diameter(P) == 4


def test_product_degree_additivity():
    G, H = generate("AT:1,2,1"), path_graph(3)
    P = cartesian_product(G, H)
    for g in range(G.n):
        for h in range(H.n):
            assert P.degree(g * H.n + h) == G.degree(g) + H.degree(h)


def test_decompose_examples():
    assert matching_complement_decompose(generate("CP:3")) == (3, 0)
    assert matching_complement_decompose(path_graph(3)) == (1, 1)
    assert matching_complement_decompose(cycle_graph(5)) is None


@pytest.mark.parametrize("a, b", [(a, b) for a in range(1, 6) for b in range(6)])
def test_gab_decomposes(a, b):
    G = generate(f"G:{a},{b}")
    assert matching_complement_decompose(G) == (a, b)
    assert complement(complement(G)) == G


@pytest.mark.parametrize(
    "expr", ["K:4", "CP:3", "Q:3", "J:5,2", "DemiQ:4", "AT:1,2,3", "G:2,3", "Q:2*K:3"]
)
def test_complement_involution(expr):
    G = generate(expr)
    assert complement(complement(G)) == G


def test_gosset_invariants():
    G = generate("Gosset")
    assert G.n == 56
    assert set(G.degrees()) == {27}
    assert diameter(G) == 3
    # antipodal: every vertex has exactly one vertex at distance 3
    assert ((G.distances == 3).sum(axis=1) == 1).all()


@pytest.mark.parametrize("levels", [(1, 1), (1, 3, 3, 1), (2, 1, 4), (1, 1, 1, 1, 1, 1), (3, 2, 2, 5, 1)])
def test_antitree_diameter(levels):
    G = generate("AT:" + ",".join(map(str, levels)))
    assert diameter(G) == len(levels) - 1
    assert G.n == sum(levels)


def test_johnson_and_demicube_shapes():
    J = generate("J:6,3")
    assert J.n == 20 and set(J.degrees()) == {9}
    D = generate("DemiQ:6")
    assert D.n == 32 and set(D.degrees()) == {15}


def test_family_grammar():
    assert parse_family("CP:3*Q:2*Gosset") == [("CP", [3]), ("Q", [2]), ("Gosset", [])]
    assert parse_family("AT:1,2,3") == [("AT", [1, 2, 3])]


@pytest.mark.parametrize(
    "bad", ["", "X:3", "K", "K:3,4", "J:3,3", "J:3,0", "G:0,3", "Gosset:1", "K:a", "CP:3**Q:2", "AT:1,0"]
)
def test_family_rejects(bad):
    with pytest.raises(GraphError):
        generate(bad)


def test_edge_list_round_trip():
    for expr in ["G:2,1", "AT:1,3,3,1", "Q:3"]:
        G = generate(expr)
        H = parse_edge_list(format_edge_list(G, comment=expr))
        assert H == G


def test_edge_list_comments_and_blank_lines():
    text = "# triangle\n\nn 3  # three vertices\n0 1\n1 2 # edge\n2 0\n"
    G = parse_edge_list(text)
    assert G == complete_graph(3)


@pytest.mark.parametrize(
    "text",
    ["0 1\n", "n\n0 1\n", "n x\n", "n 3\n0\n", "n 3\n0 3\n", "n 3\n1 1\n", "n 3\n0 a\n", "", "n 3\n0 1 2\n"],
)
def test_edge_list_rejects(text):
    with pytest.raises(GraphError):
        parse_edge_list(text)


def test_graph_is_hashable_value():
    a = generate("K:3")
    b = Graph.from_edges(3, itertools.combinations(range(3), 2))
    assert a == b and hash(a) == hash(b)
