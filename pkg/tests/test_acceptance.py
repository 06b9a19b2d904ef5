"""Acceptance criteria, one test each. The summary hook in conftest prints a
PASS/FAIL line per criterion with its elapsed time."""

import itertools
import random
import time
from fractions import Fraction

import pytest

from oracles import random_connected_graph, random_measure, saturation_w1
from ricci_sharp.antitree import (
    cross_validate,
    scan_even_diameter,
    scan_even_range,
    scan_odd_small,
    verify_family_lemmas,
)
from ricci_sharp.curvature import curvature_sweep, kappa_lly, kappa_p, lly_idleness
from ricci_sharp.exact import AffineForm
from ricci_sharp.graphs import cycle_graph, gab_graph, generate, path_graph
from ricci_sharp.sharpness import check_sharp_diameter2_lemmas, is_bm_sharp, labeled_graph, verify_diameter2_classification
from ricci_sharp.transport import ProbabilityMeasure, verify_transport, wasserstein1


def within(start, budget):
    elapsed = time.perf_counter() - start
    assert elapsed < budget, f"took {elapsed:.1f} s, budget {budget} s"


@pytest.fixture(scope="module")
def classifications():
    start = time.perf_counter()
    reports = {n: verify_diameter2_classification(n) for n in (4, 5, 6)}
    return reports, time.perf_counter() - start


@pytest.mark.criterion(1, "G(a,b) edge curvatures and sharpness")
def test_criterion_1_gab():
    start = time.perf_counter()
    for a, b in itertools.product(range(1, 6), range(6)):
        if (a, b) == (1, 0):
            continue
        G = gab_graph(a, b)
        rep = curvature_sweep(G)
        for e in rep.edges:
            x, y = e.edge
            kinds = ("u" if x < 2 * a else "v") + ("u" if y < 2 * a else "v")
            if kinds == "vv":
                assert e.kappa_lly == Fraction(2 * a + b, 2 * a + b - 1), (a, b, e.edge)
            else:
                assert e.kappa_lly == 1, (a, b, e.edge)
        assert rep.min_curvature == 1
        assert is_bm_sharp(G).is_sharp
    within(start, 30)


@pytest.mark.criterion(2, "diameter-2 classification for n = 4, 5, 6")
def test_criterion_2_classification(classifications):
    reports, elapsed = classifications
    assert [reports[n].graphs_scanned for n in (4, 5, 6)] == [2**6, 2**10, 2**15]
    for n, rep in reports.items():
        assert rep.mismatches == [], n
        assert rep.sharp_count > 0
    assert elapsed < 300


@pytest.mark.criterion(3, "antitree closed forms equal transport curvature")
def test_criterion_3_closed_forms():
    start = time.perf_counter()
    rep = cross_validate(max_levels=5, max_size=4)
    assert rep["instances"] >= 300
    assert rep["disagreements"] == []
    assert rep["passed"]
    within(start, 120)


@pytest.mark.criterion(4, "diameter-4 and diameter-6 families")
def test_criterion_4_families():
    start = time.perf_counter()
    t = AffineForm.parameter()
    one = AffineForm(1)
    r4, r6 = scan_even_diameter(4), scan_even_diameter(6)
    assert r4.kind == r6.kind == "family"
    assert r4.level_forms == (one, t, t + 2, t, one)
    assert r6.level_forms == (one, t, 2 * t + 3, 3 * t + 1, 2 * t + 3, t, one)
    for r in (r4, r6):
        assert r.parameters.kind == "all" and r.parameters.smallest == 1
    rep = verify_family_lemmas(50, lp_max_b=3)
    assert rep["passed"]
    lp = [row["lp_checked"] for row in rep["rows"]]
    assert all(lp[:3]) and not any(lp[3:])
    assert all(ok for checks in lp for _, ok in checks)
    within(start, 120)


@pytest.mark.criterion(5, "no sharp symmetric antitree at even diameter 8..200")
def test_criterion_5_even_nonexistence():
    start = time.perf_counter()
    results = scan_even_range(8, 200)
    assert [r.diameter for r in results] == list(range(8, 201, 2))
    assert all(r.is_empty for r in results)
    level6 = dict(scan_even_diameter(10).trace)[6]
    assert level6.slope == 19
    assert level6.constant.denominator != 1
    within(start, 300)


@pytest.mark.criterion(6, "odd diameters 3 and 5")
def test_criterion_6_odd():
    start = time.perf_counter()
    r3 = scan_odd_small(3)
    assert [s.levels for s in r3.sequences] == [(1, 3, 3, 1)]
    r5 = scan_odd_small(5)
    assert r5.is_empty and not r5.sequences
    assert [tuple(c["sequence"][1:3]) for c in r5.region] == [
        (1, 2), (1, 3), (1, 4), (2, 4), (2, 5), (3, 6), (3, 7), (4, 8), (5, 10)
    ]
    assert not any(c["is_sharp"] for c in r5.region)
    within(start, 10)


SHARP_FIXTURES = [(f"Q:{n}", None) for n in range(1, 6)] + [(f"CP:{n}", None) for n in range(2, 6)] + [
    ("J:6,3", Fraction(2, 3)),
    ("DemiQ:6", Fraction(2, 3)),
    ("CP:3*CP:3", Fraction(1, 2)),
]


@pytest.mark.criterion(7, "named graph families")
def test_criterion_7_named_families():
    start = time.perf_counter()
    for expr, expected in SHARP_FIXTURES:
        v = is_bm_sharp(generate(expr))
        assert v.is_sharp, expr
        assert v.min_curvature == Fraction(2, v.diameter) == (expected or v.bound), expr
    for G in [generate(f"K:{n}") for n in range(3, 7)] + [cycle_graph(5), cycle_graph(6), path_graph(4)]:
        assert not is_bm_sharp(G).is_sharp
    within(start, 180)


@pytest.mark.extended
def test_gosset_extended():
    v = is_bm_sharp(generate("Gosset"))
    assert v.is_sharp and v.min_curvature == Fraction(2, 3)


@pytest.mark.criterion(8, "transport duality, marginals, symmetry, enumeration agreement")
def test_criterion_8_transport():
    start = time.perf_counter()
    rng = random.Random(20261016)
    for _ in range(500):
        G = random_connected_graph(rng, 10)
        a = random_measure(rng, G.n, 12, 6)
        b = random_measure(rng, G.n, 12, 6)
        mu1, mu2 = ProbabilityMeasure(a), ProbabilityMeasure(b)
        r = wasserstein1(G, mu1, mu2)
        # strong duality, exact marginals, Lipschitz potential on all of V
        assert verify_transport(G, mu1, mu2, r)
        assert r.plan.cost(G.distances) == r.value == r.certificate.objective(mu1, mu2)
        assert wasserstein1(G, mu2, mu1).value == r.value
        assert saturation_w1(a, b, G.distances.tolist()) == r.value
    within(start, 120)


@pytest.mark.criterion(9, "kappa_p is linear past the idleness threshold and concave")
def test_criterion_9_idleness():
    start = time.perf_counter()
    rng = random.Random(9)
    graphs = [generate(e) for e in ("Q:3", "J:5,2", "G:2,3", "AT:1,2,3,2,1", "CP:3", "AT:1,3,3,1")]
    graphs += [cycle_graph(7), path_graph(5)]
    graphs += [random_connected_graph(rng, 9) for _ in range(8)]
    edges = [(G, e) for G in graphs for e in G.edges()]
    for G, (x, y) in rng.sample(edges, 100):
        lly = kappa_lly(G, x, y)
        p0 = lly_idleness(G, x, y)
        samples = {p0, Fraction(1)} | {p0 + (1 - p0) * Fraction(rng.randint(1, 19), 20) for _ in range(3)}
        while len(samples) < 5:
            samples.add(p0 + (1 - p0) * Fraction(rng.randint(1, 99), 100))
        for p in samples:
            assert kappa_p(G, x, y, p) == (1 - p) * lly
        grid = sorted({Fraction(k, 8) for k in range(9)} | {p0})
        values = [kappa_p(G, x, y, p) for p in grid]
        for (p1, k1), (p2, k2), (p3, k3) in itertools.combinations(zip(grid, values), 3):
            assert k2 >= k1 + (k3 - k1) * (p2 - p1) / (p3 - p1)
    within(start, 60)


@pytest.mark.criterion(10, "structural lemmas on sharp diameter-2 graphs")
def test_criterion_10_lemmas(classifications):
    start = time.perf_counter()
    reports, _ = classifications
    checked = 0
    for n, rep in reports.items():
        for index in rep.sharp_indices:
            assert check_sharp_diameter2_lemmas(labeled_graph(n, index)).passed, (n, index)
            checked += 1
    assert checked == sum(r.sharp_count for r in reports.values())
    for a in range(1, 6):
        for b in range(0, 11 - 2 * a):
            if (a, b) != (1, 0):
                assert check_sharp_diameter2_lemmas(gab_graph(a, b)).passed, (a, b)
    within(start, 120)
