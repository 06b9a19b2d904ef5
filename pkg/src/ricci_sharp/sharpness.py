"""Bonnet-Myers sharpness: verdicts, the diameter-2 classification check, and the lemma suite."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .curvature import CurvatureReport, curvature_sweep, edge_transport, kappa_lly, lly_idleness
from .exact import format_rational
from .graphs import DisconnectedGraphError, Graph, GraphError, diameter, matching_complement_decompose


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class SharpnessVerdict:
    is_sharp: bool
    min_curvature: Fraction
    diameter: int
    bound: Fraction
    witness_edge: tuple
    report: Optional[CurvatureReport] = field(default=None, compare=False)

    def __post_init__(self):
        expected = self.min_curvature > 0 and self.min_curvature == self.bound
        if self.is_sharp != expected:
            raise ValueError("inconsistent sharpness verdict")

    def to_json(self) -> dict:
        return {
            "is_sharp": self.is_sharp,
            "min_curvature": format_rational(self.min_curvature),
            "diameter": self.diameter,
            "bound": format_rational(self.bound),
            "witness_edge": list(self.witness_edge),
        }


def verdict_from_report(report: CurvatureReport) -> SharpnessVerdict:
    bound = Fraction(2, report.diameter)
    m = report.min_curvature
    return SharpnessVerdict(m > 0 and m == bound, m, report.diameter, bound, report.witness_edge, report)


def is_bm_sharp(G: Graph, jobs: int = 1) -> SharpnessVerdict:
    """Whether the minimum edge curvature is positive and equals ``2 / diam(G)`` exactly."""
    if G.n < 2:
        raise GraphError("sharpness needs at least two vertices")
    if not G.is_connected():
        raise DisconnectedGraphError("sharpness needs a connected graph")
    return verdict_from_report(curvature_sweep(G, jobs=jobs))


# --- exhaustive diameter-2 classification -----------------------------------


@dataclass
class ClassificationReport:
    n: int
    graphs_scanned: int = 0
    diameter2_count: int = 0
    sharp_count: int = 0
    mismatches: list = field(default_factory=list)
    sharp_indices: list = field(default_factory=list)
    sharp_types: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def merge(self, other: "ClassificationReport") -> "ClassificationReport":
        types = dict(self.sharp_types)
        for k, v in other.sharp_types.items():
            types[k] = types.get(k, 0) + v
        return ClassificationReport(
            self.n,
            self.graphs_scanned + other.graphs_scanned,
            self.diameter2_count + other.diameter2_count,
            self.sharp_count + other.sharp_count,
            sorted(self.mismatches + other.mismatches, key=lambda m: m["index"]),
            sorted(self.sharp_indices + other.sharp_indices),
            dict(sorted(types.items())),
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "graphs_scanned": self.graphs_scanned,
            "diameter2_count": self.diameter2_count,
            "sharp_count": self.sharp_count,
            "sharp_by_type": {f"G({a},{b})": c for (a, b), c in self.sharp_types.items()},
            "mismatches": self.mismatches,
        }


def labeled_graph(n: int, index: int) -> Graph:
    """Graph whose edge set is bit ``i`` of ``index`` <-> ``i``-th pair in lexicographic order."""
    pairs = itertools.combinations(range(n), 2)
    return Graph.from_edges(n, [e for i, e in enumerate(pairs) if index >> i & 1])


def _diameter_is_two(n: int, adj: list) -> bool:
    full = (1 << n) - 1
    complete = True
    for v in range(n):
        closed = adj[v] | (1 << v)
        if closed != full:
            complete = False
        reach = closed
        nb = adj[v]
        while nb:
            low = nb & -nb
            reach |= adj[low.bit_length() - 1]
            nb ^= low
        if reach != full:
            return False
    return not complete


def _sharp_at_diameter_two(G: Graph) -> bool:
    # diameter 2 forces min kappa <= 1; sharp iff no edge drops below 1
    return all(kappa_lly(G, x, y) >= 1 for x, y in G.edges())


def _classify_range(args) -> ClassificationReport:
    n, start, stop = args
    pairs = list(itertools.combinations(range(n), 2))
    report = ClassificationReport(n)
    for index in range(start, stop):
        report.graphs_scanned += 1
        adj = [0] * n
        for i, (u, v) in enumerate(pairs):
            if index >> i & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        if not _diameter_is_two(n, adj):
            continue
        report.diameter2_count += 1
        G = Graph(n, adj)
        sharp = _sharp_at_diameter_two(G)
        decomposition = matching_complement_decompose(G)
        is_gab = decomposition is not None and decomposition[0] >= 1
        if sharp:
            report.sharp_count += 1
            report.sharp_indices.append(index)
            if is_gab:
                report.sharp_types[decomposition] = report.sharp_types.get(decomposition, 0) + 1
        if sharp != is_gab:
            report.mismatches.append(
                {"index": index, "edges": [list(e) for e in G.edges()], "sharp": sharp,
                 "decomposition": list(decomposition) if decomposition else None}
            )
    return report


def verify_diameter2_classification(n: int, jobs: int = 1) -> ClassificationReport:
    """Check, over every labeled graph on ``n`` vertices, that diameter-2 graphs are
    sharp exactly when they are a complete graph minus a nonempty matching."""
    if not 3 <= n <= 7:
        raise ValueError("classification is limited to 3 <= n <= 7")
    total = 1 << (n * (n - 1) // 2)
    jobs = max(1, jobs)
    bounds = [total * i // jobs for i in range(jobs + 1)]
    ranges = [(n, bounds[i], bounds[i + 1]) for i in range(jobs)]
    if jobs == 1:
        parts = [_classify_range(ranges[0])]
    else:
        with ProcessPoolExecutor(jobs) as pool:
            parts = list(pool.map(_classify_range, ranges))
    report = ClassificationReport(n)
    for part in parts:
        report = report.merge(part)
    return report


# --- executable forms of the diameter-2 lemmas -------------------------------


@dataclass(frozen=True)
class EdgeLemmaCheck:
    edge: tuple
    mass_moved: bool
    same_degree: Optional[bool]
    different_degree: Optional[bool]

    @property
    def passed(self) -> bool:
        return self.mass_moved and self.same_degree is not False and self.different_degree is not False


@dataclass(frozen=True)
class LemmaReport:
    edges: tuple

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.edges)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "edges": [
                {"edge": list(e.edge), "mass_moved": e.mass_moved,
                 "same_degree": e.same_degree, "different_degree": e.different_degree}
                for e in self.edges
            ],
        }


def _square_closes(G: Graph, x: int, y: int) -> bool:
    """At most one ``x'`` with ``x ~ x'``, ``y !~ x'``; if present, some ``y'``
    with ``y ~ y'``, ``x !~ y'`` and ``x' ~ y'`` completes the square."""
    private = (G.adj[x] & ~G.adj[y]) & ~(1 << y)
    if private.bit_count() > 1:
        return False
    if not private:
        return True
    xp = private.bit_length() - 1
    candidates = G.adj[y] & ~G.adj[x] & ~(1 << x) & G.adj[xp]
    return bool(candidates)


def check_sharp_diameter2_lemmas(G: Graph) -> LemmaReport:
    """Per-edge checks of three structural facts about sharp diameter-2 graphs.

    * ``mass_moved``: ``W1(mu_x^p, mu_y^p) <= p`` at ``p = 1/(max(d_x, d_y) + 1)``.
    * ``same_degree``: for ``d_x = d_y`` the square condition from both ends
      (None when degrees differ).
    * ``different_degree``: for ``d_x < d_y``, ``N(x) - {y}`` lies inside ``N(y)``
      (None when degrees agree).
    """
    if not G.is_connected() or diameter(G) != 2:
        raise PreconditionError("lemma checks need a connected graph of diameter 2")
    verdict = is_bm_sharp(G)
    if not verdict.is_sharp:
        raise PreconditionError("lemma checks need a Bonnet-Myers sharp graph")
    checks = []
    for x, y in G.edges():
        p = lly_idleness(G, x, y)
        moved = edge_transport(G, x, y, p).value <= p
        dx, dy = G.degree(x), G.degree(y)
        same = different = None
        if dx == dy:
            same = _square_closes(G, x, y) and _square_closes(G, y, x)
        else:
            lo, hi = (x, y) if dx < dy else (y, x)
            different = (G.adj[lo] & ~(1 << hi)) & ~G.adj[hi] == 0
        checks.append(EdgeLemmaCheck((x, y), moved, same, different))
    return LemmaReport(tuple(checks))
