"""Ollivier-Ricci curvature of edges: ``kappa_p`` at a given idleness and the Lin-Lu-Yau limit."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .exact import format_rational, rat
from .graphs import DisconnectedGraphError, Graph, GraphError, diameter
from .transport import TransportResult, vertex_measure, wasserstein1


def _check_edge(G: Graph, x: int, y: int) -> None:
    if not (0 <= x < G.n and 0 <= y < G.n) or not G.has_edge(x, y):
        raise GraphError(f"({x}, {y}) is not an edge")


def lly_idleness(G: Graph, x: int, y: int) -> Fraction:
    """``1/(max(deg x, deg y) + 1)``: left end of the final linear piece of ``p -> kappa_p``."""
    return Fraction(1, max(G.degree(x), G.degree(y)) + 1)


def edge_transport(G: Graph, x: int, y: int, p) -> TransportResult:
    _check_edge(G, x, y)
    return wasserstein1(G, vertex_measure(G, x, p), vertex_measure(G, y, p))


def kappa_p(G: Graph, x: int, y: int, p) -> Fraction:
    return 1 - edge_transport(G, x, y, rat(p)).value


def kappa_lly(G: Graph, x: int, y: int) -> Fraction:
    """Lin-Lu-Yau curvature, exact.

    ``p -> kappa_p`` is linear on ``[1/(max(d_x, d_y)+1), 1]`` and vanishes at
    ``p = 1``, so ``kappa_LLY = kappa_p / (1 - p)`` at that endpoint.
    """
    _check_edge(G, x, y)
    p = lly_idleness(G, x, y)
    return kappa_p(G, x, y, p) / (1 - p)


@dataclass(frozen=True)
class EdgeCurvature:
    edge: tuple
    idleness_used: Fraction
    kappa_p: Fraction
    kappa_lly: Fraction
    transport: TransportResult = None

    def to_json(self, labels=None, explain=False) -> dict:
        x, y = self.edge
        out = {
            "edge": [x, y],
            "idleness": format_rational(self.idleness_used),
            "kappa_p": format_rational(self.kappa_p),
            "kappa_lly": format_rational(self.kappa_lly),
        }
        if labels:
            out["labels"] = [labels[x], labels[y]]
        if explain and self.transport is not None:
            out["transport"] = self.transport.to_json()
        return out


def edge_curvature(G: Graph, x: int, y: int, keep_transport: bool = False) -> EdgeCurvature:
    p = lly_idleness(G, x, y)
    result = edge_transport(G, x, y, p)
    kp = 1 - result.value
    return EdgeCurvature((x, y), p, kp, kp / (1 - p), result if keep_transport else None)


@dataclass(frozen=True)
class CurvatureReport:
    edges: tuple
    min_curvature: Fraction
    diameter: int

    def __post_init__(self):
        if self.edges and self.min_curvature != min(e.kappa_lly for e in self.edges):
            raise ValueError("min_curvature disagrees with the edge list")

    @property
    def witness_edge(self) -> tuple:
        return next(e.edge for e in self.edges if e.kappa_lly == self.min_curvature)

    def to_json(self, G: Graph = None, explain=False) -> dict:
        labels = G.labels if G is not None else None
        return {
            "diameter": self.diameter,
            "min_curvature": format_rational(self.min_curvature),
            "edges": [e.to_json(labels, explain) for e in self.edges],
        }

    def table(self, G: Graph = None) -> str:
        def name(v):
            return G.label(v) if G is not None else str(v)

        rows = [(f"{name(x)} - {name(y)}", format_rational(e.idleness_used),
                 format_rational(e.kappa_p), format_rational(e.kappa_lly))
                for e in self.edges for x, y in [e.edge]]
        head = ("edge", "p", "kappa_p", "kappa_LLY")
        widths = [max(len(r[i]) for r in rows + [head]) for i in range(4)]
        fmt = "  ".join(f"{{:<{w}}}" for w in widths)
        lines = [fmt.format(*head), fmt.format(*("-" * w for w in widths))]
        lines += [fmt.format(*r) for r in rows]
        lines.append(f"min kappa_LLY = {format_rational(self.min_curvature)}   diameter = {self.diameter}")
        return "\n".join(lines)


def _sweep_chunk(args):
    G, edges, keep = args
    return [edge_curvature(G, x, y, keep) for x, y in edges]


def curvature_sweep(G: Graph, jobs: int = 1, keep_transport: bool = False) -> CurvatureReport:
    """Curvature of every edge in lexicographic order, plus the minimum and the diameter."""
    if not G.is_connected():
        raise DisconnectedGraphError("curvature_sweep needs a connected graph")
    edges = G.edges()
    if not edges:
        raise GraphError("graph has no edges")
    G.distances  # computed once, before any pickling
    if jobs > 1 and len(edges) > 1:
        chunks = [edges[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(jobs) as pool:
            parts = list(pool.map(_sweep_chunk, [(G, c, keep_transport) for c in chunks]))
        by_edge = {r.edge: r for part in parts for r in part}
        results = [by_edge[e] for e in edges]
    else:
        results = _sweep_chunk((G, edges, keep_transport))
    return CurvatureReport(tuple(results), min(r.kappa_lly for r in results), diameter(G))
