"""Exact Wasserstein-1 distance between finitely supported measures on a graph.

The transport problem is solved as an integer min-cost flow (successive
shortest paths with node potentials) after scaling all masses by the lcm of
their denominators. Every solve also returns a 1-Lipschitz Kantorovich
potential whose dual objective equals the primal cost, so a result can be
re-checked without trusting the solver.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .exact import format_rational, rat
from .graphs import UNREACHABLE, DisconnectedGraphError, Graph, GraphError


class MeasureError(ValueError):
    pass


@dataclass(frozen=True)
class ProbabilityMeasure:
    """Finitely supported probability measure: vertex -> positive Fraction."""

    masses: dict

    def __post_init__(self):
        masses = {int(v): rat(m) for v, m in self.masses.items()}
        if any(m <= 0 for m in masses.values()):
            raise MeasureError("measure masses must be positive")
        if sum(masses.values()) != 1:
            raise MeasureError("measure masses must sum to exactly 1")
        object.__setattr__(self, "masses", dict(sorted(masses.items())))

    def __getitem__(self, v: int) -> Fraction:
        return self.masses.get(v, Fraction(0))

    @property
    def support(self) -> list:
        return list(self.masses)

    def to_json(self) -> dict:
        return {str(v): format_rational(m) for v, m in self.masses.items()}


@dataclass(frozen=True)
class TransportPlan:
    """Coupling stored sparsely as ``(source, target) -> mass``."""

    entries: dict

    def source_marginal(self) -> dict:
        out = {}
        for (x, _), m in self.entries.items():
            out[x] = out.get(x, 0) + m
        return out

    def target_marginal(self) -> dict:
        out = {}
        for (_, y), m in self.entries.items():
            out[y] = out.get(y, 0) + m
        return out

    def cost(self, dist) -> Fraction:
        return sum((m * int(dist[x][y]) for (x, y), m in self.entries.items()), Fraction(0))

    def to_json(self) -> list:
        return [
            {"from": x, "to": y, "mass": format_rational(m)}
            for (x, y), m in sorted(self.entries.items())
        ]


@dataclass(frozen=True)
class DualCertificate:
    """Kantorovich potential, one value per vertex of the graph."""

    potential: dict

    def objective(self, mu1: ProbabilityMeasure, mu2: ProbabilityMeasure) -> Fraction:
        support = set(mu1.masses) | set(mu2.masses)
        return sum((self.potential[v] * (mu1[v] - mu2[v]) for v in support), Fraction(0))

    def to_json(self) -> dict:
        return {str(v): format_rational(p) for v, p in sorted(self.potential.items())}


@dataclass(frozen=True)
class TransportResult:
    value: Fraction
    plan: TransportPlan
    certificate: DualCertificate

    def to_json(self) -> dict:
        return {
            "value": format_rational(self.value),
            "plan": self.plan.to_json(),
            "potential": self.certificate.to_json(),
        }


def vertex_measure(G: Graph, x: int, p) -> ProbabilityMeasure:
    """Lazy random-walk measure: mass ``p`` at ``x``, ``(1-p)/deg(x)`` on each neighbour."""
    p = rat(p)
    if not 0 <= p <= 1:
        raise MeasureError("idleness must lie in [0, 1]")
    nbrs = G.neighbors(x)
    if not nbrs:
        raise GraphError(f"vertex {x} is isolated")
    masses = {}
    if p > 0:
        masses[x] = p
    if p < 1:
        share = (1 - p) / len(nbrs)
        for z in nbrs:
            masses[z] = share
    return ProbabilityMeasure(masses)


# --- integer min-cost flow ---------------------------------------------------


def _min_cost_flow(supply: list, demand: list, cost: list) -> list:
    """Optimal integer flow for a balanced transportation problem.

    ``cost[i][j]`` are non-negative integers; arcs are uncapacitated.
    Node order: sources ``0..m-1``, sinks ``m..m+k-1``, super source, super sink.
    """
    m, k = len(supply), len(demand)
    S, T = m + k, m + k + 1
    size = m + k + 2
    cap_s = list(supply)
    cap_t = list(demand)
    flow = [[0] * k for _ in range(m)]
    h = [0] * size
    remaining = sum(supply)
    INF = None

    while remaining:
        dist = [INF] * size
        prev = [None] * size
        done = [False] * size
        dist[S] = 0
        while True:
            u, du = None, None
            for v in range(size):
                if not done[v] and dist[v] is not INF and (du is None or dist[v] < du):
                    u, du = v, dist[v]
            if u is None or u == T:
                break
            done[u] = True
            if u == S:
                for i in range(m):
                    if cap_s[i] > 0:
                        _relax(dist, prev, i, du + h[S] - h[i], S)
            elif u < m:
                i = u
                for j in range(k):
                    _relax(dist, prev, m + j, du + cost[i][j] + h[i] - h[m + j], i)
            else:
                j = u - m
                for i in range(m):
                    if flow[i][j] > 0:
                        _relax(dist, prev, i, du - cost[i][j] + h[m + j] - h[i], m + j)
                if cap_t[j] > 0:
                    _relax(dist, prev, T, du + h[m + j] - h[T], m + j)
        if dist[T] is INF:
            raise RuntimeError("transport problem is unbalanced")
        # nodes not settled before T are at distance >= dist[T]
        for v in range(size):
            h[v] += dist[v] if done[v] else dist[T]

        path = []
        v = T
        while v != S:
            path.append((prev[v], v))
            v = prev[v]
        push = remaining
        for u, v in path:
            if u == S:
                push = min(push, cap_s[v])
            elif v == T:
                push = min(push, cap_t[u - m])
            elif u >= m:  # backward along a used arc
                push = min(push, flow[v][u - m])
        for u, v in path:
            if u == S:
                cap_s[v] -= push
            elif v == T:
                cap_t[u - m] -= push
            elif u < m:
                flow[u][v - m] += push
            else:
                flow[v][u - m] -= push
        remaining -= push
    return flow, h


def _relax(dist, prev, v, d, u):
    if dist[v] is None or d < dist[v]:
        dist[v] = d
        prev[v] = u


def _residual_potentials(flow: list, cost: list, start: list) -> list:
    """Potentials ``p`` with ``p[j] <= p[i] + c_ij`` for every residual arc.

    Bellman-Ford style label correcting on the bipartite residual graph,
    warm-started from the solver's own potentials.
    """
    m = len(flow)
    k = len(flow[0]) if m else 0
    p = list(start)
    queue = deque(range(m + k))
    queued = [True] * (m + k)
    passes = 0
    limit = (m + k + 1) * (m + k) * max(1, m * k)
    while queue:
        u = queue.popleft()
        queued[u] = False
        passes += 1
        if passes > limit:
            raise RuntimeError("negative cycle in residual graph")
        if u < m:
            arcs = ((m + j, cost[u][j]) for j in range(k))
        else:
            j = u - m
            arcs = ((i, -cost[i][j]) for i in range(m) if flow[i][j] > 0)
        for v, c in arcs:
            if p[u] + c < p[v]:
                p[v] = p[u] + c
                if not queued[v]:
                    queue.append(v)
                    queued[v] = True
    return p


def exact_transport(mu1: dict, mu2: dict, dist):
    """Solve the transport problem between two mass maps with cost ``dist[x][y]``.

    Returns ``(value, plan_entries, sink_potentials)``. ``sink_potentials``
    maps each vertex still demanding mass after zero-cost cancellation to a
    potential ``g`` such that ``phi(z) = min_j g[j] + dist[z][j]`` is an
    optimal Kantorovich potential.
    """
    plan = {}
    excess, deficit = {}, {}
    for v in set(mu1) | set(mu2):
        a, b = rat(mu1.get(v, 0)), rat(mu2.get(v, 0))
        shared = min(a, b)
        if shared > 0:
            plan[(v, v)] = shared
        if a > b:
            excess[v] = a - b
        elif b > a:
            deficit[v] = b - a
    if sum(excess.values()) != sum(deficit.values()):
        raise MeasureError("measures have different total mass")
    if not excess:
        return Fraction(0), plan, {}

    sources, sinks = sorted(excess), sorted(deficit)
    scale = math.lcm(*(m.denominator for m in list(excess.values()) + list(deficit.values())))
    supply = [int(excess[v] * scale) for v in sources]
    demand = [int(deficit[v] * scale) for v in sinks]
    cost = [[int(dist[x][y]) for y in sinks] for x in sources]
    if any(c < 0 for row in cost for c in row):
        raise DisconnectedGraphError("measures live on different components")

    flow, h = _min_cost_flow(supply, demand, cost)
    total = 0
    for a, x in enumerate(sources):
        for b, y in enumerate(sinks):
            if flow[a][b]:
                plan[(x, y)] = Fraction(flow[a][b], scale)
                total += flow[a][b] * cost[a][b]

    p = _residual_potentials(flow, cost, h[: len(sources) + len(sinks)])
    # f_i - g_j <= c_ij with f = -p on sources and g = -p on sinks
    g = {y: -p[len(sources) + b] for b, y in enumerate(sinks)}
    return Fraction(total, scale), plan, g


def _extend_potential(G: Graph, sink_potentials: dict) -> dict:
    D = G.distances
    if not sink_potentials:
        return {v: Fraction(0) for v in range(G.n)}
    return {
        z: Fraction(min(g + int(D[z, j]) for j, g in sink_potentials.items()))
        for z in range(G.n)
    }


def wasserstein1(G: Graph, mu1: ProbabilityMeasure, mu2: ProbabilityMeasure) -> TransportResult:
    """Exact ``W_1(mu1, mu2)`` under the hop metric of ``G``, with plan and certificate."""
    D = G.distances
    if (D == UNREACHABLE).any():
        raise DisconnectedGraphError("wasserstein1 needs a connected graph")
    for v in list(mu1.masses) + list(mu2.masses):
        if not 0 <= v < G.n:
            raise MeasureError(f"vertex {v} is not in the graph")
    value, plan, g = exact_transport(mu1.masses, mu2.masses, D)
    return TransportResult(value, TransportPlan(plan), DualCertificate(_extend_potential(G, g)))


def verify_transport(
    G: Graph, mu1: ProbabilityMeasure, mu2: ProbabilityMeasure, r: TransportResult
) -> bool:
    """Re-check a result: marginals, 1-Lipschitz potential, and primal = dual = value."""
    D = G.distances
    plan = r.plan
    if any(m <= 0 for m in plan.entries.values()):
        return False
    if plan.source_marginal() != mu1.masses or plan.target_marginal() != mu2.masses:
        return False
    phi = r.certificate.potential
    if set(phi) != set(range(G.n)):
        return False
    for x in range(G.n):
        for y in range(x + 1, G.n):
            if abs(phi[x] - phi[y]) > D[x, y]:
                return False
    primal = plan.cost(D)
    dual = r.certificate.objective(mu1, mu2)
    return primal == r.value == dual
