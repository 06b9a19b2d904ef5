"""Simple undirected graphs on vertices ``0..n-1`` and generators for the named families.

Adjacency is stored as one Python ``int`` bitset per vertex; the all-pairs
hop-distance matrix is computed lazily by bitset BFS and cached.
"""

from __future__ import annotations

import itertools
import re
from functools import reduce
from pathlib import Path

import numpy as np

UNREACHABLE = -1


class GraphError(ValueError):
    """Invalid graph input: bad endpoint, self-loop, malformed file or expression."""


class DisconnectedGraphError(GraphError):
    pass


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable simple undirected graph.

    Vertices are ``0..n-1``. ``labels`` optionally names them (kept through
    generators so that e.g. ``G:a,b`` vertices read as ``u1..``, ``v1..``).
    """

    __slots__ = ("n", "adj", "labels", "_dist")

    def __init__(self, n: int, adjacency, labels=None):
        self.n = n
        self.adj = tuple(adjacency)
        self.labels = tuple(labels) if labels is not None else None
        self._dist = None

    @classmethod
    def from_edges(cls, n: int, edges, labels=None) -> "Graph":
        if n < 1:
            raise GraphError("vertex count must be positive")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"endpoint out of range in edge ({u}, {v})")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj, labels)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_count})"

    def __getstate__(self):
        return (self.n, self.adj, self.labels, self._dist)

    def __setstate__(self, state):
        self.n, self.adj, self.labels, self._dist = state

    # --- local structure -------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list:
        return list(_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list:
        return [self.degree(v) for v in range(self.n)]

    def edges(self) -> list:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    # --- metric structure ------------------------------------------------

    @property
    def distances(self) -> np.ndarray:
        if self._dist is None:
            self._dist = all_pairs_distances(self)
        return self._dist

    def distance(self, u: int, v: int) -> int:
        return int(self.distances[u, v])

    def is_connected(self) -> bool:
        return self.n == 1 or bool((self.distances[0] != UNREACHABLE).all())


def build_graph(n: int, edges) -> Graph:
    return Graph.from_edges(n, edges)


def bfs_layers(G: Graph, source: int) -> list:
    """Distance from ``source`` to every vertex (``UNREACHABLE`` if none)."""
    dist = [UNREACHABLE] * G.n
    dist[source] = 0
    seen = 1 << source
    frontier = seen
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for v in _bits(frontier):
            nxt |= G.adj[v]
        nxt &= ~seen
        for v in _bits(nxt):
            dist[v] = d
        seen |= nxt
        frontier = nxt
    return dist


def all_pairs_distances(G: Graph) -> np.ndarray:
    D = np.array([bfs_layers(G, s) for s in range(G.n)], dtype=np.int64)
    D.setflags(write=False)
    return D


def diameter(G: Graph) -> int:
    D = G.distances
    if (D == UNREACHABLE).any():
        raise DisconnectedGraphError("diameter of a disconnected graph is infinite")
    return int(D.max())


def complement(G: Graph) -> Graph:
    full = (1 << G.n) - 1
    return Graph(G.n, [full & ~G.adj[v] & ~(1 << v) for v in range(G.n)], G.labels)


def cartesian_product(G: Graph, H: Graph) -> Graph:
    """Vertex ``(g, h)`` is numbered ``g * H.n + h``."""
    edges = []
    for g in range(G.n):
        for h, h2 in H.edges():
            edges.append((g * H.n + h, g * H.n + h2))
    for g, g2 in G.edges():
        for h in range(H.n):
            edges.append((g * H.n + h, g2 * H.n + h))
    labels = None
    if G.labels or H.labels:
        labels = [f"({G.label(g)},{H.label(h)})" for g in range(G.n) for h in range(H.n)]
    return Graph.from_edges(G.n * H.n, edges, labels)


def induced_subgraph(G: Graph, vertices) -> Graph:
    vertices = list(vertices)
    index = {v: i for i, v in enumerate(vertices)}
    edges = [(index[u], index[v]) for u, v in G.edges() if u in index and v in index]
    return Graph.from_edges(len(vertices), edges)


def matching_complement_decompose(G: Graph):
    """``(a, b)`` if ``G`` is ``K_n`` minus a matching of ``a`` edges, else None.

    ``b`` counts the vertices left unmatched. ``a >= 1`` certifies
    ``G`` is isomorphic to ``G(a, b)``.
    """
    H = complement(G)
    degs = H.degrees()
    if any(d > 1 for d in degs):
        return None
    return H.edge_count, degs.count(0)


# --- family generators -----------------------------------------------------


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError("K:n needs n >= 1")
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cocktail_party(n: int) -> Graph:
    """``K_{2n}`` minus the perfect matching ``{2i, 2i+1}``."""
    if n < 1:
        raise GraphError("CP:n needs n >= 1")
    return gab_graph(n, 0)


def hypercube(n: int) -> Graph:
    if n < 1:
        raise GraphError("Q:n needs n >= 1")
    edges = [(w, w ^ (1 << i)) for w in range(1 << n) for i in range(n) if not w >> i & 1]
    return Graph.from_edges(1 << n, edges, [format(w, f"0{n}b") for w in range(1 << n)])


def johnson(n: int, k: int) -> Graph:
    """k-subsets of ``{1..n}``, adjacent when they share ``k-1`` elements."""
    if not 0 < k < n:
        raise GraphError("J:n,k needs 0 < k < n")
    subsets = list(itertools.combinations(range(1, n + 1), k))
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(len(subsets)), 2)
        if len(set(subsets[i]) & set(subsets[j])) == k - 1
    ]
    return Graph.from_edges(len(subsets), edges, ["".join(map(str, s)) for s in subsets])


def demicube(n: int) -> Graph:
    """Even-weight words of length ``n``, adjacent at Hamming distance 2."""
    if n < 2:
        raise GraphError("DemiQ:n needs n >= 2")
    words = [w for w in range(1 << n) if bin(w).count("1") % 2 == 0]
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(len(words)), 2)
        if bin(words[i] ^ words[j]).count("1") == 2
    ]
    return Graph.from_edges(len(words), edges, [format(w, f"0{n}b") for w in words])


def gosset() -> Graph:
    """Two copies A, B of the 28 pairs from ``{1..8}``.

    Within a copy pairs are adjacent when they meet in one element; ``A_p``
    is adjacent to ``B_q`` when ``p`` and ``q`` are disjoint.
    """
    pairs = list(itertools.combinations(range(1, 9), 2))
    m = len(pairs)
    edges = []
    for i, j in itertools.combinations(range(m), 2):
        if len(set(pairs[i]) & set(pairs[j])) == 1:
            edges.append((i, j))
            edges.append((m + i, m + j))
    for i in range(m):
        for j in range(m):
            if not set(pairs[i]) & set(pairs[j]):
                edges.append((i, m + j))
    labels = [f"A{p}{q}" for p, q in pairs] + [f"B{p}{q}" for p, q in pairs]
    return Graph.from_edges(2 * m, edges, labels)


def gab_graph(a: int, b: int, allow_zero_a: bool = False) -> Graph:
    """Complement of ``a`` disjoint edges plus ``b`` isolated vertices.

    Vertices ``0..2a-1`` are ``u_1..u_{2a}`` with ``u_{2i-1}, u_{2i}`` the
    deleted pairs; ``2a..2a+b-1`` are ``v_1..v_b``.
    """
    if a < 0 or b < 0 or (a == 0 and not allow_zero_a):
        raise GraphError("G:a,b needs a >= 1 and b >= 0")
    n = 2 * a + b
    if n < 1:
        raise GraphError("G:a,b needs at least one vertex")
    missing = {(2 * i, 2 * i + 1) for i in range(a)}
    edges = [e for e in itertools.combinations(range(n), 2) if e not in missing]
    labels = [f"u{i + 1}" for i in range(2 * a)] + [f"v{j + 1}" for j in range(b)]
    return Graph.from_edges(n, edges, labels)


def antitree(levels) -> Graph:
    """Levels of sizes ``levels[k]``; cliques within and complete joins between consecutive levels."""
    levels = list(levels)
    if not levels or any(a < 1 for a in levels):
        raise GraphError("AT level sizes must be positive")
    starts = list(itertools.accumulate([0] + levels))
    blocks = [range(starts[k], starts[k + 1]) for k in range(len(levels))]
    edges = []
    for k, block in enumerate(blocks):
        edges.extend(itertools.combinations(block, 2))
        if k + 1 < len(blocks):
            edges.extend(itertools.product(block, blocks[k + 1]))
    labels = [f"L{k + 1}.{i + 1}" for k, a in enumerate(levels) for i in range(a)]
    return Graph.from_edges(starts[-1], edges, labels)


def antitree_levels(levels) -> list:
    """Vertex ranges of each level in :func:`antitree` numbering."""
    starts = list(itertools.accumulate([0] + list(levels)))
    return [range(starts[k], starts[k + 1]) for k in range(len(levels))]


# --- family expressions ----------------------------------------------------

_ATOM = re.compile(r"^(K|CP|Q|J|DemiQ|Gosset|G|AT)(?::([0-9, ]+))?$")

_ARITY = {"K": 1, "CP": 1, "Q": 1, "J": 2, "DemiQ": 1, "Gosset": 0, "G": 2}


def _atom(kind: str, args: list) -> Graph:
    if kind == "AT":
        if len(args) < 1:
            raise GraphError("AT needs at least one level")
        return antitree(args)
    if len(args) != _ARITY[kind]:
        raise GraphError(f"{kind} takes {_ARITY[kind]} parameter(s), got {len(args)}")
    if kind == "K":
        return complete_graph(*args)
    if kind == "CP":
        return cocktail_party(*args)
    if kind == "Q":
        return hypercube(*args)
    if kind == "J":
        return johnson(*args)
    if kind == "DemiQ":
        return demicube(*args)
    if kind == "G":
        return gab_graph(*args)
    return gosset()


def parse_family(expr: str) -> list:
    """Parse ``atom ('*' atom)*`` into a list of ``(kind, params)`` pairs."""
    atoms = []
    for part in expr.split("*"):
        part = part.strip()
        m = _ATOM.match(part)
        if not m:
            raise GraphError(f"bad family atom {part!r}")
        kind, params = m.group(1), m.group(2)
        try:
            args = [int(x) for x in params.split(",")] if params else []
        except ValueError as exc:
            raise GraphError(f"bad parameters in {part!r}") from exc
        if kind == "Gosset" and params:
            raise GraphError("Gosset takes no parameters")
        if kind != "Gosset" and not params:
            raise GraphError(f"{kind} needs parameters")
        atoms.append((kind, args))
    return atoms


def generate(expr: str) -> Graph:
    """Build the graph named by a family expression such as ``"CP:3*CP:3"``."""
    graphs = [_atom(kind, args) for kind, args in parse_family(expr)]
    return reduce(cartesian_product, graphs)


# --- edge-list files -------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 2 or fields[0] != "n":
                raise GraphError(f"line {lineno}: expected 'n <vertex_count>'")
            try:
                n = int(fields[1])
            except ValueError as exc:
                raise GraphError(f"line {lineno}: bad vertex count") from exc
            continue
        if len(fields) != 2:
            raise GraphError(f"line {lineno}: expected 'u v'")
        try:
            edges.append((int(fields[0]), int(fields[1])))
        except ValueError as exc:
            raise GraphError(f"line {lineno}: non-integer vertex") from exc
    if n is None:
        raise GraphError("missing 'n <vertex_count>' header")
    try:
        return Graph.from_edges(n, edges)
    except GraphError as exc:
        raise GraphError(f"invalid edge list: {exc}") from exc


def format_edge_list(G: Graph, comment: str = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines.append(f"n {G.n}")
    lines.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def read_edge_list(path) -> Graph:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))


def write_edge_list(G: Graph, path, comment: str = None) -> None:
    Path(path).write_text(format_edge_list(G, comment), encoding="utf-8")
