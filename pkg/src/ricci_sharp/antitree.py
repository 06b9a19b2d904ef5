"""Finite antitrees: closed-form curvatures, sharpness of symmetrical antitrees, diameter scans.

An antitree ``AT(a_1, ..., a_N)`` has levels ``V_1..V_N`` of sizes ``a_k``,
each level a clique and consecutive levels completely joined. Its diameter
is ``N - 1``. Closed forms assume ``a_1 = 1`` and read ``a_0 = a_{N+1} = 0``.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .curvature import kappa_lly
from .exact import AffineForm, IntegralityResult, affine_integer_solutions, format_rational
from .graphs import Graph, GraphError, antitree, antitree_levels
from .sharpness import SharpnessVerdict, is_bm_sharp


class AffinenessError(RuntimeError):
    """A propagated level failed its consistency check; indicates a bug, not bad input."""


@dataclass(frozen=True)
class AntitreeSequence:
    levels: tuple

    def __post_init__(self):
        levels = tuple(int(a) for a in self.levels)
        if len(levels) < 2:
            raise GraphError("an antitree sequence needs at least two levels")
        if any(a < 1 for a in levels):
            raise GraphError("antitree level sizes must be positive")
        object.__setattr__(self, "levels", levels)

    @property
    def N(self) -> int:
        return len(self.levels)

    @property
    def diameter(self) -> int:
        return self.N - 1

    def a(self, k: int) -> int:
        """Size of level ``k`` (1-based); zero outside ``1..N``."""
        return self.levels[k - 1] if 1 <= k <= self.N else 0

    @property
    def is_symmetric(self) -> bool:
        return self.levels == self.levels[::-1]

    @property
    def vertex_count(self) -> int:
        return sum(self.levels)

    def __str__(self) -> str:
        return "AT(" + ",".join(map(str, self.levels)) + ")"


RADIAL_ROOT = "radial_root"
RADIAL_INNER = "radial_inner"
SPHERICAL = "spherical"


@dataclass(frozen=True, order=True)
class EdgeLocus:
    kind: str
    k: Optional[int] = None

    def __str__(self) -> str:
        if self.kind == RADIAL_ROOT:
            return "RadialRoot"
        return f"{'RadialInner' if self.kind == RADIAL_INNER else 'Spherical'}({self.k})"


def RadialRoot() -> EdgeLocus:
    return EdgeLocus(RADIAL_ROOT)


def RadialInner(k: int) -> EdgeLocus:
    return EdgeLocus(RADIAL_INNER, k)


def Spherical(k: int) -> EdgeLocus:
    return EdgeLocus(SPHERICAL, k)


def loci(seq: AntitreeSequence) -> list:
    """Every edge class present in ``AT(seq)`` (root level assumed to be a single vertex)."""
    out = [RadialRoot()]
    out += [RadialInner(k) for k in range(2, seq.N)]
    out += [Spherical(k) for k in range(2, seq.N + 1) if seq.a(k) >= 2]
    return out


def _check_locus(seq: AntitreeSequence, locus: EdgeLocus) -> None:
    if locus.kind == RADIAL_ROOT:
        return
    if locus.kind == RADIAL_INNER and 2 <= locus.k <= seq.N - 1:
        return
    if locus.kind == SPHERICAL and 2 <= locus.k <= seq.N:
        if seq.a(locus.k) < 2:
            raise GraphError(f"level {locus.k} has a single vertex; no spherical edges")
        return
    raise GraphError(f"{locus} is not a locus of {seq}")


def antitree_graph(seq) -> Graph:
    if not isinstance(seq, AntitreeSequence):
        seq = AntitreeSequence(tuple(seq))
    return antitree(seq.levels)


def locus_edges(seq: AntitreeSequence, locus: EdgeLocus) -> list:
    """Edges of ``antitree_graph(seq)`` belonging to ``locus``, as sorted pairs."""
    _check_locus(seq, locus)
    blocks = antitree_levels(seq.levels)
    if locus.kind == RADIAL_ROOT:
        return [(u, v) for u in blocks[0] for v in blocks[1]]
    if locus.kind == RADIAL_INNER:
        return [(u, v) for u in blocks[locus.k - 1] for v in blocks[locus.k]]
    return list(itertools.combinations(blocks[locus.k - 1], 2))


def _outgoing(a, k: int) -> Fraction:
    """``(2a_k + a_{k+1} - 1) / (a_k + a_{k+1} + a_{k+2} - 1)``.

    Radial curvatures telescope through this quantity: the root edge value is
    ``_outgoing(a, 1)`` when ``a_1 = 1`` and the edge ``V_k V_{k+1}`` has
    ``_outgoing(a, k) - _outgoing(a, k-1)``.
    """
    return Fraction(2 * a(k) + a(k + 1) - 1, a(k) + a(k + 1) + a(k + 2) - 1)


def closed_form_curvature(seq: AntitreeSequence, locus: EdgeLocus) -> Fraction:
    if seq.a(1) != 1:
        raise GraphError("closed forms need a single root vertex (a_1 = 1)")
    _check_locus(seq, locus)
    a = seq.a
    if locus.kind == RADIAL_ROOT:
        return Fraction(a(2) + 1, a(2) + a(3))
    k = locus.k
    if locus.kind == RADIAL_INNER:
        return _outgoing(a, k) - _outgoing(a, k - 1)
    s = a(k - 1) + a(k) + a(k + 1)
    return Fraction(s, s - 1)


def closed_form_curvatures(seq: AntitreeSequence) -> dict:
    return {locus: closed_form_curvature(seq, locus) for locus in loci(seq)}


def antitree_sharpness(seq: AntitreeSequence) -> SharpnessVerdict:
    """Sharpness from the closed forms alone (no transport solves)."""
    if not isinstance(seq, AntitreeSequence):
        seq = AntitreeSequence(tuple(seq))
    values = closed_form_curvatures(seq)
    worst = min(values, key=lambda lo: (values[lo], lo))
    m = values[worst]
    bound = Fraction(2, seq.diameter)
    return SharpnessVerdict(m > 0 and m == bound, m, seq.diameter, bound, locus_edges(seq, worst)[0])


def failing_loci(seq: AntitreeSequence) -> list:
    """Loci whose curvature is below ``2 / diameter``."""
    bound = Fraction(2, seq.diameter)
    return [lo for lo, v in closed_form_curvatures(seq).items() if v < bound]


# --- scans -----------------------------------------------------------------


@dataclass
class ScanResult:
    """Outcome of a diameter scan over symmetrical antitrees with ``a_1 = 1``.

    ``kind`` is ``"family"`` (``level_forms`` instantiated at every ``t`` in
    ``parameters``), ``"finite"`` (explicit ``sequences``) or ``"empty"``.
    ``trace`` holds the propagated level forms of an even scan; ``region``
    lists the candidates examined by a bounded odd scan.
    """

    diameter: int
    kind: str
    parameters: Optional[IntegralityResult] = None
    level_forms: tuple = ()
    sequences: list = field(default_factory=list)
    trace: list = field(default_factory=list)
    region: list = field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return self.kind == "empty"

    def instantiate(self, t: int) -> AntitreeSequence:
        if t not in self.parameters:
            raise ValueError(f"t = {t} is not admissible")
        return AntitreeSequence(tuple(int(f(t)) for f in self.level_forms))

    def smallest(self) -> Optional[AntitreeSequence]:
        if self.kind == "family":
            return self.instantiate(self.parameters.smallest)
        if self.kind == "finite":
            return self.sequences[0]
        return None

    def describe(self) -> str:
        head = f"diameter {self.diameter}: "
        if self.kind == "empty":
            return head + "EMPTY"
        if self.kind == "finite":
            return head + ", ".join(map(str, self.sequences))
        body = ", ".join(str(f) for f in self.level_forms)
        return head + f"AT({body}) for {self.parameters}"

    def to_json(self) -> dict:
        out = {"diameter": self.diameter, "kind": self.kind}
        if self.parameters is not None:
            out["parameters"] = self.parameters.to_json()
        if self.level_forms:
            out["level_forms"] = [f.to_json() for f in self.level_forms]
        if self.sequences:
            out["sequences"] = [list(s.levels) for s in self.sequences]
        if self.trace:
            out["trace"] = [{"level": k, **f.to_json()} for k, f in self.trace]
        if self.region:
            out["region"] = self.region
        return out


def _cross_check(a: dict, k: int, L: int) -> None:
    # (2a_k + a_{k+1} - 1) * L == 2k * (a_k + a_{k+1} + a_{k+2} - 1) identically in t
    lhs = (2 * a[k] + a[k + 1] - 1) * L
    rhs = (a[k] + a[k + 1] + a[k + 2] - 1) * (2 * k)
    if lhs != rhs:
        raise AffinenessError(f"level {k + 2} does not satisfy the radial equation for L = {L}")


def propagate_levels(L: int) -> dict:
    """Level sizes forced by equal radial curvature ``2/L``, as affine forms in ``t = a_2``.

    All radial edges at ``2/L`` means ``_outgoing(a, k) = 2k/L`` for each
    ``k``; each such equation is linear in ``a_{k+2}``.
    """
    t = AffineForm.parameter()
    a = {1: AffineForm(1), 2: t}
    for k in range(1, L // 2 + 1):
        ratio = Fraction(L, 2 * k)
        a[k + 2] = (2 * a[k] + a[k + 1] - 1) * ratio - a[k] - a[k + 1] + 1
        if not isinstance(a[k + 2], AffineForm):
            raise AffinenessError(f"level {k + 2} is not affine in t")
        _cross_check(a, k, L)
    return a


def scan_even_diameter(L: int) -> ScanResult:
    """All sharp symmetrical antitrees of even diameter ``L`` with a single root."""
    if isinstance(L, bool) or not isinstance(L, int) or L < 4 or L % 2:
        raise ValueError("even scan needs an even L >= 4")
    a = propagate_levels(L)
    half = L // 2
    if a[half + 2] != a[half]:
        raise AffinenessError(f"symmetry closure fails for L = {L}")
    trace = [(k, a[k]) for k in range(1, half + 2)]
    admissible = affine_integer_solutions(a[2], 1)
    for k in range(3, half + 2):
        admissible = admissible.intersect(affine_integer_solutions(a[k], 1))
        if admissible.is_empty:
            break
    if admissible.is_empty:
        return ScanResult(L, "empty", trace=trace)

    forms = tuple(a[k] for k in range(1, half + 2))
    forms = forms + forms[-2::-1]
    result = ScanResult(L, "family", admissible, forms, trace=trace)
    if admissible.kind == "finite":
        result = ScanResult(L, "finite", admissible, forms,
                            [result.instantiate(t) for t in admissible.values], trace)
    first = result.smallest()
    if not antitree_sharpness(first).is_sharp:
        raise AffinenessError(f"{first} came out of the scan but is not sharp")
    return result


def iter_even_range(L_from: int, L_to: int, jobs: int = 1):
    """Yield scans for every even ``L`` in ``[L_from, L_to]`` in increasing ``L``.

    Odd endpoints round inward. Results are produced one at a time so long
    ranges never hold every trace in memory.
    """
    if L_from > L_to:
        raise ValueError(f"empty range {L_from}..{L_to}")
    start = L_from + (L_from % 2)
    diameters = range(max(start, 4), L_to + 1, 2)
    if jobs > 1 and len(diameters) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            yield from pool.map(scan_even_diameter, diameters, chunksize=4)
    else:
        for L in diameters:
            yield scan_even_diameter(L)


def scan_even_range(L_from: int, L_to: int, jobs: int = 1) -> list:
    return list(iter_even_range(L_from, L_to, jobs))


def _odd_region(L: int) -> list:
    """Candidates ``(b,)`` or ``(b, c)`` allowed by two necessary inequalities.

    L = 3, ``AT(1,b,b,1)``: root edges ``(b+1)/(2b) >= 2/3`` give ``b <= 3``.
    L = 5, ``AT(1,b,c,c,b,1)``: root edges ``(b+1)/(b+c) >= 2/5`` give
    ``c <= (3b+5)/2``; the middle radial edge ``(2c-2b)/(2c+b-1) >= 2/5``
    gives ``c >= (6b-1)/3``. Both together need ``b <= 17/3``.
    """
    if L == 3:
        return [(b,) for b in range(1, 4)]
    cands = []
    b_max = math.floor(Fraction(17, 3))
    for b in range(1, b_max + 1):
        lo = math.ceil(Fraction(6 * b - 1, 3))
        hi = math.floor(Fraction(3 * b + 5, 2))
        cands += [(b, c) for c in range(max(lo, 1), hi + 1)]
    return cands


def odd_candidate(L: int, params: tuple) -> AntitreeSequence:
    if L == 3:
        (b,) = params
        return AntitreeSequence((1, b, b, 1))
    b, c = params
    return AntitreeSequence((1, b, c, c, b, 1))


def scan_odd_small(L: int) -> ScanResult:
    """Exhaustive scan of symmetrical antitrees with a single root for diameter 3 or 5."""
    if L not in (3, 5):
        raise ValueError("odd scan is only available for L = 3 and L = 5")
    found, region = [], []
    for params in _odd_region(L):
        seq = odd_candidate(L, params)
        verdict = antitree_sharpness(seq)
        region.append({
            "sequence": list(seq.levels),
            "is_sharp": verdict.is_sharp,
            "min_curvature": format_rational(verdict.min_curvature),
            "failing_loci": [str(lo) for lo in failing_loci(seq)],
        })
        if verdict.is_sharp:
            found.append(seq)
    return ScanResult(L, "finite" if found else "empty", sequences=found, region=region)


# --- family lemmas and cross-validation -------------------------------------


def diameter4_member(b: int, c: int = None) -> AntitreeSequence:
    return AntitreeSequence((1, b, b + 2 if c is None else c, b, 1))


def diameter6_member(b: int, c: int = None, d: int = None) -> AntitreeSequence:
    c = 2 * b + 3 if c is None else c
    d = 3 * b + 1 if d is None else d
    return AntitreeSequence((1, b, c, d, c, b, 1))


def verify_family_lemmas(max_b: int, lp_max_b: int = 3) -> dict:
    """Sharpness of the diameter-4 and diameter-6 families and non-sharpness of their
    unit perturbations, by closed form; graph-level transport re-check for small ``b``."""
    if max_b < 1:
        raise ValueError("max_b must be at least 1")
    rows = []
    ok = True
    for b in range(1, max_b + 1):
        members = [diameter4_member(b), diameter6_member(b)]
        c4, c6, d6 = b + 2, 2 * b + 3, 3 * b + 1
        perturbed = [diameter4_member(b, c4 + s) for s in (-1, 1)]
        perturbed += [diameter6_member(b, c6 + s, d6) for s in (-1, 1)]
        perturbed += [diameter6_member(b, c6, d6 + s) for s in (-1, 1)]
        row = {"b": b, "sharp": [], "perturbed_not_sharp": [], "lp_checked": []}
        for seq in members:
            good = antitree_sharpness(seq).is_sharp
            row["sharp"].append([str(seq), good])
            ok &= good
            if b <= lp_max_b:
                lp = is_bm_sharp(antitree_graph(seq)).is_sharp
                row["lp_checked"].append([str(seq), lp])
                ok &= lp
        for seq in perturbed:
            bad = not antitree_sharpness(seq).is_sharp
            row["perturbed_not_sharp"].append([str(seq), bad])
            ok &= bad
        rows.append(row)
    return {"max_b": max_b, "passed": ok, "rows": rows}


def rooted_sequences(max_levels: int, max_size: int):
    """Every ``(1, a_2, ..., a_N)`` with ``2 <= N <= max_levels`` and ``1 <= a_k <= max_size``."""
    for N in range(2, max_levels + 1):
        for tail in itertools.product(range(1, max_size + 1), repeat=N - 1):
            yield AntitreeSequence((1,) + tail)


def cross_validate(max_levels: int = 5, max_size: int = 4, all_edges: bool = False) -> dict:
    """Compare closed forms with transport-based curvature on generated antitrees.

    With ``all_edges`` every edge of each locus is solved, which also checks
    that curvature is constant along a locus.
    """
    instances = 0
    disagreements = []
    for seq in rooted_sequences(max_levels, max_size):
        G = antitree_graph(seq)
        for locus in loci(seq):
            expected = closed_form_curvature(seq, locus)
            edges = locus_edges(seq, locus)
            for x, y in edges if all_edges else edges[:1]:
                instances += 1
                got = kappa_lly(G, x, y)
                if got != expected:
                    disagreements.append({
                        "sequence": list(seq.levels), "locus": str(locus), "edge": [x, y],
                        "closed_form": format_rational(expected), "transport": format_rational(got),
                    })
    return {
        "max_levels": max_levels,
        "max_size": max_size,
        "instances": instances,
        "disagreements": disagreements,
        "passed": not disagreements,
    }
