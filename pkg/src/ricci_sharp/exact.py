"""Exact rationals and one-parameter affine forms.

Every curvature, mass and transport cost in the package is a
:class:`fractions.Fraction`. ``Fraction`` already keeps a canonical form
(positive denominator, reduced by the gcd) and uses Python's unbounded
integers, so it is used directly as the rational type.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Integral, Rational as _RationalABC
from typing import Optional, Union

Rational = Fraction

RationalLike = Union[int, Fraction]


def rat(numerator: RationalLike, denominator: RationalLike = 1) -> Fraction:
    """Canonical rational ``numerator/denominator``.

    Floats are refused so that nothing inexact can leak into the core.
    """
    for part in (numerator, denominator):
        if isinstance(part, bool) or not isinstance(part, _RationalABC):
            raise TypeError(f"expected an integer or Fraction, got {part!r}")
    if denominator == 0:
        raise ValueError("zero denominator")
    return Fraction(numerator) / Fraction(denominator)


def format_rational(x: RationalLike) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Inverse of :func:`format_rational`; accepts ``"p"`` or ``"p/q"`` only."""
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        if sep:
            return rat(int(num), int(den))
        return Fraction(int(num))
    except ValueError as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


@dataclass(frozen=True)
class AffineForm:
    """``slope * t + constant`` in a single integer parameter ``t``."""

    constant: Fraction = Fraction(0)
    slope: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "constant", rat(self.constant))
        object.__setattr__(self, "slope", rat(self.slope))

    @classmethod
    def parameter(cls) -> "AffineForm":
        return cls(0, 1)

    def __call__(self, t: RationalLike) -> Fraction:
        return affine_eval(self, t)

    def __add__(self, other):
        if isinstance(other, AffineForm):
            return AffineForm(self.constant + other.constant, self.slope + other.slope)
        if isinstance(other, (int, Fraction)):
            return AffineForm(self.constant + other, self.slope)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return AffineForm(-self.constant, -self.slope)

    def __sub__(self, other):
        if isinstance(other, (AffineForm, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return AffineForm(self.constant * other, self.slope * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * rat(1, other)
        return NotImplemented

    @property
    def is_constant(self) -> bool:
        return self.slope == 0

    def __str__(self) -> str:
        if self.slope == 0:
            return format_rational(self.constant)
        s = "t" if self.slope == 1 else f"{format_rational(self.slope)}*t"
        if self.constant == 0:
            return s
        sign = "+" if self.constant > 0 else "-"
        return f"{s} {sign} {format_rational(abs(self.constant))}"

    def to_json(self) -> dict:
        return {"slope": format_rational(self.slope), "constant": format_rational(self.constant)}


def affine_eval(f: AffineForm, t: RationalLike) -> Fraction:
    return f.slope * rat(t) + f.constant


EMPTY = "empty"
ALL = "all"
RESIDUE = "residue"
FINITE = "finite"


@dataclass(frozen=True)
class IntegralityResult:
    """Set of integers ``t`` for which some affine condition holds.

    ``kind`` is one of:

    * ``"empty"``   no admissible ``t``;
    * ``"all"``     every integer ``t >= threshold``;
    * ``"residue"`` every ``t >= threshold`` with ``t % modulus == residue``;
    * ``"finite"``  exactly the integers listed in ``values``.

    ``"all"`` is the residue class with modulus 1.
    """

    kind: str
    threshold: Optional[int] = None
    modulus: int = 1
    residue: int = 0
    values: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in (EMPTY, ALL, RESIDUE, FINITE):
            raise ValueError(f"unknown kind {self.kind!r}")

    @classmethod
    def empty(cls) -> "IntegralityResult":
        return cls(EMPTY)

    @classmethod
    def progression(cls, modulus: int, residue: int, threshold: int) -> "IntegralityResult":
        """Residue class starting at its first member ``>= threshold``."""
        residue %= modulus
        first = threshold + ((residue - threshold) % modulus)
        if modulus == 1:
            return cls(ALL, threshold=first)
        return cls(RESIDUE, threshold=first, modulus=modulus, residue=residue)

    @classmethod
    def finite(cls, values) -> "IntegralityResult":
        values = tuple(sorted(set(values)))
        if not values:
            return cls.empty()
        return cls(FINITE, values=values)

    @property
    def is_empty(self) -> bool:
        return self.kind == EMPTY

    @property
    def smallest(self) -> Optional[int]:
        if self.kind == EMPTY:
            return None
        if self.kind == FINITE:
            return self.values[0]
        return self.threshold

    def __contains__(self, t: int) -> bool:
        if self.kind == EMPTY:
            return False
        if self.kind == FINITE:
            return t in self.values
        return t >= self.threshold and (t - self.residue) % self.modulus == 0

    def intersect(self, other: "IntegralityResult") -> "IntegralityResult":
        if self.is_empty or other.is_empty:
            return IntegralityResult.empty()
        if self.kind == FINITE:
            return IntegralityResult.finite(t for t in self.values if t in other)
        if other.kind == FINITE:
            return other.intersect(self)
        crt = _crt(self.residue, self.modulus, other.residue, other.modulus)
        if crt is None:
            return IntegralityResult.empty()
        residue, modulus = crt
        return IntegralityResult.progression(
            modulus, residue, max(self.threshold, other.threshold)
        )

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.kind in (ALL, RESIDUE):
            out["threshold"] = self.threshold
            out["modulus"] = self.modulus
            out["residue"] = self.residue
        elif self.kind == FINITE:
            out["values"] = list(self.values)
        return out

    def __str__(self) -> str:
        if self.kind == EMPTY:
            return "EMPTY"
        if self.kind == ALL:
            return f"ALL t >= {self.threshold}"
        if self.kind == RESIDUE:
            return f"t = {self.residue} (mod {self.modulus}), t >= {self.threshold}"
        return "t in {" + ", ".join(map(str, self.values)) + "}"


def _crt(r1: int, m1: int, r2: int, m2: int):
    """Combine ``t = r1 (mod m1)`` and ``t = r2 (mod m2)``; None if inconsistent."""
    g = math.gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    lcm = m1 // g * m2
    # m1 * k = r2 - r1 (mod m2)
    k = ((r2 - r1) // g) * pow(m1 // g, -1, m2 // g) % (m2 // g) if m2 // g > 1 else 0
    return (r1 + m1 * k) % lcm, lcm


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def affine_integer_solutions(f: AffineForm, t_min: int = 1) -> IntegralityResult:
    """Integers ``t >= t_min`` at which ``f(t)`` is a positive integer."""
    if not isinstance(t_min, Integral) or t_min < 1:
        raise ValueError("t_min must be a positive integer")
    t_min = int(t_min)
    slope, constant = f.slope, f.constant

    if slope == 0:
        if constant.denominator == 1 and constant > 0:
            return IntegralityResult.progression(1, 0, t_min)
        return IntegralityResult.empty()

    # slope*t + constant in Z  <=>  A*t = -B (mod D) after clearing denominators
    D = math.lcm(slope.denominator, constant.denominator)
    A = int(slope * D)
    B = int(constant * D)
    g = math.gcd(A, D)
    if B % g:
        return IntegralityResult.empty()
    modulus = D // g
    residue = ((-B // g) * pow(A // g, -1, modulus)) % modulus if modulus > 1 else 0

    # positivity: slope*t + constant > 0
    root = -constant / slope
    if slope > 0:
        lower = max(t_min, math.floor(root) + 1)
        return IntegralityResult.progression(modulus, residue, lower)
    upper = _ceil(root) - 1
    return IntegralityResult.finite(
        t for t in range(t_min, upper + 1) if (t - residue) % modulus == 0
    )
