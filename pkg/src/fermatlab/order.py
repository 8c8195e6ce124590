"""Giordano's order on Fermat reals and the split-point line.

``compare`` decides ``x <= y`` exactly.  As a linear order its down-sets
``{k : k <= l}`` have a maximum ``l`` whose complement has no minimum, so
the nest of closed down-rays is not interlocking.  The split-point line
repairs that by adjoining, at every Fermat real ``x``, a point ``(x, minus)``
immediately below it and a point ``(x, plus)`` immediately above it.
Points are compared by value first and then by tag, ``minus < base < plus``.
"""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .core import DEFAULT_GRID, FermatReal, const, eval_at, format_fermat, sub

__all__ = [
    "Sign",
    "Cmp",
    "Tag",
    "Sense",
    "FermatPoint",
    "Ray",
    "sign",
    "compare",
    "compare_F",
    "p_map",
    "successor",
    "predecessor",
    "midpoint",
    "ray_contains",
    "ray_has_max",
    "complement_min",
    "ray_has_min",
    "complement_max",
    "oracle_compare",
    "base",
    "fermat_key",
    "point_key",
]


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


class Cmp(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1

    @classmethod
    def of(cls, n) -> "Cmp":
        return cls((n > 0) - (n < 0))


class Tag(enum.IntEnum):
    MINUS = -1
    BASE = 0
    PLUS = 1

    def __str__(self):
        return self.name.lower()


class Sense(enum.Enum):
    DOWN_STRICT = "down-strict"
    DOWN_CLOSED = "down-closed"
    UP_STRICT = "up-strict"
    UP_CLOSED = "up-closed"

    @property
    def is_down(self) -> bool:
        return self in (Sense.DOWN_STRICT, Sense.DOWN_CLOSED)


def sign(x: FermatReal) -> Sign:
    """Sign of ``x`` under Giordano's order.

    A term ``c * t**a`` with ``a <= 1`` cannot be absorbed by an ``o(t)``
    witness, so the first nonzero coefficient (standard part first, then
    by increasing exponent) decides.
    """
    if x.standard_part != 0:
        return Sign(Cmp.of(x.standard_part))
    if x.terms:
        return Sign(Cmp.of(x.terms[0][1]))
    return Sign.ZERO


def compare(x: FermatReal, y: FermatReal) -> Cmp:
    return Cmp(-sign(sub(y, x)))


fermat_key = functools.cmp_to_key(compare)


@dataclass(frozen=True)
class FermatPoint:
    """A point of the split-point line: a Fermat real with a tag."""

    value: FermatReal
    tag: Tag = Tag.BASE

    def __post_init__(self):
        object.__setattr__(self, "tag", Tag(self.tag))

    def __lt__(self, other):
        if not isinstance(other, FermatPoint):
            return NotImplemented
        return compare_F(self, other) is Cmp.LT

    def __le__(self, other):
        if not isinstance(other, FermatPoint):
            return NotImplemented
        return compare_F(self, other) is not Cmp.GT

    def __gt__(self, other):
        if not isinstance(other, FermatPoint):
            return NotImplemented
        return compare_F(self, other) is Cmp.GT

    def __ge__(self, other):
        if not isinstance(other, FermatPoint):
            return NotImplemented
        return compare_F(self, other) is not Cmp.LT

    def __str__(self):
        return f"({format_fermat(self.value)}, {self.tag})"


def base(x) -> FermatPoint:
    if not isinstance(x, FermatReal):
        x = const(x)
    return FermatPoint(x, Tag.BASE)


def compare_F(p: FermatPoint, q: FermatPoint) -> Cmp:
    c = compare(p.value, q.value)
    if c is not Cmp.EQ:
        return c
    return Cmp.of(p.tag - q.tag)


point_key = functools.cmp_to_key(compare_F)


def p_map(p: FermatPoint) -> FermatReal:
    return p.value


def successor(p: FermatPoint) -> Optional[FermatPoint]:
    """Immediate successor on the split line; plus-points have none."""
    if p.tag is Tag.PLUS:
        return None
    return FermatPoint(p.value, Tag(p.tag + 1))


def predecessor(p: FermatPoint) -> Optional[FermatPoint]:
    """Immediate predecessor on the split line; minus-points have none."""
    if p.tag is Tag.MINUS:
        return None
    return FermatPoint(p.value, Tag(p.tag - 1))


def midpoint(p: FermatPoint, q: FermatPoint) -> FermatPoint:
    """A base point strictly between ``p`` and ``q`` when their values differ.

    This is the density witness: nothing has an immediate neighbour across
    distinct values.
    """
    if compare(p.value, q.value) is Cmp.EQ:
        raise ValueError("points share a value; no point lies strictly between across values")
    return FermatPoint((p.value + q.value) * Fraction(1, 2), Tag.BASE)


@dataclass(frozen=True)
class Ray:
    bound: FermatPoint
    sense: Sense

    def __contains__(self, q: FermatPoint) -> bool:
        return ray_contains(self, q)

    def __str__(self):
        return f"{self.sense.value} at {self.bound}"


def ray_contains(r: Ray, q: FermatPoint) -> bool:
    c = compare_F(q, r.bound)
    if r.sense is Sense.DOWN_STRICT:
        return c is Cmp.LT
    if r.sense is Sense.DOWN_CLOSED:
        return c is not Cmp.GT
    if r.sense is Sense.UP_STRICT:
        return c is Cmp.GT
    return c is not Cmp.LT


def _require(r: Ray, down: bool):
    if r.sense.is_down != down:
        kind = "down" if down else "up"
        raise ValueError(f"expected a {kind} ray, got {r.sense.value}")


def ray_has_max(r: Ray) -> Optional[FermatPoint]:
    """Maximum of a down ray, or None when it has none."""
    _require(r, down=True)
    if r.sense is Sense.DOWN_STRICT:
        return predecessor(r.bound)
    return r.bound


def complement_min(r: Ray) -> Optional[FermatPoint]:
    """Minimum of the complement of a down ray, or None."""
    _require(r, down=True)
    if r.sense is Sense.DOWN_STRICT:
        return r.bound
    return successor(r.bound)


def ray_has_min(r: Ray) -> Optional[FermatPoint]:
    _require(r, down=False)
    if r.sense is Sense.UP_STRICT:
        return successor(r.bound)
    return r.bound


def complement_max(r: Ray) -> Optional[FermatPoint]:
    _require(r, down=False)
    if r.sense is Sense.UP_STRICT:
        return r.bound
    return predecessor(r.bound)


def oracle_compare(
    x: FermatReal,
    y: FermatReal,
    grid: Sequence[Fraction] = DEFAULT_GRID,
    probes: int = 3,
) -> Optional[Cmp]:
    """Numeric comparison at the ``probes`` smallest grid points.

    Evaluates both operands separately and compares the values, so it never
    touches the symbolic difference.  Returns None when the probe points
    disagree.
    """
    if probes < 1:
        raise ValueError("probes must be at least 1")
    points = sorted(grid)[:probes]
    if not points:
        raise ValueError("empty oracle grid")
    verdicts = {Cmp.of(eval_at(x, t) - eval_at(y, t)) for t in points}
    return verdicts.pop() if len(verdicts) == 1 else None


def sorted_points(points: Iterable[FermatPoint]) -> list:
    return sorted(points, key=point_key)
