"""Topological queries over the split-point line and its finite powers."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .core import FermatReal, const, eps
from .order import (
    Cmp,
    FermatPoint,
    Ray,
    Sense,
    Tag,
    compare_F,
    predecessor,
    ray_contains,
    successor,
)

__all__ = [
    "monad_contains",
    "interval_contains",
    "default_probes",
    "ray_identity_check",
    "singleton_identity_check",
    "Box",
    "box_contains",
    "SequenceSpec",
    "converges",
    "separating_interval",
    "product_converges",
    "separating_box",
]

DEFAULT_PROBE_EXPONENTS = (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1))
DEFAULT_PROBE_OFFSETS = (Fraction(1, 2), Fraction(1))


def monad_contains(r, x: FermatReal) -> bool:
    """Whether ``x`` is infinitely close to the real ``r`` (same standard part)."""
    return x.standard_part == Fraction(r)


def _check_interval(lo: FermatPoint, hi: FermatPoint):
    if compare_F(lo, hi) is not Cmp.LT:
        raise ValueError(f"malformed interval: {lo} is not below {hi}")


def interval_contains(lo: FermatPoint, hi: FermatPoint, p: FermatPoint) -> bool:
    """Membership in the open interval ``(lo, hi)`` of the split line."""
    _check_interval(lo, hi)
    return compare_F(lo, p) is Cmp.LT and compare_F(p, hi) is Cmp.LT


def default_probes(l: FermatReal,
                   exponents: Sequence[Fraction] = DEFAULT_PROBE_EXPONENTS,
                   offsets: Sequence[Fraction] = DEFAULT_PROBE_OFFSETS) -> List[FermatPoint]:
    """Points near ``l``: ``l``, ``l +- eps(a)``, ``l +- c``, each with all three tags."""
    values = [l]
    for a in exponents:
        values += [l + eps(a), l - eps(a)]
    for c in offsets:
        values += [l + c, l - c]
    return [FermatPoint(v, tag) for v in values for tag in Tag]


def ray_identity_check(l: FermatReal, probes: Optional[Iterable[FermatPoint]] = None) -> bool:
    """Check, on base probes, that closed rays at ``l`` are strict rays at its neighbours.

    ``{k <= (l, base)}`` must agree with ``{k < (l, plus)}`` and
    ``{k >= (l, base)}`` with ``{k > (l, minus)}``.  A finite falsification
    harness; the identity itself is universally quantified.
    """
    at = FermatPoint(l, Tag.BASE)
    down_closed, up_closed = Ray(at, Sense.DOWN_CLOSED), Ray(at, Sense.UP_CLOSED)
    down_strict = Ray(successor(at), Sense.DOWN_STRICT)
    up_strict = Ray(predecessor(at), Sense.UP_STRICT)
    for q in default_probes(l) if probes is None else probes:
        if q.tag is not Tag.BASE:
            continue
        if ray_contains(down_closed, q) != ray_contains(down_strict, q):
            return False
        if ray_contains(up_closed, q) != ray_contains(up_strict, q):
            return False
    return True


def singleton_identity_check(x: FermatReal, probes: Optional[Iterable[FermatPoint]] = None) -> bool:
    """``{x} = (down-closed at x) & (up-closed at x)`` on the base probes."""
    at = FermatPoint(x, Tag.BASE)
    down, up = Ray(at, Sense.DOWN_CLOSED), Ray(at, Sense.UP_CLOSED)
    for q in default_probes(x) if probes is None else probes:
        if q.tag is not Tag.BASE:
            continue
        if (ray_contains(down, q) and ray_contains(up, q)) != (compare_F(q, at) is Cmp.EQ):
            return False
    return True


@dataclass(frozen=True)
class Box:
    """A product of open intervals; each factor is ``(up-strict lower, down-strict upper)``."""

    factors: Tuple[Tuple[Ray, Ray], ...]

    def __post_init__(self):
        factors = tuple(tuple(f) for f in self.factors)
        object.__setattr__(self, "factors", factors)
        for lower, upper in factors:
            if lower.sense is not Sense.UP_STRICT or upper.sense is not Sense.DOWN_STRICT:
                raise ValueError("box factors must be (up-strict, down-strict) ray pairs")
            _check_interval(lower.bound, upper.bound)

    @classmethod
    def from_bounds(cls, bounds: Iterable[Tuple[FermatPoint, FermatPoint]]) -> "Box":
        return cls(tuple((Ray(lo, Sense.UP_STRICT), Ray(hi, Sense.DOWN_STRICT)) for lo, hi in bounds))

    @property
    def dim(self) -> int:
        return len(self.factors)

    def bounds(self) -> List[Tuple[FermatPoint, FermatPoint]]:
        return [(lower.bound, upper.bound) for lower, upper in self.factors]


def box_contains(b: Box, pt: Sequence[FermatPoint]) -> bool:
    if len(pt) != b.dim:
        raise ValueError(f"point has {len(pt)} coordinates, box has {b.dim}")
    return all(ray_contains(lower, p) and ray_contains(upper, p)
               for (lower, upper), p in zip(b.factors, pt))


@dataclass(frozen=True)
class SequenceSpec:
    """``prefix[0], prefix[1], ..., tail, tail, ...``"""

    prefix: Tuple[FermatPoint, ...]
    tail: FermatPoint

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))

    def __getitem__(self, n: int):
        return self.prefix[n] if n < len(self.prefix) else self.tail

    def settles_at(self) -> int:
        """First index from which every term equals the tail."""
        n = len(self.prefix)
        while n > 0 and compare_F(self.prefix[n - 1], self.tail) is Cmp.EQ:
            n -= 1
        return n


def _above(p: FermatPoint) -> FermatPoint:
    return FermatPoint(p.value + const(1), Tag.BASE)


def _below(p: FermatPoint) -> FermatPoint:
    return FermatPoint(p.value - const(1), Tag.BASE)


def separating_interval(c: FermatPoint, x: FermatPoint) -> Tuple[FermatPoint, FermatPoint]:
    """An open interval containing ``x`` but not ``c`` (requires ``c != x``)."""
    order = compare_F(c, x)
    if order is Cmp.EQ:
        raise ValueError("points coincide")
    return (c, _above(x)) if order is Cmp.LT else (_below(x), c)


def converges(s: SequenceSpec, limit: FermatPoint) -> bool:
    """Eventually-constant sequences converge exactly to their tail (the line is Hausdorff)."""
    return compare_F(s.tail, limit) is Cmp.EQ


def separating_box(tail: Sequence[FermatPoint], limit: Sequence[FermatPoint]) -> Box:
    """A box around ``limit`` that misses ``tail``; it differs in some coordinate."""
    bounds = []
    for c, x in zip(tail, limit):
        if compare_F(c, x) is Cmp.EQ:
            bounds.append((_below(x), _above(x)))
        else:
            bounds.append(separating_interval(c, x))
    box = Box.from_bounds(bounds)
    if box_contains(box, list(tail)):
        raise ValueError("tail equals limit; no separating box")
    return box


def product_converges(ss: Sequence[SequenceSpec], limits: Sequence[FermatPoint]) -> bool:
    """Convergence of the product sequence, decided on the product itself.

    The product sequence settles once every coordinate has; it converges
    iff that eventual point is the limit, otherwise a box around the limit
    avoids every later term.
    """
    if len(ss) != len(limits):
        raise ValueError(f"{len(ss)} coordinate sequences but {len(limits)} limit coordinates")
    n = max((s.settles_at() for s in ss), default=0)
    eventual = [s[n] for s in ss]
    if all(compare_F(c, x) is Cmp.EQ for c, x in zip(eventual, limits)):
        return True
    box = separating_box(eventual, limits)
    return box_contains(box, eventual)
