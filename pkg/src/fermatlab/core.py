"""Fermat reals as canonical little-oh polynomials.

A Fermat real is stored as ``r + sum(c_i * t**a_i)`` with exact rational
``r``, ``c_i`` and ``a_i``.  The canonical form keeps only exponents in
``(0, 1]``, strictly increasing, with nonzero coefficients.  Anything of
order ``t**a`` with ``a > 1`` is ``o(t)`` and is dropped, so two values are
equal in the ring exactly when their canonical fields coincide.

Every constructor and operation returns canonical form.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Optional, Tuple, Union

import mpmath

__all__ = [
    "FermatReal",
    "NotLittleOhError",
    "ZERO",
    "ONE",
    "eps",
    "const",
    "normalize",
    "add",
    "sub",
    "neg",
    "mul",
    "pow_nat",
    "eq_fermat",
    "standard_part",
    "infinitesimal_part",
    "is_infinitesimal",
    "leading_term",
    "eval_at",
    "ORACLE_DPS",
    "DEFAULT_GRID",
]

Term = Tuple[Fraction, Fraction]
Scalar = Union[int, Fraction]

ORACLE_DPS = 50
DEFAULT_GRID = tuple(Fraction(1, 10**k) for k in range(3, 13))


class NotLittleOhError(ValueError):
    """Raised for input that is not a little-oh polynomial (negative exponent)."""


def _q(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class FermatReal:
    """A canonical Fermat real.

    Use :func:`normalize`, :func:`eps` or :func:`const` to build values; the
    constructor only accepts fields that are already canonical.
    """

    standard_part: Fraction = Fraction(0)
    terms: Tuple[Term, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "standard_part", _q(self.standard_part))
        terms = tuple((_q(a), _q(c)) for a, c in self.terms)
        object.__setattr__(self, "terms", terms)
        prev = Fraction(0)
        for a, c in terms:
            if not (prev < a <= 1):
                raise ValueError(f"non-canonical exponent {a} in {terms!r}")
            if c == 0:
                raise ValueError(f"zero coefficient in {terms!r}")
            prev = a

    def __add__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else sub(self, other)

    def __rsub__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else sub(other, self)

    def __neg__(self):
        return neg(self)

    def __pos__(self):
        return self

    def __mul__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return pow_nat(self, n)

    def __bool__(self):
        return bool(self.standard_part) or bool(self.terms)

    def __str__(self):
        return format_fermat(self)

    def __repr__(self):
        return f"FermatReal({format_fermat(self)!r})"


def _coerce(value) -> Optional[FermatReal]:
    if isinstance(value, FermatReal):
        return value
    if isinstance(value, (int, Fraction)):
        return const(value)
    return None


def normalize(constant: Scalar = 0, terms: Iterable[Tuple[Scalar, Scalar]] = ()) -> FermatReal:
    """Canonicalize ``constant + sum(c * t**a for a, c in terms)``.

    Exponent-0 terms fold into the standard part, equal exponents merge,
    zero coefficients and exponents above 1 are dropped.

    >>> str(normalize(3, [(Fraction(1, 2), 2), (Fraction(6, 5), 7)]))
    '3 + 2*eps(1/2)'
    """
    r = _q(constant)
    merged: dict = {}
    for a, c in terms:
        a, c = _q(a), _q(c)
        if a < 0:
            raise NotLittleOhError(f"negative exponent {a} is not allowed")
        if a == 0:
            r += c
        elif a <= 1:
            merged[a] = merged.get(a, Fraction(0)) + c
    kept = tuple((a, merged[a]) for a in sorted(merged) if merged[a] != 0)
    return FermatReal(r, kept)


def const(r: Scalar) -> FermatReal:
    return FermatReal(_q(r))


def eps(a: Scalar, coefficient: Scalar = 1) -> FermatReal:
    """The infinitesimal ``coefficient * t**a``; zero when ``a > 1``."""
    a = _q(a)
    if a <= 0:
        raise NotLittleOhError(f"eps exponent must be positive, got {a}")
    return normalize(0, [(a, coefficient)])


ZERO = FermatReal()
ONE = FermatReal(Fraction(1))


def _raw(x: FermatReal):
    return [(Fraction(0), x.standard_part), *x.terms]


def add(x: FermatReal, y: FermatReal) -> FermatReal:
    return normalize(x.standard_part + y.standard_part, x.terms + y.terms)


def neg(x: FermatReal) -> FermatReal:
    return FermatReal(-x.standard_part, tuple((a, -c) for a, c in x.terms))


def sub(x: FermatReal, y: FermatReal) -> FermatReal:
    return add(x, neg(y))


def mul(x: FermatReal, y: FermatReal) -> FermatReal:
    # normalize() discards cross terms with a + b > 1
    products = [(a + b, c * d) for a, c in _raw(x) for b, d in _raw(y)]
    return normalize(0, products)


def pow_nat(x: FermatReal, n: int) -> FermatReal:
    """``x**n`` for a natural number ``n`` (``x**0`` is 1)."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError(f"exponent must be a natural number, got {n!r}")
    result, base = ONE, x
    while n:
        if n & 1:
            result = mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


def eq_fermat(x: FermatReal, y: FermatReal) -> bool:
    """Equality in the ring: ``x - y`` is ``o(t)``."""
    return not sub(x, y)


def standard_part(x: FermatReal) -> Fraction:
    return x.standard_part


def infinitesimal_part(x: FermatReal) -> FermatReal:
    return FermatReal(Fraction(0), x.terms)


def is_infinitesimal(x: FermatReal) -> bool:
    return x.standard_part == 0


def leading_term(x: FermatReal) -> Optional[Term]:
    """The smallest-exponent term ``(exponent, coefficient)``, if any."""
    return x.terms[0] if x.terms else None


def _mpf(q) -> mpmath.mpf:
    if isinstance(q, mpmath.mpf):
        return q
    q = _q(q)
    return mpmath.mpf(q.numerator) / q.denominator


def eval_at(x: FermatReal, t, dps: int = ORACLE_DPS) -> mpmath.mpf:
    """Evaluate the representative ``r + sum(c * t**a)`` at ``t > 0``.

    Uses ``dps`` significant decimal digits.  Intended as a numeric oracle,
    independent of the symbolic order and equality procedures.
    """
    with mpmath.workdps(dps):
        tt = _mpf(t)
        if tt <= 0:
            raise ValueError(f"t must be positive, got {t}")
        total = _mpf(x.standard_part)
        for a, c in x.terms:
            total += _mpf(c) * mpmath.power(tt, _mpf(a))
        return +total


def _fmt_q(q: Fraction) -> str:
    return str(q)


def format_fermat(x: FermatReal) -> str:
    """Render ``x`` in the expression grammar understood by the parser."""
    parts = []
    if x.standard_part != 0 or not x.terms:
        parts.append(_fmt_q(x.standard_part))
    for a, c in x.terms:
        mag = abs(c)
        body = f"eps({_fmt_q(a)})" if mag == 1 else f"{_fmt_q(mag)}*eps({_fmt_q(a)})"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)
