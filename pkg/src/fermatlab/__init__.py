"""Exact Fermat-real arithmetic, the split-point order line, and a finite nest laboratory."""
from .core import (
    ONE,
    ZERO,
    FermatReal,
    NotLittleOhError,
    add,
    const,
    eps,
    eq_fermat,
    eval_at,
    format_fermat,
    infinitesimal_part,
    is_infinitesimal,
    leading_term,
    mul,
    neg,
    normalize,
    pow_nat,
    standard_part,
    sub,
)
from .order import Cmp, FermatPoint, Ray, Sense, Sign, Tag, compare, compare_F, sign
from .parser import EvalError, ParseError, parse, parse_fermat

__version__ = "0.1.0"
