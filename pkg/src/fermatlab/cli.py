"""Command-line front ends ``fr`` and ``nest``.

Exit codes: 0 success, 1 parse or validation error, 2 refused (search bound
exceeded).  Diagnostics go to standard error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

import mpmath

from . import nests as nl
from .core import DEFAULT_GRID, ORACLE_DPS, FermatReal, eval_at, format_fermat, infinitesimal_part, leading_term
from .order import Cmp, FermatPoint, Tag, compare, fermat_key, oracle_compare
from .parser import EvalError, ParseError, parse_fermat
from .topology import SequenceSpec, converges, product_converges, separating_box, separating_interval

EXIT_OK, EXIT_INVALID, EXIT_REFUSED = 0, 1, 2


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _emit(obj) -> None:
    print(json.dumps(obj))


def _envelope(verdict, witness=None, detail=None) -> dict:
    return {"verdict": verdict, "witness": witness, "detail": detail}


def _expr(src: str) -> FermatReal:
    return parse_fermat(src)


def _rational(src: str) -> Fraction:
    x = parse_fermat(src)
    if x.terms:
        raise EvalError(f"expected a real number, got {format_fermat(x)}")
    return x.standard_part


def _grid(src: str) -> List[Fraction]:
    try:
        grid = [Fraction(part.strip()) for part in src.split(",") if part.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --grid value {src!r}: {exc}") from None
    if not grid or any(t <= 0 for t in grid):
        raise UsageError("--grid needs one or more positive values")
    return grid


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON: {exc}") from None


# ---- fr -------------------------------------------------------------------

def _fr_normalize(args):
    print(format_fermat(_expr(args.expr)))


def _fr_cmp(args):
    print(compare(_expr(args.lhs), _expr(args.rhs)).name)


def _fr_sort(args):
    values = sorted((_expr(e) for e in args.exprs), key=fermat_key)
    for v in values:
        print(format_fermat(v))


def _fr_st(args):
    x = _expr(args.expr)
    lead = leading_term(x)
    _emit(_envelope(
        str(x.standard_part),
        {"leading_term": None if lead is None else [str(lead[0]), str(lead[1])]},
        {"infinitesimal_part": format_fermat(infinitesimal_part(x)),
         "is_infinitesimal": x.standard_part == 0},
    ))


def _fr_monad(args):
    r, x = _rational(args.r), _expr(args.expr)
    _emit(_envelope(x.standard_part == r, str(x.standard_part),
                    {"r": str(r), "x": format_fermat(x)}))


def _fr_oracle_cmp(args):
    x, y = _expr(args.lhs), _expr(args.rhs)
    grid = _grid(args.grid) if args.grid else list(DEFAULT_GRID)
    if args.probes < 1:
        raise UsageError("--probes must be at least 1")
    points = sorted(grid)[:args.probes]
    verdict = oracle_compare(x, y, grid, args.probes)
    symbolic = compare(x, y)
    witness = [{"t": str(t),
                "lhs": mpmath.nstr(eval_at(x, t), 20),
                "rhs": mpmath.nstr(eval_at(y, t), 20)} for t in points]
    _emit(_envelope(
        "UNDECIDED" if verdict is None else verdict.name,
        witness,
        {"symbolic": symbolic.name, "agree": verdict is symbolic,
         "dps": ORACLE_DPS, "probes": len(points)},
    ))


def _point(src) -> FermatPoint:
    if not isinstance(src, str):
        raise UsageError(f"sequence entries must be expression strings, got {src!r}")
    return FermatPoint(_expr(src), Tag.BASE)


def _spec(obj):
    if not isinstance(obj, dict) or not {"prefix", "tail", "limit"} <= obj.keys():
        raise UsageError('sequence spec needs "prefix", "tail" and "limit"')
    if not isinstance(obj["prefix"], list):
        raise UsageError('"prefix" must be an array')
    spec = SequenceSpec(tuple(_point(p) for p in obj["prefix"]), _point(obj["tail"]))
    return spec, _point(obj["limit"])


def _fr_converge(args):
    data = _load_json(args.file)
    if isinstance(data, list):
        if not data:
            raise UsageError("product sequence needs at least one coordinate")
        pairs = [_spec(d) for d in data]
        specs, limits = [p[0] for p in pairs], [p[1] for p in pairs]
        ok = product_converges(specs, limits)
        coords = [converges(s, x) for s, x in pairs]
        if ok:
            witness = {"settles_at": max(s.settles_at() for s in specs)}
        else:
            n = max(s.settles_at() for s in specs)
            box = separating_box([s[n] for s in specs], limits)
            witness = {"box": [[str(lo), str(hi)] for lo, hi in box.bounds()]}
        _emit(_envelope(ok, witness, {"coordinates": coords, "coordinatewise": all(coords)}))
        return
    spec, limit = _spec(data)
    ok = converges(spec, limit)
    if ok:
        witness = {"settles_at": spec.settles_at()}
    else:
        witness = {"interval": [str(p) for p in separating_interval(spec.tail, limit)]}
    _emit(_envelope(ok, witness, {"tail": str(spec.tail), "limit": str(limit)}))


def _fr_parser() -> argparse.ArgumentParser:
    p = _ArgumentParser(prog="fr", description="Exact Fermat-real arithmetic and order queries.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    s = sub.add_parser("normalize", help="print the canonical form")
    s.add_argument("expr")
    s.set_defaults(run=_fr_normalize)

    s = sub.add_parser("cmp", help="compare two values: LT, EQ or GT")
    s.add_argument("lhs")
    s.add_argument("rhs")
    s.set_defaults(run=_fr_cmp)

    s = sub.add_parser("sort", help="sort values in increasing order")
    s.add_argument("exprs", nargs="+")
    s.set_defaults(run=_fr_sort)

    s = sub.add_parser("st", help="standard part, infinitesimal part, leading term")
    s.add_argument("expr")
    s.set_defaults(run=_fr_st)

    s = sub.add_parser("monad", help="is EXPR infinitely close to the real R?")
    s.add_argument("r")
    s.add_argument("expr")
    s.set_defaults(run=_fr_monad)

    s = sub.add_parser("oracle-cmp", help="compare numerically at small t")
    s.add_argument("lhs")
    s.add_argument("rhs")
    s.add_argument("--grid", help="comma-separated positive t values (default 1e-3,...,1e-12)")
    s.add_argument("--probes", type=int, default=3,
                   help="number of smallest grid points that must agree (default 3)")
    s.set_defaults(run=_fr_oracle_cmp)

    s = sub.add_parser("converge", help="decide convergence of an eventually constant sequence")
    s.add_argument("file")
    s.set_defaults(run=_fr_converge)
    return p


# ---- nest -----------------------------------------------------------------

def _labels_list(data, key, ground_set, required=True):
    if key not in data:
        if required:
            raise UsageError(f'instance needs "{key}"')
        return None
    value = data[key]
    if not isinstance(value, list):
        raise UsageError(f'"{key}" must be an array of arrays of labels')
    out = []
    for m in value:
        if not isinstance(m, list) or not all(isinstance(x, str) for x in m):
            raise UsageError(f'"{key}" entries must be arrays of strings')
        if len(set(m)) != len(m):
            raise UsageError(f'"{key}" entry {m!r} repeats a label')
        unknown = [x for x in m if x not in ground_set]
        if unknown:
            raise UsageError(f'"{key}" entry {m!r} uses labels not in ground: {unknown!r}')
        out.append(m)
    return out


class _Instance:
    def __init__(self, path: str):
        data = _load_json(path)
        if not isinstance(data, dict):
            raise UsageError("instance must be a JSON object")
        ground = data.get("ground")
        if not isinstance(ground, list) or not all(isinstance(x, str) for x in ground):
            raise UsageError('"ground" must be an array of strings')
        if len(set(ground)) != len(ground):
            raise UsageError('"ground" labels must be unique')
        self.ground = tuple(ground)
        self.data = data
        self._gs = set(ground)

    def family(self, key="family") -> nl.SetFamily:
        return nl.SetFamily(self.ground, _labels_list(self.data, key, self._gs))

    def topology(self) -> nl.FiniteTopology:
        opens = _labels_list(self.data, "topology", self._gs)
        try:
            return nl.FiniteTopology(self.ground, opens)
        except nl.TopologyError as exc:
            raise UsageError(f'"topology": {exc}') from None

    def show(self, s) -> List[str]:
        return nl.sort_labels(self.ground, s)

    def show_family(self, f: nl.SetFamily) -> List[List[str]]:
        return f.sorted_members()


def _nest_check(args):
    inst = _Instance(args.file)
    f = inst.family()
    nest = nl.is_nest(f)
    t0 = nl.t0_separates(f)
    order = nl.induced_order(f).sequence() if nest and t0 else None
    _emit({
        "is_nest": nest,
        "t0": t0,
        "t1": nl.t1_separates(f),
        "interlocking": nl.is_interlocking(f) if nest else None,
        "order": order,
    })


def _pair(p):
    return None if p is None else list(p)


def _nest_thm21(args):
    inst = _Instance(args.file)
    v = nl.theorem21_check(inst.family(), inst.family("family2"))
    _emit(_envelope(
        v.agree,
        {"separation": _pair(v.separation_witness), "order": _pair(v.order_witness)},
        {"union_t1": v.union_t1, "left_t0": v.left_t0, "right_t0": v.right_t0,
         "orders_match": v.orders_match, "rhs": v.rhs},
    ))


def _nest_thm22(args):
    inst = _Instance(args.file)
    v = nl.theorem22_check(inst.family())
    show = lambda s: None if s is None else inst.show(s)  # noqa: E731
    _emit(_envelope(
        v.agree,
        {"interlocking": show(v.interlocking_witness), "max_min": show(v.max_min_witness)},
        {"interlocking": v.interlocking, "max_min_condition": v.max_min_condition},
    ))


def _nest_vdw(args):
    inst = _Instance(args.file)
    v = nl.vdw_check(inst.topology(), inst.family(), inst.family("family2"))
    label = "LOTS" if v.lots else "GO" if v.go else "neither"
    _emit(_envelope(label, {"non_open": [inst.show(s) for s in v.non_open]}, v.components()))


def _nest_search(args):
    inst = _Instance(args.file)
    T = inst.topology()
    found = nl.search_nest_pair(T, bound=args.bound)
    witness = None if found is None else [inst.show_family(f) for f in found]
    _emit(_envelope(found is not None, witness, {"points": len(T.ground), "bound": args.bound}))


def _nest_neight(args):
    inst = _Instance(args.file)
    T = inst.topology()
    found = nl.neight(T, bound=args.bound)
    k, witness = (None, None) if found is None else (found[0], [inst.show_family(f) for f in found[1]])
    _emit(_envelope(k, witness, {"points": len(T.ground), "bound": args.bound}))


def _nest_parser() -> argparse.ArgumentParser:
    p = _ArgumentParser(prog="nest", description="Finite nest, interlocking and GO/LOTS checks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)
    table = [
        ("check", _nest_check, "nest, T0, T1, interlocking and induced order of \"family\""),
        ("thm21", _nest_thm21, "T1 union versus T0 nests with matching orders"),
        ("thm22", _nest_thm22, "interlocking versus the max/min condition"),
        ("vdw", _nest_vdw, "GO/LOTS verdict for \"family\", \"family2\" on \"topology\""),
        ("search", _nest_search, "find two open nests forming a T1-separating subbasis"),
        ("neight", _nest_neight, "smallest number of such nests"),
    ]
    for name, run, text in table:
        s = sub.add_parser(name, help=text)
        s.add_argument("file")
        if name in ("search", "neight"):
            s.add_argument("--bound", type=int, default=nl.DEFAULT_BOUND,
                           help=f"largest ground size searched (default {nl.DEFAULT_BOUND})")
        s.set_defaults(run=run)
    return p


def _run(parser: argparse.ArgumentParser, argv: Optional[Sequence[str]]) -> int:
    try:
        args = parser.parse_args(argv)
        args.run(args)
    except ParseError as exc:
        print(f"error: {exc}\n{exc.caret()}", file=sys.stderr)
        return EXIT_INVALID
    except nl.BoundExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (UsageError, EvalError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


_FR_OPTIONS = ("--grid", "--probes")


def _protect_negatives(argv: Sequence[str]) -> List[str]:
    """Let expressions such as ``-eps(1/2)`` through as positionals.

    Known options move in front of a ``--`` separator; everything else
    after the subcommand is positional.
    """
    if not argv or argv[0].startswith("-"):
        return list(argv)
    cmd, rest = argv[0], list(argv[1:])
    opts, pos = [], []
    while rest:
        tok = rest.pop(0)
        if tok == "--":
            pos += rest
            break
        if tok in ("-h", "--help"):
            opts.append(tok)
        elif tok.split("=", 1)[0] in _FR_OPTIONS:
            opts.append(tok)
            if "=" not in tok and rest:
                opts.append(rest.pop(0))
        else:
            pos.append(tok)
    return [cmd, *opts, "--", *pos]


def fr_main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    return _run(_fr_parser(), _protect_negatives(argv))


def nest_main(argv: Optional[Sequence[str]] = None) -> int:
    return _run(_nest_parser(), argv)
