"""Finite nests, separation, interlocking and GO/LOTS verdicts.

Everything here works on a finite ground set of hashable labels.  Families
are kept as tuples of frozensets in first-seen order; the checkers are
plain quantifier evaluations, so their verdicts are certificates for the
instance at hand.

Conventions used by :func:`is_interlocking`: the intersection of no sets is
the ground set and the union of no sets is empty.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple

__all__ = [
    "SetFamily",
    "FiniteTopology",
    "InducedOrder",
    "TopologyError",
    "PreconditionError",
    "BoundExceeded",
    "DEFAULT_BOUND",
    "is_nest",
    "t0_separates",
    "t1_separates",
    "induced_order",
    "Theorem21Verdict",
    "theorem21_check",
    "is_interlocking",
    "Theorem22Verdict",
    "theorem22_check",
    "generate_topology",
    "order_open_sets",
    "VdwVerdict",
    "vdw_check",
    "ray_nests",
    "search_nest_pair",
    "neight",
    "all_chains",
    "random_chain",
]

Label = Hashable
Subset = FrozenSet[Label]

DEFAULT_BOUND = 5


class TopologyError(ValueError):
    """An open-set list that is not closed under finite unions/intersections."""


class PreconditionError(ValueError):
    """A checker was called on input outside its hypotheses."""


class BoundExceeded(Exception):
    """Exhaustive search refused because the ground set is too large."""


def _check_ground(ground) -> Tuple[Label, ...]:
    ground = tuple(ground)
    if len(set(ground)) != len(ground):
        raise ValueError(f"duplicate labels in ground {list(ground)!r}")
    return ground


def _dedupe(ground, sets) -> Tuple[Subset, ...]:
    gset = set(ground)
    seen: Dict[Subset, None] = {}
    for s in sets:
        s = frozenset(s)
        if not s <= gset:
            raise ValueError(f"member {sorted(map(str, s - gset))} not contained in ground")
        seen.setdefault(s, None)
    return tuple(seen)


@dataclass(frozen=True)
class SetFamily:
    ground: Tuple[Label, ...]
    members: Tuple[Subset, ...] = ()

    def __post_init__(self):
        ground = _check_ground(self.ground)
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "members", _dedupe(ground, self.members))

    def union(self, other: "SetFamily") -> "SetFamily":
        _same_ground(self, other)
        return SetFamily(self.ground, self.members + other.members)

    def sorted_members(self) -> List[List[Label]]:
        """Members as label lists in ground order (for printing)."""
        return [sort_labels(self.ground, m) for m in self.members]


def sort_labels(ground: Sequence[Label], s: Iterable[Label]) -> List[Label]:
    index = {x: i for i, x in enumerate(ground)}
    return sorted(s, key=index.__getitem__)


def _same_ground(a, b):
    if tuple(a.ground) != tuple(b.ground):
        raise ValueError("families live on different ground sets")


def _is_closed(ground, opens: FrozenSet[Subset]) -> bool:
    if frozenset() not in opens or frozenset(ground) not in opens:
        return False
    return all(u | v in opens and u & v in opens for u, v in itertools.combinations(opens, 2))


@dataclass(frozen=True)
class FiniteTopology:
    """Open sets on a finite ground.

    Closure is checked at construction; pass ``strict=False`` to keep an
    arbitrary open-set list for negative experiments (``closed`` records the
    outcome either way).
    """

    ground: Tuple[Label, ...]
    opens: FrozenSet[Subset]
    strict: bool = field(default=True, compare=False, repr=False)
    closed: bool = field(init=False, compare=False)

    def __post_init__(self):
        ground = _check_ground(self.ground)
        object.__setattr__(self, "ground", ground)
        opens = frozenset(_dedupe(ground, self.opens))
        object.__setattr__(self, "opens", opens)
        closed = _is_closed(ground, opens)
        object.__setattr__(self, "closed", closed)
        if self.strict and not closed:
            raise TopologyError("open sets are not closed under finite unions and intersections "
                                "or miss the empty set / ground")

    @classmethod
    def discrete(cls, ground) -> "FiniteTopology":
        ground = tuple(ground)
        return cls(ground, frozenset(_powerset(ground)))

    @classmethod
    def indiscrete(cls, ground) -> "FiniteTopology":
        ground = tuple(ground)
        return cls(ground, frozenset({frozenset(), frozenset(ground)}))

    def is_open(self, s) -> bool:
        return frozenset(s) in self.opens

    def without(self, s) -> "FiniteTopology":
        return FiniteTopology(self.ground, self.opens - {frozenset(s)}, strict=False)


def _powerset(ground) -> Iterator[Subset]:
    for k in range(len(ground) + 1):
        for c in itertools.combinations(ground, k):
            yield frozenset(c)


@dataclass(frozen=True)
class InducedOrder:
    """A strict relation on ``ground``; ``le`` is its reflexive closure."""

    ground: Tuple[Label, ...]
    pairs: FrozenSet[Tuple[Label, Label]]

    def lt(self, x, y) -> bool:
        return (x, y) in self.pairs

    def le(self, x, y) -> bool:
        return x == y or (x, y) in self.pairs

    def reverse(self) -> "InducedOrder":
        return InducedOrder(self.ground, frozenset((y, x) for x, y in self.pairs))

    def is_strict_linear(self) -> bool:
        g = self.ground
        if any((x, x) in self.pairs for x in g):
            return False
        for x, y in itertools.combinations(g, 2):
            if ((x, y) in self.pairs) == ((y, x) in self.pairs):
                return False
        for x, y, z in itertools.permutations(g, 3):
            if (x, y) in self.pairs and (y, z) in self.pairs and (x, z) not in self.pairs:
                return False
        return True

    def sequence(self) -> Optional[List[Label]]:
        """The ground listed in increasing order, when the relation is linear."""
        if not self.is_strict_linear():
            return None
        below = {x: sum((y, x) in self.pairs for y in self.ground) for x in self.ground}
        return sorted(self.ground, key=below.__getitem__)


def is_nest(f: SetFamily) -> bool:
    return all(m <= n or n <= m for m, n in itertools.combinations(f.members, 2))


def _separates(members, x, y) -> bool:
    return any(x in m and y not in m for m in members)


def t0_separates(f: SetFamily) -> bool:
    ms = f.members
    return all(_separates(ms, x, y) or _separates(ms, y, x)
               for x, y in itertools.combinations(f.ground, 2))


def t1_separates(f: SetFamily) -> bool:
    ms = f.members
    return all(_separates(ms, x, y) for x, y in itertools.permutations(f.ground, 2))


def induced_order(f: SetFamily) -> InducedOrder:
    """``x < y`` iff some member contains ``x`` but not ``y``."""
    pairs = frozenset((x, y) for m in f.members for x in m for y in f.ground if y not in m)
    return InducedOrder(f.ground, pairs)


@dataclass(frozen=True)
class Theorem21Verdict:
    """Both sides of: L u R is T1-separating <=> L, R T0 and <_L = reverse(<_R)."""

    union_t1: bool
    left_t0: bool
    right_t0: bool
    orders_match: bool
    separation_witness: Optional[Tuple[Label, Label]] = None
    order_witness: Optional[Tuple[Label, Label]] = None

    @property
    def rhs(self) -> bool:
        return self.left_t0 and self.right_t0 and self.orders_match

    @property
    def agree(self) -> bool:
        return self.union_t1 == self.rhs


def _require_nests(*fams):
    for f in fams:
        if not is_nest(f):
            raise PreconditionError("family is not a nest")


def theorem21_check(L: SetFamily, R: SetFamily) -> Theorem21Verdict:
    _same_ground(L, R)
    _require_nests(L, R)
    union = L.union(R)
    sep = next((p for p in itertools.permutations(L.ground, 2)
                if not _separates(union.members, *p)), None)
    left, right = induced_order(L), induced_order(R).reverse()
    diff = left.pairs ^ right.pairs
    order_witness = None
    if diff:
        order_witness = min(diff, key=lambda p: (L.ground.index(p[0]), L.ground.index(p[1])))
    return Theorem21Verdict(
        union_t1=sep is None,
        left_t0=t0_separates(L),
        right_t0=t0_separates(R),
        orders_match=not diff,
        separation_witness=sep,
        order_witness=order_witness,
    )


def _interlocking_failure(f: SetFamily) -> Optional[Subset]:
    ground = frozenset(f.ground)
    for m in f.members:
        above = [n for n in f.members if m < n]
        below = [n for n in f.members if n < m]
        meet = frozenset.intersection(*above) if above else ground
        join = frozenset().union(*below)
        if m == meet and m != join:
            return m
    return None


def is_interlocking(f: SetFamily) -> bool:
    """Every member equal to the meet of its strict supersets is the join of its strict subsets."""
    _require_nests(f)
    return _interlocking_failure(f) is None


def _maximal(order: InducedOrder, s) -> List[Label]:
    return [x for x in order.ground if x in s and not any(order.lt(x, y) for y in s)]


def _minimal(order: InducedOrder, s) -> List[Label]:
    return [x for x in order.ground if x in s and not any(order.lt(y, x) for y in s)]


@dataclass(frozen=True)
class Theorem22Verdict:
    interlocking: bool
    max_min_condition: bool
    interlocking_witness: Optional[Subset] = None
    max_min_witness: Optional[Subset] = None

    @property
    def agree(self) -> bool:
        return self.interlocking == self.max_min_condition


def theorem22_check(f: SetFamily) -> Theorem22Verdict:
    """Compare interlocking with "a member with a maximum has a complement with a minimum"."""
    if not is_nest(f):
        raise PreconditionError("family is not a nest")
    if not t0_separates(f):
        raise PreconditionError("nest is not T0-separating")
    order = induced_order(f)
    ground = frozenset(f.ground)
    bad = next((m for m in f.members
                if _maximal(order, m) and not _minimal(order, ground - m)), None)
    il = _interlocking_failure(f)
    return Theorem22Verdict(
        interlocking=il is None,
        max_min_condition=bad is None,
        interlocking_witness=il,
        max_min_witness=bad,
    )


def generate_topology(ground, subbasis: Iterable[Iterable[Label]]) -> FrozenSet[Subset]:
    """Close ``subbasis`` under finite intersections, then under unions."""
    g = frozenset(ground)
    basis = {g}
    frontier = {frozenset(s) for s in subbasis} - basis
    subs = list(frontier)
    basis |= frontier
    while frontier:
        new = {b & s for b in frontier for s in subs} - basis
        basis |= new
        frontier = new
    opens = {frozenset()}
    for b in basis:
        opens |= {o | b for o in opens}
    return frozenset(opens)


def order_open_sets(o: InducedOrder) -> FiniteTopology:
    """Topology generated by the open rays ``{z : z < a}`` and ``{z : a < z}``."""
    rays = []
    for a in o.ground:
        rays.append([z for z in o.ground if o.lt(z, a)])
        rays.append([z for z in o.ground if o.lt(a, z)])
    return FiniteTopology(o.ground, generate_topology(o.ground, rays))


@dataclass(frozen=True)
class VdwVerdict:
    nests: bool
    is_topology: bool
    non_open: Tuple[Subset, ...]
    union_t1: bool
    subbasis: bool
    order_open_subset: bool
    interlocking_left: Optional[bool]
    interlocking_right: Optional[bool]

    @property
    def opens(self) -> bool:
        return not self.non_open

    @property
    def go(self) -> bool:
        return (self.nests and self.is_topology and self.opens
                and self.union_t1 and self.subbasis)

    @property
    def lots(self) -> bool:
        return self.go and bool(self.interlocking_left) and bool(self.interlocking_right)

    def components(self) -> dict:
        return {
            "nests": self.nests,
            "is_topology": self.is_topology,
            "open": self.opens,
            "union_t1": self.union_t1,
            "subbasis": self.subbasis,
            "order_open_subset": self.order_open_subset,
            "interlocking_left": self.interlocking_left,
            "interlocking_right": self.interlocking_right,
            "go": self.go,
            "lots": self.lots,
        }


def vdw_check(T: FiniteTopology, L: SetFamily, R: SetFamily) -> VdwVerdict:
    """Evaluate the van Dalen-Wattel GO/LOTS criteria for one nest pair."""
    _same_ground(L, R)
    if tuple(T.ground) != tuple(L.ground):
        raise ValueError("topology and families live on different ground sets")
    nests = is_nest(L) and is_nest(R)
    union = L.union(R)
    non_open = tuple(m for m in union.members if m not in T.opens)
    oos = order_open_sets(induced_order(L)).opens
    return VdwVerdict(
        nests=nests,
        is_topology=T.closed,
        non_open=non_open,
        union_t1=t1_separates(union),
        subbasis=generate_topology(T.ground, union.members) == T.opens,
        order_open_subset=oos <= T.opens,
        interlocking_left=is_interlocking(L) if is_nest(L) else None,
        interlocking_right=is_interlocking(R) if is_nest(R) else None,
    )


def ray_nests(sequence: Sequence[Label]) -> Tuple[SetFamily, SetFamily]:
    """Strict down-ray and up-ray nests of the linear order listed by ``sequence``."""
    seq = tuple(sequence)
    down = SetFamily(seq, [seq[:i] for i in range(len(seq))])
    up = SetFamily(seq, [seq[i + 1:] for i in range(len(seq))])
    return down, up


def all_chains(ground) -> Iterator[Tuple[Subset, ...]]:
    """Every chain (including the empty one) in the powerset of ``ground``."""
    subsets = sorted(_powerset(tuple(ground)), key=len)

    def extend(chain, start):
        yield chain
        for i in range(start, len(subsets)):
            s = subsets[i]
            if not chain or chain[-1] < s:
                yield from extend(chain + (s,), i + 1)

    yield from extend((), 0)


def random_chain(ground, rng: random.Random) -> Tuple[Subset, ...]:
    """A random chain: prefixes of a random permutation at random cut sizes."""
    perm = list(ground)
    rng.shuffle(perm)
    sizes = [k for k in range(len(perm) + 1) if rng.random() < 0.4]
    return tuple(frozenset(perm[:k]) for k in sizes)


def _maximal_chains(T: FiniteTopology) -> List[Tuple[Subset, ...]]:
    g = frozenset(T.ground)
    index = {x: i for i, x in enumerate(T.ground)}
    inner = sorted((o for o in T.opens if o and o != g),
                   key=lambda s: (len(s), sorted(index[x] for x in s)))
    covers = {s: [u for u in inner if s < u and not any(s < v < u for v in inner)] for s in inner}
    minimal = [s for s in inner if not any(v < s for v in inner)]
    out: List[Tuple[Subset, ...]] = []

    def walk(chain):
        ups = covers[chain[-1]]
        if not ups:
            out.append(chain)
        for u in ups:
            walk(chain + (u,))

    for s in minimal:
        walk((s,))
    return out or [()]


def _valid(T: FiniteTopology, sets) -> bool:
    fam = SetFamily(T.ground, sets)
    return t1_separates(fam) and generate_topology(T.ground, fam.members) == T.opens


def _prune(T: FiniteTopology, chains) -> Tuple[SetFamily, ...]:
    owned, seen = [], set()
    for c in chains:
        owned.append([s for s in c if not (s in seen or seen.add(s))])
    for i, c in enumerate(owned):
        for s in list(c):
            trial = [s2 for j, cc in enumerate(owned) for s2 in cc if not (j == i and s2 == s)]
            if _valid(T, trial):
                c.remove(s)
    return tuple(SetFamily(T.ground, c) for c in owned)


def _precheck(T: FiniteTopology, bound: int) -> bool:
    if len(T.ground) > bound:
        raise BoundExceeded(f"ground has {len(T.ground)} points; search bound is {bound}")
    return t1_separates(SetFamily(T.ground, T.opens))


def _search_exact(T: FiniteTopology, chains, size: int) -> Optional[Tuple[SetFamily, ...]]:
    for combo in itertools.combinations(chains, size):
        if _valid(T, [s for c in combo for s in c]):
            return _prune(T, combo)
    return None


def search_nest_pair(T: FiniteTopology, bound: int = DEFAULT_BOUND) -> Optional[Tuple[SetFamily, SetFamily]]:
    """Two nests of open sets whose union is a T1-separating subbasis of ``T``.

    The second nest is empty when one nest already suffices.
    """
    if not _precheck(T, bound):
        return None
    chains = _maximal_chains(T)
    for size in (1, 2):
        found = _search_exact(T, chains, size)
        if found is not None:
            return (found + (SetFamily(T.ground),))[:2]
    return None


def neight(T: FiniteTopology, bound: int = DEFAULT_BOUND) -> Optional[Tuple[int, Tuple[SetFamily, ...]]]:
    """Smallest number of open nests whose union is a T1-separating subbasis.

    Returns ``(k, nests)`` or None when no family of opens separates.  Any
    valid union of k chains extends to a union of k maximal chains of
    proper nonempty opens, so only those are enumerated.
    """
    if not _precheck(T, bound):
        return None
    chains = _maximal_chains(T)
    for k in range(1, len(chains) + 1):
        found = _search_exact(T, chains, k)
        if found is not None:
            return k, found
    return None
