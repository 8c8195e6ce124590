"""Exit criteria: every check below must report zero failures."""
import itertools
import random
from fractions import Fraction as F

from fermatlab import nests as nl
from fermatlab.core import DEFAULT_GRID, ONE, ZERO, eps, normalize, pow_nat
from fermatlab.nests import FiniteTopology, SetFamily
from fermatlab.order import (
    Cmp,
    FermatPoint,
    Ray,
    Sense,
    Tag,
    compare,
    compare_F,
    complement_min,
    oracle_compare,
    ray_has_max,
)
from fermatlab.topology import (
    SequenceSpec,
    converges,
    default_probes,
    product_converges,
    ray_identity_check,
    singleton_identity_check,
)
from strategies import oracle_pair, random_fermat
from transcript import GOLDEN, load_cases, run

N_RANDOM = 1000


def test_ring_suite(criterion):
    rng = random.Random(20261014)
    failures, checked = [], 0
    for i in range(N_RANDOM):
        x, y, z = (random_fermat(rng) for _ in range(3))
        checks = {
            "add-assoc": (x + y) + z == x + (y + z),
            "add-comm": x + y == y + x,
            "mul-assoc": (x * y) * z == x * (y * z),
            "mul-comm": x * y == y * x,
            "distrib": x * (y + z) == x * y + x * z,
            "zero": x + ZERO == x and x - x == ZERO,
            "one": x * ONE == x,
            "idempotent": normalize(x.standard_part, x.terms) == x,
        }
        checked += len(checks)
        failures += [(i, name) for name, ok in checks.items() if not ok]
    for k in range(1, 9):
        a = F(k, 8)
        for n in range(1, 9):
            checked += 1
            if (pow_nat(eps(a), n) == ZERO) != (n * a > 1):
                failures.append(("nilpotency", a, n))
    criterion(1, "ring axioms, idempotence, nilpotency grid", failures, checked)


def test_order_suite(criterion):
    rng = random.Random(7)
    failures, checked, oracle_cases = [], 0, 0
    for i in range(N_RANDOM):
        x, y = oracle_pair(rng)
        z = random_fermat(rng)
        c = compare(x, y)
        checks = {
            "total": sum(c is v for v in Cmp) == 1,
            "antisym": c == -compare(y, x) and ((c is Cmp.EQ) == (x == y)),
            "translate": compare(x + z, y + z) is c,
        }
        if compare(x, y) is not Cmp.GT and compare(y, z) is not Cmp.GT:
            checks["transitive"] = compare(x, z) is not Cmp.GT
        if c is not Cmp.EQ:
            oracle_cases += 1
            checks["oracle"] = oracle_compare(x, y, DEFAULT_GRID, probes=3) is c
        checked += len(checks)
        failures += [(i, name, str(x), str(y)) for name, ok in checks.items() if not ok]
    assert oracle_cases > N_RANDOM // 2
    criterion(2, "order laws and 50-digit oracle agreement", failures, checked)


def _pairs_exhaustive(max_n):
    for n in range(max_n + 1):
        ground = tuple("abcdef"[:n])
        chains = list(nl.all_chains(ground))
        for L, R in itertools.product(chains, repeat=2):
            yield SetFamily(ground, L), SetFamily(ground, R)


def _pairs_random(count, rng):
    for _ in range(count):
        ground = tuple("abcdef"[:rng.randint(4, 6)])
        yield SetFamily(ground, nl.random_chain(ground, rng)), SetFamily(ground, nl.random_chain(ground, rng))


def test_theorem21(criterion):
    rng = random.Random(21)
    failures, checked = [], 0
    for L, R in itertools.chain(_pairs_exhaustive(3), _pairs_random(10_000, rng)):
        checked += 1
        if not nl.theorem21_check(L, R).agree:
            failures.append((L.sorted_members(), R.sorted_members()))
    criterion(3, "T1 union <=> T0 nests with mirrored orders", failures, checked)


def test_theorem22(criterion):
    failures, checked = [], 0
    for n in range(5):
        ground = tuple("abcd"[:n])
        for chain in nl.all_chains(ground):
            f = SetFamily(ground, chain)
            if not nl.t0_separates(f):
                continue
            checked += 1
            if not nl.theorem22_check(f).agree:
                failures.append(f.sorted_members())
    criterion(4, "interlocking <=> max implies complement min", failures, checked)


def test_theorem23_desk_scale(criterion):
    failures, checked = [], 0
    for n in range(5):
        for seq in itertools.permutations("abcd"[:n]):
            L, R = nl.ray_nests(seq)
            order = nl.InducedOrder(seq, frozenset((x, y) for i, x in enumerate(seq) for y in seq[i + 1:]))
            T = nl.order_open_sets(order)
            base = nl.vdw_check(T, L, R)
            checked += 1
            if not base.lots:
                failures.append(("not LOTS", seq))
            # basic opens: finite intersections of subbasis members (the empty one is the ground)
            basics = {frozenset(seq)}
            members = list(L.union(R).members)
            for r in range(1, len(members) + 1):
                for combo in itertools.combinations(members, r):
                    basics.add(frozenset.intersection(*combo))
            for b in sorted((b for b in basics if b), key=sorted):
                checked += 1
                after = nl.vdw_check(T.without(b), L, R)
                if after.components() == base.components():
                    failures.append(("no flip", seq, sorted(b)))
    # Thm 2.3(1): when the union separates, order-open sets lie in every topology making L, R open
    for L, R in itertools.chain(_pairs_exhaustive(3), _pairs_random(2_000, random.Random(23))):
        union = L.union(R)
        if nl.t1_separates(union):
            checked += 1
            T = FiniteTopology(L.ground, nl.generate_topology(L.ground, union.members))
            if not nl.vdw_check(T, L, R).order_open_subset:
                failures.append(("2.3(1)", L.sorted_members(), R.sorted_members()))
    criterion(5, "ray nests are LOTS; removing a basic open flips a verdict", failures, checked)


def _random_point(rng):
    return FermatPoint(random_fermat(rng, max_terms=3), rng.choice(list(Tag)))


def test_split_line(criterion):
    rng = random.Random(3)
    failures, checked = [], 0
    for i in range(N_RANDOM):
        x, y = random_fermat(rng), random_fermat(rng)
        checked += 1
        if compare_F(FermatPoint(x), FermatPoint(y)) is not compare(x, y):
            failures.append(("base restriction", str(x), str(y)))
    for i in range(100):
        bound = _random_point(rng)
        # members of the strict down-ray nest: a closed ray at a base or minus point is the
        # strict ray at its successor; closed rays at plus points are not members
        sense = rng.choice([Sense.DOWN_STRICT, Sense.DOWN_CLOSED]) if bound.tag is not Tag.PLUS else Sense.DOWN_STRICT
        r = Ray(bound, sense)
        checked += 1
        if ray_has_max(r) is not None and complement_min(r) is None:
            failures.append(("interlocking", str(r)))
        l = random_fermat(rng, max_terms=3)
        probes = default_probes(l)
        checked += 2
        if not singleton_identity_check(l, probes):
            failures.append(("singleton", str(l)))
        if not ray_identity_check(l, probes):
            failures.append(("ray identity", str(l)))
    criterion(6, "split line restricts to <=, strict down rays interlock, singleton identity", failures, checked)


def _specs(alphabet, max_prefix):
    for k in range(max_prefix + 1):
        for prefix in itertools.product(alphabet, repeat=k):
            for tail in alphabet:
                yield SequenceSpec(prefix, tail)


def test_convergence(criterion):
    failures, checked = [], 0
    a3 = [FermatPoint(ZERO), FermatPoint(eps(F(1, 2))), FermatPoint(ZERO, Tag.PLUS)]
    a2 = [FermatPoint(ONE), FermatPoint(ONE + eps(1))]
    for dim, alphabet, max_prefix in [(2, a3, 2), (3, a2, 1)]:
        coords = [(s, x) for s in _specs(alphabet, max_prefix) for x in alphabet]
        for combo in itertools.product(coords, repeat=dim):
            ss, xs = [c[0] for c in combo], [c[1] for c in combo]
            checked += 1
            if product_converges(ss, xs) != all(converges(s, x) for s, x in combo):
                failures.append((dim, [str(s.tail) for s in ss], [str(x) for x in xs]))
    criterion(7, "product convergence <=> coordinatewise convergence", failures, checked)


def test_neight(criterion):
    failures, checked = [], 0
    for n in range(2, 6):
        seq = tuple(f"p{i}" for i in range(n))
        order = nl.InducedOrder(seq, frozenset((x, y) for i, x in enumerate(seq) for y in seq[i + 1:]))
        T = nl.order_open_sets(order)
        checked += 1
        if T.opens != FiniteTopology.discrete(seq).opens:
            failures.append(("chain topology not discrete", n))
        found = nl.neight(T)
        checked += 1
        if found is None or found[0] != 2:
            failures.append(("neight", n, found and found[0]))
    for n in (6, 7):
        checked += 1
        try:
            nl.neight(FiniteTopology.discrete([f"p{i}" for i in range(n)]))
            failures.append(("not refused", n))
        except nl.BoundExceeded:
            pass
    criterion(8, "neight of discrete chains is 2; refusal above the bound", failures, checked)


def test_cli_golden(criterion):
    cases = load_cases()
    assert len(cases) >= 15
    failures = []
    codes = set()
    for case in cases:
        got = run(case["argv"])
        codes.add(got.split("\n")[1])
        if got != (GOLDEN / f"{case['name']}.txt").read_text(encoding="utf-8"):
            failures.append(case["name"])
    if codes != {"[exit 0]", "[exit 1]", "[exit 2]"}:
        failures.append(("exit codes covered", sorted(codes)))
    criterion(9, "CLI golden transcripts", failures, len(cases))
