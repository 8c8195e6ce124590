from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermatlab.core import (
    DEFAULT_GRID,
    ONE,
    ZERO,
    FermatReal,
    NotLittleOhError,
    const,
    eps,
    eq_fermat,
    eval_at,
    infinitesimal_part,
    is_infinitesimal,
    leading_term,
    mul,
    normalize,
    pow_nat,
    standard_part,
    sub,
)
from strategies import fermats, oracle_pairs, raw_inputs


class TestNormalize:
    def test_drops_o_t(self):
        x = normalize(3, [(F(1, 2), 2), (F(6, 5), 7)])
        assert x == FermatReal(F(3), ((F(1, 2), F(2)),))

    def test_cancellation(self):
        assert normalize(0, [(F(1, 2), 1), (F(1, 2), -1)]) == ZERO

    def test_exponent_zero_merges(self):
        assert normalize(2, [(0, 3), (1, 5)]) == FermatReal(F(5), ((F(1), F(5)),))

    def test_sorted_and_merged(self):
        x = normalize(0, [(1, 1), (F(1, 3), 2), (1, 4), (F(1, 3), -1)])
        assert x.terms == ((F(1, 3), F(1)), (F(1), F(5)))

    def test_negative_exponent_rejected(self):
        with pytest.raises(NotLittleOhError):
            normalize(0, [(F(-1, 2), 1)])

    def test_constructor_rejects_noncanonical(self):
        with pytest.raises(ValueError):
            FermatReal(0, ((F(1), F(1)), (F(1, 2), F(1))))
        with pytest.raises(ValueError):
            FermatReal(0, ((F(3, 2), F(1)),))
        with pytest.raises(ValueError):
            FermatReal(0, ((F(1, 2), F(0)),))

    @given(raw_inputs())
    def test_idempotent(self, raw):
        x = normalize(*raw)
        assert normalize(x.standard_part, x.terms) == x


class TestArithmetic:
    def test_add_cancel(self):
        assert (1 + eps(F(1, 2))) + (2 - eps(F(1, 2))) == const(3)

    def test_like_terms(self):
        assert (eps(F(1, 3)) + eps(1)) + eps(F(1, 3)) == eps(F(1, 3), 2) + eps(1)

    def test_square_root_squared(self):
        assert eps(F(1, 2)) * eps(F(1, 2)) == eps(1)

    def test_nilpotent_product(self):
        assert eps(F(2, 3)) * eps(F(2, 3)) == ZERO

    def test_difference_of_squares(self):
        assert (1 + eps(F(1, 2))) * (1 - eps(F(1, 2))) == 1 - eps(1)

    def test_difference_of_squares_numerically(self):
        # independent check: ((1 + sqrt t)(1 - sqrt t) - (1 - t)) / t -> 0
        with mpmath.workdps(50):
            for k in range(4, 13):
                t = mpmath.mpf(10) ** -k
                ratio = ((1 + mpmath.sqrt(t)) * (1 - mpmath.sqrt(t)) - (1 - t)) / t
                assert abs(ratio) < mpmath.mpf(10) ** -30

    def test_pow(self):
        assert pow_nat(1 + eps(F(1, 2)), 2) == 1 + eps(F(1, 2), 2) + eps(1)
        assert pow_nat(eps(F(1, 3)), 3) == eps(1)
        assert pow_nat(eps(F(1, 3)), 4) == ZERO
        assert pow_nat(eps(F(1, 2)), 0) == ONE
        with pytest.raises(ValueError):
            pow_nat(ONE, -1)

    @pytest.mark.parametrize("a", [F(k, 8) for k in range(1, 9)])
    def test_nilpotency_grid(self, a):
        for n in range(1, 9):
            assert (pow_nat(eps(a), n) == ZERO) == (n * a > 1)

    @given(fermats())
    def test_identities(self, x):
        assert x + ZERO == x
        assert x * ONE == x
        assert x * ZERO == ZERO
        assert x - x == ZERO

    @settings(max_examples=200)
    @given(fermats(), fermats(), fermats())
    def test_ring_axioms(self, x, y, z):
        assert (x + y) + z == x + (y + z)
        assert x + y == y + x
        assert (x * y) * z == x * (y * z)
        assert x * y == y * x
        assert x * (y + z) == x * y + x * z

    @given(st.fractions(max_denominator=50), st.fractions(max_denominator=50))
    def test_reals_embed(self, p, q):
        assert const(p) + const(q) == const(p + q)
        assert const(p) * const(q) == const(p * q)
        assert const(p) - const(q) == const(p - q)


class TestEquality:
    def test_o_t_term_is_invisible(self):
        assert eq_fermat(normalize(3, [(F(6, 5), 1)]), const(3))

    def test_eps_1_is_not_zero(self):
        assert not eq_fermat(eps(1), ZERO)

    @given(fermats(), fermats())
    def test_structural(self, x, y):
        assert eq_fermat(x, y) == (x == y)
        assert eq_fermat(x, x)


class TestParts:
    def test_standard_part(self):
        assert standard_part(5 + eps(F(1, 2), 3)) == 5

    def test_infinitesimal(self):
        x = eps(F(1, 3)) - eps(1)
        assert is_infinitesimal(x)
        assert leading_term(x) == (F(1, 3), F(1))
        assert leading_term(const(2)) is None

    @given(fermats())
    def test_split(self, x):
        assert const(x.standard_part) + infinitesimal_part(x) == x


class TestEval:
    def test_power(self):
        with mpmath.workdps(50):
            v = eval_at(eps(F(1, 2)), F(1, 10**6))
            assert abs(v / mpmath.mpf("1e-3") - 1) < mpmath.mpf(10) ** -45

    def test_constant(self):
        for t in DEFAULT_GRID:
            assert eval_at(const(3), t) == 3

    def test_difference(self):
        with mpmath.workdps(50):
            v = eval_at(eps(F(1, 2)) - eps(F(1, 3)), F(1, 10**6))
            assert abs(v - (mpmath.mpf("1e-3") - mpmath.mpf("1e-2"))) < mpmath.mpf(10) ** -45
            assert v < 0

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            eval_at(ONE, 0)

    @given(oracle_pairs())
    def test_oracle_soundness(self, pair):
        x, y = pair
        d = sub(x, y)
        ratios = [abs(eval_at(x, t) - eval_at(y, t)) / mpmath.mpf(t.numerator) * t.denominator
                  for t in DEFAULT_GRID[-3:]]
        if x == y:
            assert all(r == 0 for r in ratios)
        else:
            # a surviving term c*t**a with a <= 1 keeps |d(t)|/t away from 0
            bound = abs(d.standard_part) if d.standard_part else abs(d.terms[0][1])
            assert min(ratios) > float(bound) / 4


def test_scalar_operators():
    x = eps(F(1, 2))
    assert 2 * x == x + x
    assert 1 - x == -(x - 1)
    assert mul(x, const(F(1, 2))) * 2 == x
    assert str(3 - eps(F(1, 2), F(3, 2)) + eps(1)) == "3 - 3/2*eps(1/2) + eps(1)"
