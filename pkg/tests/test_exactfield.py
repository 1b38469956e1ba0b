import math
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from nctorus.exactfield import (
    RATIONAL,
    FieldMismatchError,
    QuadNum,
    cmp,
    common_field,
    squarefree_decompose,
)

mpmath.mp.dps = 60

small = st.integers(min_value=-60, max_value=60)
denoms = st.integers(min_value=1, max_value=40)
radicands = st.sampled_from([2, 3, 5, 6, 7, 10, 13, 21])


@st.composite
def quads(draw, D=None):
    D = D if D is not None else draw(radicands)
    return QuadNum(draw(small), draw(small), draw(denoms), D)


def to_sympy(x: QuadNum):
    return (sympy.Integer(x.p) + x.q * sympy.sqrt(x.D)) / x.m


def same(x: QuadNum, expr) -> bool:
    return sympy.simplify(to_sympy(x) - expr) == 0


def trial_division_squarefree(n):
    f, D = 1, 1
    k = 2
    while k * k <= n:
        while n % (k * k) == 0:
            f *= k
            n //= k * k
        if n % k == 0:
            D *= k
            n //= k
        k += 1
    return f, D * n


# -- squarefree decomposition ------------------------------------------------

@pytest.mark.parametrize("n, f, D", [(5, 1, 5), (12, 2, 3), (1, 1, 1), (72, 6, 2), (49, 7, 1)])
def test_squarefree_examples(n, f, D):
    assert tuple(squarefree_decompose(n)) == (f, D)


@given(st.integers(min_value=1, max_value=10**6))
def test_squarefree_matches_trial_division(n):
    f, D = squarefree_decompose(n)
    assert f * f * D == n
    assert (f, D) == trial_division_squarefree(n)


def test_squarefree_large_prime_cofactor():
    p = 1_000_000_007
    assert tuple(squarefree_decompose(4 * p)) == (2, p)
    assert tuple(squarefree_decompose(p * p)) == (p, 1)


@pytest.mark.parametrize("n", [0, -3])
def test_squarefree_rejects_nonpositive(n):
    with pytest.raises(ValueError):
        squarefree_decompose(n)


# -- normalization ----------------------------------------------------------

def test_normal_form():
    x = QuadNum(10, 2, -20, 5)
    assert (x.p, x.q, x.m, x.D) == (-5, -1, 10, 5)
    assert QuadNum(3, 0, 1, 5).D == RATIONAL
    assert QuadNum(0, 1, 1, 12) == QuadNum(0, 2, 1, 3)
    assert QuadNum(1, 3, 2, 1) == QuadNum(2)
    assert QuadNum(6, 0, 3).is_integer()


def test_zero_denominator_and_negative_radicand():
    with pytest.raises(ZeroDivisionError):
        QuadNum(1, 0, 0)
    with pytest.raises(ValueError):
        QuadNum(1, 1, 1, -5)


def test_sqrt_constructor():
    assert QuadNum.sqrt(12) == QuadNum(0, 2, 1, 3)
    assert QuadNum.sqrt(16) == 4
    assert QuadNum.sqrt(0) == 0


# -- arithmetic -------------------------------------------------------------

def test_golden_conjugates_multiply_to_minus_one():
    phi = QuadNum(1, 1, 2, 5)
    assert phi * phi.conjugate() == -1


def test_thetas_sum_to_one():
    assert QuadNum(5, 1, 10, 5) + QuadNum(5, -1, 10, 5) == 1


def test_additive_identity():
    x = QuadNum(3, -7, 11, 13)
    assert x + 0 == x


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_field_operations_match_sympy(data):
    D = data.draw(radicands)
    x, y = data.draw(quads(D)), data.draw(quads(D))
    X, Y = to_sympy(x), to_sympy(y)
    assert same(x + y, X + Y)
    assert same(x - y, X - Y)
    assert same(x * y, X * Y)
    if y:
        assert same(x / y, X / Y)
    assert same(x ** 3, X ** 3)


@given(quads(), quads())
def test_ring_axioms(x, y):
    if x.D != y.D and not (x.is_rational() or y.is_rational()):
        with pytest.raises(FieldMismatchError):
            x + y
        return
    assert x + y == y + x
    assert x * y == y * x
    assert (x - y) + y == x
    if y:
        assert (x / y) * y == x


@given(quads())
def test_norm_and_inverse(x):
    assert x.norm() == Fraction(x.p * x.p - x.q * x.q * x.D, x.m * x.m)
    if x:
        assert x * x ** -1 == 1


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        QuadNum.sqrt(2) + QuadNum.sqrt(3)
    with pytest.raises(FieldMismatchError):
        common_field([QuadNum.sqrt(2), QuadNum(1), QuadNum.sqrt(5)])
    assert common_field([QuadNum(1), QuadNum.sqrt(5)]) == 5
    assert common_field([QuadNum(1), Fraction(1, 2)]) == RATIONAL


# -- ordering ---------------------------------------------------------------

def test_cmp_examples():
    phi = QuadNum(1, 1, 2, 5)
    assert cmp(phi, 1) == 1
    assert cmp(phi, phi) == 0
    assert cmp(QuadNum(1, -1, 2, 5), 0) == -1


@settings(max_examples=200)
@given(quads(), quads())
def test_cmp_matches_high_precision(x, y):
    if x.D != y.D:
        y = QuadNum(y.p, y.q, y.m, x.D)
    diff = mpmath.mpf(x.p) / x.m + x.q * mpmath.sqrt(x.D) / x.m
    diff -= mpmath.mpf(y.p) / y.m + y.q * mpmath.sqrt(y.D) / y.m
    expected = 0 if x == y else (1 if diff > 0 else -1)
    assert cmp(x, y) == expected
    assert (x < y) == (expected < 0)


# -- floor / mod one --------------------------------------------------------

@pytest.mark.parametrize(
    "x, rational",
    [(QuadNum(3), True), (QuadNum(5, 1, 10, 5), False), (QuadNum(6, 0, 3), True)],
)
def test_is_rational(x, rational):
    assert x.is_rational() == rational


def test_mod_one_examples():
    assert QuadNum(7, 0, 2).mod_one() == QuadNum(1, 0, 2)
    assert QuadNum(5, 1, 10, 5).mod_one() == QuadNum(5, 1, 10, 5)
    assert QuadNum(0, -1, 5, 5).mod_one() == QuadNum(5, -1, 5, 5)


@settings(max_examples=300)
@given(quads())
def test_floor_matches_high_precision(x):
    value = mpmath.mpf(x.p) / x.m + x.q * mpmath.sqrt(x.D) / x.m
    assert x.floor() == int(mpmath.floor(value))
    r = x.mod_one()
    assert 0 <= r < 1
    assert (x - r).is_integer()


# -- float conversion -------------------------------------------------------

def test_float_examples():
    assert float(QuadNum(1, 0, 2)) == 0.5
    assert float(QuadNum(5, 1, 10, 5)) == pytest.approx(0.7236067977499790, abs=1e-15)
    assert float(QuadNum(0, 1, 6, 3)) == pytest.approx(0.2886751345948129, abs=1e-15)


@settings(max_examples=300)
@given(quads())
def test_float_is_correctly_rounded(x):
    value = mpmath.mpf(x.p) / x.m + x.q * mpmath.sqrt(x.D) / x.m
    assert float(x) == float(value)


def test_float_of_huge_value():
    x = QuadNum(10**400, 10**399, 10**398, 2)
    assert math.isclose(float(x), 100 + 10 * math.sqrt(2), rel_tol=1e-15)


# -- text grammar -----------------------------------------------------------

@pytest.mark.parametrize(
    "text, value",
    [
        ("(5+1√5)/10", QuadNum(5, 1, 10, 5)),
        ("(5-1√5)/10", QuadNum(5, -1, 10, 5)),
        ("(0+1sqrt(3))/6", QuadNum(0, 1, 6, 3)),
        ("3", QuadNum(3)),
        ("7/2", QuadNum(7, 0, 2)),
        ("-1/4", QuadNum(-1, 0, 4)),
        ("(-3+1√5)/2", QuadNum(-3, 1, 2, 5)),
        ("(2)/4", QuadNum(1, 0, 2)),
    ],
)
def test_parse(text, value):
    assert QuadNum.parse(text) == value


@pytest.mark.parametrize("text", ["", "√5", "(1+√)/2", "1/0x", "abc"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        QuadNum.parse(text)


@given(quads())
def test_format_roundtrip(x):
    assert QuadNum.parse(x.format()) == x
    assert QuadNum.parse(x.format(ascii=True)) == x
    assert x.format(ascii=True).isascii()


def test_hash_consistent_with_eq():
    assert hash(QuadNum(2, 0, 4)) == hash(QuadNum(1, 0, 2))
    assert hash(QuadNum(3)) == hash(3)
    assert len({QuadNum(0, 2, 2, 5), QuadNum.sqrt(5)}) == 1
