"""Exact arithmetic in real quadratic fields.

Numbers are stored as ``(p + q*sqrt(D)) / m`` with integer ``p, q``, a positive
denominator ``m`` and a squarefree radicand ``D``.  Every rational value uses
the sentinel ``D = 0`` so that equality is syntactic after normalization.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from math import gcd, isqrt
from typing import NamedTuple, Union

__all__ = [
    "QuadNum",
    "FieldMismatchError",
    "SquarefreeDecomposition",
    "squarefree_decompose",
    "cmp",
    "common_field",
]

RATIONAL = 0


class FieldMismatchError(ValueError):
    """Two irrational operands live in different quadratic fields."""


class SquarefreeDecomposition(NamedTuple):
    f: int
    D: int


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def squarefree_decompose(n: int, trial_limit: int = 10**6) -> SquarefreeDecomposition:
    """Split ``n`` as ``f**2 * D`` with ``D`` squarefree.

    Trial division runs up to ``min(isqrt(n), trial_limit)``.  A leftover
    cofactor that is neither 1 nor prime cannot be certified squarefree and
    raises ``ValueError``.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"squarefree_decompose needs a positive integer, got {n!r}")
    f, D = 1, 1
    rest = n
    p = 2
    while p * p <= rest and p <= trial_limit:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            f *= p ** (e // 2)
            if e % 2:
                D *= p
        p += 1 if p == 2 else 2
    if rest > 1:
        if p * p <= rest and not _is_prime(rest):
            r = isqrt(rest)
            if r * r == rest and _is_prime(r):
                return SquarefreeDecomposition(f * r, D)
            raise ValueError(
                f"cannot certify squarefree part of {n}: cofactor {rest} is composite"
            )
        D *= rest
    return SquarefreeDecomposition(f, D)


Operand = Union["QuadNum", int, Fraction]


@total_ordering
class QuadNum:
    """Immutable element ``(p + q*sqrt(D)) / m`` of a real quadratic field."""

    __slots__ = ("_p", "_q", "_m", "_D")

    def __init__(self, p: int = 0, q: int = 0, m: int = 1, D: int = RATIONAL) -> None:
        if m == 0:
            raise ZeroDivisionError("QuadNum with zero denominator")
        if D < 0:
            raise ValueError("only real quadratic fields are supported")
        if q != 0 and D > 1:
            f, D = squarefree_decompose(D)
            q *= f
        if D == 1:
            p, q = p + q, 0
        if q == 0 or D == 0:
            q, D = 0, RATIONAL
        if m < 0:
            p, q, m = -p, -q, -m
        g = gcd(gcd(p, q), m)
        self._p, self._q, self._m, self._D = p // g, q // g, m // g, D

    # -- construction -------------------------------------------------
    @classmethod
    def from_int(cls, n: int) -> QuadNum:
        return cls(n)

    @classmethod
    def from_fraction(cls, x: Fraction) -> QuadNum:
        return cls(x.numerator, 0, x.denominator)

    @classmethod
    def sqrt(cls, n: int) -> QuadNum:
        """Exact square root of a non-negative integer."""
        if n < 0:
            raise ValueError("square root of a negative integer")
        if n == 0:
            return cls(0)
        f, D = squarefree_decompose(n)
        return cls(0, f, 1, D) if D > 1 else cls(f)

    @staticmethod
    def coerce(x: Operand) -> QuadNum:
        if isinstance(x, QuadNum):
            return x
        if isinstance(x, int):
            return QuadNum(x)
        if isinstance(x, Fraction):
            return QuadNum.from_fraction(x)
        raise TypeError(f"cannot convert {type(x).__name__} to QuadNum")

    # -- accessors ----------------------------------------------------
    @property
    def p(self) -> int:
        return self._p

    @property
    def q(self) -> int:
        return self._q

    @property
    def m(self) -> int:
        return self._m

    @property
    def D(self) -> int:
        return self._D

    def is_rational(self) -> bool:
        return self._q == 0

    def as_fraction(self) -> Fraction:
        if self._q:
            raise ValueError(f"{self} is irrational")
        return Fraction(self._p, self._m)

    def conjugate(self) -> QuadNum:
        return QuadNum(self._p, -self._q, self._m, self._D)

    def norm(self) -> Fraction:
        return Fraction(self._p * self._p - self._q * self._q * self._D, self._m * self._m)

    def coords(self, m: int) -> tuple[int, int]:
        """Coordinates ``(P, Q)`` with ``self == (P + Q*sqrt(D)) / m``."""
        if m % self._m:
            raise ValueError(f"{self} has no integer coordinates at denominator {m}")
        k = m // self._m
        return self._p * k, self._q * k

    # -- arithmetic ---------------------------------------------------
    def _field(self, other: QuadNum) -> int:
        if self._D == other._D or other._D == RATIONAL:
            return self._D
        if self._D == RATIONAL:
            return other._D
        raise FieldMismatchError(f"Q(sqrt({self._D})) and Q(sqrt({other._D})) differ")

    def __add__(self, other: Operand) -> QuadNum:
        try:
            o = QuadNum.coerce(other)
        except TypeError:
            return NotImplemented
        D = self._field(o)
        return QuadNum(
            self._p * o._m + o._p * self._m,
            self._q * o._m + o._q * self._m,
            self._m * o._m,
            D,
        )

    __radd__ = __add__

    def __neg__(self) -> QuadNum:
        return QuadNum(-self._p, -self._q, self._m, self._D)

    def __pos__(self) -> QuadNum:
        return self

    def __sub__(self, other: Operand) -> QuadNum:
        try:
            o = QuadNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Operand) -> QuadNum:
        return (-self) + other

    def __mul__(self, other: Operand) -> QuadNum:
        try:
            o = QuadNum.coerce(other)
        except TypeError:
            return NotImplemented
        D = self._field(o)
        return QuadNum(
            self._p * o._p + self._q * o._q * D,
            self._p * o._q + self._q * o._p,
            self._m * o._m,
            D,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Operand) -> QuadNum:
        try:
            o = QuadNum.coerce(other)
        except TypeError:
            return NotImplemented
        D = self._field(o)
        n = o._p * o._p - o._q * o._q * D
        if n == 0:
            raise ZeroDivisionError("division by zero QuadNum")
        # x / y = x * conj(y) * m_y / (p_y^2 - q_y^2 D)
        num = self * QuadNum(o._p * o._m, -o._q * o._m, 1, D)
        return QuadNum(num._p, num._q, num._m * n, num._D)

    def __rtruediv__(self, other: Operand) -> QuadNum:
        return QuadNum.coerce(other) / self

    def __pow__(self, k: int) -> QuadNum:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return QuadNum(1) / (self ** (-k))
        result, base = QuadNum(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- order --------------------------------------------------------
    def sign(self) -> int:
        p, q = self._p, self._q
        if q == 0:
            return (p > 0) - (p < 0)
        if p >= 0 and q > 0:
            return 1
        if p <= 0 and q < 0:
            return -1
        # opposite signs: the larger magnitude wins, p^2 == q^2 D is impossible
        if p * p > q * q * self._D:
            return 1 if p > 0 else -1
        return 1 if q > 0 else -1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QuadNum.coerce(other)
        if not isinstance(other, QuadNum):
            return NotImplemented
        return (self._p, self._q, self._m, self._D) == (other._p, other._q, other._m, other._D)

    def __lt__(self, other: Operand) -> bool:
        try:
            o = QuadNum.coerce(other)
        except TypeError:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self) -> int:
        if self._q == 0:
            return hash(Fraction(self._p, self._m))
        return hash((self._p, self._q, self._m, self._D))

    def __abs__(self) -> QuadNum:
        return -self if self.sign() < 0 else self

    def __bool__(self) -> bool:
        return self._p != 0 or self._q != 0

    # -- integer part -------------------------------------------------
    def floor(self) -> int:
        p, q, m, D = self._p, self._q, self._m, self._D
        if q == 0:
            return p // m
        s = isqrt(q * q * D)  # q*sqrt(D) is irrational, strictly between integers
        whole = p + s if q > 0 else p - s - 1
        return whole // m

    def __floor__(self) -> int:
        return self.floor()

    def is_integer(self) -> bool:
        return self._q == 0 and self._m == 1

    def mod_one(self) -> QuadNum:
        """Fractional part, in ``[0, 1)``."""
        return self - self.floor()

    # -- conversion ---------------------------------------------------
    def __float__(self) -> float:
        p, q, m, D = self._p, self._q, self._m, self._D
        if q == 0:
            return float(Fraction(p, m))
        bits = 64 + p.bit_length() + q.bit_length() + D.bit_length()
        r = isqrt(q * q * D << (2 * bits))
        num = (p << bits) + (r if q > 0 else -r)
        return float(Fraction(num, m << bits))

    def __repr__(self) -> str:
        return f"QuadNum({self._p}, {self._q}, {self._m}, {self._D})"

    def __str__(self) -> str:
        return self.format()

    def format(self, ascii: bool = False) -> str:
        """Render as ``(p+q√D)/m``; ``√D`` dropped for rationals, ``/m`` for m=1."""
        p, q, m, D = self._p, self._q, self._m, self._D
        if q == 0:
            body = str(p)
        else:
            root = f"sqrt({D})" if ascii else f"√{D}"
            body = f"({p}{'+' if q > 0 else '-'}{abs(q)}{root})"
        return body if m == 1 else f"{body}/{m}"

    @classmethod
    def parse(cls, text: str) -> QuadNum:
        match = _GRAMMAR.fullmatch(text.strip())
        if match is None:
            raise ValueError(f"not a quadratic number: {text!r}")
        g = match.groupdict()
        m = int(g["m"]) if g["m"] else 1
        if g["p2"] is not None:
            return cls(int(g["p2"]), 0, m)
        if g["p3"] is not None:
            return cls(int(g["p3"]), 0, m)
        q = int(g["q"])
        if g["sign"] in ("-", "+-"):
            q = -q
        return cls(int(g["p"]), q, m, int(g["D1"] or g["D2"]))


_GRAMMAR = re.compile(
    r"""(?:
        \(\s*(?P<p>[+-]?\d+)\s*(?P<sign>\+-?|-)\s*(?P<q>\d+)\s*
            (?:√(?P<D1>\d+)|sqrt\((?P<D2>\d+)\))\s*\)
      | \((?P<p2>[+-]?\d+)\)
      | (?P<p3>[+-]?\d+)
    )(?:\s*/\s*(?P<m>\d+))?""",
    re.VERBOSE,
)


def cmp(x: Operand, y: Operand) -> int:
    """Exact three-way comparison: -1, 0 or 1."""
    return (QuadNum.coerce(x) - QuadNum.coerce(y)).sign()


def common_field(values) -> int:
    """Radicand shared by ``values`` (``0`` if all rational)."""
    D = RATIONAL
    for v in values:
        v = QuadNum.coerce(v)
        if v.D == RATIONAL:
            continue
        if D not in (RATIONAL, v.D):
            raise FieldMismatchError(f"Q(sqrt({D})) and Q(sqrt({v.D})) differ")
        D = v.D
    return D
