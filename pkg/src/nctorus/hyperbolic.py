"""Integer 2x2 matrices and exact eigen data of hyperbolic toral automorphisms."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property

from .exactfield import QuadNum, squarefree_decompose

__all__ = [
    "Mat2Z",
    "HypMatrix",
    "NotHyperbolicError",
    "is_hyperbolic",
    "certify",
    "parse_matrix",
]


class NotHyperbolicError(ValueError):
    """Raised when an operation needs a hyperbolic matrix in GL(2, Z)."""


@dataclass(frozen=True)
class Mat2Z:
    """Row-major integer matrix ``[[a, b], [c, d]]``."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def identity(cls) -> Mat2Z:
        return cls(1, 0, 0, 1)

    @classmethod
    def from_rows(cls, rows) -> Mat2Z:
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    @property
    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return (self.a, self.b), (self.c, self.d)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    @property
    def discriminant(self) -> int:
        return self.trace**2 - 4 * self.det

    def transpose(self) -> Mat2Z:
        return Mat2Z(self.a, self.c, self.b, self.d)

    def adjugate(self) -> Mat2Z:
        return Mat2Z(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: Mat2Z) -> Mat2Z:
        return mat_mul(self, other)

    def __neg__(self) -> Mat2Z:
        return Mat2Z(-self.a, -self.b, -self.c, -self.d)

    def scale(self, k: int) -> Mat2Z:
        return Mat2Z(k * self.a, k * self.b, k * self.c, k * self.d)

    def inverse(self) -> Mat2Z:
        return mat_inv(self)

    def __pow__(self, n: int) -> Mat2Z:
        return mat_pow(self, n)

    def apply(self, x, y):
        """Multiply the column vector ``(x, y)``; entries may be any ring elements."""
        return self.a * x + self.b * y, self.c * x + self.d * y

    def __str__(self) -> str:
        return f"{self.a},{self.b};{self.c},{self.d}"

    def to_json(self) -> str:
        return json.dumps({"rows": [list(r) for r in self.rows]}, separators=(",", ":"))


_MATRIX_TEXT = re.compile(r"\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*;\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*")


def parse_matrix(text: str) -> Mat2Z:
    """Parse ``a,b;c,d`` or the JSON form ``{"rows": [[a,b],[c,d]]}``."""
    text = text.strip()
    if text.startswith("{"):
        try:
            return Mat2Z.from_rows(json.loads(text)["rows"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"bad matrix JSON: {text!r}") from exc
    match = _MATRIX_TEXT.fullmatch(text)
    if match is None:
        raise ValueError(f"bad matrix {text!r}: expected a,b;c,d")
    return Mat2Z(*(int(g) for g in match.groups()))


def mat_mul(x: Mat2Z, y: Mat2Z) -> Mat2Z:
    return Mat2Z(
        x.a * y.a + x.b * y.c,
        x.a * y.b + x.b * y.d,
        x.c * y.a + x.d * y.c,
        x.c * y.b + x.d * y.d,
    )


def mat_inv(x: Mat2Z) -> Mat2Z:
    det = x.det
    if det not in (1, -1):
        raise ValueError(f"matrix {x} is not invertible over Z (det={det})")
    return x.adjugate().scale(det)


def mat_pow(x: Mat2Z, n: int) -> Mat2Z:
    if n < 0:
        return mat_pow(mat_inv(x), -n)
    result, base = Mat2Z.identity(), x
    while n:
        if n & 1:
            result = result @ base
        base = base @ base
        n >>= 1
    return result


def is_hyperbolic(A: Mat2Z) -> bool:
    det, t = A.det, A.trace
    if det == 1:
        return abs(t) > 2
    if det == -1:
        return t != 0
    return False


def hyperbolicity_violation(A: Mat2Z) -> str | None:
    """Human-readable reason ``A`` is not hyperbolic, or None."""
    if is_hyperbolic(A):
        return None
    return f"matrix is not hyperbolic (det={A.det}, trace={A.trace})"


@dataclass(frozen=True)
class HypMatrix:
    """A certified hyperbolic matrix with exact eigenvalues and eigenvectors.

    Eigenvectors are projective: ``(b, lambda - a)`` with no normalization,
    which keeps every coordinate inside Q(sqrt(Delta)).
    """

    mat: Mat2Z
    sqrt_delta: QuadNum
    lambda_u: QuadNum
    lambda_s: QuadNum

    @property
    def det(self) -> int:
        return self.mat.det

    @property
    def trace(self) -> int:
        return self.mat.trace

    @property
    def delta(self) -> int:
        return self.mat.discriminant

    @property
    def D(self) -> int:
        return self.sqrt_delta.D

    @cached_property
    def v_u(self) -> tuple[QuadNum, QuadNum]:
        return QuadNum(self.mat.b), self.lambda_u - self.mat.a

    @cached_property
    def v_s(self) -> tuple[QuadNum, QuadNum]:
        return QuadNum(self.mat.b), self.lambda_s - self.mat.a

    def inverse(self) -> HypMatrix:
        return certify(self.mat.inverse())


def certify(A: Mat2Z) -> HypMatrix:
    """Exact eigen data; the root with ``|lambda| > 1`` is the unstable one."""
    reason = hyperbolicity_violation(A)
    if reason:
        raise NotHyperbolicError(reason)
    f, D = squarefree_decompose(A.discriminant)
    root = QuadNum(0, f, 1, D)
    plus = (root + A.trace) / 2
    minus = (A.trace - root) / 2
    lambda_u, lambda_s = (plus, minus) if abs(plus) > 1 else (minus, plus)
    return HypMatrix(A, root, lambda_u, lambda_s)
