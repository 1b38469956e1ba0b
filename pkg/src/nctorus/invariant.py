"""The trace-range invariant ``Z + Z t1 + Z t2 + Z t3`` as a canonical lattice.

A finitely generated subgroup of Q(sqrt(D)) is stored as a common denominator
``m`` and a Hermite-normal-form basis of the integer coordinate lattice
``{(p, q) : (p + q sqrt(D)) / m in the module}``.  Two modules are equal
exactly when their ``(D, m, basis)`` triples are.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd, lcm

from . import kernels
from .exactfield import RATIONAL, FieldMismatchError, QuadNum, common_field
from .hyperbolic import HypMatrix, Mat2Z, NotHyperbolicError, certify, hyperbolicity_violation
from .torusparams import Route, theta_for, theta_from_eigenvectors

__all__ = [
    "TraceRangeInvariant",
    "hermite_normal_form",
    "canonicalize",
    "trace_range",
    "invariants_equal",
    "module_contains",
    "conjugator_search",
    "invariance_suite",
    "InvarianceReport",
    "Comparison",
    "compare",
]


def hermite_normal_form(rows: list[list[int]]) -> list[list[int]]:
    """Row-style HNF: echelon form, positive pivots, entries above pivots in ``[0, pivot)``.

    Zero rows are dropped; the result spans the same lattice as ``rows``.
    """
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        while True:
            live = [i for i in range(r, len(rows)) if rows[i][col]]
            if len(live) <= 1:
                break
            k = min(live, key=lambda i: abs(rows[i][col]))
            for i in live:
                if i != k:
                    f = rows[i][col] // rows[k][col]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[k])]
        if not live:
            continue
        i = live[0]
        rows[r], rows[i] = rows[i], rows[r]
        if rows[r][col] < 0:
            rows[r] = [-x for x in rows[r]]
        piv = rows[r][col]
        for j in range(r):
            f = rows[j][col] // piv
            if f:
                rows[j] = [x - f * y for x, y in zip(rows[j], rows[r])]
        r += 1
        if r == len(rows):
            break
    return rows[:r]


@dataclass(frozen=True)
class TraceRangeInvariant:
    D: int
    m: int
    basis: tuple[tuple[int, int], tuple[int, int]]

    def generators(self) -> list[QuadNum]:
        return [QuadNum(p, q, self.m, self.D) for p, q in self.basis if p or q]

    def to_dict(self) -> dict:
        return {"D": self.D, "m": self.m, "basis": [list(r) for r in self.basis]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> TraceRangeInvariant:
        (r0, r1) = data["basis"]
        return cls(int(data["D"]), int(data["m"]), (tuple(r0), tuple(r1)))

    @classmethod
    def from_json(cls, text: str) -> TraceRangeInvariant:
        return cls.from_dict(json.loads(text))

    def render(self, ascii: bool = False) -> str:
        """Human-readable form, e.g. ``Z·(5+√5)/10 + Z·(2√5)/10``."""
        root = f"sqrt({self.D})" if ascii else f"√{self.D}"
        dot = "*" if ascii else "·"
        terms = []
        for p, q in self.basis:
            if not (p or q):
                continue
            parts = str(p) if p else ""
            if q:
                mag = "" if abs(q) == 1 else str(abs(q))
                sign = "-" if q < 0 else ("+" if parts else "")
                parts += f"{sign}{mag}{root}"
            if not q:
                body = f"{parts}/{self.m}" if self.m != 1 else parts
            else:
                body = f"({parts})/{self.m}" if self.m != 1 else f"({parts})"
            terms.append(f"Z{dot}{body}")
        return " + ".join(terms) if terms else "0"

    def __contains__(self, x) -> bool:
        return module_contains(self, x)


def canonicalize(gens) -> TraceRangeInvariant:
    gens = [QuadNum.coerce(g) for g in gens]
    if not gens:
        raise ValueError("canonicalize needs at least one generator")
    D = common_field(gens)
    m = lcm(*(g.m for g in gens))
    basis = hermite_normal_form([list(g.coords(m)) for g in gens])
    content = m
    for row in basis:
        for x in row:
            content = gcd(content, x)
    m //= content
    basis = [[x // content for x in row] for row in basis]
    while len(basis) < 2:
        basis.append([0, 0])
    return TraceRangeInvariant(D, m, tuple(tuple(r) for r in basis))


def trace_range(A: Mat2Z | HypMatrix, route: Route = Route.CLOSED_FORM) -> TraceRangeInvariant:
    H = A if isinstance(A, HypMatrix) else certify(A)
    t1, t2, t3, _ = theta_for(H, route).values
    return canonicalize([QuadNum(1), t1, t2, t3])


def invariants_equal(I: TraceRangeInvariant, J: TraceRangeInvariant) -> bool:
    return (I.D, I.m, I.basis) == (J.D, J.m, J.basis)


def module_contains(I: TraceRangeInvariant, x) -> bool:
    x = QuadNum.coerce(x)
    if x.D not in (RATIONAL, I.D):
        raise FieldMismatchError(f"{x} is not in Q(sqrt({I.D}))")
    scale = I.m * x.p, I.m * x.q
    if scale[0] % x.m or scale[1] % x.m:
        return False
    target = [scale[0] // x.m, scale[1] // x.m]
    for row in I.basis:
        col = next((j for j, v in enumerate(row) if v), None)
        if col is None:
            continue
        f, r = divmod(target[col], row[col])
        if r:
            return False
        target = [t - f * v for t, v in zip(target, row)]
    return not any(target)


def _order_key(x: int) -> tuple[int, bool]:
    # 0, 1, -1, 2, -2, ...
    return abs(x), x < 0


def _conjugator_key(hit):
    *entries, flip = hit
    return sum(abs(e) for e in entries), tuple(_order_key(e) for e in entries), flip


def conjugator_search(A: Mat2Z, B: Mat2Z, bound: int) -> tuple[Mat2Z, bool] | None:
    """Smallest unimodular ``M`` with ``A M = M B`` (flip False) or ``A M = M B^-1``.

    Candidates are ordered by max-norm, then 1-norm, then entries
    lexicographically under ``0 < 1 < -1 < 2 < -2 < ...``, with the unflipped
    relation first.  ``None`` only means nothing was found within ``bound``.
    """
    for X in (A, B):
        reason = hyperbolicity_violation(X)
        if reason:
            raise NotHyperbolicError(reason)
    Binv = B.inverse()
    flat = lambda X: (X.a, X.b, X.c, X.d)  # noqa: E731
    for h in range(1, bound + 1):
        hits = kernels.conjugator_shell(flat(A), flat(B), flat(Binv), h)
        if hits:
            al, be, ga, de, flip = min(hits, key=_conjugator_key)
            return Mat2Z(al, be, ga, de), flip
    return None


@dataclass
class InvarianceReport:
    A: Mat2Z
    M: Mat2Z
    conjugated: Mat2Z
    conjugation_equal: bool
    inverse_equal: bool
    inverse_theta_map: bool

    @property
    def all_pass(self) -> bool:
        return self.conjugation_equal and self.inverse_equal and self.inverse_theta_map


def invariance_suite(A: Mat2Z, M: Mat2Z) -> InvarianceReport:
    if M.det not in (1, -1):
        raise ValueError(f"conjugator {M} is not in GL(2,Z) (det={M.det})")
    H = certify(A)
    B = M.inverse() @ A @ M
    I = trace_range(H)
    inv = H.inverse()
    return InvarianceReport(
        A=A,
        M=M,
        conjugated=B,
        conjugation_equal=invariants_equal(I, trace_range(B)),
        inverse_equal=invariants_equal(I, trace_range(inv)),
        inverse_theta_map=theta_from_eigenvectors(inv).same_values(
            theta_from_eigenvectors(H).variant()
        ),
    )


@dataclass
class Comparison:
    A: Mat2Z
    B: Mat2Z
    invariant_a: TraceRangeInvariant
    invariant_b: TraceRangeInvariant

    @property
    def equal(self) -> bool:
        return invariants_equal(self.invariant_a, self.invariant_b)

    @property
    def verdict(self) -> str:
        # equality is only a necessary condition for flip conjugacy
        return "inconclusive" if self.equal else "not flip conjugate"


def compare(A: Mat2Z, B: Mat2Z) -> Comparison:
    return Comparison(A, B, trace_range(A), trace_range(B))
