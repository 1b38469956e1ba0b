"""Slopes of the four-dimensional non-commutative torus attached to a matrix.

Two independent routes produce the slope tuple: the closed form in the matrix
entries and ``sqrt(Delta)``, and ratios of projective eigenvector coordinates.
They agree up to the sign variant ``(t1, t2, t3, t4) -> (t4, -t2, -t3, t1)``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from itertools import combinations
from math import lcm

from . import kernels
from .exactfield import QuadNum, common_field
from .hyperbolic import HypMatrix

__all__ = [
    "Route",
    "ThetaVector",
    "IdentityReport",
    "SkewForm",
    "theta_closed_form",
    "theta_from_eigenvectors",
    "verify_theta_identities",
    "skew_form",
    "exp_wedge_generators",
    "pfaffian",
    "alpha_translation",
    "freeness_check",
]


class Route(enum.Enum):
    CLOSED_FORM = "closed_form"
    EIGENVECTOR = "eigenvector"


@dataclass(frozen=True)
class ThetaVector:
    theta1: QuadNum
    theta2: QuadNum
    theta3: QuadNum
    theta4: QuadNum
    source: Route = Route.CLOSED_FORM

    def __post_init__(self) -> None:
        common_field(self.values)

    @property
    def values(self) -> tuple[QuadNum, QuadNum, QuadNum, QuadNum]:
        return self.theta1, self.theta2, self.theta3, self.theta4

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i: int) -> QuadNum:
        return self.values[i]

    @property
    def D(self) -> int:
        return common_field(self.values)

    def variant(self) -> ThetaVector:
        """The other sign variant, equal to the slopes of the inverse matrix."""
        t1, t2, t3, t4 = self.values
        return ThetaVector(t4, -t2, -t3, t1, self.source)

    def same_values(self, other: ThetaVector) -> bool:
        return self.values == other.values

    def is_valid(self) -> bool:
        # t1 and t4 are rational (both 1/2) exactly when a == d; t2, t3 never are
        t1, t2, t3, t4 = self.values
        return (
            t1 + t4 == 1
            and t1 * t4 == t2 * t3
            and not t2.is_rational()
            and not t3.is_rational()
        )

    def to_strings(self, ascii: bool = False) -> list[str]:
        return [t.format(ascii) for t in self.values]

    @classmethod
    def from_strings(cls, items, source: Route = Route.CLOSED_FORM) -> ThetaVector:
        return cls(*(QuadNum.parse(s) for s in items), source=source)


def theta_closed_form(H: HypMatrix) -> ThetaVector:
    a, b, c, d = H.mat.a, H.mat.b, H.mat.c, H.mat.d
    r = H.sqrt_delta
    t1 = (1 + (a - d) / r) / 2
    t4 = (1 - (a - d) / r) / 2
    return ThetaVector(t1, c / r, b / r, t4, Route.CLOSED_FORM)


def theta_from_eigenvectors(H: HypMatrix) -> ThetaVector:
    (u1, u2), (s1, s2) = H.v_u, H.v_s
    den = u1 * s2 - u2 * s1
    return ThetaVector(
        u1 * s2 / den,
        u2 * s2 / den,
        -u1 * s1 / den,
        -u2 * s1 / den,
        Route.EIGENVECTOR,
    )


def theta_for(H: HypMatrix, route: Route = Route.CLOSED_FORM) -> ThetaVector:
    if route is Route.EIGENVECTOR:
        return theta_from_eigenvectors(H)
    return theta_closed_form(H)


@dataclass
class IdentityReport:
    """Outcome of the exact slope identities for one tuple and one matrix.

    ``checks`` maps identity names to booleans, using the standard roles of
    the unstable and stable eigenvalues.  ``sum_is`` records which eigenvalue
    ``a t1 + b t2 + c t3 + d t4`` reproduces; ``unstable_rows_hold_for`` and
    ``stable_rows_hold_for`` record which eigenvalue makes each family of four
    row identities hold (``None`` if neither does).
    """

    theta: ThetaVector
    checks: dict[str, bool] = field(default_factory=dict)
    sum_value: QuadNum | None = None
    sum_is: str | None = None
    stable_sum_is: str | None = None
    unstable_rows_hold_for: str | None = None
    stable_rows_hold_for: str | None = None

    @property
    def all_pass(self) -> bool:
        return all(self.checks.values())

    def to_dict(self, ascii: bool = False) -> dict:
        return {
            "theta": self.theta.to_strings(ascii),
            "source": self.theta.source.value,
            "identities": {
                "sum_is": self.sum_is,
                "sum": self.sum_value.format(ascii) if self.sum_value is not None else None,
                "stable_sum_is": self.stable_sum_is,
                "unstable_rows_hold_for": self.unstable_rows_hold_for,
                "stable_rows_hold_for": self.stable_rows_hold_for,
                **self.checks,
            },
        }


def _unstable_rows(t, A, lam) -> list[bool]:
    t1, t2, t3, t4 = t
    a, b, c, d = A.a, A.b, A.c, A.d
    return [
        a * t1 + b * t2 == lam * t1,
        a * t3 + b * t4 == lam * t3,
        c * t1 + d * t2 == lam * t2,
        c * t3 + d * t4 == lam * t4,
    ]


def _stable_rows(t, A, lam) -> list[bool]:
    t1, t2, t3, t4 = t
    a, b, c, d = A.a, A.b, A.c, A.d
    return [
        a * t3 - b * t1 == lam * t3,
        a * t4 - b * t2 == lam * t4,
        c * t3 - d * t1 == -lam * t1,
        c * t4 - d * t2 == -lam * t2,
    ]


def _which(value: QuadNum, H: HypMatrix) -> str | None:
    if value == H.lambda_u:
        return "lambda_u"
    if value == H.lambda_s:
        return "lambda_s"
    return None


def verify_theta_identities(theta: ThetaVector, H: HypMatrix) -> IdentityReport:
    common_field([*theta.values, H.sqrt_delta])
    t1, t2, t3, t4 = theta.values
    A = H.mat
    report = IdentityReport(theta)
    report.checks["theta1_plus_theta4_is_1"] = t1 + t4 == 1
    report.checks["theta1_theta4_eq_theta2_theta3"] = t1 * t4 == t2 * t3
    report.checks["b_theta2_eq_c_theta3"] = A.b * t2 == A.c * t3
    for i, ok in enumerate(_unstable_rows(theta, A, H.lambda_u), 1):
        report.checks[f"unstable_row_{i}"] = ok
    for i, ok in enumerate(_stable_rows(theta, A, H.lambda_s), 1):
        report.checks[f"stable_row_{i}"] = ok

    report.sum_value = A.a * t1 + A.b * t2 + A.c * t3 + A.d * t4
    report.sum_is = _which(report.sum_value, H)
    report.stable_sum_is = _which(A.a * t4 - A.b * t2 - A.c * t3 + A.d * t1, H)
    for lam, name in ((H.lambda_u, "lambda_u"), (H.lambda_s, "lambda_s")):
        if report.unstable_rows_hold_for is None and all(_unstable_rows(theta, A, lam)):
            report.unstable_rows_hold_for = name
        if report.stable_rows_hold_for is None and all(_stable_rows(theta, A, lam)):
            report.stable_rows_hold_for = name
    return report


# 0-based (j, k) with j < k, in generator-list order
PAIRS = list(combinations(range(4), 2))


@dataclass(frozen=True)
class SkewForm:
    entries: tuple[tuple[QuadNum, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != 4 or any(len(r) != 4 for r in self.entries):
            raise ValueError("skew form must be 4x4")
        for j in range(4):
            for k in range(4):
                if self.entries[j][k] != -self.entries[k][j]:
                    raise ValueError(f"not antisymmetric at ({j + 1},{k + 1})")

    def __getitem__(self, jk: tuple[int, int]) -> QuadNum:
        """1-based access ``form[j, k]``."""
        j, k = jk
        return self.entries[j - 1][k - 1]

    def transpose(self) -> SkewForm:
        return SkewForm(tuple(tuple(self.entries[k][j] for k in range(4)) for j in range(4)))

    @classmethod
    def from_upper(cls, upper: dict[tuple[int, int], QuadNum | int]) -> SkewForm:
        """Build from 1-based upper-triangle entries; missing entries are 0."""
        rows = [[QuadNum(0)] * 4 for _ in range(4)]
        for (j, k), v in upper.items():
            if not 1 <= j < k <= 4:
                raise ValueError(f"({j},{k}) is not an upper-triangle index")
            v = QuadNum.coerce(v)
            rows[j - 1][k - 1] = v
            rows[k - 1][j - 1] = -v
        return cls(tuple(tuple(r) for r in rows))


def skew_form(theta: ThetaVector) -> SkewForm:
    """Relabel the generators as (V2, V1, U2, U1) and collect the phases."""
    t1, t2, t3, t4 = theta.values
    return SkewForm.from_upper({(1, 3): t4, (1, 4): t3, (2, 3): t2, (2, 4): t1})


def pfaffian(form: SkewForm) -> QuadNum:
    return form[1, 2] * form[3, 4] - form[1, 3] * form[2, 4] + form[1, 4] * form[2, 3]


def exp_wedge_generators(form: SkewForm) -> list[QuadNum]:
    """Generators ``[1, Pf, t12, t13, t14, t23, t24, t34]`` of the trace range."""
    return [QuadNum(1), pfaffian(form)] + [form[j + 1, k + 1] for j, k in PAIRS]


def alpha_translation(theta: ThetaVector, m: int, n: int) -> tuple[QuadNum, QuadNum]:
    t1, t2, t3, t4 = theta.values
    return (m * t1 + n * t3).mod_one(), (m * t2 + n * t4).mod_one()


def integer_coords(values) -> tuple[int, list[int], list[int]]:
    """Common denominator and (p, q) coordinate lists of ``values``."""
    m = lcm(*(v.m for v in values))
    pairs = [v.coords(m) for v in values]
    return m, [p for p, _ in pairs], [q for _, q in pairs]


def freeness_check(theta: ThetaVector, bound: int) -> list[tuple[int, int]]:
    """All ``(m, n)`` in the box whose translation is trivial on the torus."""
    if bound < 0:
        raise ValueError("bound must be non-negative")
    t1, t2, t3, t4 = theta.values
    # translation coordinates: m*t1 + n*t3 and m*t2 + n*t4
    den, P, Q = integer_coords([t1, t3, t2, t4])
    P_rows = [P[0:2], P[2:4]]
    Q_rows = [Q[0:2], Q[2:4]]
    return [tuple(g) for g in kernels.lattice_zero_scan(P_rows, Q_rows, den, bound)]


def theta_report_json(reports: dict[str, IdentityReport], ascii: bool = False) -> str:
    return json.dumps(
        {name: r.to_dict(ascii) for name, r in reports.items()},
        ensure_ascii=False,
        separators=(",", ":"),
    )
