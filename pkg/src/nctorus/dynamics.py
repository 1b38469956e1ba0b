"""Floating-point oracle for the toral automorphism and its translation action.

Everything here is double precision.  Iterating a hyperbolic map amplifies
rounding error by about ``|lambda_u|`` per step, so orbit lengths are capped
at ``MAX_STEPS``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .hyperbolic import Mat2Z, certify
from .torusparams import ThetaVector, theta_from_eigenvectors

__all__ = [
    "TorusPoint",
    "AsymptoticReport",
    "MAX_STEPS",
    "torus_distance",
    "apply_matrix",
    "asymptotic_pair_report",
    "orbit_points",
    "orbit_density_estimate",
    "contraction_ratios",
]

MAX_STEPS = 25


def _reduce(t: float) -> float:
    r = float(t) % 1.0
    # tiny negatives round up to exactly 1.0
    return 0.0 if r == 1.0 else r


@dataclass(frozen=True)
class TorusPoint:
    x1: float
    x2: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "x1", _reduce(self.x1))
        object.__setattr__(self, "x2", _reduce(self.x2))

    def __iter__(self):
        return iter((self.x1, self.x2))


def torus_distance(x: TorusPoint, y: TorusPoint) -> float:
    """Minimum Euclidean distance over the nine neighbouring lifts."""
    dx, dy = x.x1 - y.x1, x.x2 - y.x2
    return min(
        math.hypot(dx + i, dy + j) for i in (-1, 0, 1) for j in (-1, 0, 1)
    )


def apply_matrix(A: Mat2Z, x: TorusPoint) -> TorusPoint:
    return TorusPoint(A.a * x.x1 + A.b * x.x2, A.c * x.x1 + A.d * x.x2)


@dataclass
class AsymptoticReport:
    forward_dists: list[float] = field(default_factory=list)
    backward_dists: list[float] = field(default_factory=list)
    converged_forward: bool = False
    converged_backward: bool = False

    @property
    def converged(self) -> bool:
        return self.converged_forward and self.converged_backward

    def to_json(self) -> str:
        return json.dumps(
            {"forward": self.forward_dists, "backward": self.backward_dists, "converged": self.converged},
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str, tol: float) -> AsymptoticReport:
        data = json.loads(text)
        fwd, bwd = data["forward"], data["backward"]
        return cls(fwd, bwd, fwd[-1] < tol, bwd[-1] < tol)

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["step", "forward", "backward"])
        for k, (f, b) in enumerate(zip(self.forward_dists, self.backward_dists)):
            writer.writerow([k, repr(f), repr(b)])
        return out.getvalue()


def _translation(theta: ThetaVector, m: int, n: int) -> tuple[float, float]:
    t1, t2, t3, t4 = (float(t) for t in theta.values)
    return m * t1 + n * t3, m * t2 + n * t4


def asymptotic_pair_report(
    A: Mat2Z,
    x: TorusPoint,
    m: int,
    n: int,
    n_max: int = 20,
    tol: float = 1e-5,
) -> AsymptoticReport:
    """Distances ``d(A^k x, A^k z)`` for ``k = 0..n_max`` in both time directions.

    ``z`` is the image of ``x`` under the ``(m, n)`` translation of the action.
    """
    if not 0 <= n_max <= MAX_STEPS:
        raise ValueError(f"n_max must be in [0, {MAX_STEPS}] to stay inside the float error budget")
    H = certify(A)
    dx, dy = _translation(theta_from_eigenvectors(H), m, n)
    z = TorusPoint(x.x1 + dx, x.x2 + dy)
    Ainv = A.inverse()
    report = AsymptoticReport()
    for M, dists in ((A, report.forward_dists), (Ainv, report.backward_dists)):
        p, q = x, z
        dists.append(torus_distance(p, q))
        for _ in range(n_max):
            p, q = apply_matrix(M, p), apply_matrix(M, q)
            dists.append(torus_distance(p, q))
    report.converged_forward = report.forward_dists[-1] < tol
    report.converged_backward = report.backward_dists[-1] < tol
    return report


def contraction_ratios(dists: list[float], below: float = 0.1) -> list[float]:
    """Successive ratios ``d[k+1] / d[k]`` once the distance is below ``below``."""
    return [b / a for a, b in zip(dists, dists[1:]) if 0 < a < below]


def orbit_points(theta: ThetaVector, x: TorusPoint, N: int) -> tuple[np.ndarray, np.ndarray]:
    t1, t2, t3, t4 = (float(t) for t in theta.values)
    r = np.arange(-N, N + 1, dtype=float)
    m, n = np.meshgrid(r, r, indexing="ij")
    xs = np.mod(x.x1 + m * t1 + n * t3, 1.0).ravel()
    ys = np.mod(x.x2 + m * t2 + n * t4, 1.0).ravel()
    return xs, ys


def orbit_density_estimate(
    A: Mat2Z, x: TorusPoint, N: int, grid: int, backend: str | None = None
) -> float:
    """Covering radius of the orbit ``{alpha_(m,n)(x) : |m|, |n| <= N}``.

    Estimated as the largest distance from a ``grid x grid`` lattice of sample
    points to the nearest orbit point.
    """
    if N < 0 or grid < 1:
        raise ValueError("need N >= 0 and grid >= 1")
    theta = theta_from_eigenvectors(certify(A))
    xs, ys = orbit_points(theta, x, N)
    return kernels.covering_radius(xs, ys, grid, backend=backend)
