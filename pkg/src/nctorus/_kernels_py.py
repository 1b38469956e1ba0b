"""Reference implementations of the scan kernels.

Same signatures and results as the compiled ``_kernels`` module; used when
the extension is not built or when ``NCTORUS_PURE_PYTHON`` is set.
"""

from itertools import product

import numpy as np


def lattice_zero_scan(P, Q, modulus, bound):
    """Points ``g`` of ``[-bound, bound]^k`` killed by every row.

    Row ``i`` represents the quadratic number ``sum_j (P[i][j] + Q[i][j] sqrt(D)) g_j / modulus``;
    it is an integer exactly when the irrational part vanishes and the rational
    part is divisible by ``modulus``.  Results come out in lexicographic order.
    """
    k = len(P[0]) if P else 0
    rows = list(zip(P, Q))
    hits = []
    for g in product(range(-bound, bound + 1), repeat=k):
        for p_row, q_row in rows:
            if sum(c * x for c, x in zip(q_row, g)) != 0:
                break
            if sum(c * x for c, x in zip(p_row, g)) % modulus:
                break
        else:
            hits.append(g)
    return hits


def conjugator_shell(A, B, Binv, h):
    """Unimodular ``M`` with ``max|entry| == h`` and ``A M = M B`` or ``A M = M Binv``.

    Matrices are flat ``(a, b, c, d)`` tuples.  Returns ``(al, be, ga, de, flip)``
    tuples; the caller imposes the final ordering.
    """
    a, b, c, d = A
    hits = []
    rng = range(-h, h + 1)
    for al, be, ga, de in product(rng, repeat=4):
        if max(abs(al), abs(be), abs(ga), abs(de)) != h:
            continue
        if al * de - be * ga not in (1, -1):
            continue
        am = (a * al + b * ga, a * be + b * de, c * al + d * ga, c * be + d * de)
        for target, flip in ((B, False), (Binv, True)):
            e, f, g, k = target
            mb = (al * e + be * g, al * f + be * k, ga * e + de * g, ga * f + de * k)
            if am == mb:
                hits.append((al, be, ga, de, flip))
    return hits


def covering_radius(xs, ys, grid):
    """Largest torus distance from a ``grid x grid`` sample to the nearest point.

    Sample points are ``(i/grid, j/grid)``; ``xs, ys`` are coordinates in [0, 1).
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    ticks = np.arange(grid) / grid
    worst = 0.0
    for gy in ticks:
        dy = np.abs(ys - gy)
        dy = np.minimum(dy, 1.0 - dy) ** 2
        dx = np.abs(xs[None, :] - ticks[:, None])
        dx = np.minimum(dx, 1.0 - dx) ** 2
        nearest = (dx + dy[None, :]).min(axis=1)
        worst = max(worst, float(nearest.max()))
    return float(np.sqrt(worst))
