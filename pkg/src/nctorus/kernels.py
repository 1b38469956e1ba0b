"""Backend selection for the scan kernels.

The compiled extension is used when it imports and the inputs fit in 64-bit
arithmetic; otherwise the pure-Python reference runs.  Setting the
environment variable ``NCTORUS_PURE_PYTHON=1`` forces the reference backend.
"""

import os

from . import _kernels_py as python

try:
    from . import _kernels as native
except ImportError:  # extension not built
    native = None

BACKEND = "python" if native is None or os.environ.get("NCTORUS_PURE_PYTHON") else "cython"

# products of a coefficient and a coordinate must stay far from 2**63
_SAFE = 1 << 28


def get(name=None):
    """Kernel module by name (``"python"`` or ``"cython"``); default is ``BACKEND``."""
    name = name or BACKEND
    if name == "python":
        return python
    if name == "cython":
        if native is None:
            raise RuntimeError("compiled kernels are not available")
        return native
    raise ValueError(f"unknown backend {name!r}")


def _fits(values, scale):
    return all(abs(v) * max(scale, 1) < _SAFE for v in values)


def lattice_zero_scan(P, Q, modulus, bound, backend=None):
    mod = get(backend)
    flat = [v for row in (*P, *Q) for v in row]
    k = len(P[0]) if P else 0
    if mod is native and not (_fits(flat, bound * k) and abs(modulus) < _SAFE):
        mod = python
    return mod.lattice_zero_scan(P, Q, modulus, bound)


def conjugator_shell(A, B, Binv, h, backend=None):
    mod = get(backend)
    if mod is native and not _fits((*A, *B, *Binv), 4 * h):
        mod = python
    return mod.conjugator_shell(tuple(A), tuple(B), tuple(Binv), h)


def covering_radius(xs, ys, grid, backend=None):
    return get(backend).covering_radius(xs, ys, grid)
