"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from nctorus import kernels
from nctorus.dynamics import TorusPoint, orbit_points
from nctorus.hyperbolic import Mat2Z, certify
from nctorus.torusparams import integer_coords, theta_from_eigenvectors
from nctorus.weyl import _dot, wedge


def nondegeneracy_inputs(A, bound):
    theta = theta_from_eigenvectors(certify(A))
    basis = [tuple(int(i == j) for j in range(4)) for i in range(4)]
    coeffs = [_dot(theta, wedge(ek, ei)) for ei in basis for ek in basis]
    den, P, Q = integer_coords(coeffs)
    return [P[4 * i : 4 * i + 4] for i in range(4)], [Q[4 * i : 4 * i + 4] for i in range(4)], den, bound


def cases():
    A = Mat2Z(3, 1, 2, 1)
    B = Mat2Z(1, 1, 1, 0)
    flat = lambda X: (X.a, X.b, X.c, X.d)  # noqa: E731
    theta = theta_from_eigenvectors(certify(B))
    xs, ys = orbit_points(theta, TorusPoint(0.0, 0.0), 40)
    return {
        "lattice_zero_scan (Z^4, bound 4)": ("lattice_zero_scan", nondegeneracy_inputs(A, 4)),
        "conjugator_shell (h=6)": ("conjugator_shell", (flat(B), flat(A), flat(A.inverse()), 6)),
        "covering_radius (6561 pts, grid 50)": ("covering_radius", (np.asarray(xs), np.asarray(ys), 50)),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = ["python"] + (["cython"] if kernels.native is not None else [])
    print(f"{'kernel':40s} " + " ".join(f"{b:>10s}" for b in backends) + ("    speedup" if len(backends) == 2 else ""))
    for label, (name, argv) in cases().items():
        times = []
        results = []
        for b in backends:
            fn = getattr(kernels.get(b), name)
            results.append(fn(*argv))
            times.append(min(timeit.repeat(lambda: fn(*argv), number=1, repeat=args.repeat)))
        if len(results) == 2 and name != "covering_radius":
            assert sorted(map(tuple, results[0])) == sorted(map(tuple, results[1])), label
        row = f"{label:40s} " + " ".join(f"{t * 1e3:8.1f}ms" for t in times)
        if len(times) == 2:
            row += f" {times[0] / times[1]:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
