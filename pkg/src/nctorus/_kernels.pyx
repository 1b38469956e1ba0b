# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan kernels; see ``_kernels_py`` for the reference versions."""

from libc.math cimport fabs, sqrt
from libc.stdlib cimport malloc, free


def lattice_zero_scan(P, Q, long long modulus, int bound):
    cdef int rows = len(P)
    cdef int k = len(P[0]) if rows else 0
    cdef long long *pc = <long long *> malloc(rows * k * sizeof(long long))
    cdef long long *qc = <long long *> malloc(rows * k * sizeof(long long))
    cdef long long *g = <long long *> malloc(k * sizeof(long long))
    cdef int i, j, pos
    cdef long long sp, sq
    cdef bint ok
    hits = []
    if pc == NULL or qc == NULL or g == NULL:
        free(pc); free(qc); free(g)
        raise MemoryError()
    try:
        for i in range(rows):
            for j in range(k):
                pc[i * k + j] = P[i][j]
                qc[i * k + j] = Q[i][j]
        for j in range(k):
            g[j] = -bound
        while True:
            ok = True
            for i in range(rows):
                sp = 0
                sq = 0
                for j in range(k):
                    sq += qc[i * k + j] * g[j]
                    sp += pc[i * k + j] * g[j]
                if sq != 0 or sp % modulus != 0:
                    ok = False
                    break
            if ok:
                hits.append(tuple([g[j] for j in range(k)]))
            # odometer, last coordinate fastest (lexicographic order)
            pos = k - 1
            while pos >= 0:
                if g[pos] < bound:
                    g[pos] += 1
                    break
                g[pos] = -bound
                pos -= 1
            if pos < 0:
                break
    finally:
        free(pc); free(qc); free(g)
    return hits


def conjugator_shell(A, B, Binv, long long h):
    cdef long long a = A[0], b = A[1], c = A[2], d = A[3]
    cdef long long e1 = B[0], f1 = B[1], g1 = B[2], k1 = B[3]
    cdef long long e2 = Binv[0], f2 = Binv[1], g2 = Binv[2], k2 = Binv[3]
    cdef long long al, be, ga, de, det, m
    cdef long long x0, x1, x2, x3
    hits = []
    for al in range(-h, h + 1):
        for be in range(-h, h + 1):
            for ga in range(-h, h + 1):
                for de in range(-h, h + 1):
                    m = max(max(abs(al), abs(be)), max(abs(ga), abs(de)))
                    if m != h:
                        continue
                    det = al * de - be * ga
                    if det != 1 and det != -1:
                        continue
                    x0 = a * al + b * ga
                    x1 = a * be + b * de
                    x2 = c * al + d * ga
                    x3 = c * be + d * de
                    if (x0 == al * e1 + be * g1 and x1 == al * f1 + be * k1
                            and x2 == ga * e1 + de * g1 and x3 == ga * f1 + de * k1):
                        hits.append((al, be, ga, de, False))
                    if (x0 == al * e2 + be * g2 and x1 == al * f2 + be * k2
                            and x2 == ga * e2 + de * g2 and x3 == ga * f2 + de * k2):
                        hits.append((al, be, ga, de, True))
    return hits


def covering_radius(xs, ys, int grid):
    cdef Py_ssize_t n = len(xs)
    cdef double *px = <double *> malloc(n * sizeof(double))
    cdef double *py = <double *> malloc(n * sizeof(double))
    cdef Py_ssize_t t
    cdef int i, j
    cdef double gx, gy, dx, dy, dist, best, worst = 0.0
    if px == NULL or py == NULL:
        free(px); free(py)
        raise MemoryError()
    try:
        for t in range(n):
            px[t] = xs[t]
            py[t] = ys[t]
        for j in range(grid):
            gy = <double> j / grid
            for i in range(grid):
                gx = <double> i / grid
                best = 1e300
                for t in range(n):
                    dx = fabs(px[t] - gx)
                    if dx > 0.5:
                        dx = 1.0 - dx
                    dy = fabs(py[t] - gy)
                    if dy > 0.5:
                        dy = 1.0 - dy
                    dist = dx * dx + dy * dy
                    if dist < best:
                        best = dist
                        # this sample cannot raise the maximum any more
                        if best <= worst:
                            break
                if best > worst:
                    worst = best
    finally:
        free(px); free(py)
    return sqrt(worst)
