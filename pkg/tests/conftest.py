import random

from hypothesis import assume
from hypothesis import strategies as st

from nctorus import Mat2Z
from nctorus.hyperbolic import is_hyperbolic

FIB = Mat2Z(1, 1, 1, 0)
EX2 = Mat2Z(3, 1, 2, 1)
CAT = Mat2Z(2, 1, 1, 1)


def random_hyperbolic(rng: random.Random, lo: int = -10, hi: int = 10) -> Mat2Z:
    while True:
        a, b, c, d = (rng.randint(lo, hi) for _ in range(4))
        A = Mat2Z(a, b, c, d)
        if A.det in (1, -1) and is_hyperbolic(A):
            return A


def random_unimodular(rng: random.Random, size: int = 3) -> Mat2Z:
    # product of elementary shears and a sign flip
    M = Mat2Z.identity()
    for _ in range(rng.randint(1, 4)):
        k = rng.randint(-size, size)
        M = M @ (Mat2Z(1, k, 0, 1) if rng.random() < 0.5 else Mat2Z(1, 0, k, 1))
    if rng.random() < 0.5:
        M = M @ Mat2Z(0, 1, 1, 0)
    return M


def hyperbolic_pool(n: int, seed: int, lo: int = -10, hi: int = 10) -> list[Mat2Z]:
    rng = random.Random(seed)
    return [random_hyperbolic(rng, lo, hi) for _ in range(n)]


entries = st.integers(min_value=-10, max_value=10)


@st.composite
def hyperbolic_matrices(draw):
    # pick a, d, det freely, then b among the divisors of a*d - det
    a, d = draw(entries), draw(entries)
    det = draw(st.sampled_from([1, -1]))
    n = a * d - det
    assume(n != 0)
    divisors = [k for k in range(1, abs(n) + 1) if n % k == 0]
    b = draw(st.sampled_from(divisors)) * draw(st.sampled_from([1, -1]))
    A = Mat2Z(a, b, n // b, d)
    assume(is_hyperbolic(A))
    return A


vec4 = st.tuples(*([st.integers(min_value=-5, max_value=5)] * 4))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in results.items():
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {name}: {detail}")
