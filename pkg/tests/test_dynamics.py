import math
import random
import statistics

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CAT, EX2, FIB
from nctorus.dynamics import (
    MAX_STEPS,
    AsymptoticReport,
    TorusPoint,
    apply_matrix,
    asymptotic_pair_report,
    contraction_ratios,
    orbit_density_estimate,
    torus_distance,
)
from nctorus.hyperbolic import Mat2Z, NotHyperbolicError, certify

unit = st.floats(min_value=0, max_value=1, exclude_max=True, allow_nan=False)


def test_torus_point_reduction():
    p = TorusPoint(1.25, -0.25)
    assert (p.x1, p.x2) == (0.25, 0.75)
    assert TorusPoint(-1e-300, 0).x1 == 0.0


@pytest.mark.parametrize(
    "x, y, d",
    [((0, 0), (0, 0), 0.0), ((0.9, 0), (0, 0), 0.1), ((0.5, 0.5), (0, 0), math.sqrt(2) / 2)],
)
def test_torus_distance_examples(x, y, d):
    assert torus_distance(TorusPoint(*x), TorusPoint(*y)) == pytest.approx(d, abs=1e-15)


@given(unit, unit, unit, unit)
def test_torus_distance_is_a_metric_on_lifts(a, b, c, d):
    x, y = TorusPoint(a, b), TorusPoint(c, d)
    dist = torus_distance(x, y)
    assert 0 <= dist <= math.sqrt(2) / 2 + 1e-15
    assert dist == torus_distance(y, x)
    # brute force over a wider set of lifts
    brute = min(math.hypot(a - c + i, b - d + j) for i in range(-3, 4) for j in range(-3, 4))
    assert dist == pytest.approx(brute, abs=1e-15)


def test_apply_matrix_examples():
    assert apply_matrix(FIB, TorusPoint(0, 0)) == TorusPoint(0, 0)
    assert apply_matrix(FIB, TorusPoint(0.25, 0.5)) == TorusPoint(0.75, 0.25)


@pytest.mark.parametrize("A", [FIB, CAT, EX2])
def test_round_trip_within_budget(A):
    # rounding error grows like |lambda_u|^n * eps
    lam = abs(float(certify(A).lambda_u))
    budget = 1e-10 if A == FIB else 16 * lam**MAX_STEPS * 2.0**-52
    rng = random.Random(5)
    Ainv = A.inverse()
    for _ in range(50):
        x = TorusPoint(rng.random(), rng.random())
        y = x
        for _ in range(MAX_STEPS):
            y = apply_matrix(A, y)
        for _ in range(MAX_STEPS):
            y = apply_matrix(Ainv, y)
        assert torus_distance(x, y) < budget


def test_zero_translation_gives_zero_distances():
    r = asymptotic_pair_report(FIB, TorusPoint(0.3, 0.7), 0, 0, 10)
    assert r.forward_dists == [0.0] * 11 and r.backward_dists == [0.0] * 11
    assert r.converged


def test_example_two_pair_converges():
    r = asymptotic_pair_report(EX2, TorusPoint(0, 0), 2, -1, 15, 1e-5)
    assert r.converged_forward and r.converged_backward
    lam_s = abs(float(certify(EX2).lambda_s))
    assert statistics.median(contraction_ratios(r.forward_dists)) == pytest.approx(lam_s, rel=0.2)


@pytest.mark.parametrize("A", [FIB, CAT, EX2, Mat2Z(-2, 1, 1, -1)])
def test_contraction_rates_follow_eigenvalues(A):
    H = certify(A)
    r = asymptotic_pair_report(A, TorusPoint(0.1, 0.2), 1, 0, 12)
    fwd = statistics.median(contraction_ratios(r.forward_dists))
    bwd = statistics.median(contraction_ratios(r.backward_dists))
    assert fwd == pytest.approx(abs(float(H.lambda_s)), rel=0.2)
    assert bwd == pytest.approx(1 / abs(float(H.lambda_u)), rel=0.2)


def test_fibonacci_twenty_step_distances():
    # exact limits: |component of the (1,0) shift along v_s| * phi^-20 and the v_u analogue
    r = asymptotic_pair_report(FIB, TorusPoint(0.1, 0.2), 1, 0, 20)
    phi = (1 + math.sqrt(5)) / 2
    assert r.forward_dists[-1] == pytest.approx(math.sqrt((5 - math.sqrt(5)) / 10) * phi**-20, rel=1e-6)
    assert r.backward_dists[-1] == pytest.approx(math.sqrt((5 + math.sqrt(5)) / 10) * phi**-20, rel=1e-6)


def test_report_validation():
    with pytest.raises(ValueError):
        asymptotic_pair_report(FIB, TorusPoint(0, 0), 1, 0, MAX_STEPS + 1)
    with pytest.raises(NotHyperbolicError):
        asymptotic_pair_report(Mat2Z(1, 1, 0, 1), TorusPoint(0, 0), 1, 0, 5)


def test_report_serialization():
    r = asymptotic_pair_report(FIB, TorusPoint(0.1, 0.2), 1, 0, 5, 0.5)
    again = AsymptoticReport.from_json(r.to_json(), 0.5)
    assert again == r
    lines = r.to_csv().splitlines()
    assert lines[0] == "step,forward,backward" and len(lines) == 7
    assert float(lines[3].split(",")[1]) == r.forward_dists[2]


def test_density_single_point():
    assert orbit_density_estimate(FIB, TorusPoint(0, 0), 0, 8) == pytest.approx(math.sqrt(2) / 2)


def test_density_threshold_and_monotone():
    radii = [orbit_density_estimate(FIB, TorusPoint(0, 0), N, 50) for N in (5, 10, 20, 40)]
    assert radii[-1] < 0.05
    assert all(b <= a for a, b in zip(radii, radii[1:]))


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 12), unit, unit)
def test_density_doubling_never_hurts(k, a, b):
    x = TorusPoint(a, b)
    assert orbit_density_estimate(CAT, x, 2 * k, 24) <= orbit_density_estimate(CAT, x, k, 24)


def test_density_validation():
    with pytest.raises(ValueError):
        orbit_density_estimate(FIB, TorusPoint(0, 0), -1, 10)
    with pytest.raises(ValueError):
        orbit_density_estimate(FIB, TorusPoint(0, 0), 3, 0)
