import math

import numpy as np
import pytest

from remezkit.arcset import ArcSet, normalize
from remezkit.closed_form import extremal_coeffs, remez_constant_algebraic
from remezkit.errors import DomainError
from remezkit.oracle import OracleProblem, default_tol, solve_problem_c, solve_problem_d, sup_on_set
from remezkit.regularity import phase_fix

PI = math.pi
TOL = 1e-6
TWO_GAP = normalize([(0.5, 1.3), (3.0, 4.4)])


def test_full_circle_value_one():
    for n in (1, 3):
        sol = solve_problem_d(OracleProblem(n, ArcSet.full(), 0.7))
        assert sol.lower <= 1.0 <= sol.upper
        assert sol.upper - sol.lower < 1e-5


def test_constants_degree_zero():
    sol = solve_problem_d(OracleProblem(0, ArcSet.single_gap(2.0), 0.0))
    assert sol.value == pytest.approx(1.0, abs=1e-6)


def test_degree_two_half_circle_gap():
    sol = solve_problem_d(OracleProblem(2, ArcSet.single_gap(PI), 0.0))
    assert sol.lower <= 3.0 <= sol.upper
    assert sol.upper / sol.lower <= 1 + 10 * TOL


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("s", [PI / 2, PI, 3 * PI / 2])
def test_sandwich_single_gap(n, s):
    sol = solve_problem_d(OracleProblem(n, ArcSet.single_gap(s), 0.0, density=200 / PI, tol=TOL))
    exact = remez_constant_algebraic(n, s).value
    assert sol.lower <= exact <= sol.upper


def test_extremizer_matches_closed_form():
    n, s = 4, 2.0
    sol = solve_problem_d(OracleProblem(n, ArcSet.single_gap(s), 0.0))
    ref = extremal_coeffs(n, s).coeffs
    # the LP optimum is flat along the antisymmetric part; symmetrising removes it
    got = phase_fix(sol.feasible(), 0.0).coeffs
    assert np.max(np.abs(got - ref)) < 1e-5 * np.max(np.abs(ref))


def test_polygonalization_control():
    kw = dict(n=3, E=TWO_GAP, c=0.9, density=200 / PI, tol=TOL)
    coarse = solve_problem_d(OracleProblem(M=16, cut="polygon", **kw))
    fine = solve_problem_d(OracleProblem(M=64, cut="polygon", **kw))
    exact = solve_problem_d(OracleProblem(M=64, **kw))
    assert fine.upper <= coarse.upper
    for sol, M in ((coarse, 16), (fine, 64)):
        assert sol.lower <= exact.upper and exact.lower <= sol.upper
        # circumscribed M-gon: |P| <= sec(pi/M) on the grid, so the scaled
        # lower bound loses at most a factor cos(pi/M)
        assert sol.upper - sol.lower <= (1 - math.cos(PI / M)) * sol.upper * (1 + 1e-6)
    # exact-phase cuts close the bracket at the same M
    assert exact.upper - exact.lower < 1e-3 * exact.value


def test_monotone_in_E():
    big = normalize([(1.0, 2.0)])
    small = normalize([(0.8, 2.3), (4.0, 4.5)])  # small is a subset of big
    for n in (2, 3):
        v_small = solve_problem_d(OracleProblem(n, small, 1.5)).value
        v_big = solve_problem_d(OracleProblem(n, big, 1.5)).value
        assert v_small >= v_big - 1e-6


@pytest.mark.parametrize("alpha", [0.37, 2.0, -1.1])
def test_rotation_equivariance(alpha):
    n, c = 3, 0.9
    base = solve_problem_d(OracleProblem(n, TWO_GAP, c))
    rot = solve_problem_d(OracleProblem(n, TWO_GAP.rotated(alpha), c + alpha))
    assert rot.value == pytest.approx(base.value, rel=1e-8)
    # Q(e^{ix}) = P(e^{i(x - alpha)}) has coefficients A_k e^{-ik alpha}
    k = np.arange(n + 1)
    want = base.coefficients.coeffs * np.exp(-1j * k * alpha)
    assert np.max(np.abs(rot.coefficients.coeffs - want)) < 1e-6


def test_extremizer_independent_of_target_in_gap(rng):
    n = 3
    mid = solve_problem_d(OracleProblem(n, TWO_GAP, 0.9, tol=TOL)).feasible()
    ref = phase_fix(mid, 0.9).coeffs
    for c in rng.uniform(0.5, 1.3, 5):
        sol = solve_problem_d(OracleProblem(n, TWO_GAP, float(c), tol=TOL))
        assert np.max(np.abs(phase_fix(sol.feasible(), 0.9).coeffs - ref)) < 1e-5
        # the value at c is the modulus there of the one extremizer
        at_c = abs(mid.on_circle(np.array([c]))[0])
        assert sol.value == pytest.approx(at_c, rel=2 * TOL)


def test_problem_c_half_circle_gap():
    E = normalize([(-PI / 2, PI / 2)])
    res = solve_problem_c(2, E, 0)
    assert abs(res.c_star) < 1e-4
    assert res.value == pytest.approx(3.0, rel=1e-5)
    assert res.scan_agrees


@pytest.mark.parametrize("s", [0.8, 2.5, 4.0])
def test_problem_c_degree_one(s):
    res = solve_problem_c(1, ArcSet.single_gap(s, center=1.0), 0)
    assert res.value == pytest.approx(1 / math.cos(s / 4), rel=1e-5)
    assert res.c_star == pytest.approx(1.0, abs=1e-4)


def test_problem_c_two_symmetric_gaps_below_single_gap():
    s = 2.0
    E = normalize([(0.0, s / 2), (PI, PI + s / 2)])
    res = solve_problem_c(2, E, 0)
    assert res.value <= remez_constant_algebraic(2, s).value + TOL


def test_problem_c_search_modes_agree():
    a = solve_problem_c(2, TWO_GAP, 1, search="extremizer")
    b = solve_problem_c(2, TWO_GAP, 1, search="resolve")
    assert a.value == pytest.approx(b.value, rel=1e-5)
    assert a.c_star == pytest.approx(b.c_star, abs=1e-2)


def test_sup_on_set_matches_dense_grid():
    P = extremal_coeffs(3, 2.0)
    E = ArcSet.single_gap(2.0)
    x = np.linspace(0, 2 * PI, 200001)
    inside = np.abs(np.angle(np.exp(1j * x))) >= 1.0
    dense = np.max(np.abs(P.on_circle(x[inside])))
    assert sup_on_set(P.coeffs, E, 10.0)[0] == pytest.approx(dense, abs=1e-9)


def test_validation_and_tolerance_env(monkeypatch):
    with pytest.raises(DomainError):
        OracleProblem(-1, ArcSet.full(), 0.0)
    with pytest.raises(DomainError):
        OracleProblem(2, ArcSet.full(), 0.0, M=4)
    with pytest.raises(DomainError):
        OracleProblem(2, ArcSet.empty(), 0.0)
    with pytest.raises(DomainError):
        solve_problem_c(2, ArcSet.full(), 0)
    monkeypatch.setenv("REMEZKIT_TOL", "1e-4")
    assert default_tol() == 1e-4


def test_json_shape():
    sol = solve_problem_d(OracleProblem(1, ArcSet.single_gap(PI), 0.0))
    d = sol.to_json()
    assert set(d) == {"lower", "upper", "coeffs", "active", "iters"}
    assert len(d["coeffs"]) == 2
