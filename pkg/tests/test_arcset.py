import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from remezkit.arcset import Arc, ArcSet, contains, contains_many, measure, normalize, sample_grid
from remezkit.errors import DegenerateSetError, DomainError

PI = math.pi
TWO_PI = 2 * PI


def test_normalize_empty_is_full_circle():
    E = normalize([])
    assert E.n_gaps == 0
    assert measure(E) == TWO_PI


def test_normalize_wrapping_gap():
    E = normalize([(3 * PI / 2, PI / 2)])
    assert E.n_gaps == 1
    assert E.gaps[0].length == pytest.approx(PI, abs=1e-15)
    assert not contains(E, 0.0)
    assert contains(E, PI)


def test_normalize_merges_overlaps():
    E = normalize([(0, 1), (0.5, 2)])
    assert E.gaps == (Arc(0.0, 2.0),)


def test_normalize_rejects_cover():
    with pytest.raises(DegenerateSetError):
        normalize([(0, 4), (3.5, 6.5)])
    assert normalize([(0, 4), (3.5, 6.5)], allow_degenerate=True).degenerate


def test_zero_length_arc_rejected():
    with pytest.raises(DomainError):
        normalize([(1.0, 1.0)])


def test_measure_examples():
    assert measure(ArcSet.full()) == TWO_PI
    assert measure(ArcSet.single_gap(PI)) == pytest.approx(PI)
    assert measure(normalize([(0.0, 0.5), (2.0, 3.0)])) == pytest.approx(TWO_PI - 1.5, abs=1e-15)


def test_contains_examples():
    E = normalize([(0.0, PI)])
    assert contains(E, PI)
    assert contains(E, 0.0)
    assert not contains(E, PI / 2)
    assert all(contains(ArcSet.full(), x) for x in np.linspace(-7, 7, 29))


def test_sample_grid_endpoints_and_spacing():
    E = normalize([(0.0, PI)])
    g = sample_grid(E, 2 / PI)
    assert np.any(np.isclose(g, PI)) and np.any(np.isclose(g, TWO_PI))
    assert np.max(np.diff(g)) <= PI / 2 + 1e-15
    d = 3.7
    assert sample_grid(ArcSet.full(), d).size >= math.ceil(TWO_PI * d)
    E2 = normalize([(0.5, 1.0), (3.0, 4.0)])
    g2 = np.mod(sample_grid(E2, 5.0), TWO_PI)
    for end in (0.5, 1.0, 3.0, 4.0):
        assert np.min(np.abs(g2 - end)) < 1e-12


def test_json_round_trip():
    E = normalize([(5.5, 0.4), (2.0, 3.0)])
    assert ArcSet.from_json(E.to_json()) == E
    with pytest.raises(DomainError):
        ArcSet.from_json({"gap": []})


arcs = st.lists(
    st.tuples(st.floats(0, TWO_PI, allow_nan=False), st.floats(0.01, 1.5, allow_nan=False)),
    min_size=0, max_size=5,
)


def _raw(items):
    return [(a, a + ell) for a, ell in items]


@settings(max_examples=60, deadline=None)
@given(arcs)
def test_normalize_idempotent(items):
    E = normalize(_raw(items), allow_degenerate=True)
    if E.degenerate:
        return
    F = normalize(E.gaps)
    assert len(F.gaps) == len(E.gaps)
    for g, h in zip(E.gaps, F.gaps):
        assert math.isclose(g.start, h.start, abs_tol=1e-12)
        assert math.isclose(g.length, h.length, abs_tol=1e-12)


@settings(max_examples=40, deadline=None)
@given(arcs)
def test_measure_matches_brute_force_union(items):
    raw = _raw(items)
    E = normalize(raw, allow_degenerate=True)
    x = (np.arange(100_000) + 0.5) * TWO_PI / 100_000
    covered = np.zeros(x.size, dtype=bool)
    for a, b in raw:
        covered |= np.mod(x - a, TWO_PI) < (b - a)
    brute = TWO_PI * (1 - covered.mean())
    assert abs(measure(E) - brute) < 1e-3


def test_contains_consistent_with_measure(rng):
    E = normalize([(0.3, 1.1), (2.0, 2.2), (4.0, 5.9)])
    x = rng.uniform(0, TWO_PI, 100_000)
    frac = contains_many(E, x).mean()
    p = measure(E) / TWO_PI
    sigma = math.sqrt(p * (1 - p) / x.size)
    assert abs(frac - p) <= 3 * sigma
    # the scalar and vector forms agree
    assert all(contains(E, v) == bool(w) for v, w in zip(x[:500], contains_many(E, x[:500])))
