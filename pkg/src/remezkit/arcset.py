"""Closed subsets of the unit circle given as the complement of open arcs."""

import math
from dataclasses import dataclass
from typing import Iterable, List, Tuple

import numpy as np

from .errors import DegenerateSetError, DomainError

TWO_PI = 2.0 * math.pi
MERGE_TOL = 1e-12


def _reduce(x):
    r = math.fmod(x, TWO_PI)
    if r < 0:
        r += TWO_PI
    if r >= TWO_PI:
        r = 0.0
    return r


@dataclass(frozen=True)
class Arc:
    """Open arc traversed counterclockwise from ``start`` to ``end``."""

    start: float
    end: float

    @property
    def length(self) -> float:
        ell = (self.end - self.start) % TWO_PI
        return ell

    def contains(self, x: float) -> bool:
        off = (x - self.start) % TWO_PI
        return 0.0 < off < self.length


@dataclass(frozen=True)
class ArcSet:
    """E = T minus a finite union of disjoint open arcs (the gaps).

    Gaps are stored with ``start`` in [0, 2pi); a wrapping gap has
    ``end < start``.  ``degenerate`` marks the empty set (gaps cover T).
    """

    gaps: Tuple[Arc, ...] = ()
    degenerate: bool = False

    @property
    def n_gaps(self) -> int:
        return len(self.gaps)

    @classmethod
    def full(cls) -> "ArcSet":
        return cls(())

    @classmethod
    def empty(cls) -> "ArcSet":
        return cls((), degenerate=True)

    @classmethod
    def single_gap(cls, s: float, center: float = 0.0) -> "ArcSet":
        """T minus the open arc of length ``s`` centred at ``center``."""
        if not 0.0 < s < TWO_PI:
            raise DomainError(f"gap length must lie in (0, 2pi), got {s}")
        return normalize([(center - s / 2, center + s / 2)])

    def gap_lengths(self) -> List[float]:
        return [g.length for g in self.gaps]

    def bands(self) -> List[Tuple[float, float]]:
        """Maximal closed sub-arcs of E as (lo, hi) with lo <= hi (hi may exceed 2pi)."""
        if self.degenerate:
            return []
        if not self.gaps:
            return [(0.0, TWO_PI)]
        out = []
        k = len(self.gaps)
        for j in range(k):
            lo = self.gaps[j].end
            hi = self.gaps[(j + 1) % k].start
            while hi < lo:
                hi += TWO_PI
            out.append((lo, hi))
        return out

    def to_json(self) -> dict:
        return {"gaps": [[g.start, g.end] for g in self.gaps]}

    @classmethod
    def from_json(cls, obj) -> "ArcSet":
        try:
            raw = [(float(a), float(b)) for a, b in obj["gaps"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed ArcSet JSON: {exc}") from exc
        return normalize(raw)

    def rotated(self, alpha: float) -> "ArcSet":
        return normalize([(g.start + alpha, g.start + alpha + g.length) for g in self.gaps])


def normalize(raw: Iterable, allow_degenerate: bool = False) -> ArcSet:
    """Canonical form of a union of open arcs given as (start, end) pairs.

    An arc whose raw ``end - start`` is nonpositive is read modulo 2pi, so
    ``(3pi/2, pi/2)`` is the wrapping arc of length pi.
    """
    intervals = []
    for item in raw:
        if isinstance(item, Arc):
            lo, hi = item.start, item.end
        else:
            lo, hi = float(item[0]), float(item[1])
        span = hi - lo
        if span >= TWO_PI:
            ell = TWO_PI
        else:
            ell = span % TWO_PI
        if ell <= 0.0:
            raise DomainError(f"arc ({lo}, {hi}) has zero length")
        start = _reduce(lo)
        intervals.append([start, start + ell])
    if not intervals:
        return ArcSet(())

    intervals.sort()
    merged = [intervals[0]]
    for lo, hi in intervals[1:]:
        if lo <= merged[-1][1] + MERGE_TOL:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    # the last interval may wrap past 2pi onto the first ones
    while len(merged) > 1 and merged[-1][1] + MERGE_TOL >= merged[0][0] + TWO_PI:
        first = merged.pop(0)
        merged[-1][1] = max(merged[-1][1], first[1] + TWO_PI)
    if any(hi - lo >= TWO_PI - MERGE_TOL for lo, hi in merged):
        if allow_degenerate:
            return ArcSet.empty()
        raise DegenerateSetError("gaps cover the whole circle")

    gaps = []
    for lo, hi in merged:
        gaps.append(Arc(lo, _reduce(hi)))
    gaps.sort(key=lambda g: g.start)
    return ArcSet(tuple(gaps))


def measure(E: ArcSet) -> float:
    """Lebesgue measure of E in radians."""
    if E.degenerate:
        return 0.0
    return max(TWO_PI - sum(g.length for g in E.gaps), 0.0)


def contains(E: ArcSet, x: float) -> bool:
    if E.degenerate:
        return False
    return not any(g.contains(x) for g in E.gaps)


def contains_many(E: ArcSet, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if E.degenerate:
        return np.zeros(x.shape, dtype=bool)
    inside = np.ones(x.shape, dtype=bool)
    for g in E.gaps:
        off = np.mod(x - g.start, TWO_PI)
        inside &= ~((off > 0.0) & (off < g.length))
    return inside


def sample_grid(E: ArcSet, density: float) -> np.ndarray:
    """Angles in E with spacing at most 1/density, including every band endpoint.

    Band angles are returned unreduced (increasing along each band), so the
    band (pi, 2pi) yields values up to 2pi itself.
    """
    if density <= 0:
        raise DomainError("density must be positive")
    if E.degenerate:
        return np.empty(0)
    if not E.gaps:
        k = int(math.ceil(TWO_PI * density))
        return np.arange(k) * (TWO_PI / k)
    pieces = []
    for lo, hi in E.bands():
        k = max(int(math.ceil((hi - lo) * density)), 1)
        pieces.append(np.linspace(lo, hi, k + 1))
    return np.concatenate(pieces)

