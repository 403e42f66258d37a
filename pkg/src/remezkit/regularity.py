"""Sup-norms, sublevel sets, the Remez checker and n-regular extensions."""

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import _kernels
from .arcset import ArcSet, measure, normalize
from .closed_form import remez_constant_algebraic, remez_constant_trig
from .errors import DegenerateSetError, DomainError
from .oracle import OracleProblem, solve_problem_d
from .polynomial import CirclePolynomial

TWO_PI = 2.0 * math.pi
TANGENCY_TOL = 1e-10


def sup_norm_on_circle(P: CirclePolynomial) -> Tuple[float, float]:
    """max |P(e^{ix})| and a maximising angle in [0, 2pi)."""
    N = max(64, 16 * P.n)
    xs = TWO_PI * np.arange(N) / N
    f = P.abs2_on_circle(xs)
    left = np.roll(f, 1)
    right = np.roll(f, -1)
    idx = np.flatnonzero((f >= left) & (f >= right))
    h = TWO_PI / N
    xm, fm = _kernels.golden_max(P.coeffs, xs[idx] - h, xs[idx] + h, 64)
    j = int(np.argmax(fm))
    if f[idx[j]] > fm[j]:  # flat modulus: the grid node is as good
        return float(math.sqrt(f[idx[j]])), float(xs[idx[j]])
    return float(math.sqrt(fm[j])), float(np.mod(xm[j], TWO_PI))


def sublevel_set(P: CirclePolynomial, level: float = 1.0) -> ArcSet:
    """The closed set {x : |P(e^{ix})| <= level}.

    Boundary points are sign changes of |P|^2 - level^2 on a grid of
    40n + 64 points, refined by bisection.  Candidate gaps on which
    |P|^2 - level^2 never exceeds 1e-10 are tangential touchings; they are
    dropped with a warning.
    """
    if not level > 0:
        raise DomainError("level must be positive")
    lev2 = level * level
    N = 40 * P.n + 64
    xs = TWO_PI * np.arange(N) / N
    g = P.abs2_on_circle(xs) - lev2
    pos = g > 0
    if not pos.any():
        _warn_tangency(g, pos)
        return ArcSet.full()
    if pos.all():
        return ArcSet.empty()
    # brackets [x_k, x_{k+1}] across which the sign flips (periodically)
    k = np.flatnonzero(pos != np.roll(pos, -1))
    lo = xs[k]
    hi = lo + TWO_PI / N
    roots = _kernels.bisect_level(P.coeffs, lo, hi, lev2, 60)
    rising = ~pos[k]  # entering {g > 0} at this root
    order = np.argsort(roots)
    roots = roots[order]
    rising = rising[order]
    start = int(np.argmax(rising))
    roots = np.roll(roots, -start)
    rising = np.roll(rising, -start)
    gaps = []
    scale = max(1.0, lev2)
    dropped = 0
    for j in range(0, roots.size, 2):
        a = roots[j]
        b = roots[(j + 1) % roots.size]
        if b <= a:
            b += TWO_PI
        probe = np.linspace(a, b, 9)[1:-1]
        peak = float(np.max(P.abs2_on_circle(probe) - lev2))
        if peak <= TANGENCY_TOL * scale:
            dropped += 1
            continue
        gaps.append((a, b))
    if dropped:
        warnings.warn(f"{dropped} tangential touching(s) of the level set dropped", RuntimeWarning, stacklevel=2)
    _warn_tangency(g, pos)
    if not gaps:
        return ArcSet.full()
    return normalize(gaps, allow_degenerate=True)


def _warn_tangency(g, pos):
    left = np.roll(g, 1)
    right = np.roll(g, -1)
    peak = (g >= left) & (g >= right) & ~pos
    if np.any(np.abs(g[peak]) < TANGENCY_TOL):
        warnings.warn("|P| touches the level without crossing (double root)", RuntimeWarning, stacklevel=3)


@dataclass
class VerificationReport:
    sup_norm: float
    sup_arg: float
    sublevel: ArcSet
    sublevel_measure: float
    remez_ok: bool
    constant_used: float
    s: float
    kind: str = "algebraic"

    def to_json(self) -> dict:
        return {
            "sup": self.sup_norm,
            "arg": self.sup_arg,
            "s": self.s,
            "constant": self.constant_used,
            "ok": bool(self.remez_ok),
            "sublevel_gaps": self.sublevel.to_json()["gaps"],
        }


def check_remez(P: CirclePolynomial, kind: str = "algebraic", s: Optional[float] = None) -> VerificationReport:
    """Compare sup |P| with the sharp constant for the measure of {|P| <= 1}.

    By default the gap length is read off the sublevel set, and the bound
    then holds for every polynomial.  Passing ``s`` instead checks a claim
    "|P| <= 1 outside a gap of length s": a polynomial that is larger than
    one on more than that fails exactly when its sup exceeds the constant
    for ``s``.

    For ``kind="trigonometric"`` the coefficient vector (of odd length
    2m + 1) is read as a trigonometric polynomial of degree m, whose
    modulus on the circle is that of P, and the constant T_{2m} is used.
    """
    if kind in ("trig", "trigonometric"):
        kind = "trigonometric"
        if P.n % 2:
            raise DomainError("a trigonometric polynomial needs an odd number of coefficients")
    elif kind != "algebraic":
        raise DomainError(f"unknown kind {kind!r}")
    sup, arg = sup_norm_on_circle(P)
    S = sublevel_set(P, 1.0)
    m = measure(S)
    if m <= 0.0:
        raise DegenerateSetError("|P| > 1 everywhere on the circle; no Remez bound applies")
    if s is None:
        s = max(TWO_PI - m, 0.0)
    elif not 0.0 <= s < TWO_PI:
        raise DomainError("declared gap length must lie in [0, 2pi)")
    if s == 0.0:
        const = 1.0
    elif kind == "algebraic":
        const = remez_constant_algebraic(P.n, s).value
    else:
        const = remez_constant_trig(P.n // 2, s).value
    ok = sup <= const * (1.0 + 1e-9)
    return VerificationReport(sup_norm=sup, sup_arg=arg, sublevel=S, sublevel_measure=m,
                              remez_ok=bool(ok), constant_used=const, s=s, kind=kind)


def phase_fix(P: CirclePolynomial, c: float = 0.0) -> CirclePolynomial:
    """Symmetrise e^{-inz/2} P(e^{iz}) to a function real on the real axis, positive at c."""
    n = P.n
    F_c = np.exp(-0.5j * n * c) * P(np.exp(1j * c))
    if abs(F_c) == 0.0:
        raise DegenerateSetError("P vanishes at the target angle")
    A = P.coeffs * np.exp(-1j * np.angle(F_c))
    B = 0.5 * (A + np.conj(A[::-1]))
    if not np.any(np.abs(B) > 1e-300):
        raise DegenerateSetError("the symmetrised polynomial vanishes identically")
    return CirclePolynomial(B)


@dataclass
class Extension:
    E_hat: ArcSet
    F_poly: CirclePolynomial
    value: float


def _gap_mid(E: ArcSet, gap_index: int) -> float:
    if E.degenerate or not E.gaps:
        raise DomainError("E must have at least one gap")
    if not 0 <= gap_index < E.n_gaps:
        raise DomainError(f"gap index {gap_index} out of range")
    g = E.gaps[gap_index]
    return g.start + 0.5 * g.length


def n_regular_extension(n: int, E: ArcSet, gap_index: int = 0, **oracle_kw) -> Extension:
    """The largest set on which the extremizer of (E, gap) stays bounded by one."""
    c = _gap_mid(E, gap_index)
    sol = solve_problem_d(OracleProblem(n, E, c, **oracle_kw))
    P = phase_fix(sol.feasible(), c)
    return Extension(E_hat=sublevel_set(P, 1.0), F_poly=P, value=sol.value)


def same_set(E1: ArcSet, E2: ArcSet, tol: float = 1e-5) -> bool:
    if E1.degenerate or E2.degenerate:
        return E1.degenerate == E2.degenerate
    if E1.n_gaps != E2.n_gaps:
        return False

    def off(x, y):
        return abs((x - y + math.pi) % TWO_PI - math.pi)

    g1 = sorted(E1.gaps, key=lambda g: g.start)
    g2 = sorted(E2.gaps, key=lambda g: g.start)
    # the sort may split differently when a start sits at the 0 / 2pi seam
    for shift in range(len(g2)):
        rot = g2[shift:] + g2[:shift]
        if all(off(a.start, b.start) <= tol and off(a.end, b.end) <= tol for a, b in zip(g1, rot)):
            return True
    return False


def is_n_regular(n: int, E: ArcSet, gap_index: int = 0, **oracle_kw) -> bool:
    ext = n_regular_extension(n, E, gap_index, **oracle_kw)
    return same_set(ext.E_hat, E, 1e-5)
