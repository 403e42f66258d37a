"""Semi-infinite LP oracle for the fixed-target and free-target extremal problems.

Given a closed set E on the circle, a degree n and a target angle c, the
oracle maximises Re P(e^{ic}) over polynomials of degree n with |P| <= 1
on E.  The disk constraint at each sample point is replaced by M
supporting half-planes, the resulting dense LP is solved, and violated
points of E are exchanged into the constraint set until the sup of |P|
over E is within ``tol`` of one.

Two cut styles are available for the exchange step:

``"exact"`` (default)
    the half-plane tangent to the unit disk at the phase of P at the
    violating point, which drives the bracket down to ``tol``;
``"polygon"``
    the polygon facet whose phase index is nearest to arg P, so the
    iteration converges to the polygon relaxation and the bracket width
    is limited by the 1/cos(pi/M) circumscription factor.
"""

import math
import os
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels
from .arcset import ArcSet, contains, sample_grid
from .errors import DomainError, IterationLimitError, SolverError
from .lp import lp_solve
from .polynomial import CirclePolynomial

TWO_PI = 2.0 * math.pi
DEDUP_TOL = 1e-9


def default_tol() -> float:
    raw = os.environ.get("REMEZKIT_TOL")
    if raw:
        try:
            tol = float(raw)
        except ValueError as exc:
            raise DomainError(f"REMEZKIT_TOL is not a number: {raw!r}") from exc
        if tol > 0:
            return tol
        raise DomainError("REMEZKIT_TOL must be positive")
    return 1e-6


def default_density(n: int) -> float:
    return max(8.0 * n / math.pi, 32.0 / math.pi)


@dataclass(frozen=True)
class OracleProblem:
    n: int
    E: ArcSet
    c: float
    M: int = 64
    density: Optional[float] = None
    tol: Optional[float] = None
    cut: str = "exact"
    max_rounds: int = 60
    rule: str = "dantzig"

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"degree must be a nonnegative integer, got {self.n}")
        if self.M < 8:
            raise DomainError(f"polygon order M must be >= 8, got {self.M}")
        if self.tol is not None and not self.tol > 0:
            raise DomainError("tol must be positive")
        if self.cut not in ("exact", "polygon"):
            raise DomainError(f"unknown cut style {self.cut!r}")
        if self.E.degenerate:
            raise DomainError("E is empty; the problem is unbounded")

    @property
    def resolved_tol(self) -> float:
        return self.tol if self.tol is not None else default_tol()

    @property
    def resolved_density(self) -> float:
        return self.density if self.density is not None else default_density(self.n)


@dataclass
class OracleSolution:
    lower: float
    upper: float
    coefficients: CirclePolynomial
    active_points: np.ndarray
    iterations: int
    sup_on_E: float = 1.0
    lp_pivots: int = field(default=0, repr=False)

    @property
    def value(self) -> float:
        return 0.5 * (self.lower + self.upper)

    def feasible(self) -> CirclePolynomial:
        """The coefficients scaled to sup_E |P| <= 1."""
        return self.coefficients.scaled(1.0 / max(self.sup_on_E, 1.0))

    def to_json(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "coeffs": self.coefficients.to_json()["coeffs"],
            "active": [float(x) for x in self.active_points],
            "iters": self.iterations,
        }


def _rows(n, x, phase):
    k = np.arange(n + 1)
    ang = np.outer(x, k) - np.asarray(phase)[:, None]
    return np.hstack([np.cos(ang), -np.sin(ang)])


def _objective(n, c):
    k = np.arange(n + 1)
    return np.concatenate([np.cos(k * c), -np.sin(k * c)])


def _coeffs(n, x):
    return x[: n + 1] + 1j * x[n + 1:]


def _dedupe_angles(x):
    x = np.sort(np.mod(np.asarray(x, dtype=float), TWO_PI))
    if x.size == 0:
        return x
    keep = np.concatenate([[True], np.diff(x) > DEDUP_TOL])
    x = x[keep]
    if x.size > 1 and x[-1] - x[0] > TWO_PI - DEDUP_TOL:
        x = x[:-1]
    return x


def sup_on_set(coeffs, E: ArcSet, density: float):
    """Maximum of |P| on E and the refined local maxima above the grid.

    Returns ``(sup, peak_angles, peak_values)``; peaks are the local maxima
    of |P| on each band located on a grid of the given density and refined
    by golden-section search to ~1e-10 in angle.
    """
    peaks_x = []
    peaks_f = []
    best = 0.0
    for lo, hi in E.bands():
        k = max(int(math.ceil((hi - lo) * density)), 2)
        xs = np.linspace(lo, hi, k + 1)
        f = _kernels.circle_abs2(coeffs, xs)
        left = np.concatenate([[-np.inf], f[:-1]])
        right = np.concatenate([f[1:], [-np.inf]])
        idx = np.flatnonzero((f >= left) & (f >= right))
        if idx.size == 0:
            continue
        a = xs[np.maximum(idx - 1, 0)]
        b = xs[np.minimum(idx + 1, xs.size - 1)]
        xm, fm = _kernels.golden_max(coeffs, a, b, 60)
        # keep the grid value when the bracket maximum sits on a node
        better = f[idx] > fm
        xm = np.where(better, xs[idx], xm)
        fm = np.where(better, f[idx], fm)
        peaks_x.append(xm)
        peaks_f.append(np.sqrt(fm))
        best = max(best, float(np.sqrt(np.max(fm))))
    if not peaks_x:
        return best, np.empty(0), np.empty(0)
    return best, np.concatenate(peaks_x), np.concatenate(peaks_f)


def _certified_upper(res, A, obj):
    # b.y bounds c.x for every x feasible for the sampled constraints once
    # A^T y = c holds exactly; the residual of the computed y is charged
    # against a generous bound on |x|, and a few ulps cover the final sum.
    used = res.basis >= 0
    y = res.duals[used]
    resid = A[res.basis[used]].T @ y - obj
    slack = np.sum(np.abs(resid)) * 2.0 * max(np.max(np.abs(res.x)), 1.0)
    return float(res.dual_value + slack + 8 * np.finfo(float).eps * abs(res.dual_value))


def solve_problem_d(prob: OracleProblem) -> OracleSolution:
    """Maximise |P(e^{ic})| over degree-n polynomials bounded by one on E."""
    n = int(prob.n)
    tol = prob.resolved_tol
    density = prob.resolved_density
    M = int(prob.M)

    grid = sample_grid(prob.E, density)
    pts = _dedupe_angles(grid)
    if pts.size < n + 1 and prob.E.gaps:
        pts = _dedupe_angles(sample_grid(prob.E, density * (n + 2)))
    phases = TWO_PI * np.arange(1, M + 1) / M
    X = np.repeat(pts, M)
    PH = np.tile(phases, pts.size)
    A = _rows(n, X, PH)
    b = np.ones(A.shape[0])
    obj = _objective(n, prob.c)
    seen = set(zip(np.round(X / DEDUP_TOL).astype(np.int64), np.round(np.mod(PH, TWO_PI) / DEDUP_TOL).astype(np.int64)))

    basis = None
    pivots = 0
    fine = 10.0 * density
    for rounds in range(prob.max_rounds + 1):
        res = lp_solve(obj, A, b, basis=basis, rule=prob.rule)
        pivots += res.iterations
        basis = res.basis
        coeffs = _coeffs(n, res.x)
        sup, px, pf = sup_on_set(coeffs, prob.E, fine)
        if sup <= 1.0 + tol:
            break
        bad = pf > 1.0 + tol
        vx = np.mod(px[bad], TWO_PI)
        vphase = np.angle(_kernels.circle_eval(coeffs, vx))
        if prob.cut == "polygon":
            vphase = TWO_PI * np.round(vphase * M / TWO_PI) / M
        new = []
        for x, ph in zip(vx, np.mod(vphase, TWO_PI)):
            key = (int(round(x / DEDUP_TOL)), int(round(ph / DEDUP_TOL)))
            if key not in seen:
                seen.add(key)
                new.append((x, ph))
        if not new:
            if prob.cut == "polygon":
                break  # converged to the polygon relaxation
            raise SolverError("exchange stalled: violated points already in the constraint set")
        nx = np.array([p[0] for p in new])
        nph = np.array([p[1] for p in new])
        A = np.vstack([A, _rows(n, nx, nph)])
        b = np.concatenate([b, np.ones(nx.size)])
        X = np.concatenate([X, nx])
    else:
        raise IterationLimitError(f"exchange loop exceeded {prob.max_rounds} rounds (sup_E|P| = {sup:.9g})")

    upper = _certified_upper(res, A, obj)
    lower = upper / max(sup, 1.0)
    if prob.cut == "exact" and upper > (1.0 + 10.0 * tol) * lower:
        raise SolverError(f"bracket [{lower}, {upper}] wider than 1 + 10 tol")
    active = basis[(basis >= 0)]
    active_x = np.unique(np.mod(X[active], TWO_PI)) if active.size else np.empty(0)
    return OracleSolution(lower=lower, upper=upper, coefficients=CirclePolynomial(coeffs),
                          active_points=active_x, iterations=rounds, sup_on_E=sup, lp_pivots=pivots)


@dataclass
class ProblemCResult:
    c_star: float
    value: float
    solution: OracleSolution
    scan_agrees: bool = True

    def to_json(self) -> dict:
        out = self.solution.to_json()
        out.update({"c_star": self.c_star, "value": self.value})
        return out


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden(f, lo, hi, xtol=1e-10):
    a, b = lo, hi
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > xtol:
        if f1 >= f2:  # ties prefer the smaller angle
            b, x2, f2 = x2, x1, f1
            x1 = b - _INVPHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INVPHI * (b - a)
            f2 = f(x2)
    xm = 0.5 * (a + b)
    return xm, f(xm)


def solve_problem_c(n: int, E: ArcSet, gap_index: int = 0, tol: Optional[float] = None,
                    search: str = "extremizer", **prob_kw) -> ProblemCResult:
    """Maximise the Problem-D value over targets c in the indexed gap.

    ``search="extremizer"`` solves Problem D once at the gap midpoint and
    maximises the modulus of its (target-independent) extremizer over the
    gap, then re-solves at the maximiser.  ``search="resolve"`` runs the
    golden-section search on full Problem-D solves; it is slower and is
    kept as an independent check of the first route.
    """
    if not E.gaps:
        raise DomainError("E has no gaps")
    if not 0 <= gap_index < E.n_gaps:
        raise DomainError(f"gap index {gap_index} out of range for {E.n_gaps} gaps")
    gap = E.gaps[gap_index]
    lo, hi = gap.start, gap.start + gap.length
    tol = tol if tol is not None else default_tol()

    def d_value(c):
        return solve_problem_d(OracleProblem(n, E, c, tol=tol, **prob_kw))

    if search == "extremizer":
        mid_sol = d_value(0.5 * (lo + hi))
        P = mid_sol.feasible()
        f = lambda c: float(np.abs(P.on_circle(np.array([c]))[0]))
    elif search == "resolve":
        f = lambda c: d_value(c).lower
    else:
        raise DomainError(f"unknown search mode {search!r}")

    c_star, v_star = _golden(f, lo, hi, xtol=1e-10 if search == "extremizer" else 1e-5)
    scan = np.linspace(lo, hi, 35)[1:-1]
    scan_vals = np.array([f(c) for c in scan])
    j = int(np.argmax(scan_vals))
    scan_agrees = bool(scan_vals[j] <= v_star * (1.0 + 10.0 * tol))
    if not scan_agrees:
        a = scan[max(j - 1, 0)]
        bb = scan[min(j + 1, scan.size - 1)]
        c_star, v_star = _golden(f, a, bb, xtol=1e-10 if search == "extremizer" else 1e-5)
    sol = d_value(c_star)
    return ProblemCResult(c_star=float(np.angle(np.exp(1j * c_star))), value=sol.value, solution=sol,
                          scan_agrees=scan_agrees)


def gap_target_in_E(E: ArcSet, c: float) -> bool:
    return contains(E, c)
