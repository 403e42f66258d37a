"""Dense linear programming by the revised simplex method.

Solves ``max c.x  s.t.  A x <= b`` with free ``x`` by running the simplex
method on the dual ``min b.y  s.t.  A^T y = c, y >= 0``.  The dual basis
is a square matrix of the size of ``x``, which is small for the oracle's
problems (2(n+1) unknowns) while the number of constraints is large.

Appending rows to ``A`` keeps a previous optimal basis dual-feasible, so
the exchange loop in :mod:`remezkit.oracle` warm-starts every re-solve.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InfeasibleError, LPDegeneracyError, UnboundedError

REFACTOR_EVERY = 25
PRICE_TOL = 1e-9
PIVOT_TOL = 1e-9
HARRIS_TOL = 1e-9
EPS = np.finfo(float).eps
DEGENERATE_SWITCH = 30


@dataclass
class LPResult:
    x: np.ndarray
    value: float
    basis: np.ndarray  # constraint indices carried by the dual basis (-1: redundant row)
    duals: np.ndarray
    iterations: int
    dual_value: float


def _as_matrix(constraints):
    rows = [np.asarray(v, dtype=float) for v, _ in constraints]
    bounds = [float(beta) for _, beta in constraints]
    return np.vstack(rows), np.asarray(bounds)


class _DualSimplex:
    def __init__(self, c, A, b, rule):
        self.c = c
        self.A = A
        self.b = b
        self.m = c.size
        self.N = A.shape[0]
        self.rule = rule
        self.sign = np.where(c >= 0, 1.0, -1.0)
        self.iterations = 0

    def column(self, j):
        if j < self.N:
            return self.A[j]
        e = np.zeros(self.m)
        e[j - self.N] = self.sign[j - self.N]
        return e

    def refactor(self):
        B = np.column_stack([self.column(j) for j in self.basis])
        self.Binv = np.linalg.inv(B)
        self.yB = self.Binv @ self.c

    def cost(self, j, phase):
        if j >= self.N:
            return 1.0 if phase == 1 else 0.0
        return 0.0 if phase == 1 else self.b[j]

    def run(self, phase, max_iter):
        zeros = np.zeros(self.N)
        bvec = zeros if phase == 1 else self.b
        rule = self.rule
        degenerate_run = 0
        since_refactor = 0
        amax = np.max(np.abs(self.A)) if self.A.size else 1.0
        while True:
            if self.iterations >= max_iter:
                raise LPDegeneracyError(f"simplex did not terminate in {max_iter} pivots")
            cB = np.array([self.cost(j, phase) for j in self.basis])
            pi = self.Binv.T @ cB
            skip = np.zeros(self.N, dtype=bool)
            real = self.basis[self.basis < self.N]
            skip[real] = True
            scale = np.max(np.abs(pi)) * amax
            if phase == 1:
                tol = PRICE_TOL * (1.0 + scale)
            else:
                # violations are measured against b; A.x contributes roundoff only
                tol = PRICE_TOL * (1.0 + np.max(np.abs(bvec))) + 64 * EPS * self.m * scale
            active_rule = "bland" if rule == "bland" or degenerate_run >= DEGENERATE_SWITCH else "dantzig"
            j, _ = _kernels.price(self.A, pi, bvec, tol, skip, active_rule)
            if j < 0:
                return
            w = self.Binv @ self.A[j]
            piv_tol = PIVOT_TOL * max(1.0, np.max(np.abs(w)))
            cand = np.flatnonzero(w > piv_tol)
            if cand.size == 0 and since_refactor:
                # a stale inverse can hide the ratio-test row; retry on a fresh one
                self.refactor()
                since_refactor = 0
                continue
            if cand.size == 0:
                if phase == 1:
                    raise LPDegeneracyError("phase-1 dual problem reported unbounded")
                raise InfeasibleError("dual unbounded: the constraints are infeasible")
            # Harris two-pass ratio test: relax the bound by HARRIS_TOL, then
            # take the largest pivot among the rows that block within it
            # (smallest basic index on exact ties, as in Bland's rule)
            wc = w[cand]
            tmax = np.min((self.yB[cand] + HARRIS_TOL) / wc)
            block = cand[self.yB[cand] / wc <= tmax]
            wb = w[block]
            top = block[wb >= wb.max() * (1.0 - 1e-12)]
            r = int(top[np.argmin(self.basis[top])])
            t = max(self.yB[r] / w[r], 0.0)
            degenerate_run = degenerate_run + 1 if t <= 1e-14 * (1.0 + np.max(np.abs(self.yB))) else 0
            # entries skipped by the pivot tolerance may dip below zero by roundoff
            self.yB = np.maximum(self.yB - t * w, 0.0)
            self.yB[r] = t
            piv = w[r]
            row = self.Binv[r] / piv
            self.Binv = self.Binv - np.outer(w, row)
            self.Binv[r] = row
            self.basis[r] = j
            self.iterations += 1
            since_refactor += 1
            if since_refactor >= REFACTOR_EVERY:
                self.refactor()
                since_refactor = 0

    def drive_out_artificials(self):
        for r in range(self.m):
            if self.basis[r] < self.N:
                continue
            row = self.A @ self.Binv[r]
            row[self.basis[self.basis < self.N]] = 0.0
            j = int(np.argmax(np.abs(row)))
            if abs(row[j]) <= 1e-9 * max(1.0, np.max(np.abs(row))) or row[j] == 0.0:
                continue  # redundant equality row; the artificial stays at zero
            self.basis[r] = j
            self.refactor()


def lp_solve(objective, A, b=None, basis=None, rule="bland", max_iter=None) -> LPResult:
    """Maximise ``objective . x`` subject to ``A x <= b``.

    ``A`` may also be a list of ``(vector, bound)`` pairs, with ``b`` omitted.
    ``basis`` is an optional warm start: the ``basis`` field of an earlier
    :class:`LPResult` for a problem whose rows are a prefix of ``A``.
    ``rule`` is ``"bland"`` (smallest-index entering column throughout) or
    ``"dantzig"`` (most violated constraint, falling back to Bland's rule
    after a run of degenerate pivots).
    """
    c = np.asarray(objective, dtype=float).ravel()
    if b is None:
        A, b = _as_matrix(A)
    A = np.ascontiguousarray(np.asarray(A, dtype=float))
    b = np.ascontiguousarray(np.asarray(b, dtype=float).ravel())
    if A.ndim != 2 or A.shape[1] != c.size or A.shape[0] != b.size:
        raise ValueError("inconsistent LP dimensions")
    if rule not in ("bland", "dantzig"):
        raise ValueError(f"unknown pivot rule {rule!r}")
    m, N = c.size, A.shape[0]
    if max_iter is None:
        max_iter = 20000 + 20 * (N + m)

    solver = _DualSimplex(c, A, b, rule)
    warm = basis is not None and len(basis) == m
    if warm:
        solver.basis = np.array([j if j >= 0 else N + i for i, j in enumerate(basis)], dtype=np.int64)
        try:
            solver.refactor()
            warm = np.all(solver.yB >= -1e-9 * (1.0 + np.max(np.abs(solver.yB))))
        except np.linalg.LinAlgError:
            warm = False
    if not warm:
        solver.basis = np.arange(N, N + m, dtype=np.int64)
        solver.Binv = np.diag(solver.sign)
        solver.yB = np.abs(c)
        if np.any(c != 0):
            solver.run(1, max_iter)
            art = solver.basis >= N
            infeas = np.sum(solver.yB[art]) if np.any(art) else 0.0
            if infeas > 1e-9 * (1.0 + np.max(np.abs(c))):
                raise UnboundedError("objective is unbounded above on the constraint set")
        solver.drive_out_artificials()
    solver.yB = np.maximum(solver.yB, 0.0)
    solver.run(2, max_iter)
    solver.refactor()

    cB = np.array([solver.cost(j, 2) for j in solver.basis])
    # basic columns of the dual are tight primal constraints: x solves B^T x = b_B
    x = solver.Binv.T @ cB
    value = float(c @ x)
    dual_value = float(cB @ solver.yB)
    gap = abs(value - dual_value)
    if gap > 1e-9 * (1.0 + abs(value)):
        raise LPDegeneracyError(f"duality gap {gap:.3e} after termination")
    out_basis = np.where(solver.basis < N, solver.basis, -1)
    return LPResult(x=x, value=value, basis=out_basis, duals=solver.yB.copy(),
                    iterations=solver.iterations, dual_value=dual_value)
