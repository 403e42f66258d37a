"""Periodic comb domains and the comb map of a finite-gap circle set.

The comb map ``theta`` sends the upper half-plane onto a periodic comb

    Pi = {Im w > 0} minus the vertical slits  omega_k + 2 pi m + i (0, h_k],

with ``theta(z + 2pi) = theta(z) + 2pi`` and ``theta'(z) -> 1`` as
``Im z -> +inf``.  On the real axis the set E (the bands) goes to the real
line and each gap ``(a_j, b_j)`` folds onto the two sides of a slit, the
tip being the image of an interior critical point ``c_j``.

In the disk variable ``zeta = e^{iz}`` the derivative is

    R(zeta) = prod_k (1 - zeta e^{-i c_k}) / sqrt((1 - zeta e^{-i a_k})(1 - zeta e^{-i b_k}))

with principal square roots, which are analytic on |zeta| < 1 and
continuous up to the circle (each radicand has nonnegative real part).
``R(0) = 1`` is the normalisation at infinity.  On the real axis
``R = e^{i Phi} |R|`` in the bands and ``+-i e^{i Phi} |R|`` on the gaps,
with ``Phi = sum (a_k + b_k - 2 c_k) / 4``.  The closure conditions (equal
heights up and down each slit) sum to ``-2 pi sin Phi`` by the mean-value
property of R, so imposing them on every gap also forces Phi = 0.

Real-axis integrals of |R| carry inverse-square-root singularities at the
gap endpoints.  They are computed after the substitution
``x = p + (q - p) sin^2(t/2)``, which removes both endpoint singularities
exactly (the same effect as a Chebyshev-weight Gauss-Jacobi rule), followed
by adaptive Gauss-Legendre on ``t in [0, pi]``.
"""

import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.optimize import brentq

from . import _kernels
from .arcset import ArcSet, normalize
from .closed_form import height_gap
from .errors import (CombError, DomainError, NewtonDivergenceError, NonRegularCombError,
                     QuadratureError, SingularityError)
from .polynomial import CirclePolynomial, interpolate_on_roots_of_unity

TWO_PI = 2.0 * math.pi
GRID_TOL = 1e-6
GAP_FLOOR = 1e-6
QUAD_TOL = 1e-13
_EPS = np.finfo(float).eps


# ---------------------------------------------------------------------------
# comb domains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CombDomain:
    """Slits ``(base, height)`` of a 2pi-periodic comb used with degree ``n``.

    With ``strict`` (the default) every base must lie on the 2pi/n grid.
    Combs computed from arbitrary sets are built with ``strict=False`` and
    report their status through :meth:`is_regular`.
    """

    n: int
    slits: Tuple[Tuple[float, float], ...]
    strict: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        slits = tuple((float(w), float(h)) for w, h in self.slits)
        object.__setattr__(self, "slits", slits)
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"comb degree must be a positive integer, got {self.n}")
        if not slits:
            raise DomainError("a comb needs at least one slit")
        if any(not h > 0 for _, h in slits):
            raise DomainError("slit heights must be positive")
        red = sorted(w % TWO_PI for w, _ in slits)
        gaps = np.diff(red + [red[0] + TWO_PI])
        if len(red) > 1 and np.min(gaps) < 1e-9:
            raise DomainError("slit bases must be distinct modulo 2pi")
        if self.strict and not self.is_regular():
            raise NonRegularCombError(f"slit bases are not on the 2pi/{self.n} grid: "
                                      f"{[w for w, _ in slits]}")

    @property
    def bases(self):
        return np.array([w for w, _ in self.slits])

    @property
    def heights(self):
        return np.array([h for _, h in self.slits])

    def grid_offsets(self):
        step = TWO_PI / self.n
        q = self.bases / step
        return np.abs(q - np.round(q)) * step

    def is_regular(self, tol: float = GRID_TOL) -> bool:
        return bool(np.all(self.grid_offsets() <= tol))

    def with_height(self, index: int, height: float) -> "CombDomain":
        slits = list(self.slits)
        slits[index] = (slits[index][0], float(height))
        return CombDomain(self.n, tuple(slits), strict=self.strict)

    def to_json(self) -> dict:
        return {"n": int(self.n), "slits": [{"base": w, "height": h} for w, h in self.slits]}

    @classmethod
    def from_json(cls, obj, strict: bool = True) -> "CombDomain":
        try:
            slits = tuple((float(s["base"]), float(s["height"])) for s in obj["slits"])
            n = int(obj["n"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed comb JSON: {exc}") from exc
        return cls(n, slits, strict=strict)


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

_GL_X, _GL_W = leggauss(20)


def _gl(f, lo, hi):
    half = 0.5 * (hi - lo)
    return half * np.dot(_GL_W, f(lo + half * (_GL_X + 1.0)))


def _adaptive(f, lo, hi, tol, whole=None, depth=0):
    if whole is None:
        whole = _gl(f, lo, hi)
    mid = 0.5 * (lo + hi)
    left = _gl(f, lo, mid)
    right = _gl(f, mid, hi)
    err = abs(left + right - whole)
    # past the roundoff floor of the panel further splitting cannot help
    if err <= tol or err <= 64 * _EPS * (abs(left) + abs(right)):
        return left + right
    if depth >= 48:
        raise QuadratureError(f"adaptive quadrature did not converge on [{lo}, {hi}]")
    return (_adaptive(f, lo, mid, 0.5 * tol, left, depth + 1)
            + _adaptive(f, mid, hi, 0.5 * tol, right, depth + 1))


# ---------------------------------------------------------------------------
# map parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CombMapParams:
    """Prevertices ``a_j < c_j < b_j`` of each gap, in one period starting at ``a_0``.

    ``omega0`` is the real part of theta on gap 0, so theta(a_0) = omega0
    (approached from the left) and theta(b_0) = omega0 (from the right).
    """

    a: Tuple[float, ...]
    c: Tuple[float, ...]
    b: Tuple[float, ...]
    omega0: float = 0.0
    quad_tol: float = QUAD_TOL

    def __post_init__(self):
        for name in ("a", "c", "b"):
            object.__setattr__(self, name, tuple(float(v) for v in getattr(self, name)))
        if not (len(self.a) == len(self.b) == len(self.c) and self.a):
            raise DomainError("need matching, nonempty prevertex lists")
        if not _ordered(self.a, self.c, self.b):
            raise DomainError("prevertices must satisfy a_0 < c_0 < b_0 < a_1 < ... < b_g < a_0 + 2pi")

    @property
    def n_gaps(self) -> int:
        return len(self.a)

    @cached_property
    def _arrays(self):
        return np.array(self.a), np.array(self.b), np.array(self.c)

    @cached_property
    def phase(self) -> float:
        a, b, c = self._arrays
        return float(np.sum(a + b - 2.0 * c) / 4.0)

    def abs_integral(self, p: float, q: float) -> float:
        """Integral of |R| over the real interval (p, q), p < q."""
        if not q > p:
            if q == p:
                return 0.0
            raise DomainError("integration interval reversed")
        A, B, C = self._arrays
        L = q - p

        def f(t):
            dp = L * np.sin(0.5 * t) ** 2
            dq = L * np.cos(0.5 * t) ** 2
            x = np.where(dp <= dq, p + dp, q - dq)
            num = _sin_half_abs(x, C, p, q, dp, dq)
            den = _sin_half_abs(x, A, p, q, dp, dq) * _sin_half_abs(x, B, p, q, dp, dq)
            return np.prod(num, axis=1) / np.sqrt(np.prod(den, axis=1)) * (0.5 * L * np.sin(t))

        return float(_adaptive(f, 0.0, math.pi, self.quad_tol))

    @cached_property
    def heights_up(self):
        return np.array([self.abs_integral(a, c) for a, c in zip(self.a, self.c)])

    @cached_property
    def heights_down(self):
        return np.array([self.abs_integral(c, b) for c, b in zip(self.c, self.b)])

    @cached_property
    def band_lengths(self):
        nxt = list(self.a[1:]) + [self.a[0] + TWO_PI]
        return np.array([self.abs_integral(b, a) for b, a in zip(self.b, nxt)])

    @cached_property
    def heights(self):
        return 0.5 * (self.heights_up + self.heights_down)

    @cached_property
    def bases(self):
        """Real part of theta on each gap."""
        return self.omega0 + np.concatenate([[0.0], np.cumsum(self.band_lengths[:-1])])

    @cached_property
    def closure_residual(self) -> float:
        return float(np.max(np.abs(self.heights_up - self.heights_down)))

    def band_set(self) -> ArcSet:
        """The set E whose gaps are (a_j, b_j)."""
        return normalize(list(zip(self.a, self.b)))

    def band_measure(self) -> float:
        return TWO_PI - float(np.sum(np.array(self.b) - np.array(self.a)))

    def to_json(self) -> dict:
        return {"a": list(self.a), "c": list(self.c), "b": list(self.b), "omega0": self.omega0}


def _ordered(a, c, b):
    seq = []
    for aj, cj, bj in zip(a, c, b):
        seq += [aj, cj, bj]
    seq.append(a[0] + TWO_PI)
    return all(x < y for x, y in zip(seq, seq[1:]))


def _same_angle(V, x):
    d = np.mod(V - x + math.pi, TWO_PI) - math.pi
    return np.abs(d) < 1e-12


def _sin_half_abs(x, V, p, q, dp, dq):
    # |sin(d/2)| only sees d mod 2pi, so endpoints are matched modulo 2pi
    D = x[:, None] - V[None, :]
    at_p = _same_angle(V, p)
    at_q = _same_angle(V, q)
    if at_p.any():
        D[:, at_p] = dp[:, None]
    if at_q.any():
        D[:, at_q] = -dq[:, None]
    return np.abs(np.sin(0.5 * D))


# ---------------------------------------------------------------------------
# the map
# ---------------------------------------------------------------------------

def _check_prevertex(params, z):
    a, b, _ = params._arrays
    for v in np.concatenate([a, b]):
        d = z - v
        d = d - TWO_PI * round(d.real / TWO_PI)
        if abs(d) < 1e-14:
            raise SingularityError(f"theta' is singular at the prevertex {v}")


def theta_derivative(params: CombMapParams, z):
    """theta'(z) = R(e^{iz}); 2pi-periodic, tends to 1 as Im z grows."""
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(zz.imag < -1e-15):
        raise DomainError("theta' is defined on the closed upper half-plane")
    for v in zz.ravel():
        _check_prevertex(params, v)
    a, b, c = params._arrays
    out = _kernels.comb_kernel(zz, a, b, c)
    return out if np.ndim(z) else complex(out[0])


def _theta_real_scalar(params: CombMapParams, x: float) -> complex:
    a0 = params.a[0]
    m = math.floor((x - a0) / TWO_PI)
    xr = x - TWO_PI * m
    if xr >= a0 + TWO_PI:  # rounding at the period boundary
        xr -= TWO_PI
        m += 1
    xr = max(xr, a0)
    shift = TWO_PI * m
    g = params.n_gaps
    w = params.bases
    nxt = list(params.a[1:]) + [a0 + TWO_PI]
    for j in range(g):
        aj, cj, bj = params.a[j], params.c[j], params.b[j]
        if xr <= bj:
            if xr <= cj:
                return shift + w[j] + 1j * params.abs_integral(aj, xr)
            return shift + w[j] + 1j * params.abs_integral(xr, bj)
        if xr <= nxt[j]:
            w_next = w[j + 1] if j + 1 < g else params.omega0 + TWO_PI
            if xr - bj <= nxt[j] - xr:
                return complex(shift + w[j] + params.abs_integral(bj, xr))
            return complex(shift + w_next - params.abs_integral(xr, nxt[j]))
    raise AssertionError("angle not located in the period")


def _vertical(params, x, y):
    """Integral of theta' along x + i t, t in [0, y]."""
    a, b, c = params._arrays
    tol = params.quad_tol

    def R(t):
        return _kernels.comb_kernel(x + 1j * t, a, b, c)

    y1 = min(y, 1.0)
    # t = y1 u^2 absorbs an inverse-square-root singularity at t = 0
    head = _adaptive(lambda u: R(y1 * u * u) * (2.0 * y1 * u), 0.0, 1.0, tol)
    total = head
    if y > 1.0:
        y2 = min(y, 40.0)  # R - 1 = O(e^{-t}) beyond this point
        total = total + (y - 1.0) + _adaptive(lambda t: R(t) - 1.0, 1.0, y2, tol)
    return 1j * total


def theta_eval(params: CombMapParams, z):
    """theta(z) for z in the closed upper half-plane (scalar or array)."""
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    out = np.empty(zz.shape, dtype=complex)
    for idx, v in np.ndenumerate(zz):
        if v.imag < -1e-15:
            raise DomainError("theta is defined on the closed upper half-plane")
        base = _theta_real_scalar(params, float(v.real))
        out[idx] = base if v.imag <= 0 else base + _vertical(params, float(v.real), float(v.imag))
    return out if np.ndim(z) else complex(out[0])


def theta_inverse_real(params: CombMapParams, w: float) -> float:
    """The band point x with theta(x) = w for real w."""
    m = math.floor((w - params.omega0) / TWO_PI)
    wr = w - TWO_PI * m
    bases = list(params.bases) + [params.omega0 + TWO_PI]
    nxt = list(params.a[1:]) + [params.a[0] + TWO_PI]
    for j in range(params.n_gaps):
        if bases[j] <= wr <= bases[j + 1]:
            lo, hi = params.b[j], nxt[j]
            if wr == bases[j]:
                return lo + TWO_PI * m
            if wr == bases[j + 1]:
                return hi + TWO_PI * m
            fn = lambda x: _theta_real_scalar(params, x).real - wr
            return brentq(fn, lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps) + TWO_PI * m
    raise AssertionError("value not located")


def single_gap_theta_analytic(s: float, z):
    """Closed-form comb map for the gap (-s/2, s/2)."""
    if not 0.0 < s < TWO_PI:
        raise DomainError(f"gap length must lie in (0, 2pi), got {s}")
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    m = np.floor((zz.real + math.pi) / TWO_PI)
    zr = zz - TWO_PI * m
    lam0 = math.tan(s / 4.0)
    zeta = np.exp(1j * zr)
    with np.errstate(divide="ignore", invalid="ignore"):
        lam = 1j * (1.0 - zeta) / (1.0 + zeta)
    # boundary values are limits from the upper half-plane: a rounding
    # residue Im lam = -0 would put the gap on the wrong square-root sheet
    lam = lam.real + 1j * np.where(lam.imag > 0, lam.imag, 0.0)
    near = np.minimum(np.abs(lam - lam0), np.abs(lam + lam0))
    if np.any(near < 1e-10):
        warnings.warn("evaluation within 1e-10 of a branch point", RuntimeWarning, stacklevel=2)
    mu = np.sqrt(lam - lam0) * np.sqrt(lam + lam0) / math.sqrt(1.0 + lam0 * lam0)
    small = np.abs(zeta) < 1e-2
    out = np.empty(zz.shape, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        w = (1j - mu) / (1j + mu)
        naive = -1j * np.log(w)
        # far up the half-plane w ~ zeta underflows; factor it out exactly
        stable = zr - 1j * np.log(-4.0 / ((1.0 + zeta) ** 2 * (1.0 + lam0 * lam0) * (1j + mu) ** 2))
    out[:] = np.where(small, stable, naive)
    # the principal logarithm cuts along Re z = pi; keep Re theta near Re z
    adj = out.real - zr.real
    out = out - TWO_PI * np.where(adj > math.pi, 1.0, 0.0) + TWO_PI * np.where(adj < -math.pi, 1.0, 0.0)
    # the band point opposite the gap is a removable singularity of the chain
    out = np.where(np.isfinite(out), out, zr.real)
    out = out + TWO_PI * m
    return out if np.ndim(z) else complex(out[0])


# ---------------------------------------------------------------------------
# Newton solves
# ---------------------------------------------------------------------------

def _newton(fun, x0, feasible, tol=1e-12, max_iter=60, fd_step=1e-7, floor=1e-9):
    x = np.array(x0, dtype=float)
    r = fun(x)
    nr = float(np.max(np.abs(r)))
    for _ in range(max_iter):
        if nr <= tol:
            return x, nr
        J = np.empty((r.size, x.size))
        for k in range(x.size):
            xp = x.copy()
            xp[k] += fd_step
            if not feasible(xp):
                xp[k] = x[k] - fd_step
                J[:, k] = (r - fun(xp)) / fd_step
            else:
                J[:, k] = (fun(xp) - r) / fd_step
        try:
            dx = np.linalg.solve(J, -r)
        except np.linalg.LinAlgError:
            dx = np.linalg.lstsq(J, -r, rcond=None)[0]
        lam = 1.0
        accepted = False
        for _ in range(21):  # at most 20 halvings
            xt = x + lam * dx
            if feasible(xt):
                try:
                    rt = fun(xt)
                except (QuadratureError, DomainError):
                    rt = None
                if rt is not None and np.max(np.abs(rt)) < nr:
                    x, r, nr = xt, rt, float(np.max(np.abs(rt)))
                    accepted = True
                    break
            lam *= 0.5
        if not accepted:
            if nr <= floor:
                return x, nr  # stalled on the quadrature noise floor
            raise NewtonDivergenceError("damped Newton made no progress", residual=nr)
    if nr <= floor:
        return x, nr
    raise NewtonDivergenceError(f"Newton did not converge in {max_iter} steps", residual=nr)


@dataclass
class SetMapResult:
    params: CombMapParams
    comb: CombDomain
    regular: bool
    closure_residual: float
    dropped_gaps: Tuple[int, ...] = ()


def _period_gaps(E: ArcSet, gap_index: int):
    k = E.n_gaps
    out = []
    start0 = E.gaps[gap_index].start
    for j in range(k):
        g = E.gaps[(gap_index + j) % k]
        s = g.start
        if j and s < start0:
            s += TWO_PI
        out.append((s, s + g.length))
    return out


def solve_prevertices_from_set(n: int, E: ArcSet, gap_index: int = 0) -> SetMapResult:
    """Comb map of a finite-gap set: critical points, heights and bases.

    Gap ``gap_index`` becomes gap 0 of the map, with base 0.  Gaps shorter
    than 1e-6 are treated as deleted and reported in ``dropped_gaps``.
    """
    if E.degenerate or not E.gaps:
        raise DomainError("E must have at least one gap")
    if not 0 <= gap_index < E.n_gaps:
        raise DomainError(f"gap index {gap_index} out of range")
    gaps = _period_gaps(E, gap_index)
    dropped = tuple(j for j, (p, q) in enumerate(gaps) if q - p < GAP_FLOOR)
    if 0 in dropped:
        raise DomainError("the designated gap is shorter than 1e-6")
    if dropped:
        warnings.warn(f"gaps {dropped} shorter than {GAP_FLOOR} treated as deleted", RuntimeWarning,
                      stacklevel=2)
    gaps = [g for j, g in enumerate(gaps) if j not in dropped]
    a = np.array([p for p, _ in gaps])
    b = np.array([q for _, q in gaps])

    def build(c):
        return CombMapParams(tuple(a), tuple(c), tuple(b))

    def feasible(c):
        return bool(np.all(c > a) and np.all(c < b))

    def fun(c):
        P = build(c)
        return P.heights_up - P.heights_down

    c0 = 0.5 * (a + b)
    c, res = _newton(fun, c0, feasible)
    params = build(c)
    comb = CombDomain(n, tuple(zip(params.bases, params.heights)), strict=False)
    return SetMapResult(params=params, comb=comb, regular=comb.is_regular(), closure_residual=res,
                        dropped_gaps=dropped)


def _ordered_slits(comb: CombDomain):
    w0 = comb.bases[0]
    rel = np.mod(comb.bases - w0, TWO_PI)
    rel[0] = 0.0
    order = np.argsort(rel, kind="stable")
    return order, rel[order], comb.heights[order]


def _from_vector(v, g, c0, omega0):
    a = [v[0]]
    b = [v[1]]
    c = [c0]
    for j in range(1, g):
        a.append(v[2 + 3 * (j - 1)])
        c.append(v[3 + 3 * (j - 1)])
        b.append(v[4 + 3 * (j - 1)])
    return a, c, b


def solve_prevertices_from_comb(comb: CombDomain, c0: Optional[float] = None,
                                guess: Optional[CombMapParams] = None) -> CombMapParams:
    """Prevertices realising the comb; the tip of slit 0 is pinned at ``c0``.

    ``c0`` defaults to the base of slit 0.  The returned parameters list the
    gaps in the cyclic order of the slit bases starting from slit 0.  An
    optional ``guess`` (parameters of a nearby comb) replaces the height
    continuation that is otherwise used to reach the comb from tiny slits.
    """
    order, rel, heights = _ordered_slits(comb)
    w0 = float(comb.bases[0])
    pin = w0 if c0 is None else float(c0)
    g = len(rel)
    if g == 1:
        s = height_gap(heights[0])
        if not s < TWO_PI:
            raise CombError("slit too tall: the band set has vanished in double precision")
        return CombMapParams((pin - s / 2,), (pin,), (pin + s / 2,), omega0=w0)

    def build(v):
        a, c, b = _from_vector(v, g, pin, w0)
        return CombMapParams(tuple(a), tuple(c), tuple(b), omega0=w0)

    def feasible(v):
        a, c, b = _from_vector(v, g, pin, w0)
        return _ordered(a, c, b)

    def residual(v, target_h):
        P = build(v)
        up = P.heights_up - target_h
        down = P.heights_down - target_h
        base = (P.bases[1:] - w0) - rel[1:]
        return np.concatenate([up, down, base])

    def to_vector(P):
        v = [P.a[0], P.b[0]]
        for j in range(1, g):
            v += [P.a[j], P.c[j], P.b[j]]
        return np.array(v)

    def small_slits(t):
        a, c, b = [], [], []
        for j in range(g):
            s = height_gap(t * heights[j])
            cj = pin + rel[j]
            a.append(cj - s / 2)
            c.append(cj)
            b.append(cj + s / 2)
        return CombMapParams(tuple(a), tuple(c), tuple(b), omega0=w0)

    if guess is not None and guess.n_gaps == g:
        shifted = CombMapParams(tuple(np.array(guess.a) - guess.c[0] + pin),
                                tuple(np.array(guess.c) - guess.c[0] + pin),
                                tuple(np.array(guess.b) - guess.c[0] + pin), omega0=w0)
        try:
            v, _ = _newton(lambda v: residual(v, heights), to_vector(shifted), feasible)
            return build(v)
        except CombError:
            pass

    # continuation in the slit heights, starting from slits small enough
    # that they do not interact
    gaps_rel = np.diff(np.concatenate([rel, [TWO_PI]]))
    t = min(1.0, 0.05 * float(np.min(gaps_rel)) / float(np.max(heights)))
    v = to_vector(small_slits(t))
    dt = t
    t_done = None
    while True:
        try:
            v = _newton(lambda v: residual(v, t * heights), v, feasible)[0]
        except CombError:
            dt *= 0.5
            if t_done is None or dt < 1e-4:
                raise
            t = t_done + dt
            continue
        t_done = t
        if t >= 1.0:
            break
        dt = min(2.0 * dt, 1.0 - t)
        t = min(1.0, t + dt)
    return build(v)


# ---------------------------------------------------------------------------
# extremizer synthesis
# ---------------------------------------------------------------------------

def _theta_real_many(params, x):
    return np.array([_theta_real_scalar(params, float(v)) for v in np.atleast_1d(x)])


def comb_F(comb: CombDomain, params: CombMapParams, x):
    """F(x) = cos(n theta(x) / 2) on the real axis."""
    return np.cos(0.5 * comb.n * _theta_real_many(params, x))


def extremal_from_comb(comb: CombDomain, params: CombMapParams) -> CirclePolynomial:
    """The polynomial e^{inz/2} cos(n theta(z) / 2) of an n-regular comb."""
    if not comb.is_regular():
        raise NonRegularCombError("the comb is not n-regular: F does not sample a polynomial")
    n = comb.n
    xs = TWO_PI * np.arange(n + 1) / (n + 1)
    vals = np.exp(0.5j * n * xs) * comb_F(comb, params, xs)
    P = CirclePolynomial(interpolate_on_roots_of_unity(vals))
    xt = (np.arange(2 * n + 2) + 0.5) * TWO_PI / (2 * n + 2)
    want = np.exp(0.5j * n * xt) * comb_F(comb, params, xt)
    err = np.max(np.abs(P.on_circle(xt) - want))
    scale = max(np.max(np.abs(want)), np.max(np.abs(vals)), 1.0)
    if err > 1e-6 * scale:
        raise QuadratureError(f"interpolation residual {err:.3e} exceeds 1e-6 of max|T|")
    return P


# ---------------------------------------------------------------------------
# deformations
# ---------------------------------------------------------------------------

@dataclass
class Deformed:
    comb: CombDomain
    E: ArcSet
    params: CombMapParams

    @property
    def measure(self) -> float:
        return self.params.band_measure()


def raise_height(comb: CombDomain, gap_index: int, h: float,
                 guess: Optional[CombMapParams] = None) -> Deformed:
    """Raise slit ``gap_index`` by ``h`` and recover the band set."""
    if h < 0:
        raise DomainError("height increment must be nonnegative")
    new = comb.with_height(gap_index, comb.slits[gap_index][1] + h)
    params = solve_prevertices_from_comb(new, guess=guess)
    return Deformed(comb=new, E=params.band_set(), params=params)


@dataclass
class Equalized:
    h_star: float
    E_star: ArcSet
    comb: CombDomain
    params: CombMapParams


def equalize_measure(comb: CombDomain, target: float, gap_index: int = 0, tol: float = 1e-8) -> Equalized:
    """Height increment of slit ``gap_index`` bringing the band measure to ``target``."""
    base = raise_height(comb, gap_index, 0.0)
    m0 = base.measure
    if target > m0 + tol:
        raise CombError(f"target measure {target} is not below the current measure {m0}")
    if abs(target - m0) <= tol:
        return Equalized(0.0, base.E, base.comb, base.params)
    cache = {"guess": base.params}

    def gap(h):
        d = raise_height(comb, gap_index, h, guess=cache["guess"])
        cache["guess"] = d.params
        return d.measure - target

    hi = 0.5
    while gap(hi) > 0:
        hi *= 2.0
        if hi > 64:
            raise CombError("target measure unreachable")
    h_star = brentq(gap, 0.0, hi, xtol=1e-13, rtol=1e-14, maxiter=200)
    out = raise_height(comb, gap_index, h_star, guess=cache["guess"])
    if abs(out.measure - target) > tol:
        raise CombError(f"equalisation missed the target by {abs(out.measure - target):.3e}")
    return Equalized(h_star, out.E, out.comb, out.params)


def delete_gap(comb: CombDomain, gap_index: int) -> CombDomain:
    """Remove one slit (the zero-height limit)."""
    if len(comb.slits) < 2:
        raise CombError("cannot delete the only slit of a comb")
    if not 0 <= gap_index < len(comb.slits):
        raise DomainError(f"slit index {gap_index} out of range")
    slits = tuple(sl for j, sl in enumerate(comb.slits) if j != gap_index)
    return CombDomain(comb.n, slits, strict=comb.strict)


def comb_band_set(comb: CombDomain) -> ArcSet:
    return solve_prevertices_from_comb(comb).band_set()
