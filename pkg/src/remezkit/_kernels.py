"""Hot numeric kernels.

Every kernel exists twice: a numba ``@njit`` version and a pure-numpy
version with identical semantics.  The active backend is picked once at
import time; set ``REMEZKIT_NO_JIT=1`` to force the numpy path (numba is
also skipped automatically when it cannot be imported).

Both implementations are importable as ``numpy_impl`` and ``numba_impl``
(the latter is ``None`` without numba) so tests and the benchmark can
compare them directly.
"""

import os
import types

import numpy as np

TWO_PI = 2.0 * np.pi


def _jit_requested():
    return os.environ.get("REMEZKIT_NO_JIT", "").strip().lower() not in ("1", "true", "yes")


try:  # pragma: no cover - import guard
    import numba

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    _HAVE_NUMBA = False


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------

def _np_circle_eval(coeffs, x):
    zeta = np.exp(1j * np.asarray(x, dtype=np.float64))
    out = np.zeros(zeta.shape, dtype=np.complex128)
    for a in coeffs[::-1]:
        out = out * zeta + a
    return out


def _np_circle_abs2(coeffs, x):
    v = _np_circle_eval(coeffs, x)
    return v.real * v.real + v.imag * v.imag


def _np_bisect_level(coeffs, lo, hi, level2, iters):
    lo = np.array(lo, dtype=np.float64)
    hi = np.array(hi, dtype=np.float64)
    glo = _np_circle_abs2(coeffs, lo) - level2
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        gm = _np_circle_abs2(coeffs, mid) - level2
        same = (gm > 0) == (glo > 0)
        lo = np.where(same, mid, lo)
        glo = np.where(same, gm, glo)
        hi = np.where(same, hi, mid)
    return 0.5 * (lo + hi)


_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0


def _np_golden_max(coeffs, lo, hi, iters):
    a = np.array(lo, dtype=np.float64)
    b = np.array(hi, dtype=np.float64)
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1 = _np_circle_abs2(coeffs, x1)
    f2 = _np_circle_abs2(coeffs, x2)
    for _ in range(iters):
        left = f1 >= f2  # keep [a, x2]; ties prefer the smaller angle
        na = np.where(left, a, x1)
        nb = np.where(left, x2, b)
        nx1 = np.where(left, nb - _INVPHI * (nb - na), x2)
        nx2 = np.where(left, x1, na + _INVPHI * (nb - na))
        fnew = _np_circle_abs2(coeffs, np.where(left, nx1, nx2))
        f1, f2 = np.where(left, fnew, f2), np.where(left, f1, fnew)
        a, b, x1, x2 = na, nb, nx1, nx2
    xm = 0.5 * (a + b)
    return xm, _np_circle_abs2(coeffs, xm)


def _np_price_bland(A, x, b, tol, skip):
    d = b - A @ x
    cand = np.flatnonzero((d < -tol) & ~skip)
    if cand.size == 0:
        return -1, 0.0
    j = int(cand[0])
    return j, float(d[j])


def _np_price_dantzig(A, x, b, tol, skip):
    d = b - A @ x
    d = np.where(skip, 0.0, d)
    j = int(np.argmin(d))
    if d[j] < -tol:
        return j, float(d[j])
    return -1, 0.0


def _np_one_minus_exp(u):
    # 1 - exp(iu) without cancellation near u = 0 (mod 2pi)
    u = u - TWO_PI * np.round(u.real / TWO_PI)
    return -2j * np.sin(0.5 * u) * np.exp(0.5j * u)


def _np_comb_kernel(z, a, b, c):
    z = np.asarray(z, dtype=np.complex128)
    out = np.ones(z.shape, dtype=np.complex128)
    for k in range(len(a)):
        out = out * (_np_one_minus_exp(z - c[k])
                     / np.sqrt(_np_one_minus_exp(z - a[k]))
                     / np.sqrt(_np_one_minus_exp(z - b[k])))
    return out


numpy_impl = types.SimpleNamespace(
    name="numpy",
    circle_eval=_np_circle_eval,
    circle_abs2=_np_circle_abs2,
    bisect_level=_np_bisect_level,
    golden_max=_np_golden_max,
    price_bland=_np_price_bland,
    price_dantzig=_np_price_dantzig,
    comb_kernel=_np_comb_kernel,
)


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

def _build_numba_impl():
    njit = numba.njit(cache=True, fastmath=False)

    @njit
    def _horner(coeffs, xi):
        zeta = np.exp(1j * xi)
        acc = 0j
        for k in range(coeffs.shape[0] - 1, -1, -1):
            acc = acc * zeta + coeffs[k]
        return acc

    @njit
    def circle_eval(coeffs, x):
        out = np.empty(x.shape[0], dtype=np.complex128)
        for i in range(x.shape[0]):
            out[i] = _horner(coeffs, x[i])
        return out

    @njit
    def _abs2(coeffs, xi):
        v = _horner(coeffs, xi)
        return v.real * v.real + v.imag * v.imag

    @njit
    def circle_abs2(coeffs, x):
        out = np.empty(x.shape[0], dtype=np.float64)
        for i in range(x.shape[0]):
            out[i] = _abs2(coeffs, x[i])
        return out

    @njit
    def bisect_level(coeffs, lo, hi, level2, iters):
        out = np.empty(lo.shape[0], dtype=np.float64)
        for i in range(lo.shape[0]):
            a = lo[i]
            b = hi[i]
            ga = _abs2(coeffs, a) - level2
            for _ in range(iters):
                m = 0.5 * (a + b)
                gm = _abs2(coeffs, m) - level2
                if (gm > 0) == (ga > 0):
                    a = m
                    ga = gm
                else:
                    b = m
            out[i] = 0.5 * (a + b)
        return out

    invphi = _INVPHI

    @njit
    def golden_max(coeffs, lo, hi, iters):
        xs = np.empty(lo.shape[0], dtype=np.float64)
        fs = np.empty(lo.shape[0], dtype=np.float64)
        for i in range(lo.shape[0]):
            a = lo[i]
            b = hi[i]
            x1 = b - invphi * (b - a)
            x2 = a + invphi * (b - a)
            f1 = _abs2(coeffs, x1)
            f2 = _abs2(coeffs, x2)
            for _ in range(iters):
                if f1 >= f2:
                    b = x2
                    x2 = x1
                    f2 = f1
                    x1 = b - invphi * (b - a)
                    f1 = _abs2(coeffs, x1)
                else:
                    a = x1
                    x1 = x2
                    f1 = f2
                    x2 = a + invphi * (b - a)
                    f2 = _abs2(coeffs, x2)
            xm = 0.5 * (a + b)
            xs[i] = xm
            fs[i] = _abs2(coeffs, xm)
        return xs, fs

    @njit
    def price_bland(A, x, b, tol, skip):
        m = A.shape[1]
        for j in range(A.shape[0]):
            if skip[j]:
                continue
            s = b[j]
            for k in range(m):
                s -= A[j, k] * x[k]
            if s < -tol:
                return j, s
        return -1, 0.0

    @njit
    def price_dantzig(A, x, b, tol, skip):
        m = A.shape[1]
        best = -1
        bestd = -tol
        for j in range(A.shape[0]):
            if skip[j]:
                continue
            s = b[j]
            for k in range(m):
                s -= A[j, k] * x[k]
            if s < bestd:
                bestd = s
                best = j
        if best < 0:
            return -1, 0.0
        return best, bestd

    two_pi = TWO_PI

    @njit
    def _ome(u):
        u = u - two_pi * np.round(u.real / two_pi)
        return -2j * np.sin(0.5 * u) * np.exp(0.5j * u)

    @njit
    def comb_kernel(z, a, b, c):
        out = np.empty(z.shape[0], dtype=np.complex128)
        for i in range(z.shape[0]):
            acc = 1.0 + 0j
            zi = z[i]
            for k in range(a.shape[0]):
                acc = acc * _ome(zi - c[k]) / np.sqrt(_ome(zi - a[k])) / np.sqrt(_ome(zi - b[k]))
            out[i] = acc
        return out

    return types.SimpleNamespace(
        name="numba",
        circle_eval=circle_eval,
        circle_abs2=circle_abs2,
        bisect_level=bisect_level,
        golden_max=golden_max,
        price_bland=price_bland,
        price_dantzig=price_dantzig,
        comb_kernel=comb_kernel,
    )


numba_impl = _build_numba_impl() if _HAVE_NUMBA else None

backend = numba_impl if (numba_impl is not None and _jit_requested()) else numpy_impl


# ---------------------------------------------------------------------------
# dtype-normalizing front ends used by the rest of the package
# ---------------------------------------------------------------------------

def _writable(a):
    # numba compiles a separate specialisation for read-only buffers
    return a if a.flags.writeable else a.copy()


def _f64(x):
    return _writable(np.ascontiguousarray(np.atleast_1d(np.asarray(x, dtype=np.float64)).ravel()))


def _c128(x):
    return _writable(np.ascontiguousarray(np.atleast_1d(np.asarray(x, dtype=np.complex128)).ravel()))


def circle_eval(coeffs, x):
    """Values of sum_k coeffs[k] * exp(i k x) on a 1-d array of angles."""
    shape = np.shape(x)
    return backend.circle_eval(_c128(coeffs), _f64(x)).reshape(shape)


def circle_abs2(coeffs, x):
    shape = np.shape(x)
    return backend.circle_abs2(_c128(coeffs), _f64(x)).reshape(shape)


def bisect_level(coeffs, lo, hi, level2, iters=60):
    """Roots of |P(e^{ix})|^2 - level2 inside sign-changing brackets."""
    return backend.bisect_level(_c128(coeffs), _f64(lo), _f64(hi), float(level2), int(iters))


def golden_max(coeffs, lo, hi, iters=60):
    """Golden-section maximisation of |P(e^{ix})|^2 on each bracket."""
    return backend.golden_max(_c128(coeffs), _f64(lo), _f64(hi), int(iters))


def price(A, x, b, tol, skip, rule="bland"):
    fn = backend.price_bland if rule == "bland" else backend.price_dantzig
    j, d = fn(A, _f64(x), b, float(tol), skip)
    return int(j), float(d)


def comb_kernel(z, a, b, c):
    """Derivative of the comb map at z: prod (1-e^{i(z-c)}) / sqrt(1-e^{i(z-a)}) / sqrt(1-e^{i(z-b)})."""
    shape = np.shape(z)
    return backend.comb_kernel(_c128(z), _f64(a), _f64(b), _f64(c)).reshape(shape)
