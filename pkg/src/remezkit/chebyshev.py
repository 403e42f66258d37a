"""Chebyshev polynomials of the first kind on the whole real line."""

import math

import numpy as np

# largest argument of exp() that does not overflow a double
_LOG_MAX = math.log(np.finfo(float).max)


def arccosh1p(x):
    """arccosh for x >= 1, accurate as x -> 1+ (uses sqrt(x-1)*sqrt(x+1))."""
    x = np.asarray(x, dtype=float)
    t = x - 1.0
    return np.log1p(t + np.sqrt(t) * np.sqrt(x + 1.0))


def _arccos_accurate(x):
    # 2*arcsin(sqrt((1-x)/2)) keeps relative accuracy near x = 1
    x = np.asarray(x, dtype=float)
    return np.where(x > 0.5, 2.0 * np.arcsin(np.sqrt(np.maximum((1.0 - x) / 2.0, 0.0))),
                    np.arccos(np.clip(x, -1.0, 1.0)))


def cheb_t(n, x):
    """T_n(x): cos(n arccos x) on [-1, 1], cosh(n arccosh |x|) with parity outside.

    Raises OverflowError when the value is not representable; use
    :func:`cheb_t_log` in that case.
    """
    if n < 0 or int(n) != n:
        raise ValueError(f"degree must be a nonnegative integer, got {n}")
    n = int(n)
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    inner = ax <= 1.0
    out = np.empty(x.shape, dtype=float)
    if np.any(inner):
        out[inner] = np.cos(n * _arccos_accurate(x[inner]))
    outer = ~inner
    if np.any(outer):
        arg = n * arccosh1p(ax[outer])
        if np.any(arg > _LOG_MAX + math.log(2.0)):
            raise OverflowError("T_n(x) exceeds the double range; use cheb_t_log")
        val = np.cosh(arg)
        if n % 2:
            val = np.where(x[outer] < 0, -val, val)
        out[outer] = val
    if out.ndim == 0:
        return float(out)
    return out


def cheb_t_log(n, x):
    """log T_n(x) for x >= 1 as n*arccosh(x) + log((1 + exp(-2n*arccosh x))/2)."""
    if n < 1 or int(n) != n:
        raise ValueError(f"degree must be a positive integer, got {n}")
    x = np.asarray(x, dtype=float)
    if np.any(x < 1.0):
        raise ValueError("cheb_t_log requires x >= 1")
    u = n * arccosh1p(x)
    out = u + np.log1p(np.exp(-2.0 * u)) - math.log(2.0)
    if out.ndim == 0:
        return float(out)
    return out
