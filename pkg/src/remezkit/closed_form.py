"""Closed-form sharp Remez constants and extremal polynomials.

The trigonometric constant at degree n is the algebraic constant at degree
2n (a trigonometric polynomial Q_n times e^{inx} is an algebraic P_{2n}),
and both are evaluated through the same code path.
"""

import math
from dataclasses import dataclass

import numpy as np

from .chebyshev import cheb_t
from .errors import ConditioningError, DomainError
from .polynomial import CirclePolynomial, interpolate_on_roots_of_unity

TWO_PI = 2.0 * math.pi
LARGE_GAP_CONSTANT = 17.0


@dataclass(frozen=True)
class SharpConstant:
    kind: str
    n: int
    parameter: float
    value: float
    log_value: float

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n, "parameter": self.parameter,
                "value": self.value, "log_value": self.log_value}


def _check_gap(s):
    if not 0.0 < s < TWO_PI:
        raise DomainError(f"gap length s must satisfy 0 < s < 2pi, got {s}")


def _check_degree(n):
    if int(n) != n or n < 1:
        raise DomainError(f"degree must be a positive integer, got {n}")


def _constant(kind, n, parameter, u):
    """SharpConstant with value cosh(u) = T_d(x) for u = d arccosh(x)."""
    log_value = u + math.log1p(math.exp(-2.0 * u)) - math.log(2.0)
    value = math.cosh(u) if u < 710.0 else math.inf
    return SharpConstant(kind, int(n), float(parameter), value, log_value)


def remez_constant_algebraic(n: int, s: float) -> SharpConstant:
    """T_n(sec(s/4)): sup over T of |P_n| when |P_n| <= 1 on a set of measure 2pi - s.

    arccosh(sec t) = atanh(sin t), which stays accurate as s -> 0.
    """
    _check_degree(n)
    _check_gap(s)
    return _constant("algebraic", n, s, int(n) * math.atanh(math.sin(s / 4.0)))


def remez_constant_trig(n: int, s: float) -> SharpConstant:
    """T_{2n}(sec(s/4)) for trigonometric polynomials of degree n."""
    _check_degree(n)
    alg = remez_constant_algebraic(2 * int(n), s)
    return SharpConstant("trigonometric", int(n), s, alg.value, alg.log_value)


def remez_constant_interval(n: int, a: float) -> SharpConstant:
    """T_{2n}(csc(a/2)): trigonometric bound by the sup-norm on [-a, a].

    arccosh(csc t) = atanh(cos t).
    """
    _check_degree(n)
    if not 0.0 < a <= math.pi:
        raise DomainError(f"half-length a must satisfy 0 < a <= pi, got {a}")
    u = 0.0 if a == math.pi else 2 * int(n) * math.atanh(math.cos(a / 2.0))
    return _constant("interval", n, a, u)


def gap_height(s: float) -> float:
    """Slit height h0 of the single-gap comb: cosh(h0/2) = sec(s/4).

    Evaluated as 2 atanh(sin(s/4)), the same number without the cancellation
    of arccosh near 1.
    """
    _check_gap(s)
    return 2.0 * math.atanh(math.sin(s / 4.0))


def height_gap(h0: float) -> float:
    """Inverse of :func:`gap_height`: s = 4 arcsin(tanh(h0/2))."""
    if not h0 >= 0.0:
        raise DomainError(f"height must be nonnegative, got {h0}")
    return 4.0 * math.asin(math.tanh(h0 / 2.0))


def extremal_eval(n, s, c0=0.0, c1=0.0, z=0.0):
    """e^{i(nz/2 + c1)} T_n(sec(s/4) cos((z - c0)/2)) for real angles z."""
    _check_gap(s)
    z = np.asarray(z, dtype=float)
    beta = 1.0 / math.cos(s / 4.0)
    return np.exp(1j * (n * z / 2.0 + c1)) * cheb_t(int(n), beta * np.cos((z - c0) / 2.0))


def extremal_coeffs(n: int, s: float, c0: float = 0.0, c1: float = 0.0) -> CirclePolynomial:
    """Coefficients of the extremal polynomial, by interpolation at roots of unity."""
    _check_degree(n)
    _check_gap(s)
    n = int(n)
    z = TWO_PI * np.arange(n + 1) / (n + 1)
    coeffs = interpolate_on_roots_of_unity(extremal_eval(n, s, 0.0, 0.0, z))
    if c0 or c1:
        k = np.arange(n + 1)
        coeffs = coeffs * np.exp(-1j * k * c0) * np.exp(1j * (c1 + n * c0 / 2.0))
    poly = CirclePolynomial(coeffs)

    zc = TWO_PI * (np.arange(2 * n + 2) + 0.5) / (2 * n + 2)
    resid = np.max(np.abs(poly.on_circle(zc) - extremal_eval(n, s, c0, c1, zc)))
    scale = remez_constant_algebraic(n, s).value
    if not resid <= 1e-9 * scale:
        raise ConditioningError(f"interpolation residual {resid:.3e} exceeds 1e-9 * {scale:.6g}")
    return poly


def comparison_envelopes(n: int, s: float) -> dict:
    """Previously known bounds and the small-gap asymptotic for the trig constant C(n, s)."""
    _check_degree(n)
    _check_gap(s)
    log_large = 2 * n * math.log(LARGE_GAP_CONSTANT / (TWO_PI - s))
    logs = {
        "asymptotic": math.log1p((n * s) ** 2 / 8.0),
        "erdelyi": 4.0 * n * s,
        "ganzburg": 2.0 * n * s,
        "large_gap": log_large,
    }
    out = {}
    for key, lv in logs.items():
        out[key] = math.exp(lv) if lv < 709.0 else math.inf
    out["asymptotic"] = 1.0 + (n * s) ** 2 / 8.0
    out["log"] = logs
    return out
