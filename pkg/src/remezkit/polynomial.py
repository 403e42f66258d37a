"""Algebraic polynomials evaluated on the unit circle."""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DomainError


@dataclass(frozen=True, eq=False)
class CirclePolynomial:
    """P(zeta) = A_0 + A_1 zeta + ... + A_n zeta^n with zeta = e^{iz}.

    ``n`` is the formal degree; A_n may vanish only when ``formal=True``.
    """

    coeffs: np.ndarray
    formal: bool = True

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).ravel()
        if c.size == 0:
            raise DomainError("a polynomial needs at least one coefficient")
        if not self.formal and c[-1] == 0:
            raise DomainError("leading coefficient vanishes but formal=False")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def n(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, zeta):
        zeta = np.asarray(zeta, dtype=complex)
        return np.polyval(self.coeffs[::-1], zeta)

    def on_circle(self, x):
        """P(e^{ix}) for real angles x."""
        return _kernels.circle_eval(self.coeffs, x)

    def abs2_on_circle(self, x):
        return _kernels.circle_abs2(self.coeffs, x)

    def scaled(self, factor) -> "CirclePolynomial":
        return CirclePolynomial(self.coeffs * factor, self.formal)

    def rotated(self, alpha: float) -> "CirclePolynomial":
        """Q(zeta) = P(zeta e^{-i alpha}), so Q(e^{i(x+alpha)}) = P(e^{ix})."""
        k = np.arange(self.coeffs.size)
        return CirclePolynomial(self.coeffs * np.exp(-1j * k * alpha), self.formal)

    def to_json(self) -> dict:
        return {"n": self.n, "coeffs": [[float(a.real), float(a.imag)] for a in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "CirclePolynomial":
        try:
            n = int(obj["n"])
            coeffs = [complex(float(re), float(im)) for re, im in obj["coeffs"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed CirclePolynomial JSON: {exc}") from exc
        if len(coeffs) != n + 1:
            raise DomainError(f"expected {n + 1} coefficients, got {len(coeffs)}")
        return cls(np.array(coeffs))


def interpolate_on_roots_of_unity(samples) -> np.ndarray:
    """Coefficients of the degree-(N-1) polynomial through samples at e^{2pi i k/N}."""
    samples = np.asarray(samples, dtype=complex)
    return np.fft.fft(samples) / samples.size
