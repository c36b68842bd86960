"""Small numerical kernels used by the filter builder and the reference solutions.

Gamma and compensated summation are thin wrappers over the standard library.
The regularized hypergeometric series is summed term by term; for large
negative arguments the alternating terms grow to roughly ``exp(2*sqrt(|z|))``
before decaying, so the sum is carried out at a working precision raised by
the number of digits that cancellation will destroy.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import ConvergenceError, SymmetryError, ValidationError

__all__ = [
    "DftPlan",
    "compensated_sum",
    "dft_odd",
    "gamma",
    "hyp1f2_regularized",
    "idft_odd",
    "pochhammer",
]


def gamma(x: float) -> float:
    """Gamma function for positive real arguments."""
    if not x > 0.0:
        raise ValidationError(f"gamma is only defined here for x > 0, got {x!r}")
    return math.gamma(x)


def pochhammer(a: float, k: int) -> float:
    """Rising factorial ``(a)_k = a (a+1) ... (a+k-1)``."""
    if k < 0:
        raise ValidationError("pochhammer needs k >= 0")
    out = 1.0
    for j in range(k):
        out *= a + j
    return out


def compensated_sum(values: Iterable[float]) -> float:
    """Sum floats without accumulating rounding error."""
    return math.fsum(values)


def _extra_digits(z: float) -> int:
    # peak term of the alternating series ~ exp(2 sqrt|z|)
    if z >= 0.0:
        return 0
    return int(math.ceil(2.0 * math.sqrt(-z) / math.log(10.0)))


def hyp1f2_regularized(
    a: float,
    b1: float,
    b2: float,
    z: float,
    *,
    max_terms: int = 500,
) -> float:
    r"""Regularized :math:`{}_1\tilde F_2(a; b_1, b_2; z)`.

    Sums ``t_k = (a)_k z^k / (Gamma(b1+k) Gamma(b2+k) k!)`` with the forward
    recurrence ``t_{k+1} = t_k (a+k) z / ((b1+k)(b2+k)(k+1))`` starting from
    ``t_0 = 1/(Gamma(b1) Gamma(b2))``. When a ``b_i`` is a non-positive
    integer the leading terms vanish and the sum starts at the first
    non-zero term instead.

    Raises :class:`ConvergenceError` if more than ``max_terms`` terms are needed.
    """
    if z == 0.0:
        return float(mpmath.rgamma(b1) * mpmath.rgamma(b2))

    dps = 20 + _extra_digits(z)
    with mpmath.workdps(dps):
        zz = mpmath.mpf(z)
        aa, bb1, bb2 = mpmath.mpf(a), mpmath.mpf(b1), mpmath.mpf(b2)
        k0 = max([0] + [int(-b) + 1 for b in (b1, b2) if b <= 0 and b == int(b)])
        term = (
            mpmath.rf(aa, k0) * zz**k0 * mpmath.rgamma(bb1 + k0) * mpmath.rgamma(bb2 + k0)
            / mpmath.factorial(k0)
        )
        terms = [term]
        eps = mpmath.mpf(10) ** (-dps + 2)
        # the series only starts decaying once k exceeds ~sqrt|z|
        k_peak = int(math.sqrt(abs(z))) + 1
        partial = term
        for k in range(k0, k0 + max_terms):
            term = term * (aa + k) * zz / ((bb1 + k) * (bb2 + k) * (k + 1))
            terms.append(term)
            partial += term
            if k >= k_peak and abs(term) <= eps * abs(partial):
                break
            if term == 0 and k >= k_peak:
                break
        else:
            raise ConvergenceError(
                f"1F2 series did not converge within {max_terms} terms (z={z})"
            )
        return float(mpmath.fsum(terms))


@dataclass(frozen=True)
class DftPlan:
    """Length of an odd-size discrete Fourier transform."""

    length: int

    def __post_init__(self) -> None:
        if self.length < 1 or self.length % 2 == 0:
            raise ValidationError(f"DFT length must be a positive odd integer, got {self.length}")


def dft_odd(coeffs: Sequence[float] | np.ndarray, plan: DftPlan) -> np.ndarray:
    """Forward transform ``X_m = sum_n c_n exp(-i 2 pi m n / L)`` after zero padding."""
    c = np.asarray(coeffs, dtype=float)
    if c.ndim != 1 or c.size > plan.length:
        raise ValidationError(f"need at most {plan.length} coefficients, got {c.size}")
    return np.fft.fft(c, plan.length)


def idft_odd(spectrum: Sequence[complex] | np.ndarray, plan: DftPlan, *, rtol: float = 1e-12) -> np.ndarray:
    """Inverse transform of a conjugate-symmetric spectrum; returns the real part.

    Raises :class:`SymmetryError` when an imaginary residue exceeds
    ``rtol`` times the largest output magnitude.
    """
    x = np.asarray(spectrum, dtype=complex)
    if x.shape != (plan.length,):
        raise ValidationError(f"spectrum must have length {plan.length}, got {x.shape}")
    out = np.fft.ifft(x)
    scale = max(float(np.max(np.abs(out))), np.finfo(float).tiny)
    residue = float(np.max(np.abs(out.imag)))
    if residue > rtol * scale:
        raise SymmetryError(f"imaginary residue {residue:.3e} exceeds {rtol:g} x {scale:.3e}")
    return out.real.copy()
