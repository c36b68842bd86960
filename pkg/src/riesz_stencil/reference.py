"""Closed-form Riesz derivatives of the two test families, plus a quadrature oracle.

The Riesz derivative on [0, 1] is ``C_alpha * (left RL + right RL)`` with
``C_alpha = -1 / (2 cos(pi alpha / 2))``; for both families the right part is
the left part evaluated at ``1 - x``.

Polynomial family ``u = x**q (1 - x)**q``: expanding ``(1 - x)**q`` gives
alternating terms, and the left derivative of each power is the usual
``Gamma(p+1)/Gamma(p+1-alpha) x**(p-alpha)``.

Cosine family ``u = cos(2 pi f x)`` on [0, 1]: the left derivative is a
combination of three regularized 1F2 values. The prefactor is
``sqrt(pi) x**(-alpha) / 2**(2-alpha)``; this was checked against the
quadrature oracle, which is the arbiter for these formulas.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass

import mpmath
import numpy as np
import scipy.integrate
import scipy.special

from .errors import ConvergenceError, ValidationError
from .special import compensated_sum, gamma, hyp1f2_regularized

__all__ = [
    "CosineCase",
    "PolynomialCase",
    "cosine_left_rl",
    "cosine_riesz_exact",
    "poly_left_rl",
    "poly_riesz_exact",
    "riesz_constant",
    "riesz_quadrature_oracle",
    "rl_quadrature_oracle",
]


def riesz_constant(alpha: float) -> float:
    """``C_alpha = -1 / (2 cos(pi alpha / 2))``; undefined at ``alpha = 1``."""
    if not 0.0 < alpha < 2.0:
        raise ValidationError(f"reference solutions need alpha in (0, 2), got {alpha!r}")
    if math.isclose(alpha, 1.0, rel_tol=0.0, abs_tol=1e-12):
        raise ValidationError("C_alpha is singular at alpha = 1")
    return -1.0 / (2.0 * math.cos(math.pi * alpha / 2.0))


def _check_x(x: float) -> None:
    if not 0.0 < x < 1.0:
        raise ValidationError(f"closed forms are evaluated for 0 < x < 1, got {x!r}")


@dataclass(frozen=True)
class PolynomialCase:
    """``u(x) = x**q (1 - x)**q`` on [0, 1], zero outside."""

    q: int
    alpha: float

    def __post_init__(self) -> None:
        if int(self.q) != self.q or self.q < 2:
            raise ValidationError("q must be an integer >= 2")
        riesz_constant(self.alpha)

    def u(self, x):
        x = np.asarray(x, dtype=float)
        return x**self.q * (1.0 - x) ** self.q

    def _poly(self) -> np.polynomial.Polynomial:
        x = np.polynomial.Polynomial([0.0, 1.0])
        return x**self.q * (1.0 - x) ** self.q

    def du(self, x):
        return self._poly().deriv(1)(x)

    def d2u(self, x):
        return self._poly().deriv(2)(x)


@dataclass(frozen=True)
class CosineCase:
    """``u(x) = cos(2 pi f x)`` on [0, 1], zero outside."""

    f_cycles: int
    alpha: float

    def __post_init__(self) -> None:
        if int(self.f_cycles) != self.f_cycles or self.f_cycles < 1:
            raise ValidationError("f_cycles must be a positive integer")
        riesz_constant(self.alpha)

    @property
    def omega(self) -> float:
        return 2.0 * math.pi * self.f_cycles

    def u(self, x):
        return np.cos(self.omega * np.asarray(x, dtype=float))

    def du(self, x):
        return -self.omega * np.sin(self.omega * np.asarray(x, dtype=float))

    def d2u(self, x):
        return -self.omega**2 * np.cos(self.omega * np.asarray(x, dtype=float))


def _poly_terms(q: int, alpha: float, x: float) -> list[float]:
    out = []
    for n in range(q + 1):
        p = q + n
        out.append((-1) ** n * math.comb(q, n) * gamma(p + 1) / gamma(p + 1 - alpha) * x ** (p - alpha))
    return out


def poly_left_rl(case: PolynomialCase, x: float) -> float:
    """Left Riemann-Liouville derivative ``0D_x**alpha u`` of the polynomial case."""
    _check_x(x)
    return compensated_sum(_poly_terms(case.q, case.alpha, x))


def _poly_precise(case: PolynomialCase, x: float) -> float:
    with mpmath.workdps(40):
        a, xx = mpmath.mpf(case.alpha), mpmath.mpf(x)
        total = mpmath.fsum(
            (-1) ** n
            * mpmath.binomial(case.q, n)
            * mpmath.gamma(case.q + n + 1)
            / mpmath.gamma(case.q + n + 1 - a)
            * (xx ** (case.q + n - a) + (1 - xx) ** (case.q + n - a))
            for n in range(case.q + 1)
        )
        return float(total * -1 / (2 * mpmath.cos(mpmath.pi * a / 2)))


def poly_riesz_exact(case: PolynomialCase, x: float, *, precise: bool = False) -> float:
    """Riesz derivative of ``x**q (1 - x)**q`` at ``0 < x < 1``.

    The default evaluates the ``2(q+1)`` terms in double precision and sums
    them exactly; the alternating terms still cost a few digits near the
    ends of the interval. ``precise=True`` evaluates everything at 40 digits.
    """
    _check_x(x)
    if precise:
        return _poly_precise(case, x)
    terms = _poly_terms(case.q, case.alpha, x) + _poly_terms(case.q, case.alpha, 1.0 - x)
    return riesz_constant(case.alpha) * compensated_sum(terms)


def cosine_left_rl(case: CosineCase, x: float) -> float:
    """Left Riemann-Liouville derivative of ``cos(2 pi f x)`` on [0, x]."""
    if not x > 0.0:
        raise ValidationError("x must be positive")
    a = case.alpha
    pfx = math.pi * case.f_cycles * x
    z = -(pfx**2)
    t1 = (a - 2.0) * (a - 1.0) * hyp1f2_regularized(1.0, (3 - a) / 2, (4 - a) / 2, z)
    t2 = (2.0 * pfx) ** 2 * (a - 2.5) * hyp1f2_regularized(2.0, (5 - a) / 2, (6 - a) / 2, z)
    t3 = 8.0 * pfx**4 * hyp1f2_regularized(3.0, (7 - a) / 2, (8 - a) / 2, z)
    return math.sqrt(math.pi) * x ** (-a) / 2.0 ** (2.0 - a) * compensated_sum([t1, t2, t3])


def cosine_riesz_exact(case: CosineCase, x: float) -> float:
    """Riesz derivative of the truncated cosine at ``0 < x < 1``."""
    _check_x(x)
    return riesz_constant(case.alpha) * (cosine_left_rl(case, x) + cosine_left_rl(case, 1.0 - x))


def rl_quadrature_oracle(
    u0: float,
    du0: float,
    d2u: Callable[[float], float],
    alpha: float,
    x: float,
    *,
    epsabs: float = 1e-9,
    limit: int = 500,
) -> float:
    """Left RL derivative from two integrations by parts.

    ``u(0) x**-a / Gamma(1-a) + u'(0) x**(1-a) / Gamma(2-a)
    + (1/Gamma(2-a)) int_0^x (x - s)**(1-a) u''(s) ds``.
    The algebraic end-point weight is handled by QUADPACK's QAWS rule.
    """
    if not 0.0 < alpha < 2.0:
        raise ValidationError("alpha must lie in (0, 2)")
    if not x > 0.0:
        raise ValidationError("x must be positive")
    integral, err = scipy.integrate.quad(
        d2u, 0.0, x, weight="alg", wvar=(0.0, 1.0 - alpha), epsabs=epsabs, epsrel=1e-12, limit=limit
    )
    if not err <= max(10 * epsabs, 1e-10 * abs(integral)):
        raise ConvergenceError(f"quadrature error estimate {err:.2e} too large")
    return (
        u0 * x ** (-alpha) * scipy.special.rgamma(1.0 - alpha)
        + du0 * x ** (1.0 - alpha) * scipy.special.rgamma(2.0 - alpha)
        + integral * scipy.special.rgamma(2.0 - alpha)
    )


def riesz_quadrature_oracle(case: PolynomialCase | CosineCase, x: float) -> float:
    """Riesz derivative of ``case`` assembled from two oracle evaluations."""
    _check_x(x)
    a = case.alpha
    left = rl_quadrature_oracle(float(case.u(0.0)), float(case.du(0.0)), case.d2u, a, x)
    right = rl_quadrature_oracle(
        float(case.u(1.0)), -float(case.du(1.0)), lambda s: case.d2u(1.0 - s), a, 1.0 - x
    )
    return riesz_constant(a) * (left + right)
