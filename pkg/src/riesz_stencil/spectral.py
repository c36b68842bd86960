"""Frequency-domain diagnostics of the filtered operator.

``F(x) = |sinc(x/2)|**alpha * G(x)`` is the operator response divided by the
exact ``|w|**alpha``; ``1 - F`` is the relative spectral error. Near the
origin ``1 - F`` is far below rounding level of ``F`` itself, so it is taken
from the product Maclaurin series with the orders the filter cancels
dropped. ``r(x) = log2((1 - F(x)) / (1 - F(x/2)))`` tends to ``N``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from os import PathLike

import numpy as np

from .errors import ConvergenceError, InstabilityError
from .filters import Filter, fractional_power_series_miller, sinc_maclaurin
from .stencil import RIESZ_SIGN, Stencil, operator_matrix

__all__ = [
    "ConvergenceRateCurve",
    "EigenReport",
    "PositivityReport",
    "ResponseCurve",
    "default_grid",
    "eigen_bound_estimate",
    "filter_response",
    "maclaurin_residual",
    "one_minus_response",
    "operator_eigen_extremes",
    "positivity_check",
    "rate_curve",
    "read_curve",
    "relative_response",
    "response_curve",
    "response_series",
    "spectral_rate",
    "write_curve",
]

_SERIES_TERMS = 60
# below this |1 - F| the direct evaluation has lost too many digits
_DIRECT_THRESHOLD = 1e-4


def filter_response(filt: Filter, x: float | np.ndarray) -> float | np.ndarray:
    """``g_0 + 2 sum_m g_m cos(m x)``."""
    xs = np.asarray(x, dtype=float)
    g = filt.coeffs
    m = np.arange(1, g.size)
    out = g[0] + 2.0 * np.tensordot(np.cos(np.multiply.outer(xs, m)), g[1:], axes=([-1], [0]))
    return float(out) if np.ndim(out) == 0 else out


def _sinc_half(x: np.ndarray) -> np.ndarray:
    # numpy's sinc is sin(pi t)/(pi t)
    return np.sinc(x / (2.0 * np.pi))


def relative_response(filt: Filter, x: float | np.ndarray, alpha: float | None = None) -> float | np.ndarray:
    """``|sinc(x/2)|**alpha * G(x)``; exactly 1 at ``x = 0``."""
    a = filt.alpha if alpha is None else alpha
    xs = np.asarray(x, dtype=float)
    out = np.abs(_sinc_half(xs)) ** a * filter_response(filt, xs)
    return float(out) if np.ndim(out) == 0 else out


def response_series(filt: Filter, n_terms: int = _SERIES_TERMS, alpha: float | None = None) -> np.ndarray:
    """Coefficients of ``x**(2n)``, ``n < n_terms``, of ``sinc(x/2)**alpha G(x)`` as computed."""
    a = filt.alpha if alpha is None else alpha
    s = fractional_power_series_miller(sinc_maclaurin(n_terms), a).coeffs
    g = filt.coeffs
    m2 = np.arange(g.size, dtype=float) ** 2
    e = np.empty(n_terms)
    for n in range(n_terms):
        e[n] = (-1) ** n / math.factorial(2 * n) * (g[0] * (n == 0) + 2.0 * np.sum(g[1:] * m2[1:] ** n))
    return np.convolve(s, e)[:n_terms]


def maclaurin_residual(filt: Filter, alpha: float | None = None) -> np.ndarray:
    """Computed coefficients of ``x**2 .. x**(N-2)`` in ``F``; all zero for an exact filter."""
    d = response_series(filt, filt.half_width + 1, alpha)
    return d[1:]


def one_minus_response(filt: Filter, x: float | np.ndarray, alpha: float | None = None) -> float | np.ndarray:
    """``1 - F(x)`` without cancellation near the origin."""
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    direct = 1.0 - np.asarray(relative_response(filt, xs, alpha))
    d = response_series(filt, filt.half_width + 1 + _SERIES_TERMS, alpha)
    d[: filt.half_width + 1] = 0.0
    y = xs**2
    series = -np.polynomial.polynomial.polyval(y, d)
    out = np.where(np.abs(direct) > _DIRECT_THRESHOLD, direct, series)
    return float(out[0]) if np.ndim(x) == 0 else out


def spectral_rate(filt: Filter, x: float | np.ndarray, alpha: float | None = None) -> float | np.ndarray:
    """``log2((1 - F(x)) / (1 - F(x/2)))``."""
    xs = np.asarray(x, dtype=float)
    if np.any(xs <= 0.0):
        raise InstabilityError("spectral rate needs x > 0")
    num = np.asarray(one_minus_response(filt, xs, alpha))
    den = np.asarray(one_minus_response(filt, xs / 2.0, alpha))
    if np.any(den == 0.0) or np.any(num == 0.0) or not np.all(np.isfinite(num / den)):
        raise InstabilityError("1 - F underflowed; spectral rate is undefined")
    out = np.log2(np.abs(num / den))
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class PositivityReport:
    dominant: bool
    margin: float


def positivity_check(filt: Filter) -> PositivityReport:
    """Gershgorin test ``g_0 > 2 sum_m |g_m|``."""
    g = filt.coeffs
    margin = float(g[0] - 2.0 * np.sum(np.abs(g[1:])))
    return PositivityReport(margin > 0.0, margin)


@dataclass(frozen=True)
class ResponseCurve:
    x: np.ndarray
    F: np.ndarray
    alpha: float
    order: int


@dataclass(frozen=True)
class ConvergenceRateCurve:
    x: np.ndarray
    r: np.ndarray
    alpha: float
    order: int


def default_grid(points: int = 512) -> np.ndarray:
    """``points`` uniform samples of (0, pi]."""
    return np.pi * np.arange(1, points + 1) / points


def response_curve(filt: Filter, points: int = 512) -> ResponseCurve:
    x = default_grid(points)
    return ResponseCurve(x, np.asarray(relative_response(filt, x)), filt.alpha, filt.order)


def rate_curve(filt: Filter, points: int = 512) -> ConvergenceRateCurve:
    x = default_grid(points)
    return ConvergenceRateCurve(x, np.asarray(spectral_rate(filt, x)), filt.alpha, filt.order)


def write_curve(curve: ResponseCurve | ConvergenceRateCurve, path: str | PathLike[str]) -> None:
    """CSV with a ``# alpha=...,N=...`` comment line and 17-digit values."""
    col = "F" if isinstance(curve, ResponseCurve) else "r"
    ys = curve.F if isinstance(curve, ResponseCurve) else curve.r
    with open(path, "w", newline="") as fh:
        fh.write(f"# alpha={curve.alpha!r},N={curve.order}\n")
        fh.write(f"x,{col}\n")
        for xv, yv in zip(curve.x, ys):
            fh.write(f"{float(xv):.17g},{float(yv):.17g}\n")


def read_curve(path: str | PathLike[str]) -> tuple[dict[str, str], np.ndarray, np.ndarray]:
    """Inverse of :func:`write_curve`: header fields, x, and the value column."""
    with open(path) as fh:
        header = fh.readline().lstrip("#").strip()
        meta = dict(item.split("=", 1) for item in header.split(","))
        data = np.loadtxt(fh, delimiter=",", skiprows=1, ndmin=2)
    return meta, data[:, 0], data[:, 1]


def _power_iteration(
    matvec, n: int, tol: float, max_iter: int, rng: np.random.Generator
) -> float:
    v = rng.standard_normal(n)
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(max_iter):
        w = matvec(v)
        lam_new = float(v @ w)
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0
        v = w / norm
        if abs(lam_new - lam) <= tol * max(abs(lam_new), 1.0):
            return lam_new
        lam = lam_new
    raise ConvergenceError(f"power iteration did not converge in {max_iter} iterations")


@dataclass(frozen=True)
class EigenReport:
    max_abs_eig: float
    bound: float

    @property
    def within_bound(self) -> bool:
        return self.max_abs_eig <= self.bound


def eigen_bound_estimate(
    stencil: Stencil, *, tol: float = 1e-8, max_iter: int = 10_000, seed: int = 0
) -> EigenReport:
    """Spectral radius of the interior operator against ``(pi N_x)**alpha``."""
    if stencil.grid.nodes > 2000:
        raise InstabilityError("eigen bound estimate is limited to 2000 nodes")
    d = operator_matrix(stencil)
    rng = np.random.default_rng(seed)
    lam = _power_iteration(lambda v: d @ v, d.shape[0], tol, max_iter, rng)
    return EigenReport(abs(lam), (math.pi * stencil.grid.nodes) ** stencil.alpha)


def operator_eigen_extremes(
    stencil: Stencil, *, tol: float = 1e-10, max_iter: int = 10_000, seed: int = 0
) -> tuple[float, float]:
    """Smallest and largest eigenvalue of the signed operator by shifted power iteration."""
    a = RIESZ_SIGN * operator_matrix(stencil)
    n = a.shape[0]
    rng = np.random.default_rng(seed)
    dominant = _power_iteration(lambda v: a @ v, n, tol, max_iter, rng)
    other = _power_iteration(lambda v: a @ v - dominant * v, n, tol, max_iter, rng) + dominant
    return min(dominant, other), max(dominant, other)
