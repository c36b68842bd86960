"""Prefilter design.

The filter ``G(x) = g_0 + 2 sum_m g_m cos(m x)`` is chosen so that
``G(x) * sinc(x/2)**alpha = 1 + O(x**N)``. Its Maclaurin coefficients must
therefore equal those of ``sinc(x/2)**(-alpha)`` up to ``x**(N-2)``; the
cosine weights follow from an even symmetric Vandermonde system on the
integer nodes ``-N_h..N_h``.

Two independent routes are kept side by side:

* production: fractional power through an odd-length DFT, then the
  closed-form recurrence for the scaled Vandermonde inverse;
* check: Miller's power-series recurrence, the lower-triangular
  cancellation system, and a dense LU solve of the cosine-moment system.
"""

from __future__ import annotations

import math
import warnings
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import InstabilityError, ValidationError
from .special import DftPlan, dft_odd, idft_odd

__all__ = [
    "Filter",
    "FilterSpec",
    "PositivityWarning",
    "PowerSeries",
    "ScaledVandermondeInverse",
    "SincSeries",
    "build_filter",
    "build_filter_direct",
    "cosine_moment_matrix",
    "fractional_power_series_dft",
    "fractional_power_series_miller",
    "sinc_maclaurin",
    "vandermonde_inverse_bjorck",
    "vandermonde_inverse_specialized",
]

#: Disagreement between the two construction routes that is treated as fatal.
PATH_DIVERGENCE_LIMIT = 1e-6
#: Aliasing margin for the padded transform: the scaled series decays by
#: this factor per term, so ``_DFT_PAD`` extra points suppress wrap-around to
#: about ``2**-60``.
_DFT_DECAY = 2.0
_DFT_PAD = 60
_OVERFLOW = 1e300


class PositivityWarning(UserWarning):
    """The filter is not diagonally dominant, so positivity is not guaranteed."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class FilterSpec:
    """Order parameters of a prefilter.

    ``order`` is the target convergence order N (even, at least 2);
    ``half_width`` is ``N/2 - 1``.
    """

    alpha: float
    order: int

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha <= 2.0) or not math.isfinite(self.alpha):
            raise ValidationError(f"alpha must lie in (0, 2], got {self.alpha!r}")
        if int(self.order) != self.order or self.order < 2:
            raise ValidationError(f"order must be an even integer >= 2, got {self.order!r}")
        if self.order % 2:
            raise ValidationError(f"order must be even, got {self.order}")
        object.__setattr__(self, "order", int(self.order))
        object.__setattr__(self, "alpha", float(self.alpha))

    @property
    def half_width(self) -> int:
        return math.ceil(self.order / 2) - 1


@dataclass(frozen=True)
class SincSeries:
    """Coefficients of ``x**(2n)`` in the Maclaurin series of ``sinc(x/2)``."""

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _frozen(self.coeffs))


@dataclass(frozen=True)
class PowerSeries:
    """Coefficients of ``x**(2n)`` in ``sinc(x/2)**alpha``."""

    coeffs: np.ndarray
    alpha: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _frozen(self.coeffs))


@dataclass(frozen=True)
class Filter:
    """Cosine-series prefilter ``g_0, g_1, ..., g_{N_h}`` for a given spec."""

    coeffs: np.ndarray
    spec: FilterSpec

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _frozen(self.coeffs))

    @property
    def alpha(self) -> float:
        return self.spec.alpha

    @property
    def order(self) -> int:
        return self.spec.order

    @property
    def half_width(self) -> int:
        return self.spec.half_width

    def mirrored(self) -> np.ndarray:
        """Full symmetric taps ``g_{N_h}, ..., g_0, ..., g_{N_h}``."""
        g = self.coeffs
        return np.concatenate([g[:0:-1], g])

    def dc_gain(self) -> float:
        return math.fsum([self.coeffs[0], *(2.0 * self.coeffs[1:])])


def sinc_maclaurin(spec: FilterSpec | int) -> SincSeries:
    """Even Maclaurin coefficients ``(-1)**n / ((2n+1)! 4**n)`` of ``sinc(x/2)``.

    Accepts a :class:`FilterSpec` (giving ``N_h + 1`` terms) or a term count.
    """
    count = spec.half_width + 1 if isinstance(spec, FilterSpec) else int(spec)
    if count < 1:
        raise ValidationError("need at least one coefficient")
    a = np.empty(count)
    a[0] = 1.0
    for n in range(1, count):
        a[n] = -a[n - 1] / (4.0 * (2 * n) * (2 * n + 1))
    return SincSeries(a)


def fractional_power_series_miller(
    series: SincSeries | Sequence[float] | np.ndarray,
    alpha: float,
    n_terms: int | None = None,
) -> PowerSeries:
    """Coefficients of ``p(y)**alpha`` for a series ``p`` with ``p(0) = 1``.

    Uses ``c_k = (1/k) sum_{j=1..k} ((alpha+1) j - k) p_j c_{k-j}``, which
    follows from differentiating ``c = p**alpha``. Coefficients of ``p`` past
    the stored range are taken as zero.
    """
    p = np.asarray(series.coeffs if isinstance(series, SincSeries) else series, dtype=float)
    if p.size == 0 or p[0] != 1.0:
        raise ValidationError("series must start with a unit constant term")
    n = p.size if n_terms is None else int(n_terms)
    c = np.zeros(n)
    c[0] = 1.0
    for k in range(1, n):
        jmax = min(k, p.size - 1)
        j = np.arange(1, jmax + 1)
        c[k] = math.fsum(((alpha + 1.0) * j - k) * p[1 : jmax + 1] * c[k - j]) / k
    return PowerSeries(c, alpha)


def _dft_scaling(p: np.ndarray) -> float:
    # Rescale y -> s*y so the powered series decays by about _DFT_DECAY per
    # term: fast enough to make aliasing negligible, slow enough that the
    # last coefficients are not lost to rounding relative to c_0 = 1.
    if p.size < 2:
        return 1.0
    roots = np.roots(p[::-1])
    return float(np.min(np.abs(roots))) / _DFT_DECAY


def fractional_power_series_dft(
    series: SincSeries | Sequence[float] | np.ndarray,
    alpha: float,
    plan: DftPlan | None = None,
    *,
    refine: bool = False,
) -> PowerSeries:
    """Coefficients of ``p(y)**alpha`` by transform, elementwise power, inverse transform.

    The variable is rescaled before transforming (see ``_dft_scaling``) and
    the transform is zero padded to ``2 N_h + 1 + 60`` points unless a plan
    is given. The complex power uses the principal branch. ``refine`` adds
    one residual-correction sweep that brings the result to full precision.
    """
    p = np.asarray(series.coeffs if isinstance(series, SincSeries) else series, dtype=float)
    if p.size == 0 or p[0] != 1.0:
        raise ValidationError("series must start with a unit constant term")
    nh = p.size - 1
    if plan is None:
        plan = DftPlan(2 * nh + 1 + _DFT_PAD)
    elif plan.length < 2 * nh + 1:
        raise ValidationError(f"transform length {plan.length} < 2*N_h+1 = {2 * nh + 1}")
    s = _dft_scaling(p)
    powers = s ** np.arange(nh + 1)
    spectrum = dft_odd(p * powers, plan)
    c = idft_odd(spectrum**alpha, plan)[: nh + 1] / powers
    if refine:
        c = _refine_power(p, c, alpha)
    return PowerSeries(c, alpha)


def _refine_power(p: np.ndarray, c: np.ndarray, alpha: float) -> np.ndarray:
    # One sweep of iterative refinement on the linear identity p c' = alpha p' c:
    # residual r_k = k c_k - sum_j ((alpha+1) j - k) p_j c_{k-j}, then solve the
    # same triangular system for the correction. Removes the last-bit noise of
    # the transform.
    n = c.size
    r = np.zeros(n)
    d = np.zeros(n)
    for k in range(1, n):
        jmax = min(k, p.size - 1)
        j = np.arange(1, jmax + 1)
        w = ((alpha + 1.0) * j - k) * p[1 : jmax + 1]
        r[k] = math.fsum([k * c[k], *(-w * c[k - j])])
        d[k] = (math.fsum(w * d[k - j]) - r[k]) / k
    return c + d


@dataclass(frozen=True)
class ScaledVandermondeInverse:
    """Inverse of the even cosine-moment matrix with scaled columns.

    ``entries[n, m]`` couples the ``x**(2n)`` moment to the cosine weight on
    node ``m``. The exact relation used by :meth:`solve` is::

        g_m = sum_n entries[n, m] * scale[n] * t_n,
        scale[n] = (-1)**n * (2n - 1)!!

    where ``t_n`` are the target Maclaurin coefficients of the filter
    response.
    """

    entries: np.ndarray
    scale: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", _frozen(self.entries))
        n = self.entries.shape[0]
        sc = np.ones(n)
        for i in range(1, n):
            sc[i] = -sc[i - 1] * (2 * i - 1)
        object.__setattr__(self, "scale", _frozen(sc))

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def matrix(self) -> np.ndarray:
        """Unscaled inverse of :func:`cosine_moment_matrix` of the same size."""
        return self.entries.T * self.scale[None, :]

    def solve(self, target: Sequence[float] | np.ndarray) -> np.ndarray:
        t = np.asarray(target, dtype=float)
        if t.shape != (self.size,):
            raise ValidationError(f"target must have length {self.size}")
        return self.entries.T @ (self.scale * t)


def vandermonde_inverse_specialized(half_width: int) -> ScaledVandermondeInverse:
    """Closed-form inverse for the symmetric integer nodes ``-N_h..N_h``.

    Only even powers and the right half of the nodes are tracked; the size
    grows by one per step ``k`` (two nodes ``+-k``). Each step reads the
    previous step's values, so rows are updated from a snapshot.
    """
    nh = int(half_width)
    if nh < 0:
        raise ValidationError("half width must be >= 0")
    v = np.zeros((nh + 1, nh + 1))
    v[0, 0] = 1.0
    for k in range(1, nh + 1):
        prev = v.copy()
        d = 2 * k * (2 * k - 1)
        for n in range(1, k + 1):
            v[n, k] = ((2 * n) * prev[n - 1, k - 1] + (k - 1) * prev[n, k - 1]) / d
        for n in range(1, k):
            v[n, k] -= k * (k - 1) / d * prev[n, k - 1]
        for m in range(k):
            v[k, m] = -2 * k / ((k - m) * (k + m)) * prev[k - 1, m]
        for n in range(1, k):
            for m in range(k):
                v[n, m] = (k * k * prev[n, m] - (2 * n) * prev[n - 1, m]) / ((k - m) * (k + m))
        if not np.all(np.isfinite(v)) or np.max(np.abs(v)) > _OVERFLOW:
            raise InstabilityError(f"Vandermonde inverse overflowed at step {k}")
    return ScaledVandermondeInverse(v)


def vandermonde_inverse_bjorck(nodes: Sequence[float] | np.ndarray) -> np.ndarray:
    """Inverse of ``V[i, j] = x_i**j`` by the Bjorck-Pereyra style recurrence.

    Column ``j`` of the result holds the monomial coefficients of the
    Lagrange basis polynomial of node ``j``; nodes are added one at a time.
    """
    x = np.asarray(nodes, dtype=float)
    n = x.size
    if n == 0:
        raise ValidationError("need at least one node")
    if np.unique(x).size != n:
        raise ValidationError("nodes must be distinct")
    v = np.zeros((n, n))
    v[0, 0] = 1.0
    for k in range(1, n):
        prev = v.copy()
        ratio = np.prod(x[k - 1] - x[: k - 1]) / np.prod(x[k] - x[:k])
        v[0, k] = -ratio * x[k - 1] * prev[0, k - 1]
        v[1 : k + 1, k] = ratio * (prev[: k, k - 1] - x[k - 1] * prev[1 : k + 1, k - 1])
        for j in range(k):
            v[0, j] = x[k] / (x[k] - x[j]) * prev[0, j]
            v[1 : k + 1, j] = (x[k] * prev[1 : k + 1, j] - prev[:k, j]) / (x[k] - x[j])
    return v


def cosine_moment_matrix(half_width: int) -> np.ndarray:
    """Matrix ``A`` with ``A g = t``: row ``n`` holds the ``x**(2n)`` coefficient of each tap.

    ``A[n, 0] = delta_{n0}`` and ``A[n, m] = 2 (-1)**n m**(2n) / (2n)!`` for ``m >= 1``.
    """
    nh = int(half_width)
    a = np.zeros((nh + 1, nh + 1))
    for n in range(nh + 1):
        f = (-1) ** n / math.factorial(2 * n)
        for m in range(nh + 1):
            a[n, m] = f * m ** (2 * n) * (1.0 if m == 0 else 2.0)
    return a


def _cancellation_target(a: np.ndarray) -> np.ndarray:
    # lower-triangular Toeplitz system: (a * b)_n = delta_{n0}
    b = np.zeros_like(a)
    b[0] = 1.0 / a[0]
    for n in range(1, a.size):
        b[n] = -math.fsum(a[1 : n + 1] * b[n - 1 :: -1][:n]) / a[0]
    return b


def build_filter_direct(spec: FilterSpec) -> Filter:
    """Independent construction: Miller recurrence plus dense solves."""
    a = fractional_power_series_miller(sinc_maclaurin(spec), spec.alpha).coeffs
    target = _cancellation_target(a)
    g = np.linalg.solve(cosine_moment_matrix(spec.half_width), target)
    return Filter(g, spec)


def _production_coeffs(spec: FilterSpec) -> np.ndarray:
    target = fractional_power_series_dft(sinc_maclaurin(spec), -spec.alpha, refine=True).coeffs
    return vandermonde_inverse_specialized(spec.half_width).solve(target)


def build_filter(spec: FilterSpec, *, check: bool = True) -> Filter:
    """Prefilter with ``G(x) sinc(x/2)**alpha = 1 + O(x**N)``.

    With ``check`` set, the result is compared against
    :func:`build_filter_direct`; a relative disagreement above
    :data:`PATH_DIVERGENCE_LIMIT` raises :class:`InstabilityError`. A filter
    that is not diagonally dominant triggers :class:`PositivityWarning`.
    """
    g = _production_coeffs(spec)
    if not np.all(np.isfinite(g)):
        raise InstabilityError("non-finite filter coefficients")
    if check:
        ref = build_filter_direct(spec).coeffs
        gap = float(np.max(np.abs(g - ref) / np.maximum(np.abs(ref), np.finfo(float).tiny)))
        if gap > PATH_DIVERGENCE_LIMIT:
            raise InstabilityError(
                f"filter construction routes disagree by {gap:.2e} at order {spec.order}"
            )
    dc = math.fsum([g[0], *(2.0 * g[1:])])
    if abs(dc - 1.0) > 1e-12:
        raise InstabilityError(f"filter DC gain {dc!r} differs from 1")
    margin = g[0] - 2.0 * float(np.sum(np.abs(g[1:])))
    if margin <= 0.0:
        warnings.warn(
            f"filter for alpha={spec.alpha}, N={spec.order} is not diagonally dominant "
            f"(margin {margin:.3e})",
            PositivityWarning,
            stacklevel=2,
        )
    return Filter(g, spec)
