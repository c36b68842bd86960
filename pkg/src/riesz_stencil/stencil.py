"""Filtered Grunwald-Letnikov central stencil on a uniform grid of [0, 1].

The raw kernel is ``k_n = (-1)**n / h**alpha * binom(alpha, alpha/2 + n)``,
generated by its term ratio. Convolving it with the mirrored prefilter
gives the high-order stencil. Only the right half ``k_0 .. k_{N_x-2}`` is
stored; the operator matrix is the symmetric Toeplitz matrix built from it.
"""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Sequence
from dataclasses import dataclass
from os import PathLike
from typing import TextIO

import numpy as np
import scipy.linalg

from .errors import InstabilityError, ValidationError
from .filters import Filter

__all__ = [
    "RIESZ_SIGN",
    "GridSpec",
    "RawKernel",
    "ResumeState",
    "Stencil",
    "apply_operator",
    "build_stencil",
    "extend_stencil",
    "operator_matrix",
    "raw_kernel",
    "start_adaptive",
    "stencil_to_csv",
]

#: The kernel's transform is ``+|w sinc(w h/2)|**alpha`` while the Riesz
#: derivative has response ``-|w|**alpha``; applying the stencil therefore
#: carries this global sign (fixed by the alpha=2 second-difference case).
RIESZ_SIGN = -1.0


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class GridSpec:
    """``nodes`` equispaced points on [0, 1], endpoints included."""

    nodes: int

    def __post_init__(self) -> None:
        if int(self.nodes) != self.nodes or self.nodes < 3:
            raise ValidationError(f"need at least 3 grid nodes, got {self.nodes!r}")
        object.__setattr__(self, "nodes", int(self.nodes))

    @property
    def h(self) -> float:
        return 1.0 / (self.nodes - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.nodes)


@dataclass(frozen=True)
class RawKernel:
    values: np.ndarray
    alpha: float
    grid: GridSpec

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _frozen(self.values))


@dataclass(frozen=True)
class Stencil:
    """Right half ``k_0 .. k_{N_x-2}`` of the filtered stencil."""

    values: np.ndarray
    alpha: float
    order: int
    grid: GridSpec

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _frozen(self.values))


@dataclass(frozen=True)
class ResumeState:
    """What :func:`extend_stencil` needs to grow a stencil to a finer grid.

    ``raw_tail`` holds the raw kernel entries ``raw_start .. raw_start +
    len(raw_tail) - 1`` (the last ``2 N_h`` of them, at least one, or the whole
    kernel when it is shorter); ``filtered`` is the stencil already produced.
    """

    raw_tail: np.ndarray
    raw_start: int
    filter: Filter
    grid: GridSpec
    filtered: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "raw_tail", _frozen(self.raw_tail))
        object.__setattr__(self, "filtered", _frozen(self.filtered))

    @property
    def alpha(self) -> float:
        return self.filter.alpha

    @property
    def raw_end(self) -> int:
        return self.raw_start + self.raw_tail.size - 1


def _ratios(alpha: float, first: int, last: int) -> np.ndarray:
    j = np.arange(first, last + 1, dtype=float)
    return -(alpha / 2.0 - j + 1.0) / (alpha / 2.0 + j)


def _seed(alpha: float, grid: GridSpec) -> float:
    c = math.gamma(alpha + 1.0) / math.gamma(alpha / 2.0 + 1.0) ** 2
    try:
        s = (grid.nodes - 1) ** alpha * c
    except OverflowError:
        s = math.inf
    if not math.isfinite(s) or s > 1e300:
        raise InstabilityError(f"h**-alpha overflows for {grid.nodes} nodes")
    return s


def raw_kernel(alpha: float, grid: GridSpec, length: int) -> RawKernel:
    """Raw central kernel ``k_0 .. k_length`` by the term-ratio recurrence."""
    if not 0.0 < alpha <= 2.0:
        raise ValidationError(f"alpha must lie in (0, 2], got {alpha!r}")
    if length < 1:
        raise ValidationError("kernel length must be >= 1")
    seed = _seed(alpha, grid)
    k = np.empty(length + 1)
    k[0] = seed
    k[1:] = k[0] * np.cumprod(_ratios(alpha, 1, length))
    return RawKernel(k, alpha, grid)


def _filtered(raw: np.ndarray, raw_start: int, g: np.ndarray, first: int, last: int) -> np.ndarray:
    """``sum_m g_|m| raw_|n-m|`` for ``n = first..last`` given ``raw[j - raw_start]``."""
    nh = g.size - 1
    n = np.arange(first, last + 1)
    out = np.zeros(n.size)
    for m in range(-nh, nh + 1):
        out += g[abs(m)] * raw[np.abs(n - m) - raw_start]
    return out


def _tail(raw: np.ndarray, nh: int) -> tuple[np.ndarray, int]:
    keep = max(2 * nh, 1)
    start = max(raw.size - keep, 0)
    return raw[start:].copy(), start


def start_adaptive(filt: Filter, grid: GridSpec) -> tuple[Stencil, ResumeState]:
    """Build a stencil and keep the state needed to extend it later."""
    nh = filt.half_width
    raw = raw_kernel(filt.alpha, grid, grid.nodes + nh - 2).values
    k = _filtered(raw, 0, filt.coeffs, 0, grid.nodes - 2)
    tail, start = _tail(raw, nh)
    stencil = Stencil(k, filt.alpha, filt.order, grid)
    return stencil, ResumeState(tail, start, filt, grid, k)


def build_stencil(filt: Filter, grid: GridSpec) -> Stencil:
    """Filtered stencil ``k_0 .. k_{N_x-2}`` for ``grid``."""
    return start_adaptive(filt, grid)[0]


def extend_stencil(state: ResumeState, new_grid: GridSpec) -> tuple[Stencil, ResumeState]:
    """Grow a stencil to a grid with at least as many nodes.

    Everything already computed is rescaled by ``((N_x'-1)/(N_x-1))**alpha``;
    the raw recurrence then continues from the saved tail.
    """
    old, filt = state.grid, state.filter
    nh = filt.half_width
    if new_grid.nodes < old.nodes:
        raise ValidationError("extend_stencil cannot shrink the grid")
    if state.raw_end != old.nodes + nh - 2 or state.filtered.size != old.nodes - 1:
        raise ValidationError("resume state does not match its filter and grid")
    if state.raw_tail.size != min(max(2 * nh, 1), old.nodes + nh - 1):
        raise ValidationError("resume state tail length does not match the filter")
    if new_grid.nodes == old.nodes:
        return Stencil(state.filtered, filt.alpha, filt.order, old), state

    scale = ((new_grid.nodes - 1) / (old.nodes - 1)) ** filt.alpha
    last = new_grid.nodes + nh - 2
    tail = state.raw_tail * scale
    grown = tail[-1] * np.cumprod(_ratios(filt.alpha, state.raw_end + 1, last))
    raw = np.concatenate([tail, grown])
    head = state.filtered * scale
    new = _filtered(raw, state.raw_start, filt.coeffs, old.nodes - 1, new_grid.nodes - 2)
    k = np.concatenate([head, new])
    tail, start = _tail(raw, nh)
    stencil = Stencil(k, filt.alpha, filt.order, new_grid)
    return stencil, ResumeState(tail, state.raw_start + start, filt, new_grid, k)


def apply_operator(
    stencil: Stencil,
    samples: Sequence[float] | np.ndarray,
    f0: float | None = None,
    f1: float | None = None,
) -> np.ndarray:
    """Approximate Riesz derivative at the interior nodes ``1 .. N_x-2``.

    ``samples`` holds the function at all ``N_x`` nodes. If ``f0``/``f1`` are
    given they must equal the end samples; the endpoint contributions
    ``k_n f(0)`` and ``k_{N_x-1-n} f(1)`` are part of the sum either way.
    """
    f = np.asarray(samples, dtype=float)
    nx = stencil.grid.nodes
    if f.shape != (nx,):
        raise ValidationError(f"expected {nx} samples, got shape {f.shape}")
    for given, actual, name in ((f0, f[0], "f0"), (f1, f[-1], "f1")):
        if given is not None and given != actual:
            raise ValidationError(f"{name}={given!r} does not match the boundary sample {actual!r}")
    k = stencil.values
    full = np.concatenate([k[:0:-1], k])
    return RIESZ_SIGN * np.convolve(f, full, mode="valid")


def operator_matrix(stencil: Stencil) -> np.ndarray:
    """Dense interior Toeplitz matrix ``D[i, j] = k_|i-j|`` (without the Riesz sign)."""
    return scipy.linalg.toeplitz(stencil.values[: stencil.grid.nodes - 2])


def stencil_to_csv(stencil: Stencil, target: str | PathLike[str] | TextIO | None = None) -> str:
    """Write ``n,k_n`` rows with 17 significant digits; returns the CSV text."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "k_n"])
    for n, v in enumerate(stencil.values):
        w.writerow([n, format(float(v), ".17g")])
    text = buf.getvalue()
    if target is None:
        return text
    if hasattr(target, "write"):
        target.write(text)
    else:
        with open(target, "w", newline="") as fh:
            fh.write(text)
    return text
