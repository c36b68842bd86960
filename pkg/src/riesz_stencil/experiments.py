"""Grid-refinement experiments and CSV output.

Level ``i`` uses ``N_i = 2**i (N_min - 1) + 1`` nodes, so every level
contains the coarse interior nodes ``x_j = j / (N_min - 1)``,
``j = 1 .. N_min - 2`` (index ``j 2**i`` on level ``i``). The error ``E`` is
the sum of absolute errors over those nodes and ``R = log2(E_i / E_{i+1})``.
"""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from os import PathLike
from pathlib import Path

import numpy as np

from .filters import FilterSpec, build_filter
from .reference import CosineCase, PolynomialCase, cosine_riesz_exact, poly_riesz_exact
from .spectral import rate_curve, response_curve, write_curve
from .stencil import GridSpec, apply_operator, build_stencil

__all__ = [
    "ErrorTable",
    "RefinementSchedule",
    "emit_spectrum",
    "run_cosine_experiment",
    "run_experiment",
    "run_poly_experiment",
]


@dataclass(frozen=True)
class RefinementSchedule:
    n_min: int = 11
    i_max: int = 5

    def nodes(self, i: int) -> int:
        return 2**i * (self.n_min - 1) + 1

    @property
    def levels(self) -> range:
        return range(self.i_max + 1)

    @property
    def common_x(self) -> np.ndarray:
        return np.arange(1, self.n_min - 1) / (self.n_min - 1)

    def common_index(self, i: int) -> np.ndarray:
        """Positions of the common nodes among the interior outputs of level ``i``."""
        return np.arange(1, self.n_min - 1) * 2**i - 1


@dataclass
class ErrorTable:
    """``E[i, N]`` and ``R[i, N]`` for one experiment."""

    orders: tuple[int, ...]
    schedule: RefinementSchedule
    E: np.ndarray
    meta: dict[str, object] = field(default_factory=dict)

    @property
    def R(self) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.log2(self.E[:-1] / self.E[1:])

    def error(self, i: int, order: int) -> float:
        return float(self.E[i, self.orders.index(order)])

    def rate(self, i: int, order: int) -> float:
        return float(self.R[i, self.orders.index(order)])

    def to_csv(self, target: str | PathLike[str] | None = None) -> str:
        """Rows ``i,N,E,R``; ``R`` is empty on the last level."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "N", "E", "R"])
        rates = self.R
        for i in self.schedule.levels:
            for c, order in enumerate(self.orders):
                r = "" if i == self.schedule.i_max else format(float(rates[i, c]), ".17g")
                w.writerow([i, order, format(float(self.E[i, c]), ".17g"), r])
        text = buf.getvalue()
        if target is not None:
            Path(target).write_text(text)
        return text

    def format(self) -> str:
        """Fixed-width text rendering in the layout of a refinement table."""
        head = "i\\N " + "".join(f"{n:>12d}" for n in self.orders)
        lines = ["E", head]
        for i in self.schedule.levels:
            lines.append(f"{i:<4d}" + "".join(f"{e:12.4g}" for e in self.E[i]))
        lines += ["R", head]
        for i in range(self.schedule.i_max):
            lines.append(f"{i:<4d}" + "".join(f"{r:12.4g}" for r in self.R[i]))
        return "\n".join(lines)


def run_experiment(
    u: Callable[[np.ndarray], np.ndarray],
    exact: Callable[[float], float],
    alpha: float,
    orders: Iterable[int],
    i_max: int = 5,
    n_min: int = 11,
) -> ErrorTable:
    """Refinement study of any sampled function against a reference derivative."""
    orders = tuple(int(n) for n in orders)
    schedule = RefinementSchedule(n_min, i_max)
    ref = np.array([exact(float(x)) for x in schedule.common_x])
    filters = {n: build_filter(FilterSpec(alpha, n)) for n in orders}
    E = np.empty((i_max + 1, len(orders)))
    for i in schedule.levels:
        grid = GridSpec(schedule.nodes(i))
        samples = u(grid.x)
        idx = schedule.common_index(i)
        for c, n in enumerate(orders):
            approx = apply_operator(build_stencil(filters[n], grid), samples)
            E[i, c] = math.fsum(np.abs(approx[idx] - ref))
    return ErrorTable(orders, schedule, E, {"alpha": alpha})


def run_poly_experiment(
    q: int,
    alpha: float,
    orders: Sequence[int] = (4, 6, 8, 10),
    i_max: int = 5,
    *,
    n_min: int = 11,
    precise: bool = False,
) -> ErrorTable:
    """Errors for ``x**q (1-x)**q``.

    The closed form is evaluated in double precision by default; its
    rounding sets the floor the errors saturate at. ``precise=True`` removes
    that floor.
    """
    case = PolynomialCase(q, alpha)
    table = run_experiment(
        case.u, lambda x: poly_riesz_exact(case, x, precise=precise), alpha, orders, i_max, n_min
    )
    table.meta.update(family="poly", q=q, precise=precise)
    return table


def run_cosine_experiment(
    f: int,
    alpha: float,
    orders: Sequence[int] = (4, 6, 8, 10),
    i_max: int = 5,
    *,
    n_min: int = 11,
) -> ErrorTable:
    """Errors for ``cos(2 pi f x)`` truncated to [0, 1]; note ``u(0) = u(1) = 1``."""
    case = CosineCase(f, alpha)
    table = run_experiment(case.u, lambda x: cosine_riesz_exact(case, x), alpha, orders, i_max, n_min)
    table.meta.update(family="cos", f=f)
    return table


def emit_spectrum(
    alpha: float = 1.3,
    orders: Iterable[int] = range(2, 17, 2),
    points: int = 512,
    out_dir: str | PathLike[str] = ".",
) -> list[Path]:
    """Write ``response_N.csv`` and ``rate_N.csv`` for each order."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for n in orders:
        filt = build_filter(FilterSpec(alpha, n))
        for name, curve in (("response", response_curve(filt, points)), ("rate", rate_curve(filt, points))):
            path = out / f"{name}_{n}.csv"
            write_curve(curve, path)
            written.append(path)
    return written
