"""Phase-space density sampled on a rectangular ``(x, p)`` grid."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Literal

import numpy as np
from scipy.integrate import trapezoid

from kostin.errors import ParameterError

if TYPE_CHECKING:
    from pathlib import Path

WignerFormat = Literal["csv", "gnuplot"]


@dataclass(frozen=True)
class WignerGrid:
    """Real ``f[i, k] = f(x_axis[i], p_axis[k])`` at time ``t``.

    ``imag_residue`` is the largest imaginary part discarded when the
    grid came from a numeric transform.
    """

    x_axis: np.ndarray
    p_axis: np.ndarray
    f: np.ndarray
    t: float = 0.0
    imag_residue: float = 0.0

    def __post_init__(self) -> None:
        expected = (len(self.x_axis), len(self.p_axis))
        if self.f.shape != expected:
            raise ParameterError(f"f has shape {self.f.shape}, axes give {expected}", "f")

    @property
    def dx(self) -> float:
        return float(self.x_axis[1] - self.x_axis[0])

    @property
    def dp(self) -> float:
        return float(self.p_axis[1] - self.p_axis[0])

    def position_marginal(self) -> np.ndarray:
        """``integral f dp`` at each ``x``; approximates ``|psi(x)|^2``."""
        return trapezoid(self.f, self.p_axis, axis=1)

    def momentum_marginal(self) -> np.ndarray:
        """``integral f dx`` at each ``p``; approximates ``|psi~(p)|^2``."""
        return trapezoid(self.f, self.x_axis, axis=0)

    def normalization(self) -> float:
        return float(trapezoid(self.position_marginal(), self.x_axis))

    def peak(self) -> float:
        return float(self.f.max())


def level_set_area(grid: WignerGrid, level: float) -> float:
    """Cell-counting area of ``{f >= level * max f}``."""
    if not 0 < level < 1:
        raise ParameterError(f"must be in (0, 1), got {level}", "level")
    inside = grid.f >= level * grid.peak()
    return float(np.count_nonzero(inside) * abs(grid.dx * grid.dp))


def write_wigner_csv(grid: WignerGrid, path: Path, fmt: WignerFormat = "csv") -> Path:
    """Write ``f`` as a matrix with one row per momentum.

    ``csv`` puts the position axis in a header row after a ``p\\x`` label
    and each row starts with its momentum. ``gnuplot`` writes the same
    layout whitespace-separated with the column count in the corner, as
    read by ``plot ... matrix nonuniform``.
    """
    body = np.column_stack([grid.p_axis, grid.f.T])
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        header = ",".join(["p\\x", *(f"{x:.17g}" for x in grid.x_axis)])
        np.savetxt(path, body, fmt="%.17g", delimiter=",", header=header, comments="")
    elif fmt == "gnuplot":
        header = " ".join([str(len(grid.x_axis)), *(f"{x:.17g}" for x in grid.x_axis)])
        np.savetxt(path, body, fmt="%.17g", delimiter=" ", header=header, comments="")
    else:
        raise ParameterError(f"unknown format {fmt!r}", "format")
    return path
