"""Attractive-regime (beta < 0) analysis of the symmetric model.

For negative repulsion only symmetric stationary measures exist and the
maximization collapses to one dimension in the occupation density.  The
resulting scalar potential develops a double-hump structure below beta = -8;
this module parametrizes its bifurcation set and the equal-height
(Maxwell) line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import NumericalError
from .simplex import d_occupation_entropy, occupation_entropy

CUSP_BETA = -8.0


def occupation_potential(x, l: float, beta: float):
    """Scalar potential whose maxima over x in (0,1) give the pressure
    of the symmetric model (up to log alpha(0))."""
    x = np.asarray(x, dtype=float)
    val = x * (l - math.log(2.0)) - occupation_entropy(x) - beta * x * x / 4.0
    return val if np.ndim(val) else float(val)


def occupation_potential_d1(x, l: float, beta: float):
    x = np.asarray(x, dtype=float)
    val = (l - math.log(2.0)) - d_occupation_entropy(x) - beta * x / 2.0
    return val if np.ndim(val) else float(val)


def occupation_potential_d2(x, beta: float):
    x = np.asarray(x, dtype=float)
    val = -1.0 / (x * (1.0 - x)) - beta / 2.0
    return val if np.ndim(val) else float(val)


def bifurcation_point(x: float) -> tuple[float, float]:
    """(1/beta, alpha(0)) where the potential degenerates at the given x.

    Both first and second derivative vanish there; the cusp sits at
    x = 1/2 with 1/beta = -1/8.
    """
    if not (0.0 < x < 1.0):
        raise ValueError("bifurcation parametrization requires x in (0, 1)")
    inv_beta = -x * (1.0 - x) / 2.0
    alpha0 = 1.0 / (2.0 * math.exp(d_occupation_entropy(x) - 1.0 / (1.0 - x)) + 1.0)
    return (inv_beta, alpha0)


def maxwell_alpha0(beta: float) -> float:
    """Hole mass at which the two potential humps have equal height.

    Only defined in the double-hump regime beta < -8.
    """
    if beta >= CUSP_BETA:
        raise ValueError("equal-height pair requires beta < -8 (single-hump otherwise)")
    return 1.0 / (math.exp(beta / 4.0) + 1.0)


def maxwell_bias(beta: float) -> float:
    """Occupation bias l on the equal-height line; the potential is then
    symmetric about x = 1/2."""
    if beta >= CUSP_BETA:
        raise ValueError("equal-height pair requires beta < -8")
    return beta / 4.0


@dataclass(frozen=True)
class AntiferroDiagram:
    """Bifurcation set and equal-height line in the (1/beta, alpha(0)) plane."""

    bifurcation: list[tuple[float, float]]
    maxwell: list[tuple[float, float]]


def antiferro_diagram(
    n_bifurcation: int = 400, beta_grid=None
) -> AntiferroDiagram:
    xs = np.linspace(1.0 / (n_bifurcation + 1), 1.0, n_bifurcation, endpoint=False)
    bif = [bifurcation_point(float(x)) for x in xs]
    if beta_grid is None:
        beta_grid = -np.geomspace(8.0 + 1e-3, 200.0, 200)
    maxw = [(1.0 / float(b), maxwell_alpha0(float(b))) for b in beta_grid]
    return AntiferroDiagram(bif, maxw)


def potential_maxima(l: float, beta: float, n_grid: int = 4001) -> list[tuple[float, float]]:
    """All local maxima (x, value) of the occupation potential on (0, 1)."""
    grid = np.linspace(1e-9, 1.0 - 1e-9, n_grid)
    d1 = occupation_potential_d1(grid, l, beta)
    maxima = []
    sign = np.sign(d1)
    for i in np.nonzero((sign[:-1] > 0) & (sign[1:] < 0))[0]:
        x = brentq(occupation_potential_d1, grid[i], grid[i + 1], args=(l, beta), xtol=1e-14)
        maxima.append((float(x), occupation_potential(x, l, beta)))
    if not maxima:
        raise NumericalError(f"no interior maximum of the potential at l={l}, beta={beta}")
    return maxima
