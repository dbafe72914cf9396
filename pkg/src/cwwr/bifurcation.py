"""Spinodal (bifurcation) curves of the effective potential, the typical
measures of the time-evolved model, and the separation between the two.

The degenerate-stationarity conditions (vanishing slope and curvature of the
effective potential at a prescribed location M) determine the coupling and
bias as functions of (M, field); mapped back to the simplex they bound the
region that shelters all bad measures.  Typical measures come from the
closed static solution pushed through the spin-flip semigroup, which
contracts magnetizations toward the symmetry axis and fixes hole masses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .badset import BadSet, bad_set
from .dynamics import (
    FINAL_TRANSITION_TIME,
    degenerate_pair,
    dynamical_field,
    max_bias_magnetization,
)
from .errors import NumericalError
from .simplex import Measure3, spin_entropy, d_spin_entropy
from .statics import symmetric_stationary_points


@dataclass(frozen=True)
class BifurcationCurve:
    """Degenerate-pair samples (M, bias, coupling) at fixed field, with the
    cusp location mu and the simplex entry point ml."""

    h: float
    samples: list[tuple[float, float, float]]
    mu: float
    ml: float


def bifurcation_curve(beta: float, t: float, n: int = 200) -> BifurcationCurve:
    """Track the degenerate curve over M and cut it to the simplex.

    ml is the smallest positive M whose coupling fits the available occupied
    fraction (coupling = beta/2, the zero-hole edge), zero when the whole
    curve fits.
    """
    if not 0.0 < t < FINAL_TRANSITION_TIME:
        raise ValueError("degenerate arcs exist for t in (0, log(3)/4)")
    h = dynamical_field(t)
    mu = max_bias_magnetization(h)
    if mu == 0.0:
        raise NumericalError("no cusp above the tricritical field")

    def coupling_gap(M: float) -> float:
        bt, _ = degenerate_pair(M, h)
        return bt - 0.5 * beta

    # coupling decreases along the curve away from M = 0
    if coupling_gap(1e-9) <= 0.0:
        ml = 0.0
    else:
        ml = brentq(coupling_gap, 1e-9, mu, xtol=1e-14)
    samples = []
    for M in np.linspace(ml, mu, n):
        if M == 0.0:
            continue
        bt, bias = degenerate_pair(float(M), h)
        samples.append((float(M), bias, bt))
    return BifurcationCurve(h, samples, mu, ml)


def arc_boundary(beta: float, t: float, n: int = 200) -> list[Measure3]:
    """The positive-bias boundary curve mapped back to the simplex.

    Its mirror image under the +/- reflection bounds the other arc.
    """
    curve = bifurcation_curve(beta, t, n)
    out = []
    for _, bias, bt in curve.samples:
        scale = bt / beta
        out.append(Measure3(scale * (1.0 - bias), 1.0 - 2.0 * scale, scale * (1.0 + bias)))
    return out


# ---------------------------------------------------------------------------
# Typical measures of the time-evolved model
# ---------------------------------------------------------------------------


def asymmetric_hole_mass(m: float, beta: float) -> float:
    """Hole mass alpha(0) at which magnetization m sits on the closed
    static-solution curve at repulsion beta (symmetric a priori measure)."""
    if m == 0.0:
        return (beta - 2.0) / (beta + 2.0 * (math.e - 1.0))
    ip = d_spin_entropy(m)
    g = 2.0 * ip / m
    k = math.exp(ip / m - m * ip + spin_entropy(m))
    return (beta - g) / (beta + g * (k - 1.0))


def magnetization_ceiling(beta: float) -> float:
    """Largest magnetization with positive hole mass on the static curve.

    Coincides with the two-state mean-field magnetization at coupling beta.
    """
    if beta <= 2.0:
        raise ValueError("positive branch requires repulsion above 2")
    return brentq(lambda m: 2.0 * d_spin_entropy(m) / m - beta, 1e-12, 1.0 - 1e-15,
                  xtol=1e-15)


def typical_curve(beta: float, t: float, n: int = 401) -> list[Measure3]:
    """Asymmetric minimizers of the time-evolved rate function.

    Holes are conserved and occupied magnetizations contract by e^{-2t};
    the curve is parametrized by the initial magnetization.
    """
    if beta <= 2.0:
        raise ValueError("asymmetric minimizers require repulsion above 2")
    m_max = magnetization_ceiling(beta)
    decay = math.exp(-2.0 * t)
    out = []
    for m in np.linspace(-m_max, m_max, n)[1:-1]:
        m = float(m)
        alpha0 = asymmetric_hole_mass(m, beta)
        if alpha0 <= 0.0:
            continue
        x = 2.0 * d_spin_entropy(m) / (m * beta) if m != 0.0 else 2.0 / beta
        out.append(
            Measure3(0.5 * x * (1.0 - m * decay), 1.0 - x, 0.5 * x * (1.0 + m * decay))
        )
    return out


def symmetric_minimizer_locus(beta: float, n: int = 200) -> list[Measure3]:
    """Symmetric global minimizers of the static rate function over all hole
    ratios admitting one; their hole mass never drops below 1 - 2/beta."""
    if beta <= 2.0:
        q_lo = 1e-3
    else:
        q_lo = (beta - 2.0) / math.e
    out = []
    for q in np.geomspace(max(q_lo, 1e-6), 1e3, n):
        pts = symmetric_stationary_points(beta, float(q))
        nu = max(pts, key=lambda p: p.p_zero)  # minimizer branch
        out.append(nu)
    return out


def atypicality_margin(beta: float, t: float, scanned: BadSet | None = None,
                       resolution: int = 200) -> float:
    """Euclidean distance between the typical set and the bad set.

    Positive margins certify that bad conditionings are exponentially
    unlikely under the time-evolved measure.
    """
    if scanned is None:
        scanned = bad_set(beta, t, resolution)
    bad_pts = scanned.points
    if not bad_pts:
        return math.inf
    typical: list[Measure3] = list(symmetric_minimizer_locus(beta))
    if beta > 2.0:
        typical.extend(typical_curve(beta, t))
    bad_arr = np.array([p.as_array() for p in bad_pts])
    typ_arr = np.array([p.as_array() for p in typical])
    d = np.linalg.norm(bad_arr[None, :, :] - typ_arr[:, None, :], axis=2)
    return float(d.min())


def crossing_ratio(t: float) -> float:
    """Left-hand side of the separation inequality at the cusp.

    Strictly below 1 on (0, log(3)/4) with limit 2/3 at the right endpoint;
    this single scalar controls the disjointness of the typical curve from
    the sheltered region at every repulsion strength.
    """
    if not 0.0 < t < FINAL_TRANSITION_TIME:
        raise ValueError("defined on (0, log(3)/4)")
    h = dynamical_field(t)
    mu = max_bias_magnetization(h)
    bt, bias = degenerate_pair(mu, h)
    grown = math.exp(2.0 * t) * bias
    if grown >= 1.0:
        raise NumericalError("grown bias left the admissible range")
    return d_spin_entropy(grown) / (math.exp(2.0 * t) * bt * bias)
