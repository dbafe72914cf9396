"""Three-state simplex geometry, parametrizations and entropy functions.

The single-site state space is {-1, 0, +1}: a site carries a negative
particle, a hole, or a positive particle.  Probability measures over it are
points of a 2-simplex; this module provides the coordinate systems the
solvers work in (occupation density / magnetization-on-occupied, and the
field/bias parametrization of the a priori measure) together with the spin
and occupation entropies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SUM_TOL = 1e-12


def xlogx(v):
    """x*log(x) with the continuous convention 0*log(0) = 0."""
    v = np.asarray(v, dtype=float)
    out = np.zeros_like(v)
    pos = v > 0.0
    out[pos] = v[pos] * np.log(v[pos])
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class Measure3:
    """A probability measure on {-1, 0, +1}.

    Components are validated and renormalized on construction so that
    downstream root finders can rely on exact simplex membership.
    """

    p_minus: float
    p_zero: float
    p_plus: float

    def __post_init__(self):
        comps = (self.p_minus, self.p_zero, self.p_plus)
        if any(not math.isfinite(c) for c in comps):
            raise ValueError(f"non-finite component in {comps}")
        if any(c < -SUM_TOL or c > 1.0 + SUM_TOL for c in comps):
            raise ValueError(f"components outside [0, 1]: {comps}")
        total = sum(comps)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"components sum to {total}, not 1")
        if total != 1.0:
            object.__setattr__(self, "p_minus", max(self.p_minus, 0.0) / total)
            object.__setattr__(self, "p_zero", max(self.p_zero, 0.0) / total)
            object.__setattr__(self, "p_plus", max(self.p_plus, 0.0) / total)

    @staticmethod
    def uniform() -> "Measure3":
        return Measure3(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)

    @staticmethod
    def symmetric(p_zero: float) -> "Measure3":
        """The +/- symmetric measure with the given hole mass."""
        half = (1.0 - p_zero) / 2.0
        return Measure3(half, p_zero, half)

    def as_array(self) -> np.ndarray:
        return np.array([self.p_minus, self.p_zero, self.p_plus])

    def __getitem__(self, spin: int) -> float:
        return {-1: self.p_minus, 0: self.p_zero, 1: self.p_plus}[spin]

    @property
    def occupied(self) -> float:
        """Mass on {-1, +1}."""
        return self.p_minus + self.p_plus

    @property
    def interior(self) -> bool:
        return min(self.p_minus, self.p_zero, self.p_plus) > 0.0

    @property
    def symmetric_pm(self) -> bool:
        return abs(self.p_plus - self.p_minus) <= SUM_TOL

    def reflected(self) -> "Measure3":
        """Image under the +/- reflection of the simplex."""
        return Measure3(self.p_plus, self.p_zero, self.p_minus)

    def distance(self, other: "Measure3") -> float:
        return float(np.linalg.norm(self.as_array() - other.as_array()))


@dataclass(frozen=True)
class XmCoords:
    """(occupation density, magnetization on occupied sites) coordinates."""

    x: float
    m: float

    def __post_init__(self):
        if not (0.0 <= self.x <= 1.0):
            raise ValueError(f"occupation density {self.x} outside [0, 1]")
        if not (-1.0 <= self.m <= 1.0):
            raise ValueError(f"magnetization {self.m} outside [-1, 1]")


def to_xm(nu: Measure3) -> XmCoords:
    """Occupation/magnetization coordinates of a measure.

    At x = 0 (all holes) the magnetization is undefined; by convention m = 0.
    """
    x = nu.occupied
    m = (nu.p_plus - nu.p_minus) / x if x > 0.0 else 0.0
    return XmCoords(min(x, 1.0), min(max(m, -1.0), 1.0))


def from_xm(c: XmCoords) -> Measure3:
    """Inverse of `to_xm` on x > 0."""
    return Measure3(0.5 * c.x * (1.0 - c.m), 1.0 - c.x, 0.5 * c.x * (1.0 + c.m))


@dataclass(frozen=True)
class AprioriParams:
    """Field/bias coordinates (h, l) of an interior a priori measure.

    h is the magnetic-field-type asymmetry between +/- particles, l the bias
    of occupation against holes; both are finite only for interior measures.
    """

    h: float
    l: float

    @staticmethod
    def from_measure(alpha: Measure3) -> "AprioriParams":
        if not alpha.interior:
            raise ValueError("(h, l) coordinates require an interior measure")
        h = 0.5 * math.log(alpha.p_plus / alpha.p_minus)
        l = math.log((1.0 - alpha.p_zero) / alpha.p_zero)
        return AprioriParams(h, l)

    def to_measure(self) -> Measure3:
        p_zero = 1.0 / (1.0 + math.exp(self.l))
        occupied = 1.0 - p_zero
        p_plus = occupied * math.exp(self.h) / (2.0 * math.cosh(self.h))
        return Measure3(occupied - p_plus, p_zero, p_plus)

    @property
    def hole_ratio(self) -> float:
        """alpha(0)/alpha(1) of the corresponding measure."""
        a = self.to_measure()
        return a.p_zero / a.p_plus


@dataclass(frozen=True)
class ModelParams:
    """Repulsion strength and a priori measure of the model."""

    beta: float
    alpha: Measure3

    def __post_init__(self):
        if not math.isfinite(self.beta):
            raise ValueError("beta must be finite")

    @property
    def hole_ratio(self) -> float:
        return self.alpha.p_zero / self.alpha.p_plus

    @property
    def apriori(self) -> AprioriParams:
        return AprioriParams.from_measure(self.alpha)


def spin_entropy(m):
    """Entropy-type function of a magnetization, extended continuously to +/-1.

    Vanishes at m = 0, equals log 2 at m = +/-1, even and strictly convex.
    """
    m = np.asarray(m, dtype=float)
    if np.any(np.abs(m) > 1.0):
        raise ValueError("magnetization outside [-1, 1]")
    val = xlogx(0.5 * (1.0 - m)) + xlogx(0.5 * (1.0 + m)) + np.log(2.0)
    return val if np.ndim(val) else float(val)


def d_spin_entropy(m):
    """Derivative of `spin_entropy`; equals atanh(m), defined on (-1, 1)."""
    m = np.asarray(m, dtype=float)
    if np.any(np.abs(m) >= 1.0):
        raise ValueError("derivative undefined at magnetization +/-1")
    val = np.arctanh(m)
    return val if np.ndim(val) else float(val)


def occupation_entropy(x):
    """Entropy-type function of an occupation density, extended to [0, 1].

    Strictly convex with minimum -log 3 at x = 2/3 (the typical occupied
    fraction when all three states are drawn with equal weight).
    """
    x = np.asarray(x, dtype=float)
    if np.any((x < 0.0) | (x > 1.0)):
        raise ValueError("occupation density outside [0, 1]")
    val = xlogx(1.0 - x) + xlogx(x) - x * np.log(2.0)
    return val if np.ndim(val) else float(val)


def d_occupation_entropy(x):
    """Derivative of `occupation_entropy`, defined on (0, 1)."""
    x = np.asarray(x, dtype=float)
    if np.any((x <= 0.0) | (x >= 1.0)):
        raise ValueError("derivative undefined at occupation density 0 or 1")
    val = np.log(x) - np.log(1.0 - x) - np.log(2.0)
    return val if np.ndim(val) else float(val)


def relative_entropy(nu: Measure3, alpha: Measure3) -> float:
    """Relative entropy of nu with respect to an interior alpha.

    Boundary nu is allowed through the 0*log(0) = 0 convention.
    """
    if not alpha.interior:
        raise ValueError("relative entropy requires an interior reference")
    n = nu.as_array()
    a = alpha.as_array()
    return float(np.sum(xlogx(n)) - np.sum(n * np.log(a)))
