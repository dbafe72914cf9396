"""Independent spin-flip dynamics: transition kernel, effective random-field
potential on the occupied sites, limiting specification kernel and the
bad-measure test.

Conditioning a time-t configuration turns the time-zero layer into a
two-state mean-field model on the occupied sites, at a coupling scaled by
the occupied fraction and in a random external field whose strength decays
with time.  Everything dynamical reduces to the global minimizers of the
resulting scalar potential.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import BadPointError
from .simplex import Measure3, ModelParams

MERGE_TOL = 1e-9
VALUE_TIE_TOL = 1e-10

FINAL_TRANSITION_TIME = math.log(3.0) / 4.0  # field strength loses tricriticality here


def transition_prob(a: int, b: int, t: float) -> float:
    """Single-site probability to move from spin a to spin b in time t.

    Holes are conserved; occupied spins flip symmetrically at rate 1.
    """
    if a not in (-1, 0, 1) or b not in (-1, 0, 1):
        raise ValueError("spins must be in {-1, 0, 1}")
    if t < 0.0:
        raise ValueError("time must be nonnegative")
    decay = math.exp(-2.0 * t)
    if a == b == 0:
        return 1.0
    if a == b != 0:
        return 0.5 * (1.0 + decay)
    if a * b == -1:
        return 0.5 * (1.0 - decay)
    return 0.0


def dynamical_field(t: float) -> float:
    """External field induced on the time-zero layer by conditioning at time t.

    Equals atanh(e^{-2t}); strictly decreasing, infinite at t = 0.
    """
    if t <= 0.0:
        raise ValueError("the induced field is finite only for t > 0")
    return math.atanh(math.exp(-2.0 * t))


@dataclass(frozen=True)
class RfcwPotential:
    """Parameters of the effective random-field two-state potential.

    beta_tilde is the coupling rescaled by the occupied fraction of the
    conditioning measure, bias its magnetization on occupied sites, h_t the
    dynamical field.
    """

    beta_tilde: float
    bias: float
    h_t: float

    def __post_init__(self):
        if not -1.0 <= self.bias <= 1.0:
            raise ValueError(f"bias {self.bias} outside [-1, 1]")
        if self.h_t < 0.0:
            raise ValueError("field must be nonnegative")

    @property
    def p_up(self) -> float:
        return 0.5 * (1.0 + self.bias)

    @property
    def p_down(self) -> float:
        return 0.5 * (1.0 - self.bias)


def effective_params(alpha_f: Measure3, beta: float, t: float) -> RfcwPotential:
    """Effective potential parameters for conditioning measure alpha_f."""
    occupied = alpha_f.occupied
    if occupied <= 0.0:
        raise ValueError("conditioning measure has no occupied sites")
    return RfcwPotential(
        beta_tilde=0.5 * beta * occupied,
        bias=(alpha_f.p_plus - alpha_f.p_minus) / occupied,
        h_t=dynamical_field(t),
    )


def _log_cosh(u):
    u = np.abs(u)
    return u + np.log1p(np.exp(-2.0 * u)) - math.log(2.0)


def _sech2(u):
    c = np.cosh(np.minimum(np.abs(u), 350.0))
    return 1.0 / (c * c)


def potential(m, pot: RfcwPotential):
    """Value of the effective potential; requires a nonzero coupling."""
    if pot.beta_tilde == 0.0:
        raise ValueError("potential value undefined at zero coupling")
    m = np.asarray(m, dtype=float)
    b = pot.beta_tilde
    val = 0.5 * m * m - (
        pot.p_up * _log_cosh(b * m + pot.h_t) + pot.p_down * _log_cosh(b * m - pot.h_t)
    ) / b
    return val if np.ndim(val) else float(val)


def potential_d1(m, pot: RfcwPotential):
    """Slope of the potential; defined for every coupling including zero."""
    m = np.asarray(m, dtype=float)
    b = pot.beta_tilde
    val = m - (
        pot.p_up * np.tanh(b * m + pot.h_t) + pot.p_down * np.tanh(b * m - pot.h_t)
    )
    return val if np.ndim(val) else float(val)


def potential_d2(m, pot: RfcwPotential):
    m = np.asarray(m, dtype=float)
    b = pot.beta_tilde
    val = 1.0 - b * (
        pot.p_up * _sech2(b * m + pot.h_t) + pot.p_down * _sech2(b * m - pot.h_t)
    )
    return val if np.ndim(val) else float(val)


@dataclass(frozen=True)
class MinimizerReport:
    """Global minimizers of the effective potential.

    minima lists (location, value) of every global minimizer after merging
    locations closer than the merge tolerance; gap is the value distance to
    the best non-global local minimum (inf if there is none).
    """

    minima: list[tuple[float, float]]
    unique: bool
    gap: float

    @property
    def location(self) -> float:
        if not self.unique:
            raise BadPointError("no unique global minimizer", self.minima)
        return self.minima[0][0]


def global_minimizers(
    pot: RfcwPotential, tol: float = VALUE_TIE_TOL, n_grid: int = 10**4
) -> MinimizerReport:
    """Locate all global minimizers by a slope sign-change scan plus bisection.

    The scan bracket [-1-pad, 1+pad] always contains every stationary point
    since the averaged tanh term has modulus below 1.
    """
    b = pot.beta_tilde
    pad = 1.0 if b == 0.0 else min(abs(pot.h_t / b), 1.0)
    grid = np.linspace(-1.0 - pad, 1.0 + pad, n_grid)
    slopes = potential_d1(grid, pot)
    sign = np.sign(slopes)
    crossings = np.nonzero((sign[:-1] < 0) & (sign[1:] >= 0))[0]
    locs = []
    for i in crossings:
        locs.append(brentq(potential_d1, grid[i], grid[i + 1], args=(pot,), xtol=1e-14))
    if not locs:  # strictly monotone slope: single minimum at the sign flip
        locs = [grid[int(np.argmin(np.abs(slopes)))]]
    merged: list[float] = []
    for loc in sorted(locs):
        if not merged or loc - merged[-1] > MERGE_TOL:
            merged.append(loc)
    if b != 0.0:
        values = [potential(loc, pot) for loc in merged]
    else:
        values = [
            0.5 * loc * loc
            - loc * (pot.p_up * math.tanh(pot.h_t) - pot.p_down * math.tanh(pot.h_t))
            for loc in merged
        ]
    best = min(values)
    minima = [(loc, v) for loc, v in zip(merged, values) if v - best <= tol]
    others = [v for v in values if v - best > tol]
    gap = min(others) - best if others else math.inf
    return MinimizerReport(minima=minima, unique=len(minima) == 1, gap=gap)


def is_bad(alpha_f: Measure3, beta: float, t: float) -> bool:
    """Whether alpha_f is a bad empirical measure of the time-evolved model.

    True iff the effective potential has more than one global minimizer.
    Couplings at or below 1 cannot produce coexistence (the potential is
    then convex), which settles every attractive or weakly repulsive case.
    """
    if t <= 0.0:
        return False
    if alpha_f.occupied == 0.0:
        return False
    pot = effective_params(alpha_f, beta, t)
    if pot.beta_tilde <= 1.0:
        return False
    return not global_minimizers(pot).unique


def gamma_kernel(alpha_f: Measure3, params: ModelParams, t: float) -> Measure3:
    """Limiting single-site conditional distribution given conditioning alpha_f.

    Requires a +/- symmetric a priori measure and a unique global minimizer
    of the effective potential; at bad points a BadPointError carries the
    competing minimizers.
    """
    alpha = params.alpha
    if not alpha.symmetric_pm or alpha.p_plus <= 0.0:
        raise ValueError("limiting kernel requires a symmetric a priori measure")
    if t <= 0.0:
        raise ValueError("limiting kernel defined for t > 0")
    beta = params.beta
    occupied = alpha_f.occupied
    if occupied > 0.0:
        pot = effective_params(alpha_f, beta, t)
        if pot.beta_tilde != 0.0:
            report = global_minimizers(pot)
            if not report.unique:
                raise BadPointError(
                    f"bad empirical measure at beta={beta}, t={t}", report.minima
                )
            arg = pot.beta_tilde * report.location
        else:
            arg = 0.0
    else:
        arg = 0.0
    decay = math.exp(-2.0 * t)
    # occupied-site weight e^{-beta*occupied/2}: the exact finite-size
    # conditional converges to this normalization (t -> 0 recovers the
    # static kernel), cross-checked against the count oracle
    w_occ = alpha.p_plus * math.exp(-0.5 * beta * occupied)
    denom = alpha.p_zero + 2.0 * w_occ * math.cosh(arg)
    p_plus = w_occ * (decay * math.sinh(arg) + math.cosh(arg)) / denom
    p_minus = w_occ * (-decay * math.sinh(arg) + math.cosh(arg)) / denom
    return Measure3(p_minus, alpha.p_zero / denom, p_plus)


def specification_kernel(
    eta1: int, alpha_f: Measure3, params: ModelParams, t: float
) -> float:
    """Limiting conditional probability of a single spin value, cf. gamma_kernel."""
    return gamma_kernel(alpha_f, params, t)[eta1]


def static_kernel(omega1: int, alpha_f: Measure3, params: ModelParams) -> float:
    """Specification kernel of the untransformed model (continuous in alpha_f)."""
    alpha = params.alpha
    weights = {
        s: alpha[s]
        * math.exp(
            -params.beta
            * ((s == -1) * alpha_f.p_plus + (s == 1) * alpha_f.p_minus)
        )
        for s in (-1, 0, 1)
    }
    return weights[omega1] / sum(weights.values())


def axis_badness_threshold(beta: float) -> float:
    """Hole mass below which symmetric measures are bad in the second-order
    regime; meaningful for t at or beyond the final transition time."""
    return 1.0 - 2.0 / beta


def symmetric_line_criterion(alpha_f: Measure3, beta: float, t: float) -> bool:
    """Closed-form badness test for symmetric measures at t >= log(3)/4."""
    return 0.5 * beta * alpha_f.occupied * (1.0 - math.exp(-4.0 * t)) > 1.0


def low_beta_threshold(beta: float) -> float:
    """Time at which badness first appears for repulsion in (2, 3]."""
    if not 2.0 < beta <= 3.0:
        raise ValueError("threshold formula applies to beta in (2, 3]")
    return -0.25 * math.log(1.0 - 2.0 / beta)


# ---------------------------------------------------------------------------
# Degenerate stationary points of the potential
# ---------------------------------------------------------------------------


def degenerate_pair(loc: float, h: float) -> tuple[float, float]:
    """Coupling and bias at which `loc` is a degenerate stationary point.

    Solves the two conditions (zero slope, zero curvature) of the potential
    at field h: the bias follows from the slope condition in closed form,
    leaving one equation in the coupling, solved on the branch continuous
    with (cosh(h)^2, 0) at loc = 0.
    """
    from scipy.optimize import brentq  # local import keeps module load light

    if loc == 0.0:
        return (math.cosh(h) ** 2, 0.0)

    def bias_of(bt: float) -> float:
        tp, tm = math.tanh(bt * loc + h), math.tanh(bt * loc - h)
        if tp - tm < 1e-14:  # tanh saturated: no degeneracy possible here
            return math.nan
        return (2.0 * loc - tp - tm) / (tp - tm)

    def curvature_gap(bt: float) -> float:
        b = bias_of(bt)
        if not math.isfinite(b):
            return 1.0
        tp, tm = math.tanh(bt * loc + h), math.tanh(bt * loc - h)
        sp, sm = 1.0 - tp * tp, 1.0 - tm * tm
        return 1.0 - bt * (0.5 * (1.0 + b) * sp + 0.5 * (1.0 - b) * sm)

    grid = np.linspace(1.0 + 1e-9, 2.0 * math.cosh(h) ** 2 + 10.0, 400)
    vals = np.array([curvature_gap(float(g)) for g in grid])
    sign = np.sign(vals)
    idx = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    if len(idx) == 0:
        raise ValueError(f"no degenerate coupling at loc={loc}, h={h}")
    bt = brentq(curvature_gap, float(grid[idx[0]]), float(grid[idx[0] + 1]), xtol=1e-14)
    return (float(bt), float(bias_of(bt)))


TRICRITICAL_FIELD = math.atanh(3.0 ** -0.5)


def max_bias_magnetization(h: float) -> float:
    """Location maximizing the bias along the degenerate curve.

    The corresponding point is the cusp of the bifurcation set; it exists
    for fields above the tricritical value and collapses to 0 there.
    """
    from scipy.optimize import minimize_scalar

    if h <= TRICRITICAL_FIELD + 1e-12:
        return 0.0

    def neg_bias(loc: float) -> float:
        return -degenerate_pair(loc, h)[1]

    res = minimize_scalar(
        neg_bias, bounds=(1e-6, 1.0), method="bounded", options={"xatol": 1e-12}
    )
    return float(res.x)


def wing_tip_coupling(h: float) -> float:
    """Smallest coupling at which first-order coexistence exists at field h.

    This is the coupling of the bifurcation-set cusp; below it the potential
    has a unique global minimizer at every bias, so no bad measures exist.
    """
    if h <= TRICRITICAL_FIELD:
        return 1.0 / (1.0 - math.tanh(h) ** 2)  # second-order threshold at bias 0
    return degenerate_pair(max_bias_magnetization(h), h)[0]
