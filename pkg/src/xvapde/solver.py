"""Explicit time march for the nonlinear pricing equation in log space.

Backward time tau = T - t turns the terminal condition into an initial one;
each reporting step applies

    V[i] <- a_i*V[i-1] + b_i*V[i] + c_i*V[i+1] - dtau * source_i(V)

on the interior, with Dirichlet walls refreshed at the new tau. The linear
weights carry the diffusion sig2_hat/2 and the drift q_S - gamma_S -
sig2_hat/2 (forward-differenced by default); their row sum is 1 - r*dtau.
The source collects the funding/credit exposure terms and the
counterparty-bond cost sink on the positive part U = max(V, 0):

    source_i = max(V_i,0)*[s_F + lambda_C(1-R_C)]
             + min(V_i,0)*(lambda_B - r C_B)(1-R_B)
             + sigma*sqrt(2/(pi*dt))*C_C*(1-R_C) * |(U[i+1]-U[i]) / (x[i+1]-x[i])|

Whenever the reporting step exceeds the monotonicity bound of the grid, the
step is split into equal sub-steps automatically; passing substep=False
disables the guard (useful only to demonstrate the blow-up).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .csvio import fmt, write_rows
from .errors import ModelAssumptionWarning, NonFiniteValue
from .grid import GridSpec, SpaceGrid, build_space_grid, build_time_grid, stability_bound
from .instrument import BOUNDARY_MODES, Instrument, boundary_values, payoff
from .model import (
    ModelParams,
    ModelVariant,
    check_condition2,
    check_condition4,
    condition2_value,
    cpty_cost_rate,
    modified_variance,
    negative_exposure_rate,
    positive_exposure_rate,
)

__all__ = ["Problem", "Surface", "step_coefficients", "nonlinear_source", "step", "solve"]

DRIFT_MODES = ("forward", "upwind")


@dataclass(frozen=True)
class Problem:
    """A full pricing scenario.

    condition1 is enforced on the variant-filtered parameters when the solve
    starts; conditions 2 and 4 only warn. condition2_c is the contraction
    constant the caller wants condition 2 checked with.
    """

    params: ModelParams
    variant: ModelVariant
    grid: GridSpec
    instrument: Instrument
    boundary_mode: str = "model_consistent"
    drift_discretization: str = "forward"
    condition2_c: float = 1.0

    def __post_init__(self):
        if self.boundary_mode not in BOUNDARY_MODES:
            raise ValueError(f"boundary_mode must be one of {BOUNDARY_MODES}")
        if self.drift_discretization not in DRIFT_MODES:
            raise ValueError(f"drift_discretization must be one of {DRIFT_MODES}")

    def effective_params(self) -> ModelParams:
        return self.variant.apply(self.params)


@dataclass(frozen=True, eq=False)
class Surface:
    """Solved values: values[m, i] holds V(tau_m, x_i)."""

    values: np.ndarray
    grid: SpaceGrid
    taus: np.ndarray

    @property
    def terminal(self) -> np.ndarray:
        """The tau = T row."""
        return self.values[-1]

    def value_near_spot(self, spot: float, time_index: int = -1) -> tuple[float, float]:
        """(node spot, value) at the node nearest the given spot."""
        i = self.grid.nearest_index(math.log(spot))
        return float(self.grid.spots[i]), float(self.values[time_index, i])

    def to_csv(self, path) -> None:
        """Two header rows (x_i, then S_i), one data row per tau level."""
        rows = [["x"] + [fmt(x) for x in self.grid.nodes],
                ["S"] + [fmt(s) for s in self.grid.spots]]
        for m, tau in enumerate(self.taus):
            rows.append([fmt(tau)] + [fmt(v) for v in self.values[m]])
        write_rows(path, rows)


def step_coefficients(grid: SpaceGrid, p: ModelParams, dtau: float,
                      drift_discretization: str = "forward"):
    """Interior update weights (a, b, c) for one explicit step of size dtau.

    a multiplies V[i-1], b multiplies V[i], c multiplies V[i+1];
    a + b + c = 1 - r*dtau identically. The upwind option differences the
    drift toward its inflow side so a and c stay nonnegative for any sign
    of the drift.
    """
    sig2 = modified_variance(p)
    drift = p.q_S - p.gamma_S - 0.5 * sig2
    diff = 0.5 * sig2 * dtau
    hf = grid.h[1:]   # forward spacing at interior nodes
    hb = grid.h[:-1]  # backward spacing
    a = diff * grid.h_minus
    c = diff * grid.h_plus
    b = 1.0 - diff * (grid.h_plus + grid.h_minus) - p.r * dtau
    if drift_discretization == "forward" or drift >= 0.0:
        adv = dtau * drift / hf
        c = c + adv
        b = b - adv
    else:
        adv = dtau * (-drift) / hb
        a = a + adv
        b = b - adv
    return a, b, c


def nonlinear_source(row: np.ndarray, grid: SpaceGrid, p: ModelParams) -> np.ndarray:
    """Funding/credit/cost source at the interior nodes for the given row.

    Expects variant-filtered parameters; the cost sink differences the
    positive part forward, matching the upper-wall side where a call's
    exposure lives.
    """
    pos = np.maximum(row, 0.0)
    neg = np.minimum(row, 0.0)
    slope = (pos[2:] - pos[1:-1]) / grid.h[1:]
    return (positive_exposure_rate(p) * pos[1:-1]
            + negative_exposure_rate(p) * neg[1:-1]
            + cpty_cost_rate(p) * np.abs(slope))


def step(row: np.ndarray, m: int, prob: Problem, substep: bool = True) -> np.ndarray:
    """Advance one reporting step, from tau_m to tau_{m+1}.

    Splits the step into ceil(dtau / stability_bound) equal sub-steps unless
    substep is False. Raises NonFiniteValue the moment any node stops being
    finite.
    """
    p = prob.effective_params()
    grid = build_space_grid(prob.grid)
    dtau = prob.grid.dtau
    nsub = 1
    if substep:
        bound = stability_bound(grid, p)
        if math.isfinite(bound):
            nsub = max(1, math.ceil(dtau / bound))
    delta = dtau / nsub
    a, b, c = step_coefficients(grid, p, delta, prob.drift_discretization)
    out = np.asarray(row, dtype=float)
    for j in range(1, nsub + 1):
        # non-finiteness is detected below; let an unstable march overflow quietly
        with np.errstate(over="ignore", invalid="ignore"):
            interior = (a * out[:-2] + b * out[1:-1] + c * out[2:]
                        - delta * nonlinear_source(out, grid, p))
        # land the final sub-step exactly on the reporting level
        tau = (m + 1) * dtau if j == nsub else m * dtau + j * delta
        lo, hi = boundary_values(prob.instrument, grid, tau, p, prob.boundary_mode)
        nxt = np.empty_like(out)
        nxt[0] = lo
        nxt[1:-1] = interior
        nxt[-1] = hi
        bad = ~np.isfinite(nxt)
        if bad.any():
            raise NonFiniteValue(m, int(np.argmax(bad)))
        out = nxt
    return out


def solve(prob: Problem, substep: bool = True) -> Surface:
    """March the payoff from tau = 0 to tau = T and return every level.

    Raises WellPosednessViolation when the variant-filtered parameters break
    condition 1; conditions 2 and 4 and a negative lambda_B - r*C_B only
    emit ModelAssumptionWarning.
    """
    p = prob.effective_params()
    modified_variance(p)  # condition 1, hard
    if negative_exposure_rate(p) < 0.0:
        warnings.warn(
            "lambda_B < r*C_B: the condition2 bracket assumes a nonnegative "
            "negative-exposure rate", ModelAssumptionWarning, stacklevel=2)
    if not check_condition2(p, prob.condition2_c):
        warnings.warn(
            f"condition2 failed: c * bracket = "
            f"{prob.condition2_c * condition2_value(p):.6g} >= 1; the "
            "contraction argument behind the scheme no longer applies",
            ModelAssumptionWarning, stacklevel=2)
    if not check_condition4(p, float(math.exp(prob.grid.x_plus))):
        warnings.warn(
            "condition4 failed: q_S - gamma_S exceeds the effective discount "
            "bound; the comparison argument behind the scheme no longer applies",
            ModelAssumptionWarning, stacklevel=2)

    grid = build_space_grid(prob.grid)
    values = np.empty((prob.grid.n_time + 1, grid.n + 1))
    values[0] = payoff(prob.instrument, grid)
    for m in range(prob.grid.n_time):
        values[m + 1] = step(values[m], m, prob, substep=substep)
    return Surface(values=values, grid=grid, taus=build_time_grid(prob.grid))
