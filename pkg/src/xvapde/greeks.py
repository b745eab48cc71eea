"""Greeks and hedge notionals read off a solved surface.

Delta and Gamma come from differentiating one tau level in log space and
mapping back: Delta = V_x / S, Gamma = (V_xx - V_x) / S^2. Interior nodes
use the nonuniform central stencils, the two walls one-sided ones. Vega and
Rho are central bump-and-revalue derivatives: sigma (or r) is bumped
everywhere it appears, including the cost terms, while q_S stays put.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .csvio import fmt, write_rows
from .errors import WellPosednessViolation
from .model import ModelParams
from .solver import Problem, Surface, solve

__all__ = ["GreeksReport", "HedgeNotionals", "delta_gamma", "bump_greek",
           "greeks_report", "hedge_notionals"]

DEFAULT_EPS = {"vega": 1e-3, "rho": 1e-4}


def _one_sided_weights(offsets: np.ndarray, cubic_term: float = 0.0) -> np.ndarray:
    """Weights w with sum_j w_j f(x + d_j) = f'(x) + cubic_term f'''(x) + ...

    Given four offsets, the spare degree of freedom pins the f''' coefficient
    rather than zeroing one more Taylor term. The wall stencils pass the
    adjacent interior node's central coefficient hb*hf/6: a sharper wall
    stencil next to the biased central interior makes smooth exponential
    profiles look locally non-monotone across the junction.
    """
    lhs = np.vstack([offsets ** k / math.factorial(k) for k in range(len(offsets))])
    rhs = np.zeros(len(offsets))
    rhs[1] = 1.0
    if len(offsets) > 3:
        rhs[3] = cubic_term
    return np.linalg.solve(lhs, rhs)


def _dx(row: np.ndarray, grid) -> np.ndarray:
    """First log-space derivative: central stencil inside, one-sided walls."""
    hb, hf = grid.h[:-1], grid.h[1:]
    out = np.empty_like(row)
    out[1:-1] = (-hf / (hb * (hb + hf)) * row[:-2]
                 + (hf - hb) / (hb * hf) * row[1:-1]
                 + hb / (hf * (hb + hf)) * row[2:])
    h = grid.h
    lo = _one_sided_weights(grid.nodes[:4] - grid.nodes[0], h[0] * h[1] / 6.0)
    hi = _one_sided_weights(grid.nodes[-4:] - grid.nodes[-1], h[-2] * h[-1] / 6.0)
    k = len(lo)
    out[0] = lo @ row[:k]
    out[-1] = hi @ row[-k:]
    return out


def _dxx(row: np.ndarray, grid) -> np.ndarray:
    """Second log-space derivative via the h_plus/h_minus weights."""
    out = np.empty_like(row)
    out[1:-1] = (grid.h_minus * row[:-2]
                 - (grid.h_plus + grid.h_minus) * row[1:-1]
                 + grid.h_plus * row[2:])
    h1, h2 = grid.h[0], grid.h[1]
    out[0] = 2.0 * (row[0] / (h1 * (h1 + h2)) - row[1] / (h1 * h2)
                    + row[2] / (h2 * (h1 + h2)))
    g1, g2 = grid.h[-1], grid.h[-2]
    out[-1] = 2.0 * (row[-1] / (g1 * (g1 + g2)) - row[-2] / (g1 * g2)
                     + row[-3] / (g2 * (g1 + g2)))
    return out


def delta_gamma(surface: Surface, time_index: int = -1) -> tuple[np.ndarray, np.ndarray]:
    """Per-node (Delta, Gamma) at the chosen tau level (terminal by default)."""
    row = surface.values[time_index]
    s = surface.grid.spots
    vx = _dx(row, surface.grid)
    vxx = _dxx(row, surface.grid)
    return vx / s, (vxx - vx) / s ** 2


def bump_greek(prob: Problem, which: str, eps: float | None = None,
               time_index: int = -1) -> np.ndarray:
    """Central-difference sensitivity of the chosen tau level.

    which = "vega" bumps sigma, "rho" bumps r. The down-bump must leave the
    parameters valid; for vega that means sigma - eps must stay above the
    condition-1 cost floor, else WellPosednessViolation.
    """
    if which not in DEFAULT_EPS:
        raise ValueError(f"which must be one of {tuple(DEFAULT_EPS)}, got {which!r}")
    if eps is None:
        eps = DEFAULT_EPS[which]
    if not eps > 0.0:
        raise ValueError("eps must be positive")
    name = "sigma" if which == "vega" else "r"
    lo = getattr(prob.params, name) - eps
    hi = getattr(prob.params, name) + eps
    if which == "vega" and lo <= 0.0:
        raise WellPosednessViolation(f"sigma - eps = {lo:.6g} is not positive")
    up = solve(replace(prob, params=replace(prob.params, **{name: hi})))
    dn = solve(replace(prob, params=replace(prob.params, **{name: lo})))
    return (up.values[time_index] - dn.values[time_index]) / (2.0 * eps)


@dataclass(frozen=True, eq=False)
class GreeksReport:
    spots: np.ndarray
    delta: np.ndarray
    gamma: np.ndarray
    vega: np.ndarray
    rho: np.ndarray
    tau: float

    def to_csv(self, path) -> None:
        rows = [["S", "delta", "gamma", "vega", "rho"]]
        for i in range(len(self.spots)):
            rows.append([fmt(self.spots[i]), fmt(self.delta[i]), fmt(self.gamma[i]),
                         fmt(self.vega[i]), fmt(self.rho[i])])
        write_rows(path, rows)


def greeks_report(prob: Problem, eps_sigma: float = 1e-3, eps_r: float = 1e-4,
                  time_index: int = -1) -> GreeksReport:
    """Solve once for Delta/Gamma and four more times for Vega/Rho."""
    surface = solve(prob)
    delta, gamma = delta_gamma(surface, time_index)
    vega = bump_greek(prob, "vega", eps_sigma, time_index)
    rho = bump_greek(prob, "rho", eps_r, time_index)
    return GreeksReport(spots=surface.grid.spots, delta=delta, gamma=gamma,
                        vega=vega, rho=rho, tau=float(surface.taus[time_index]))


@dataclass(frozen=True, eq=False)
class HedgeNotionals:
    """Per-node replication amounts for the seller's hedge.

    delta_shares is the share position -dV/dS; own_bond_value and
    cpty_bond_value are the cash values alpha_B*P_B = -V + V+ + R_B*V- and
    alpha_C*P_C = -V + R_C*V+ + V- of the two bond legs.
    """

    delta_shares: np.ndarray
    own_bond_value: np.ndarray
    cpty_bond_value: np.ndarray


def hedge_notionals(surface: Surface, p: ModelParams,
                    time_index: int = -1) -> HedgeNotionals:
    row = surface.values[time_index]
    pos = np.maximum(row, 0.0)
    neg = np.minimum(row, 0.0)
    delta, _ = delta_gamma(surface, time_index)
    return HedgeNotionals(
        delta_shares=-delta,
        own_bond_value=-row + pos + p.R_B * neg,
        cpty_bond_value=-row + p.R_C * pos + neg,
    )
