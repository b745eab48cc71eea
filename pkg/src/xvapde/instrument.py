"""Terminal payoffs and Dirichlet boundary data in log-price space.

Three upper/lower boundary recipes are supported for the vanilla kinds:

* ``model_consistent`` (default): deep in the money the value is affine,
  V = A(tau)*S - B(tau)*K. The strike leg discounts at the positive-exposure
  rate r + s_F + lambda_C*(1-R_C); the stock leg compounds at the rate the
  forward-drift stencil itself realizes on e^x at the wall spacing (the grid
  continued one cell past the wall by its last ratio). Pinning the stock leg
  at its continuous-limit rate instead leaves the wall a first-order-in-h
  step behind the interior march, which surfaces as a concave kink in the
  value and a Delta dip over the last few nodes.
* ``discounted_strike``: S - K*exp(-r*tau), the risk-free asymptote.
* ``asymptotic``: the raw payoff asymptote S (call) or K (put).

All three agree with the payoff at tau = 0 except ``asymptotic``, which
ignores the strike leg by construction. Custom instruments hold their
endpoint payoff values fixed regardless of mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import MissingPayoff
from .grid import SpaceGrid
from .model import (ModelParams, cpty_cost_rate, modified_variance,
                    positive_exposure_rate)

__all__ = ["Instrument", "BOUNDARY_MODES", "payoff", "boundary_values"]

KINDS = ("call", "put", "custom")
BOUNDARY_MODES = ("model_consistent", "discounted_strike", "asymptotic")


@dataclass(frozen=True, eq=False)
class Instrument:
    kind: str = "call"
    strike: float = 8.0
    custom_payoff: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not self.strike > 0.0:
            raise ValueError("strike must be positive")


def payoff(inst: Instrument, grid: SpaceGrid) -> np.ndarray:
    """Terminal value g(x_i) over the grid nodes."""
    if inst.kind == "call":
        return np.maximum(grid.spots - inst.strike, 0.0)
    if inst.kind == "put":
        return np.maximum(inst.strike - grid.spots, 0.0)
    if inst.custom_payoff is None:
        raise MissingPayoff("custom instrument has no payoff samples")
    g = np.asarray(inst.custom_payoff, dtype=float)
    if g.shape != grid.nodes.shape:
        raise MissingPayoff(
            f"custom payoff has {g.size} samples but the grid has {grid.nodes.size} nodes")
    return g.copy()


def _wall_stock_rate(p: ModelParams, hb: float, hf: float, cost_sign: float) -> float:
    """Exponential rate of the stock leg under the discrete operator.

    Applies the interior stencil to e^x with backward/forward spacings
    (hb, hf) and divides out e^x: the second difference contributes d2, the
    forward first difference d1. Both tend to 1 as the spacings vanish,
    recovering the continuous rate q_S - gamma_S - r - rho_plus -+ kappa.
    """
    var = modified_variance(p)
    d2 = (2.0 * (math.exp(-hb) - 1.0) / (hb * (hb + hf))
          + 2.0 * (math.exp(hf) - 1.0) / (hf * (hb + hf)))
    d1 = (math.exp(hf) - 1.0) / hf
    drift = p.q_S - p.gamma_S - 0.5 * var
    return (0.5 * var * d2 + drift * d1 - p.r - positive_exposure_rate(p)
            + cost_sign * cpty_cost_rate(p) * d1)


def boundary_values(inst: Instrument, grid: SpaceGrid, tau: float, p: ModelParams,
                    mode: str = "model_consistent") -> tuple[float, float]:
    """Dirichlet data (lower, upper) at backward time tau.

    ``p`` should already be variant-filtered; the model_consistent recipe
    reads the funding/credit and cost inputs off it.
    """
    if mode not in BOUNDARY_MODES:
        raise ValueError(f"mode must be one of {BOUNDARY_MODES}, got {mode!r}")
    if inst.kind == "custom":
        g = payoff(inst, grid)
        return float(g[0]), float(g[-1])

    s_lo = math.exp(grid.nodes[0])
    s_hi = math.exp(grid.nodes[-1])
    K = inst.strike
    if mode == "model_consistent":
        h = grid.h
        rho = p.r + positive_exposure_rate(p)  # deep ITM value is positive either kind
        if inst.kind == "call":
            # the wall node's own spacings: h into the wall, last ratio beyond it
            g_s = _wall_stock_rate(p, h[-1], h[-1] * h[-1] / h[-2], -1.0)
            return 0.0, s_hi * math.exp(g_s * tau) - K * math.exp(-rho * tau)
        g_s = _wall_stock_rate(p, h[0] * h[0] / h[1], h[0], +1.0)
        return K * math.exp(-rho * tau) - s_lo * math.exp(g_s * tau), 0.0
    if mode == "discounted_strike":
        if inst.kind == "call":
            return 0.0, s_hi - K * math.exp(-p.r * tau)
        return K * math.exp(-p.r * tau) - s_lo, 0.0
    if inst.kind == "call":
        return 0.0, s_hi
    return K, 0.0
