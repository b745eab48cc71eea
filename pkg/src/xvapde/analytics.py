"""Cross-model analytics: closed-form oracle, CVA profiles, cost gaps, sweeps.

The closed form prices the European call under lognormal dynamics with a
cost-of-carry: with F = S*exp(carry*tau),

    call = exp(-r*tau) * (F*N(d1) - K*N(d2)),
    d1 = (log(F/K) + sigma^2*tau/2) / (sigma*sqrt(tau)),  d2 = d1 - sigma*sqrt(tau).

It is the reference the risk-free PDE solve is held against. CVA here is
the all-in adjustment solve(variant) - solve(RISK_FREE) at tau = T, negative
when the adjustments are a cost to the seller.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields, replace

import numpy as np
from scipy.stats import norm

from .csvio import fmt, write_rows
from .errors import EngineError
from .grid import GridSpec, build_space_grid
from .instrument import Instrument
from .model import ModelParams, ModelVariant
from .solver import Problem, solve

__all__ = ["closed_form_call", "closed_form_call_delta", "cva_profile",
           "compare_models", "sweep", "SweepResult"]

_PARAM_FIELDS = tuple(f.name for f in fields(ModelParams))


def closed_form_call(S, K: float, r: float, carry: float, sigma: float, tau: float):
    """Lognormal European call with cost-of-carry; tau = 0 returns the intrinsic."""
    S = np.asarray(S, dtype=float)
    if tau <= 0.0:
        out = np.maximum(S - K, 0.0)
        return out if out.ndim else float(out)
    srt = sigma * np.sqrt(tau)
    F = S * np.exp(carry * tau)
    d1 = (np.log(F / K) + 0.5 * sigma ** 2 * tau) / srt
    d2 = d1 - srt
    out = np.exp(-r * tau) * (F * norm.cdf(d1) - K * norm.cdf(d2))
    return out if out.ndim else float(out)


def closed_form_call_delta(S, K: float, r: float, carry: float, sigma: float, tau: float):
    """dV/dS of the closed-form call."""
    S = np.asarray(S, dtype=float)
    if tau <= 0.0:
        out = np.where(S > K, 1.0, 0.0)
        return out if out.ndim else float(out)
    srt = sigma * np.sqrt(tau)
    d1 = (np.log(S / K) + (carry + 0.5 * sigma ** 2) * tau) / srt
    out = np.exp((carry - r) * tau) * norm.cdf(d1)
    return out if out.ndim else float(out)


def cva_profile(prob: Problem) -> np.ndarray:
    """Terminal-row adjustment solve(variant) - solve(RISK_FREE), per node."""
    full = solve(prob).terminal
    base = solve(replace(prob, variant=ModelVariant.RISK_FREE)).terminal
    return full - base


def compare_models(p: ModelParams, grid_spec: GridSpec, inst: Instrument,
                   **problem_kwargs) -> np.ndarray:
    """Terminal-row cost-of-costs gap solve(BK) - solve(BKTC), per node.

    Nonnegative for convex payoffs: every cost term lowers the seller's price.
    """
    bk = solve(Problem(p, ModelVariant.BK, grid_spec, inst, **problem_kwargs))
    bktc = solve(Problem(p, ModelVariant.BKTC, grid_spec, inst, **problem_kwargs))
    return bk.terminal - bktc.terminal


@dataclass(frozen=True, eq=False)
class SweepResult:
    """One-parameter sweep output.

    prices[k] and cvas[k] are terminal-row curves for values[k], or None when
    that member failed; errors maps the failed value to the failure text.
    """

    parameter: str
    values: tuple[float, ...]
    prices: tuple
    cvas: tuple
    spots: np.ndarray
    variant: ModelVariant
    grid_spec: GridSpec
    errors: dict[float, str]

    def to_csv(self, path) -> None:
        """Long format: one row per (value, node) of every member that solved."""
        rows = [["parameter", "value", "S", "price", "cva"]]
        for v, price, cva in zip(self.values, self.prices, self.cvas):
            if price is None:
                continue
            for i in range(len(self.spots)):
                rows.append([self.parameter, fmt(v), fmt(self.spots[i]),
                             fmt(price[i]), fmt(cva[i])])
        write_rows(path, rows)


def _sweep_member(base: Problem, parameter: str, value: float):
    prob = replace(base, params=replace(base.params, **{parameter: value}))
    price = solve(prob).terminal
    cva = price - solve(replace(prob, variant=ModelVariant.RISK_FREE)).terminal
    return price, cva


def sweep(base: Problem, parameter: str, values, max_workers: int = 1) -> SweepResult:
    """Re-solve ``base`` for each value of one ModelParams field.

    Values must be strictly increasing. A member that fails (bad parameter
    value, ill-posed solve) is recorded under errors and the sweep moves on.
    Members are independent, so max_workers > 1 fans them out over threads;
    results keep input order either way.
    """
    if parameter not in _PARAM_FIELDS:
        raise ValueError(f"{parameter!r} is not a model parameter "
                         f"(one of {', '.join(_PARAM_FIELDS)})")
    vals = tuple(float(v) for v in values)
    if len(vals) == 0:
        raise ValueError("sweep needs at least one value")
    if any(b <= a for a, b in zip(vals, vals[1:])):
        raise ValueError("sweep values must be strictly increasing")

    def run(v):
        try:
            return _sweep_member(base, parameter, v)
        except (EngineError, ValueError) as exc:
            return exc

    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            outcomes = list(pool.map(run, vals))
    else:
        outcomes = [run(v) for v in vals]

    prices, cvas, errors = [], [], {}
    for v, out in zip(vals, outcomes):
        if isinstance(out, Exception):
            prices.append(None)
            cvas.append(None)
            errors[v] = f"{type(out).__name__}: {out}"
        else:
            prices.append(out[0])
            cvas.append(out[1])
    return SweepResult(parameter=parameter, values=vals, prices=tuple(prices),
                       cvas=tuple(cvas), spots=build_space_grid(base.grid).spots,
                       variant=base.variant, grid_spec=base.grid, errors=errors)
