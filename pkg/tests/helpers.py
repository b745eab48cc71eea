"""Shared builders for the desk-scale call scenario used across the suite."""

import math

from xvapde import GridSpec, Instrument, ModelParams, ModelVariant, Problem

STRIKE = 8.0
HORIZON = 1.0
X_MINUS = math.log(2.0)
X_PLUS = math.log(32.0)


def desk_params(**overrides) -> ModelParams:
    base = dict(r=0.05, q_S=0.05, gamma_S=0.03, sigma=0.1, s_F=0.0,
                lambda_B=0.05, lambda_C=0.01, R_B=0.4, R_C=0.4,
                C_S=0.002, C_B=0.001, C_C=0.001, dt=1.0 / 261.0)
    base.update(overrides)
    return ModelParams(**base)


def desk_grid(n_space: int = 200, n_time: int = 261) -> GridSpec:
    return GridSpec(x_minus=X_MINUS, x_plus=X_PLUS, x_star=math.log(STRIKE),
                    alpha=(X_PLUS - X_MINUS) / 10.0,
                    n_space=n_space, n_time=n_time, horizon=HORIZON)


def desk_problem(variant: ModelVariant = ModelVariant.BKTC, grid: GridSpec | None = None,
                 instrument: Instrument | None = None, **param_overrides) -> Problem:
    return Problem(params=desk_params(**param_overrides), variant=variant,
                   grid=grid or desk_grid(),
                   instrument=instrument or Instrument(kind="call", strike=STRIKE))
