"""Credit valuation adjustment of the desk call and how it moves.

The adjustment is read off the engine directly: the difference between
the full bilateral solve and a risk-free solve on the same grid.  Two
sweeps show the expected monotonics, counterparty recovery shrinking
the adjustment and counterparty intensity deepening it.
"""

import math

from xvapde import (
    GridSpec,
    Instrument,
    ModelParams,
    ModelVariant,
    Problem,
    build_space_grid,
    cva_profile,
    sweep,
)

PARAMS = ModelParams(r=0.05, q_S=0.05, gamma_S=0.03, sigma=0.1, s_F=0.0,
                     lambda_B=0.05, lambda_C=0.01, R_B=0.4, R_C=0.4,
                     C_S=0.002, C_B=0.001, C_C=0.001, dt=1.0 / 261.0)
GRID = GridSpec(x_minus=math.log(2.0), x_plus=math.log(32.0),
                x_star=math.log(8.0),
                alpha=(math.log(32.0) - math.log(2.0)) / 10.0,
                n_space=200, n_time=261, horizon=1.0)
CALL = Instrument(kind="call", strike=8.0)


def main() -> None:
    base = Problem(params=PARAMS, variant=ModelVariant.BKTC, grid=GRID,
                   instrument=CALL)
    cva = cva_profile(base)
    spots = build_space_grid(GRID).spots
    i_atm = int(abs(spots - 8.0).argmin())

    print("bilateral credit adjustment profile, desk call, K = 8, T = 1")
    print()
    print(f"{'S':>8}  {'CVA':>10}")
    print("-" * 20)
    for spot in (4.0, 6.0, 8.0, 10.0, 12.0, 16.0):
        i = int(abs(spots - spot).argmin())
        print(f"{float(spots[i]):8.3f}  {float(cva[i]):10.6f}")
    print()
    print(f"at the money: CVA = {float(cva[i_atm]):.6f} "
          f"({100.0 * float(cva[i_atm]) / 8.0:.3f}% of notional)")

    print()
    print("sweep counterparty recovery R_C (higher recovery, smaller loss):")
    res = sweep(base, "R_C", [0.0, 0.2, 0.4, 0.6, 0.8])
    for v, price, c in zip(res.values, res.prices, res.cvas):
        print(f"  R_C = {v:4.2f}   price = {float(price[i_atm]):.6f}   "
              f"CVA = {float(c[i_atm]):.6f}")

    print()
    print("sweep counterparty intensity lambda_C (hotter name, deeper CVA):")
    res = sweep(base, "lambda_C", [0.0, 0.01, 0.02, 0.04])
    for v, price, c in zip(res.values, res.prices, res.cvas):
        print(f"  lambda_C = {v:4.2f}   price = {float(price[i_atm]):.6f}   "
              f"CVA = {float(c[i_atm]):.6f}")


if __name__ == "__main__":
    main()
