import argparse

import numpy as np
import pandas as pd

import mcpcast as mc

def get_arguments():
    ap = argparse.ArgumentParser()

    ap.add_argument("--seed", "-s", type=int, default=0, help="synthetic market seed")

    ap.add_argument("--n-days", "-n", type=int, default=120,
        help="length of the synthetic market in days")

    ap.add_argument("--window-days", "-w", type=int, default=56,
        help="LEAR calibration window in days")

    ap.add_argument("--storage", type=str, default="storage_1",
        choices=mc.list_storage_archetypes(), help="storage archetype valued on the forecast")

    return ap.parse_args()

def main(seed: int, n_days: int, window_days: int, storage: str):

    # simulate a market whose price follows the dispatch clearing price
    panel, fleet = mc.dataset.synth_market(mc.dataset.SynthConfig(n_days=n_days), seed)
    day = panel.n_days - 1

    # forecast the last day as known at its bid deadline
    view = panel.masked_at(day)
    exo = ("load", "wind", "solar", "mcp")
    model = mc.linear.fit_lear(view, day, window_days, exo, n_grid=10)
    forecast = mc.linear.forecast_lear(model, view, day)

    actual = panel["price"][day]
    table = pd.DataFrame({
        "hour": np.arange(24),
        "actual": actual,
        "lear": forecast.prices,
        "mcp": panel["mcp"][day],
        "naive": mc.dataset.naive_forecast(panel, day)
    })
    print(table.round(2).to_string(index=False))
    print("LEAR MAE {:.3f} over {} active regressors".format(
        mc.metric.functional.mae(forecast.prices, actual), int((model.coef != 0).sum())))

    # plan the storage on the forecast and value it at realized prices
    spec = mc.storage.StorageSpec.from_archetype(storage)
    plan = mc.storage.plan_day(forecast.prices, spec)
    perfect = mc.storage.plan_day(actual, spec)
    print("{}: planned {:.2f}, realized {:.2f}, perfect foresight {:.2f}".format(
        storage, plan.objective, mc.storage.realized_profit(plan, actual), perfect.objective))

if __name__ == '__main__':
    # python demo.py -s 0 -n 120 -w 56 --storage storage_1
    args = get_arguments()
    main(args.seed, args.n_days, args.window_days, args.storage)
