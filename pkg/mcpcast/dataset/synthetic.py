__all__ = ["SynthConfig", "synth_market", "seasonal_component"]

from typing import Dict, Mapping, Tuple
from dataclasses import dataclass, asdict, fields
import logging

import numpy as np

from .base import HourlyPanel, HOURS, PRICE, MCP
from ..errors import InvalidConfig

logger = logging.getLogger("mcpcast.dataset")

@dataclass(frozen=True)
class SynthConfig:
    """Parameters of the synthetic desk market"""
    n_days: int = 120
    start: str = "2021-01-04"
    n_units: int = 8
    noise: float = 2.0
    daily_amplitude: float = 4.0
    weekly_amplitude: float = 3.0
    load_mean: float = 1000.0
    load_daily_swing: float = 0.15
    load_weekend_drop: float = 0.10
    load_noise: float = 0.03
    wind_capacity: float = 300.0
    solar_capacity: float = 200.0
    capacity_margin: float = 1.25
    storage_power: float = 0.0
    window_hours: int = 36
    keep_hours: int = 24

    def __post_init__(self):
        checks = [
            (self.n_days >= 1, "n_days must be at least 1"),
            (self.n_units >= 1, "n_units must be at least 1"),
            (self.noise >= 0, "noise must be non negative"),
            (self.daily_amplitude >= 0 and self.weekly_amplitude >= 0, "amplitudes must be non negative"),
            (self.load_mean > 0, "load_mean must be positive"),
            (self.wind_capacity >= 0 and self.solar_capacity >= 0, "renewable capacities must be non negative"),
            (self.capacity_margin > 0, "capacity_margin must be positive"),
            (self.storage_power >= 0, "storage_power must be non negative"),
        ]
        for ok, message in checks:
            if not ok:
                raise InvalidConfig(message)
        try:
            np.datetime64(self.start, "D")
        except ValueError:
            raise InvalidConfig("start must be an ISO date not {}".format(self.start)) from None

    @classmethod
    def from_dict(cls, config: Mapping) -> "SynthConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(config) - known
        if unknown:
            raise InvalidConfig("unknown synthesis parameters: {}".format(", ".join(sorted(unknown))))
        return cls(**config)

    def to_dict(self) -> Dict:
        return asdict(self)


def seasonal_component(config: SynthConfig, weekdays: np.ndarray) -> np.ndarray:
    """Daily and weekly price pattern added on top of the clearing price

    Args:
        config (SynthConfig): amplitudes
        weekdays (np.ndarray): weekday per day, Monday is 0

    Returns:
        np.ndarray: (n_days, 24) seasonal component
    """
    hours = np.arange(HOURS)
    daily = config.daily_amplitude * np.sin(2 * np.pi * (hours - 8) / HOURS)
    weekly = config.weekly_amplitude * np.cos(2 * np.pi * np.asarray(weekdays) / 7)
    return weekly[:, None] + daily[None, :]

def _fleet(config: SynthConfig, peak_load: float, rng: np.random.Generator):
    # imported here, dispatch depends on the dataset package
    from ..dispatch.fleet import FleetSpec, PumpedStorage, Unit

    shares = rng.uniform(0.6, 1.4, size=config.n_units)
    capacities = config.capacity_margin * peak_load * shares / shares.sum()
    units = []
    for k in range(config.n_units):
        kind = k % 3
        if kind == 0:
            units.append(Unit("base{}".format(k), float(rng.uniform(5.0, 12.0)), float(capacities[k])))
        elif kind == 1:
            units.append(Unit("coal{}".format(k), float(rng.uniform(2.0, 5.0)), float(capacities[k]),
                fuel="coal", efficiency=float(rng.uniform(0.36, 0.44)),
                emission_factor=float(rng.uniform(0.80, 0.95))))
        else:
            units.append(Unit("gas{}".format(k), float(rng.uniform(1.0, 4.0)), float(capacities[k]),
                fuel="gas", efficiency=float(rng.uniform(0.35, 0.60)),
                emission_factor=float(rng.uniform(0.33, 0.55))))

    storage = PumpedStorage(power=config.storage_power) if config.storage_power > 0 else None
    return FleetSpec(units=tuple(units), storage=storage)

def _random_walk(rng: np.random.Generator, n_days: int, level: float, vol: float, floor: float) -> np.ndarray:
    steps = rng.normal(0.0, vol, size=n_days)
    walk = level + np.cumsum(steps)
    return np.repeat(np.maximum(walk, floor), HOURS).reshape(n_days, HOURS)

def synth_market(config: SynthConfig, seed: int):
    """Generates a synthetic market whose price is the dispatch clearing price of a
    generated fleet plus a seasonal pattern and gaussian noise

    Args:
        config (SynthConfig): synthesis parameters
        seed (int): random seed, equal seeds give identical markets

    Returns:
        Tuple[HourlyPanel, FleetSpec]: panel with price, fundamentals and mcp series, and the fleet without bound profiles
    """
    # imported here, dispatch depends on the dataset package
    from ..dispatch.clearing import merit_order_prices, rolling_mcp

    if isinstance(config, Mapping):
        config = SynthConfig.from_dict(config)
    rng = np.random.default_rng(seed)
    n = config.n_days
    dates = np.datetime64(config.start, "D") + np.arange(n)
    weekdays = (dates.astype(np.int64) + 3) % 7
    hours = np.arange(HOURS)

    shape = -np.cos(2 * np.pi * (hours - 2) / HOURS)
    weekend = (weekdays >= 5).astype(np.float64)
    load = config.load_mean * (1.0 + config.load_daily_swing * shape[None, :]
        - config.load_weekend_drop * weekend[:, None])
    load = load * (1.0 + config.load_noise * rng.standard_normal((n, HOURS)))

    cf = np.empty(n)
    cf_prev = 0.35
    for d in range(n):
        cf_prev = float(np.clip(0.35 + 0.7 * (cf_prev - 0.35) + 0.15 * rng.standard_normal(), 0.02, 0.95))
        cf[d] = cf_prev
    wind = config.wind_capacity * np.clip(cf[:, None] * (1.0 + 0.1 * rng.standard_normal((n, HOURS))), 0.0, 1.0)

    daylight = np.maximum(np.sin(np.pi * (hours - 6) / 12), 0.0)
    cloud = rng.uniform(0.3, 1.0, size=n)
    solar = config.solar_capacity * cloud[:, None] * daylight[None, :]

    gas = _random_walk(rng, n, 20.0, 0.6, 5.0)
    coal = _random_walk(rng, n, 8.0, 0.2, 2.0)
    co2 = _random_walk(rng, n, 25.0, 0.5, 5.0)

    fleet = _fleet(config, float(load.max()), rng)
    panel = HourlyPanel(dates, {
        "load": load, "wind": wind, "solar": solar,
        "gas": gas, "coal": coal, "co2": co2
    })

    if fleet.storage is None:
        mcp = merit_order_prices(fleet, panel)
    else:
        mcp = rolling_mcp(fleet, panel, window_hours=config.window_hours, keep_hours=config.keep_hours)

    price = mcp + seasonal_component(config, weekdays) + config.noise * rng.standard_normal((n, HOURS))
    panel = panel.with_series(PRICE, price).with_series(MCP, mcp)

    logger.info("synthesized {} days with {} units, mean price {:.2f}".format(n, fleet.n_units, float(price.mean())))
    return panel, fleet
