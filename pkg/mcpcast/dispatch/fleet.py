__all__ = ["Unit", "PumpedStorage", "FleetSpec", "load_fleet", "merit_order"]

from typing import Dict, Mapping, Optional, Sequence, Tuple
from dataclasses import dataclass, field, replace
import logging

import numpy as np

from ..dataset.base import HourlyPanel
from ..errors import InvalidFleet
from ..utils.config import load_yaml

logger = logging.getLogger("mcpcast.dispatch")

FUELS = ("gas", "coal")
CO2 = "co2"

@dataclass(frozen=True)
class Unit:
    """Dispatchable unit.

    Hourly marginal cost is `marginal_cost + fuel price / efficiency + co2 price * emission_factor`
    when a fuel is set and the fleet carries fuel profiles, `marginal_cost` otherwise.
    Emission factor is tCO2 per MWh of output.
    """
    name: str
    marginal_cost: float
    capacity: float
    fuel: Optional[str] = None
    efficiency: float = 1.0
    emission_factor: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.marginal_cost):
            raise InvalidFleet("unit `{}` has non finite marginal cost".format(self.name))
        if not self.capacity >= 0:
            raise InvalidFleet("unit `{}` has negative capacity {}".format(self.name, self.capacity))
        if self.fuel is not None and self.fuel not in FUELS:
            raise InvalidFleet("unit `{}` fuel must be one of {} not {}".format(self.name, FUELS, self.fuel))
        if not 0 < self.efficiency <= 1:
            raise InvalidFleet("unit `{}` efficiency must be in (0, 1] not {}".format(self.name, self.efficiency))


@dataclass(frozen=True)
class PumpedStorage:
    power: float
    energy_power_factor: float = 9.0
    efficiency: float = 0.75

    def __post_init__(self):
        if not (self.power > 0 and self.energy_power_factor > 0 and 0 < self.efficiency <= 1):
            raise InvalidFleet("invalid pumped storage {}".format(self))

    @property
    def energy(self) -> float:
        return self.power * self.energy_power_factor


@dataclass(frozen=True)
class FleetSpec:
    """Supply side of the single zone dispatch model.

    Renewable and fuel profiles are flat hourly arrays, absent profiles mean zero
    renewable infeed and fuel independent costs.
    """
    units: Tuple[Unit, ...]
    wind: Optional[np.ndarray] = None
    solar: Optional[np.ndarray] = None
    fuel_prices: Mapping[str, np.ndarray] = field(default_factory=dict)
    curtailment_cost: float = 20.0
    shedding_cost: float = 3000.0
    storage: Optional[PumpedStorage] = None

    def __post_init__(self):
        object.__setattr__(self, "units", tuple(self.units))
        for name in ("wind", "solar"):
            profile = getattr(self, name)
            if profile is not None:
                profile = np.asarray(profile, dtype=np.float64).reshape(-1)
                if np.any(profile < 0) or not np.all(np.isfinite(profile)):
                    raise InvalidFleet("{} profile must be finite and non negative".format(name))
                object.__setattr__(self, name, profile)
        object.__setattr__(self, "fuel_prices",
            {k: np.asarray(v, dtype=np.float64).reshape(-1) for k, v in self.fuel_prices.items()})

        if not (np.isfinite(self.curtailment_cost) and np.isfinite(self.shedding_cost)):
            raise InvalidFleet("penalty costs must be finite")
        base = [unit.marginal_cost for unit in self.units]
        if base and not self.shedding_cost > max(base) > -self.curtailment_cost:
            raise InvalidFleet("costs must satisfy shedding {} > max unit cost {} > -curtailment {}".format(
                self.shedding_cost, max(base), -self.curtailment_cost))

    @property
    def n_units(self) -> int:
        return len(self.units)

    @property
    def capacities(self) -> np.ndarray:
        return np.array([unit.capacity for unit in self.units], dtype=np.float64)

    @property
    def total_capacity(self) -> float:
        return float(self.capacities.sum())

    def unit_costs(self, hours: np.ndarray) -> np.ndarray:
        """marginal costs as (len(hours), n_units) matrix"""
        hours = np.asarray(hours, dtype=np.int64)
        costs = np.tile(np.array([unit.marginal_cost for unit in self.units], dtype=np.float64),
            (hours.size, 1))
        for k, unit in enumerate(self.units):
            if unit.fuel is None or unit.fuel not in self.fuel_prices:
                continue
            costs[:, k] += self.fuel_prices[unit.fuel][hours] / unit.efficiency
            if CO2 in self.fuel_prices:
                costs[:, k] += self.fuel_prices[CO2][hours] * unit.emission_factor
        if costs.size > 0 and not (np.all(costs < self.shedding_cost) and np.all(costs > -self.curtailment_cost)):
            raise InvalidFleet("hourly unit costs leave the (-curtailment, shedding) cost range")
        return costs

    def renewables(self, hours: np.ndarray) -> np.ndarray:
        hours = np.asarray(hours, dtype=np.int64)
        total = np.zeros(hours.size)
        for profile in (self.wind, self.solar):
            if profile is not None:
                total += profile[hours]
        return total

    def horizon(self) -> Optional[int]:
        """hours covered by the bound profiles, None when no profile is bound"""
        lengths = [p.size for p in (self.wind, self.solar) if p is not None]
        lengths += [p.size for p in self.fuel_prices.values()]
        return min(lengths) if lengths else None

    def with_profiles(self, wind: Optional[np.ndarray] = None, solar: Optional[np.ndarray] = None,
            fuels: Optional[Mapping[str, np.ndarray]] = None) -> "FleetSpec":
        """returns a copy with the given hourly renewable and fuel profiles bound"""
        return replace(self, wind=wind, solar=solar, fuel_prices=dict(fuels or {}))

    def bind_panel(self, panel: HourlyPanel) -> "FleetSpec":
        """binds the renewable, fuel and co2 series of the panel, keeping profiles already set"""
        wind = self.wind if self.wind is not None or "wind" not in panel else panel.hourly("wind")
        solar = self.solar if self.solar is not None or "solar" not in panel else panel.hourly("solar")
        fuels = dict(self.fuel_prices)
        for name in FUELS + (CO2,):
            if name not in fuels and name in panel:
                fuels[name] = panel.hourly(name)
        return self.with_profiles(wind=wind, solar=solar, fuels=fuels)

    def without_storage(self) -> "FleetSpec":
        return replace(self, storage=None)

    def to_dict(self) -> Dict:
        config = {
            "curtailment_cost": float(self.curtailment_cost),
            "shedding_cost": float(self.shedding_cost),
            "units": [
                {k: v for k, v in {
                    "name": unit.name,
                    "marginal_cost": float(unit.marginal_cost),
                    "capacity": float(unit.capacity),
                    "fuel": unit.fuel,
                    "efficiency": float(unit.efficiency),
                    "emission_factor": float(unit.emission_factor)}.items() if v is not None}
                for unit in self.units
            ]
        }
        if self.storage is not None:
            config["storage"] = {
                "power": float(self.storage.power),
                "energy_power_factor": float(self.storage.energy_power_factor),
                "efficiency": float(self.storage.efficiency)
            }
        return config

    @classmethod
    def from_dict(cls, config: Mapping) -> "FleetSpec":
        if "units" not in config:
            raise InvalidFleet("fleet config must contain `units`")
        try:
            units = [Unit(**unit) for unit in config["units"]]
            storage = PumpedStorage(**config["storage"]) if config.get("storage") else None
        except TypeError as e:
            raise InvalidFleet("invalid fleet entry: {}".format(e)) from None
        return cls(units=tuple(units),
            curtailment_cost=float(config.get("curtailment_cost", 20.0)),
            shedding_cost=float(config.get("shedding_cost", 3000.0)),
            storage=storage)

def load_fleet(yaml_file_path: str) -> FleetSpec:
    """Loads a fleet from yaml, see `config_zoo/fleet_desk.yaml`"""
    config = load_yaml(yaml_file_path)
    fleet = FleetSpec.from_dict(config.get("fleet", config))
    logger.info("loaded fleet with {} units and {:.1f} MW capacity".format(fleet.n_units, fleet.total_capacity))
    return fleet

def merit_order(costs: Sequence[float]) -> np.ndarray:
    """unit order by cost, ties by unit index"""
    return np.argsort(np.asarray(costs), kind="stable")
