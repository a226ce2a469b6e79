__all__ = ["StorageSpec", "StoragePlan", "LOSS_ON_CHARGE", "LOSS_ON_DISCHARGE"]

from typing import Dict
from dataclasses import dataclass, asdict

import numpy as np

from ..errors import InvalidConfig
from ..utils.config import get_registry

LOSS_ON_CHARGE = "charge"
LOSS_ON_DISCHARGE = "discharge"

@dataclass(frozen=True)
class StorageSpec:
    """Storage plant bidding into the day-ahead market.

    `cap` is the generation capacity in MW, `ecr` the hours a full storage can
    generate at rated power and `eta` the cycle efficiency. `loss_on` selects where
    the cycle loss is booked: on charging (the level grows by eta * charge) or on
    generation (the level shrinks by generation / eta).

    Generation is the default, so `ecr` measures the energy bought: a 1 MW, 1 h plant
    buying at 10 and selling at 50 with eta 0.9 plans 35.0. With `loss_on="charge"`
    `ecr` measures the energy stored after charging losses and the same day plans
    50 - 10 / 0.9.
    """
    cap: float = 1.0
    ecr: float = 1.0
    eta: float = 0.9
    loss_on: str = LOSS_ON_DISCHARGE
    name: str = "storage"

    def __post_init__(self):
        if not self.cap > 0:
            raise InvalidConfig("storage `{}`: cap must be positive not {}".format(self.name, self.cap))
        if not self.ecr > 0:
            raise InvalidConfig("storage `{}`: ecr must be positive not {}".format(self.name, self.ecr))
        if not 0 < self.eta <= 1:
            raise InvalidConfig("storage `{}`: eta must be in (0, 1] not {}".format(self.name, self.eta))
        if self.loss_on not in (LOSS_ON_CHARGE, LOSS_ON_DISCHARGE):
            raise InvalidConfig("storage `{}`: loss_on must be `charge` or `discharge` not {}".format(
                self.name, self.loss_on))

    @property
    def energy(self) -> float:
        """storage volume in MWh"""
        return self.cap * self.ecr

    @classmethod
    def from_archetype(cls, name: str, cap: float = 1.0, **kwargs) -> "StorageSpec":
        """builds one of the preconfigured archetypes of the package registry"""
        archetypes = get_registry().get("storage", {})
        if name not in archetypes:
            raise InvalidConfig("unknown storage archetype `{}`, choose one of {}".format(
                name, sorted(archetypes.keys())))
        params = dict(archetypes[name])
        params.update(kwargs)
        return cls(cap=cap, name=name, **params)

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass(frozen=True)
class StoragePlan:
    """Hourly schedule of one delivery day; level is the stored energy at the end of each hour"""
    charge: np.ndarray
    generation: np.ndarray
    level: np.ndarray
    objective: float

    def __post_init__(self):
        for name in ("charge", "generation", "level"):
            values = np.array(getattr(self, name), dtype=np.float64).reshape(-1)
            values.setflags(write=False)
            object.__setattr__(self, name, values)
        assert self.charge.size == self.generation.size == self.level.size, \
            "charge, generation and level must cover the same hours"

    @property
    def hours(self) -> int:
        return self.charge.size

    @classmethod
    def idle(cls, hours: int = 24) -> "StoragePlan":
        zeros = np.zeros(hours)
        return cls(charge=zeros, generation=zeros, level=zeros, objective=0.0)
