from typing import Dict, List, Union
import logging

import torch
import torch.nn as nn

from ..base import PriceArch, build_activation
from ...errors import DimensionMismatch

logger = logging.getLogger("mcpcast.neural")

class DNN(PriceArch):
    """Feedforward network mapping one daily regressor row to the 24 hourly prices"""

    __CONFIGS__ = {
        "linear": {
            "hidden": [],
            "activation": "relu",
            "dropout": 0.0
        },

        "shallow": {
            "hidden": [64],
            "activation": "relu",
            "dropout": 0.0
        },

        "default": {
            "hidden": [128, 64],
            "activation": "relu",
            "dropout": 0.0
        },

        "deep": {
            "hidden": [128, 96, 64],
            "activation": "relu",
            "dropout": 0.1
        }
    }

    def __init__(self, config: Dict, in_features: int = 1, out_features: int = 24, **kwargs):
        super().__init__()

        assert "hidden" in config, "`hidden` must be defined in the config"
        hidden = list(config["hidden"])
        assert len(hidden) <= 3, "at most 3 hidden layers are supported not {}".format(len(hidden))
        assert in_features >= 1 and out_features >= 1, "layer sizes must be positive"
        assert all(size >= 1 for size in hidden), "hidden sizes must be positive not {}".format(hidden)

        activation: Union[str, List[str]] = config.get("activation", "relu")
        activations = [activation] * len(hidden) if isinstance(activation, str) else list(activation)
        assert len(activations) == len(hidden), "one activation per hidden layer is required"

        dropout = float(config.get("dropout", 0.0))
        assert 0 <= dropout < 1, "dropout must be in [0, 1) not {}".format(dropout)

        if config.get("batch_norm", False):
            logger.warning("batch normalization is not supported, the flag is ignored")

        self.in_features = in_features
        self.out_features = out_features

        sizes = [in_features] + hidden
        layers = []
        for idx, act in enumerate(activations):
            layers.append(nn.Linear(sizes[idx], sizes[idx + 1]))
            layers.append(build_activation(act))
            if dropout > 0:
                layers.append(nn.Dropout(p=dropout))
        layers.append(nn.Linear(sizes[-1], out_features))
        self.layers = nn.Sequential(*layers)

    def forward(self, batch: torch.Tensor) -> torch.Tensor:
        """
        Args:
            batch (torch.Tensor): B x in_features scaled regressors

        Returns:
            torch.Tensor: B x 24 scaled prices
        """
        if batch.shape[-1] != self.in_features:
            raise DimensionMismatch("network expects {} inputs, given {}".format(self.in_features, batch.shape[-1]))
        return self.layers(batch)
