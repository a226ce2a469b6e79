from typing import Dict, Iterator
import logging

import torch
import torch.nn as nn

logger = logging.getLogger("mcpcast.neural")

ACTIVATIONS = {
    "relu": nn.ReLU,
    "tanh": nn.Tanh,
    "sigmoid": nn.Sigmoid
}

def build_activation(name: str) -> nn.Module:
    assert name in ACTIVATIONS, "given activation {} is not valid, choose one of {}".format(
        name, list(ACTIVATIONS.keys()))
    return ACTIVATIONS[name]()


class PriceArch(nn.Module):
    """Shared loss and optimizer of the 24 output price networks"""

    def penalized_weights(self) -> Iterator[torch.Tensor]:
        """weights entering the L1 penalty, biases are excluded"""
        for name, param in self.named_parameters():
            if not name.split(".")[-1].startswith("b"):
                yield param

    def compute_loss(self, preds: torch.Tensor, targets: torch.Tensor, hparams: Dict = {}) -> torch.Tensor:
        """squared error summed over the 24 outputs, averaged over the batch, plus an L1 weight penalty

        Args:
            preds (torch.Tensor): B x 24
            targets (torch.Tensor): B x 24
            hparams (Dict, optional): `l1` coefficient. Defaults to {}.

        Returns:
            torch.Tensor: scalar loss
        """
        loss = ((preds - targets) ** 2).sum(dim=1).mean()
        l1 = hparams.get("l1", 0.0)
        if l1 > 0:
            loss = loss + l1 * sum(weight.abs().sum() for weight in self.penalized_weights())
        return loss

    def configure_optimizers(self, hparams: Dict = {}):
        optimizer = torch.optim.Adam(
            self.parameters(),
            lr=hparams.get("learning_rate", 1e-3),
            betas=tuple(hparams.get("betas", (0.9, 0.999))),
            eps=hparams.get("eps", 1e-8))
        return optimizer
