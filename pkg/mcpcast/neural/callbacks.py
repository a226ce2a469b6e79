__all__ = ["BestValidation"]

from typing import Dict, List, Optional
import copy
import logging
import math

import pytorch_lightning as pl

from ..errors import NonFiniteLoss

logger = logging.getLogger("mcpcast.neural")

class BestValidation(pl.Callback):
    """Early stopping on the validation loss that restores the best weights at the end of fit.

    Training stops once the validation loss has not improved for `patience`
    consecutive evaluations; with patience 0 it stops after the first one.
    A non finite loss aborts the fit with NonFiniteLoss.
    """

    def __init__(self, patience: int = 10, monitor: str = "loss/validation"):
        super().__init__()
        assert patience >= 0, "patience must be non negative not {}".format(patience)
        self.patience = patience
        self.monitor = monitor
        self.best: float = math.inf
        self.best_epoch: int = -1
        self.best_state: Optional[Dict] = None
        self.wait = 0
        self.history: List[Dict] = []

    def on_train_batch_end(self, trainer, pl_module, outputs, batch, batch_idx):
        loss = outputs["loss"] if isinstance(outputs, dict) else outputs
        value = float(loss.detach())
        if not math.isfinite(value):
            raise NonFiniteLoss(trainer.current_epoch, value)

    def on_validation_epoch_end(self, trainer, pl_module):
        if trainer.sanity_checking:
            return
        epoch = trainer.current_epoch
        value = float(trainer.callback_metrics[self.monitor])
        if not math.isfinite(value):
            raise NonFiniteLoss(epoch, value)

        self.history.append({"epoch": epoch, "validation": value})
        if value < self.best:
            self.best = value
            self.best_epoch = epoch
            self.best_state = copy.deepcopy(pl_module.state_dict())
            self.wait = 0
        else:
            self.wait += 1

        if self.wait >= self.patience:
            trainer.should_stop = True

    def on_train_epoch_end(self, trainer, pl_module):
        training = trainer.callback_metrics.get("loss/training")
        if training is not None and self.history and self.history[-1]["epoch"] == trainer.current_epoch:
            self.history[-1]["training"] = float(training)

    def on_fit_end(self, trainer, pl_module):
        if self.best_state is not None:
            pl_module.load_state_dict(self.best_state)
            logger.debug("restored weights of epoch {} with validation loss {:.6g}".format(
                self.best_epoch, self.best))
