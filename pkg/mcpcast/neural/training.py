__all__ = ["train", "build_trainer"]

from typing import Dict, List, Tuple
import logging

import numpy as np
import pytorch_lightning as pl

from .callbacks import BestValidation
from .data import make_loader

logger = logging.getLogger("mcpcast.neural")

def build_trainer(epochs: int, callbacks: List[pl.Callback], progress: bool = False) -> pl.Trainer:
    return pl.Trainer(
        max_epochs=epochs,
        accelerator="cpu",
        devices=1,
        precision="64-true",
        logger=False,
        enable_checkpointing=False,
        enable_progress_bar=progress,
        enable_model_summary=False,
        num_sanity_val_steps=0,
        deterministic=True,
        callbacks=callbacks)

def train(model: pl.LightningModule, train_set: Tuple[np.ndarray, np.ndarray],
        validation_set: Tuple[np.ndarray, np.ndarray], epochs: int = 200, patience: int = 20,
        batch_size: int = 32, seed: int = 0, progress: bool = False) -> Tuple[pl.LightningModule, List[Dict]]:
    """Mini-batch Adam training with early stopping on the validation loss

    Scalers are fitted on the training rows. The returned model carries the weights
    of the best validation evaluation.

    Args:
        model (pl.LightningModule): mcpcast.PriceForecaster instance
        train_set (Tuple[np.ndarray, np.ndarray]): (inputs, 24 hour targets) used for gradient steps
        validation_set (Tuple[np.ndarray, np.ndarray]): rows used for early stopping only
        epochs (int, optional): epoch limit. Defaults to 200.
        patience (int, optional): evaluations without improvement before stopping. Defaults to 20.
        batch_size (int, optional): mini batch size. Defaults to 32.
        seed (int, optional): shuffling and dropout seed. Defaults to 0.

    Returns:
        Tuple[pl.LightningModule, List[Dict]]: trained model and per epoch losses
    """
    X_train, Y_train = train_set
    X_val, Y_val = validation_set
    assert len(X_train) > 0 and len(X_val) > 0, "training and validation sets must not be empty"
    assert epochs >= 1, "at least one epoch is required"

    pl.seed_everything(seed, workers=True)
    model.fit_scalers(X_train, Y_train)

    train_loader = make_loader(X_train, Y_train, batch_size=batch_size, shuffle=True, seed=seed)
    val_loader = make_loader(X_val, Y_val, batch_size=len(X_val))

    callback = BestValidation(patience=patience)
    trainer = build_trainer(epochs, [callback], progress=progress)
    trainer.fit(model, train_loader, val_loader)

    model.history = callback.history
    logger.debug("trained for {} epochs, best validation loss {:.6g} at epoch {}".format(
        len(callback.history), callback.best, callback.best_epoch))
    return model, callback.history
