__all__ = ["PriceForecaster"]

import os
from typing import Dict, Union

import yaml
import numpy as np
import torch
import torch.nn as nn
import pytorch_lightning as pl

from . import api
from . import utils
from .metric.mae import PriceMAE
from .transforms import build_scaler, ZScore

class PriceForecaster(pl.LightningModule):
    """Generic pl.LightningModule definition for 24 hour price forecasting networks

    Inputs are scaled with fitted statistics kept as buffers, targets are z-scored;
    `forward` and `predict` work in the original price scale.
    """

    def __init__(self, arch: nn.Module = None, hparams: Dict = None):
        super().__init__()
        self.save_hyperparameters(hparams if hparams is not None else {})
        self.arch = arch
        self.val_mae = PriceMAE()
        self.history = []

        kwargs = self.hparams.get("kwargs", {})
        self.init_preprocess(in_features=kwargs.get("in_features", 1),
            out_features=kwargs.get("out_features", 24))

    def init_preprocess(self, in_features: int = 1, out_features: int = 24):
        self.register_buffer("x_shift", torch.zeros(in_features, dtype=torch.float64))
        self.register_buffer("x_scale", torch.ones(in_features, dtype=torch.float64))
        self.register_buffer("y_shift", torch.zeros(out_features, dtype=torch.float64))
        self.register_buffer("y_scale", torch.ones(out_features, dtype=torch.float64))

    def fit_scalers(self, X: np.ndarray, Y: np.ndarray):
        """fits the input scaler named by the `preprocess` hyperparameter and the target z-score"""
        x_scaler = build_scaler(self.hparams.get("preprocess", {}).get("inputs", "zscore")).fit(X)
        y_scaler = ZScore().fit(Y)
        with torch.no_grad():
            self.x_shift.copy_(torch.from_numpy(x_scaler.shift))
            self.x_scale.copy_(torch.from_numpy(x_scaler.scale))
            self.y_shift.copy_(torch.from_numpy(y_scaler.shift))
            self.y_scale.copy_(torch.from_numpy(y_scaler.scale))

    def scale_inputs(self, batch: torch.Tensor) -> torch.Tensor:
        return (batch - self.x_shift.to(batch.dtype)) / self.x_scale.to(batch.dtype)

    def scale_targets(self, targets: torch.Tensor) -> torch.Tensor:
        return (targets - self.y_shift.to(targets.dtype)) / self.y_scale.to(targets.dtype)

    def unscale_targets(self, preds: torch.Tensor) -> torch.Tensor:
        return preds * self.y_scale.to(preds.dtype) + self.y_shift.to(preds.dtype)

    def forward(self, batch: torch.Tensor) -> torch.Tensor:
        """batch of raw regressor rows, B x in_features, to B x 24 prices"""
        return self.unscale_targets(self.arch.forward(self.scale_inputs(batch)))

    @torch.jit.unused
    def predict(self, X: np.ndarray) -> np.ndarray:
        """Forecasts prices for raw regressor rows

        Args:
            X (np.ndarray): (B, in_features) or (in_features,) regressors

        Returns:
            np.ndarray: (B, 24) or (24,) prices
        """
        X = np.asarray(X, dtype=np.float64)
        single = X.ndim == 1
        batch = torch.from_numpy(np.atleast_2d(X)).to(self.x_shift.device, self.dtype)
        self.eval()
        with torch.no_grad():
            preds = self.forward(batch).cpu().double().numpy()
        return preds[0] if single else preds

    def training_step(self, batch, batch_idx):
        batch, targets = batch
        logits = self.arch.forward(self.scale_inputs(batch))
        loss = self.arch.compute_loss(logits, self.scale_targets(targets),
            hparams=self.hparams["hparams"])
        self.log("loss/training", loss, on_step=False, on_epoch=True, batch_size=batch.shape[0])
        return loss

    def on_validation_epoch_start(self):
        self.val_mae.reset()

    def validation_step(self, batch, batch_idx):
        batch, targets = batch
        with torch.no_grad():
            logits = self.arch.forward(self.scale_inputs(batch))
            loss = self.arch.compute_loss(logits, self.scale_targets(targets),
                hparams=self.hparams["hparams"])
        self.val_mae.update(self.unscale_targets(logits), targets)
        self.log("loss/validation", loss, on_step=False, on_epoch=True, batch_size=batch.shape[0])
        return loss

    def on_validation_epoch_end(self):
        self.log("mae/validation", self.val_mae.compute())

    def configure_optimizers(self):
        return self.arch.configure_optimizers(hparams=self.hparams["hparams"])

    @classmethod
    def build_from_yaml(cls, yaml_file_path: str, **kwargs) -> pl.LightningModule:
        """Classmethod for creating `mcpcast.PriceForecaster` instance from scratch using yaml file

        Args:
            yaml_file_path (str): yaml file path

        Returns:
            pl.LightningModule: mcpcast.PriceForecaster instance with random weights initialization
        """
        assert os.path.isfile(yaml_file_path), "could not find the yaml file given {}".format(yaml_file_path)
        with open(yaml_file_path, "r") as foo:
            yaml_config = yaml.load(foo, Loader=yaml.FullLoader)

        assert "arch" in yaml_config, "yaml file must contain `arch` key"
        assert "config" in yaml_config, "yaml file must contain `config` key"

        arch = yaml_config["arch"]
        config = yaml_config["config"]
        preprocess = yaml_config.get("preprocess", {"inputs": "zscore"})
        hparams = yaml_config.get("hparams", {})
        build_kwargs = dict(yaml_config.get("kwargs", {}))
        build_kwargs.update(kwargs)

        return cls.build(arch, config, preprocess=preprocess, hparams=hparams, **build_kwargs)

    @classmethod
    def build(cls, arch: str, config: Union[str, Dict], preprocess: Dict = {"inputs": "zscore"},
            hparams: Dict = {}, seed: int = None, **kwargs) -> pl.LightningModule:
        """Classmethod for creating `mcpcast.PriceForecaster` instance from scratch

        Args:
            arch (str): architecture name
            config (Union[str, Dict]): configuration name or configuration dictionary
            preprocess (Dict, optional): input scaling, `inputs` is one of zscore, minmax or none. Defaults to {"inputs": "zscore"}.
            hparams (Dict, optional): training hyper parameters (learning_rate, l1, betas, eps). Defaults to {}.
            seed (int, optional): weight initialization seed. Defaults to None.

        Returns:
            pl.LightningModule: mcpcast.PriceForecaster instance with random weights initialization
        """
        assert isinstance(preprocess, dict), "preprocess must be dict, not {}".format(type(preprocess))

        # get architecture nn.Module class
        arch_cls = utils.config.get_arch_cls(arch)

        # check config
        if isinstance(config, str):
            config = api.get_arch_config(arch, config)

        if seed is not None:
            pl.seed_everything(seed, workers=True)

        # weights are created in double precision
        default_dtype = torch.get_default_dtype()
        torch.set_default_dtype(torch.float64)
        try:
            arch_module = arch_cls(config=config, **kwargs)
        finally:
            torch.set_default_dtype(default_dtype)

        module_params = {
            "hparams": dict(hparams),
            "preprocess": dict(preprocess),
            "config": dict(config),
            "arch": arch,
            "seed": seed,
            "kwargs": dict(kwargs)
        }

        # build pl.LightninModule with given architecture
        return cls(arch=arch_module, hparams=module_params).double()

    def save(self, ckpt_path: str):
        """writes weights, scaling buffers and the build header to a torch checkpoint"""
        torch.save({
            "state_dict": self.state_dict(),
            "hyper_parameters": dict(self.hparams),
            "pytorch-lightning_version": pl.__version__
        }, ckpt_path)

    @classmethod
    def from_checkpoint(cls, ckpt_path: str) -> pl.LightningModule:
        """Classmethod for creating `mcpcast.PriceForecaster` instance, using checkpoint file path

        Args:
            ckpt_path (str): file path of the checkpoint

        Returns:
            pl.LightningModule: mcpcast.PriceForecaster instance with checkpoint weights
        """
        assert os.path.isfile(ckpt_path), "could not find the checkpoint given {}".format(ckpt_path)
        checkpoint = torch.load(ckpt_path, map_location="cpu", weights_only=False)
        hparams = checkpoint["hyper_parameters"]
        model = cls.build(hparams["arch"], hparams["config"], preprocess=hparams["preprocess"],
            hparams=hparams["hparams"], **hparams["kwargs"])
        # keep the recorded seed and extra header entries
        model.hparams.update(hparams)
        model.load_state_dict(checkpoint["state_dict"])
        return model
