import os
import tempfile

import numpy as np

import pytest
import torch
import pytorch_lightning as pl

import mcpcast as mc

from . import utils

@pytest.mark.parametrize("api",
    [
        "build", "build_from_yaml", "from_checkpoint", "save", "predict", "fit_scalers"
    ]
)
def test_api_exists(api):
    assert api in dir(mc.PriceForecaster), "{} not found in the mcpcast.PriceForecaster".format(api)

@pytest.mark.parametrize("arch,config", list(utils.build_module_args()))
def test_module_build(arch: str, config: str):
    module = mc.PriceForecaster.build(arch, config)
    assert isinstance(module, pl.LightningModule), "module must be instance of pl.LightningModule but found:{}".format(type(module))
    config = mc.get_arch_config(arch, config)
    module = mc.PriceForecaster.build(arch, config)
    assert isinstance(module, pl.LightningModule), "module must be instance of pl.LightningModule but found:{}".format(type(module))
    assert module.dtype == torch.float64, "module must be built in double precision but found {}".format(module.dtype)

@pytest.mark.parametrize("yaml_file_path", [
    "config_zoo/dnn_default.yaml",
    "config_zoo/lstm_small.yaml"
])
def test_module_build_from_yaml(yaml_file_path: str):
    module = mc.PriceForecaster.build_from_yaml(yaml_file_path)
    assert isinstance(module, pl.LightningModule), "module must be instance of pl.LightningModule but found:{}".format(type(module))

@pytest.mark.parametrize("arch, config, in_features",
    [
        ("dnn", "shallow", 10),
        ("dnn", "deep", 10),
        ("lstm", "small", 72 + 7)
    ]
)
def test_module_predict(arch: str, config: str, in_features: int):
    module = mc.PriceForecaster.build(arch, config, seed=0, in_features=in_features)
    X = np.random.default_rng(0).normal(size=(3, in_features))
    preds = module.predict(X)
    assert preds.shape == (3, 24), "predictions must be (3, 24) but found {}".format(preds.shape)
    single = module.predict(X[0])
    assert single.shape == (24,), "single row prediction must be (24,) but found {}".format(single.shape)
    assert np.allclose(single, preds[0]), "single row and batch predictions must agree"

def test_module_build_is_seeded():
    a = mc.PriceForecaster.build("dnn", "shallow", seed=3, in_features=5)
    b = mc.PriceForecaster.build("dnn", "shallow", seed=3, in_features=5)
    for (name, pa), (_, pb) in zip(a.named_parameters(), b.named_parameters()):
        assert torch.equal(pa, pb), "{} differs between equally seeded builds".format(name)

def test_module_scalers():
    module = mc.PriceForecaster.build("dnn", "linear", seed=0, in_features=2)
    X = np.array([[1.0, 10.0], [3.0, 30.0]])
    Y = np.tile(np.array([[50.0], [70.0]]), (1, 24))
    module.fit_scalers(X, Y)
    scaled = module.scale_inputs(torch.from_numpy(X))
    assert torch.allclose(scaled.mean(dim=0), torch.zeros(2, dtype=torch.float64)), "scaled inputs must be centered"
    restored = module.unscale_targets(module.scale_targets(torch.from_numpy(Y)))
    assert torch.allclose(restored, torch.from_numpy(Y)), "target scaling must be invertible"

def test_module_save_and_from_checkpoint():
    module = mc.PriceForecaster.build("dnn", "shallow", seed=0, in_features=6)
    rng = np.random.default_rng(0)
    module.fit_scalers(rng.normal(size=(10, 6)), rng.normal(size=(10, 24)))
    X = rng.normal(size=(4, 6))
    with tempfile.TemporaryDirectory() as tmpdir:
        path = os.path.join(tmpdir, "dnn.ckpt")
        module.save(path)
        loaded = mc.PriceForecaster.from_checkpoint(path)
    assert np.array_equal(loaded.predict(X), module.predict(X)), "checkpoint must restore identical predictions"
