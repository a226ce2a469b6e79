import os

import numpy as np
import pytest

import mcpcast as mc

@pytest.mark.parametrize("func",
    [
        "get_cache_dir", "get_report_dir", "get_model_dir"
    ]
)
def test_cache_func_exists(func: str):
    assert func in dir(mc.utils.cache), "{} not found in the mcpcast.utils.cache".format(func)

@pytest.mark.parametrize("func",
    [
        "get_registry", "load_yaml", "discover_archs", "get_arch_cls"
    ]
)
def test_config_func_exists(func: str):
    assert func in dir(mc.utils.config), "{} not found in the mcpcast.utils.config".format(func)

@pytest.mark.parametrize("func", ["derive_seed", "make_rng"])
def test_random_func_exists(func: str):
    assert func in dir(mc.utils.random), "{} not found in the mcpcast.utils.random".format(func)

def test_cache_dirs_exist():
    for path in (mc.utils.cache.get_cache_dir(), mc.utils.cache.get_report_dir("unit"), mc.utils.cache.get_model_dir()):
        assert os.path.isdir(path), "{} must be created on access".format(path)
    assert mc.utils.cache.get_report_dir().startswith(mc.utils.cache.get_cache_dir()), "reports live in the cache"

def test_cache_dir_override(tmp_path, monkeypatch):
    monkeypatch.setenv(mc.utils.cache.CACHE_ENV, str(tmp_path))
    assert mc.utils.cache.get_cache_dir() == os.path.join(str(tmp_path), mc.__version__), \
        "cache root must follow {}".format(mc.utils.cache.CACHE_ENV)
    assert os.path.isdir(mc.utils.cache.get_model_dir("lear")), "model dir must be created under the override"

def test_load_yaml_rejects_lists(tmp_path):
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n")
    with pytest.raises(AssertionError):
        mc.utils.config.load_yaml(str(path))
    empty = tmp_path / "empty.yaml"
    empty.write_text("")
    assert mc.utils.config.load_yaml(str(empty)) == {}, "an empty file is an empty mapping"

def test_registry_holds_storage_archetypes():
    registry = mc.utils.config.get_registry()
    assert set(registry["storage"]) == {"storage_1", "storage_2", "storage_3"}, \
        "unexpected archetypes {}".format(sorted(registry["storage"]))

def test_discover_archs():
    archs = dict(mc.utils.config.discover_archs())
    assert sorted(archs) == ["dnn", "lstm"], "unexpected archs {}".format(sorted(archs))
    assert all(path.endswith("module.py") for path in archs.values()), "every arch must ship a module.py"
    assert mc.utils.config.get_arch_cls("lstm").__name__ == "LSTM", "lstm arch must resolve to the LSTM class"
    with pytest.raises(AssertionError):
        mc.utils.config.get_arch_cls("gru")

def test_derived_seeds():
    assert mc.utils.random.derive_seed(5, 1) == mc.utils.random.derive_seed(5, 1), "derivation must be stable"
    seeds = {mc.utils.random.derive_seed(5, k) for k in range(100)}
    assert len(seeds) == 100, "streams of one master seed must not collide"
    a = mc.utils.random.make_rng(5, 2).normal(size=3)
    b = np.random.default_rng(mc.utils.random.derive_seed(5, 2)).normal(size=3)
    assert np.array_equal(a, b), "make_rng must draw from the derived seed"
