import pytest
import mcpcast as mc

@pytest.mark.parametrize("api",
    [
        "list_archs", "list_arch_configs", "get_arch_config",
        "list_forecasters", "list_storage_archetypes", "get_storage_archetype"
    ]
)
def test_api_exists(api):
    assert api in dir(mc), "{} not found in the mcpcast".format(api)

def test_list_archs():
    archs = mc.list_archs()
    assert isinstance(archs, list), "returned value must be list but found:{}".format(type(archs))
    assert set(archs) == {"dnn", "lstm"}, "unexpected architectures {}".format(archs)

@pytest.mark.parametrize("arch", mc.list_archs())
def test_list_arch_configs(arch: str):
    arch_configs = mc.list_arch_configs(arch)
    assert isinstance(arch_configs, list), "returned value must be list but found:{}".format(type(arch_configs))
    assert len(arch_configs) > 0, "{} has no configs".format(arch)
    for arch_config in arch_configs:
        assert isinstance(arch_config, str), "architecture config must contain string but found:{}".format(type(arch_config))

@pytest.mark.parametrize("arch", mc.list_archs())
def test_get_arch_config(arch: str):
    for arch_config in mc.list_arch_configs(arch):
        config = mc.get_arch_config(arch, arch_config)
        assert isinstance(config, dict), "{} config must be dict but found: {}".format(arch_config, type(config))

def test_get_arch_config_returns_copy():
    config = mc.get_arch_config("dnn", "default")
    config["hidden"] = [1]
    assert mc.get_arch_config("dnn", "default")["hidden"] == [128, 64], "registry config was mutated"

def test_list_forecasters():
    names = mc.list_forecasters()
    for name in ["naive", "esm", "larx", "lear", "ens_lear", "dnn", "ens_dnn", "lstm", "rf"]:
        assert name in names, "{} not found in the forecasters".format(name)

@pytest.mark.parametrize("name, ecr, eta",
    [
        ("storage_1", 7.0, 0.75),
        ("storage_2", 3.0, 0.8),
        ("storage_3", 1.0, 0.9)
    ]
)
def test_get_storage_archetype(name: str, ecr: float, eta: float):
    archetype = mc.get_storage_archetype(name)
    assert archetype == {"ecr": ecr, "eta": eta}, "{} archetype must be {} but found {}".format(
        name, {"ecr": ecr, "eta": eta}, archetype)

def test_version():
    assert isinstance(mc.__version__, str), "version must be a string"
