__all__ = ["load_yaml", "get_registry", "discover_archs", "get_arch_cls"]

from typing import Dict, Iterator, Tuple
import importlib
import os

import yaml

PKG_ROOT = os.path.dirname(os.path.dirname(os.path.realpath(__file__)))
REGISTRY_PATH = os.path.join(PKG_ROOT, "registry.yaml")
ARCH_PATH = os.path.join(PKG_ROOT, "arch")

def load_yaml(yaml_file_path: str) -> Dict:
    """loads a yaml mapping, an empty file gives an empty dict"""
    assert os.path.isfile(yaml_file_path), "could not find the yaml file given {}".format(yaml_file_path)
    with open(yaml_file_path, "r") as foo:
        content = yaml.load(foo, Loader=yaml.FullLoader)
    content = {} if content is None else content
    assert isinstance(content, dict), "{} must hold a mapping not {}".format(yaml_file_path, type(content).__name__)
    return content

def get_registry() -> Dict:
    """package registry, storage archetypes keyed by name with their `ecr` and `eta`"""
    return load_yaml(REGISTRY_PATH)

def discover_archs() -> Iterator[Tuple[str, str]]:
    """Yields (arch name, path of its module.py) for every package under `mcpcast/arch`"""
    for entry in sorted(os.scandir(ARCH_PATH), key=lambda e: e.name):
        if not entry.is_dir() or entry.name.startswith("__"):
            continue
        module_path = os.path.join(entry.path, "module.py")
        assert os.path.isfile(module_path), "arch package {} must contain module.py".format(entry.name)
        yield entry.name, module_path

def get_arch_cls(arch: str):
    """network class of `arch`, the class in its module.py named like the arch and carrying `__CONFIGS__`"""
    names = [name for name, _ in discover_archs()]
    assert arch in names, "given arch {} is not found, choose one of {}".format(arch, names)
    api = importlib.import_module("mcpcast.arch.{}.module".format(arch))
    for name in dir(api):
        candidate = getattr(api, name)
        if name.lower() == arch and hasattr(candidate, "__CONFIGS__"):
            return candidate
    raise AssertionError("arch {} defines no network class with `__CONFIGS__`".format(arch))
