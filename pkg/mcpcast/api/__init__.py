__all__ = [
    "list_archs",
    "list_arch_configs",
    "get_arch_config",
    "list_forecasters",
    "list_storage_archetypes",
    "get_storage_archetype"
]

from typing import List, Dict

from ..utils.config import (
    discover_archs,
    get_arch_cls,
    get_registry
)

def list_archs() -> List[str]:
    """Returns available architecture names

    Returns:
        List[str]: list of arch names

    >>> import mcpcast as mc
    >>> mc.list_archs()
    ['dnn', 'lstm']

    """
    return [arch for arch, _ in discover_archs()]

def list_arch_configs(arch: str) -> List[str]:
    """Returns available architecture configurations as list

    Args:
        arch (str): architecture name

    Returns:
        List[str]: list of arch config names

    >>> import mcpcast as mc
    >>> mc.list_arch_configs('dnn')
    ['linear', 'shallow', 'default', 'deep']

    """
    return list(get_arch_cls(arch).__CONFIGS__.keys())

def get_arch_config(arch: str, config: str) -> Dict:
    """Returns configuration dictionary for given arch and config names

    Args:
        arch (str): architecture name
        config (str): configuration name

    Returns:
        Dict: configuration details as dictionary

    >>> import mcpcast as mc
    >>> mc.get_arch_config('lstm', 'small')
    {'hidden_size': 8, 'sequence_length': 72}

    """
    arch_cls = get_arch_cls(arch)
    assert config in arch_cls.__CONFIGS__, "given config {} is not valid for {}, choose one of {}".format(
        config, arch, list(arch_cls.__CONFIGS__.keys()))
    return arch_cls.__CONFIGS__[config].copy()

def list_forecasters() -> List[str]:
    """Returns forecaster names usable in run configurations

    >>> import mcpcast as mc
    >>> mc.list_forecasters()
    ['naive', 'esm', 'larx', 'lear', 'ens_lear', 'dnn', 'ens_dnn', 'lstm', 'rf']
    """
    # imported here, forecasters depend on the whole package
    from ..forecaster import __FORECASTERS__
    return list(__FORECASTERS__.keys())

def list_storage_archetypes() -> List[str]:
    """Returns the preconfigured storage archetypes

    >>> import mcpcast as mc
    >>> mc.list_storage_archetypes()
    ['storage_1', 'storage_2', 'storage_3']
    """
    return list(get_registry().get("storage", {}).keys())

def get_storage_archetype(name: str) -> Dict:
    """Returns `ecr` and `eta` of a storage archetype

    >>> import mcpcast as mc
    >>> mc.get_storage_archetype('storage_1')
    {'ecr': 7.0, 'eta': 0.75}
    """
    archetypes = get_registry().get("storage", {})
    assert name in archetypes, "given storage archetype {} is not in the registry".format(name)
    return dict(archetypes[name])
