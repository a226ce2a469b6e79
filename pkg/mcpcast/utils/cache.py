__all__ = ["get_cache_dir", "get_report_dir", "get_model_dir"]

import os

from ..version import __version__

# overrides ~/.cache/mcpcast, outputs of one package version stay together
CACHE_ENV = "MCPCAST_CACHE"

def _ensure_dir(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path

def get_cache_dir() -> str:
    root = os.environ.get(CACHE_ENV) or os.path.join(os.path.expanduser("~"), ".cache", "mcpcast")
    return _ensure_dir(os.path.join(root, __version__))

def get_report_dir(run: str = "") -> str:
    """default output of the reporting subcommands"""
    return _ensure_dir(os.path.join(get_cache_dir(), "reports", run))

def get_model_dir(run: str = "") -> str:
    """default output of `mcpcast fit`"""
    return _ensure_dir(os.path.join(get_cache_dir(), "models", run))
