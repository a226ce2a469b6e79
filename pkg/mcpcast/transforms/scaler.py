__all__ = ["ZScore", "MinMax", "Identity", "build_scaler", "list_scalers"]

from typing import Tuple, List
import numpy as np

class _Scaler():
    """Column-wise affine scaler, (x - shift) / scale"""

    def __init__(self):
        self.shift = None
        self.scale = None

    def _stats(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def fit(self, x: np.ndarray) -> "_Scaler":
        x = np.asarray(x, dtype=np.float64)
        assert x.ndim == 2, "scaler expects 2 dimensional input not {}".format(x.ndim)
        shift, scale = self._stats(x)
        # constant columns pass through unscaled
        scale = np.where(scale > 0, scale, 1.0)
        self.shift = shift
        self.scale = scale
        return self

    def transform(self, x: np.ndarray) -> np.ndarray:
        assert self.shift is not None, "scaler must be fitted first"
        return (np.asarray(x, dtype=np.float64) - self.shift) / self.scale

    def inverse_transform(self, x: np.ndarray) -> np.ndarray:
        assert self.shift is not None, "scaler must be fitted first"
        return np.asarray(x, dtype=np.float64) * self.scale + self.shift

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.transform(x)


class ZScore(_Scaler):
    """Standardizes columns to zero mean and unit variance"""

    def _stats(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return x.mean(axis=0), x.std(axis=0)


class MinMax(_Scaler):
    """Maps columns into [0, 1] using the fitted range"""

    def _stats(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        lo = x.min(axis=0)
        return lo, x.max(axis=0) - lo


class Identity(_Scaler):

    def _stats(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return np.zeros(x.shape[1]), np.ones(x.shape[1])


__SCALERS__ = {
    "zscore": ZScore,
    "minmax": MinMax,
    "none": Identity
}

def list_scalers() -> List[str]:
    """
    >>> list_scalers()
    ['zscore', 'minmax', 'none']
    """
    return list(__SCALERS__.keys())

def build_scaler(name: str) -> _Scaler:
    assert name in __SCALERS__, "given scaler {} is not valid, choose one of {}".format(name, list_scalers())
    return __SCALERS__[name]()
