import numpy as np
import pytest

import mcpcast as mc

@pytest.mark.parametrize("transform_name", ["ZScore", "MinMax", "Identity", "build_scaler", "list_scalers"])
def test_api_exists(transform_name: str):
    assert hasattr(mc.transforms, transform_name), "{} not found in the mcpcast.transforms".format(transform_name)

def _data() -> np.ndarray:
    rng = np.random.default_rng(0)
    return np.column_stack([rng.normal(50.0, 10.0, size=100), rng.uniform(-3.0, 7.0, size=100)])

@pytest.mark.parametrize("name", ["zscore", "minmax", "none"])
def test_scaler_inverse(name: str):
    X = _data()
    scaler = mc.transforms.build_scaler(name).fit(X)
    assert np.allclose(scaler.inverse_transform(scaler(X)), X), "{} must be invertible".format(name)

def test_zscore():
    scaled = mc.transforms.ZScore().fit(_data()).transform(_data())
    assert np.allclose(scaled.mean(axis=0), 0.0) and np.allclose(scaled.std(axis=0), 1.0), \
        "zscore columns must have zero mean and unit variance"

def test_minmax():
    scaled = mc.transforms.MinMax().fit(_data()).transform(_data())
    assert np.allclose(scaled.min(axis=0), 0.0) and np.allclose(scaled.max(axis=0), 1.0), \
        "minmax columns must span [0, 1]"

def test_constant_column_passes_through():
    X = np.column_stack([np.full(5, 3.0), np.arange(5.0)])
    scaler = mc.transforms.ZScore().fit(X)
    assert scaler.scale[0] == 1.0, "constant columns keep a unit scale"
    assert np.allclose(scaler(X)[:, 0], 0.0), "constant columns are only centered"

def test_scaler_is_fitted_on_its_own_rows():
    train, test = _data()[:50], _data()[50:]
    scaler = mc.transforms.ZScore().fit(train)
    assert np.allclose(scaler.shift, train.mean(axis=0)), "statistics must come from the fitted rows only"
    assert not np.allclose(scaler(test).mean(axis=0), 0.0), "other rows are not recentered"

def test_unknown_scaler():
    with pytest.raises(AssertionError):
        mc.transforms.build_scaler("robust")
