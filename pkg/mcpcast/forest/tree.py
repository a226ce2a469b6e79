__all__ = [
    "TreeParams", "ForestParams", "RegressionTree", "Forest",
    "fit_tree", "fit_forest", "feature_importance", "oob_error"
]

from typing import List, Optional, Sequence, Tuple, Union
from dataclasses import dataclass
import logging
import math

import numpy as np
from sklearn.tree import DecisionTreeRegressor
from tqdm import tqdm

from ..errors import EmptyData
from ..utils.random import derive_seed, make_rng

logger = logging.getLogger("mcpcast.forest")

MaxFeatures = Union[None, int, str]

@dataclass(frozen=True)
class TreeParams:
    """Growth limits of a regression tree.

    `max_features` is the number of candidate features drawn at every split:
    None uses all of them, "third" uses ceil(p / 3), an int is capped at p.
    """
    max_depth: Optional[int] = None
    min_samples_leaf: int = 1
    max_features: MaxFeatures = None

    def __post_init__(self):
        assert self.max_depth is None or self.max_depth >= 0, \
            "max depth must be non negative not {}".format(self.max_depth)
        assert self.min_samples_leaf >= 1, \
            "min samples per leaf must be at least 1 not {}".format(self.min_samples_leaf)
        assert self.max_features is None or self.max_features == "third" or \
            (isinstance(self.max_features, int) and self.max_features >= 1), \
            "max features must be None, `third` or a positive int not {}".format(self.max_features)

    def n_split_features(self, n_features: int) -> int:
        """
        >>> TreeParams(max_features="third").n_split_features(7)
        3
        """
        if self.max_features is None:
            return n_features
        if self.max_features == "third":
            return max(1, math.ceil(n_features / 3))
        return min(int(self.max_features), n_features)


@dataclass(frozen=True)
class ForestParams(TreeParams):
    n_trees: int = 100
    max_features: MaxFeatures = "third"
    bootstrap: bool = True

    def __post_init__(self):
        super().__post_init__()
        assert self.n_trees >= 1, "a forest needs at least 1 tree not {}".format(self.n_trees)


class RegressionTree():
    """CART regression tree with variance reduction splits at midpoints between
    adjacent sorted feature values, leaves hold the mean of their training targets.

    A depth 0 tree is a single leaf.
    """

    def __init__(self, estimator: Optional[DecisionTreeRegressor], constant: np.ndarray,
            n_features: int, single_output: bool):
        self.estimator = estimator
        self.constant = constant
        self.n_features = n_features
        self.single_output = single_output

    @property
    def depth(self) -> int:
        return 0 if self.estimator is None else int(self.estimator.get_depth())

    @property
    def n_leaves(self) -> int:
        return 1 if self.estimator is None else int(self.estimator.get_n_leaves())

    @property
    def impurity_decrease(self) -> np.ndarray:
        """unnormalized variance reduction attributed to every feature"""
        if self.estimator is None:
            return np.zeros(self.n_features)
        return self.estimator.tree_.compute_feature_importances(normalize=False)

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = _as_matrix(X)
        assert X.shape[1] == self.n_features, \
            "tree was fitted on {} features, got {}".format(self.n_features, X.shape[1])
        if self.estimator is None:
            out = np.tile(self.constant, (X.shape[0], 1))
        else:
            out = self.estimator.predict(X).reshape(X.shape[0], -1)
        return out[:, 0] if self.single_output else out


class Forest():
    """Bagged regression trees, the prediction is the arithmetic mean of the members"""

    def __init__(self, trees: List[RegressionTree], seeds: List[int], in_bag: List[np.ndarray],
            params: ForestParams, n_rows: int):
        self.trees = trees
        self.seeds = seeds
        self.in_bag = in_bag
        self.params = params
        self.n_rows = n_rows

    @property
    def n_trees(self) -> int:
        return len(self.trees)

    @property
    def n_features(self) -> int:
        return self.trees[0].n_features

    def tree_predictions(self, X: np.ndarray) -> np.ndarray:
        return np.stack([tree.predict(X) for tree in self.trees])

    def predict(self, X: np.ndarray) -> np.ndarray:
        return np.mean(self.tree_predictions(X), axis=0)


def _as_matrix(X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    return X.reshape(1, -1) if X.ndim == 1 else X

def _check_data(X: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] == 0 or X.shape[1] == 0:
        raise EmptyData("regression trees need at least one row and one feature, got shape {}".format(X.shape))
    assert y.shape[0] == X.shape[0], "{} target rows for {} input rows".format(y.shape[0], X.shape[0])
    return X, y

def fit_tree(X: np.ndarray, y: np.ndarray, params: Optional[TreeParams] = None, seed: int = 0) -> RegressionTree:
    """Grows one regression tree greedily

    Args:
        X (np.ndarray): n x p inputs
        y (np.ndarray): n targets or n x k targets
        params (TreeParams, optional): growth limits. Defaults to TreeParams().
        seed (int, optional): seed of the per split feature draw. Defaults to 0.

    Returns:
        RegressionTree: fitted tree
    """
    params = TreeParams() if params is None else params
    X, y = _check_data(X, y)
    single_output = y.ndim == 1
    targets = y.reshape(y.shape[0], -1)

    if params.max_depth == 0:
        return RegressionTree(None, targets.mean(axis=0), X.shape[1], single_output)

    estimator = DecisionTreeRegressor(
        criterion="squared_error",
        max_depth=params.max_depth,
        min_samples_leaf=params.min_samples_leaf,
        max_features=params.n_split_features(X.shape[1]),
        random_state=int(seed) % (2**32))
    estimator.fit(X, targets if not single_output else y)
    return RegressionTree(estimator, targets.mean(axis=0), X.shape[1], single_output)

def fit_forest(X: np.ndarray, y: np.ndarray, params: Optional[ForestParams] = None, seed: int = 0,
        progress: bool = False) -> Forest:
    """Fits `params.n_trees` trees on bootstrap resamples

    Every tree draws its resample and its split features from its own seed stream,
    derived from `seed` and the tree index, so the forest is reproducible per seed.

    Args:
        X (np.ndarray): n x p inputs
        y (np.ndarray): n targets or n x k targets
        params (ForestParams, optional): forest settings. Defaults to ForestParams().
        seed (int, optional): master seed. Defaults to 0.
        progress (bool, optional): show a progress bar. Defaults to False.

    Returns:
        Forest: fitted forest
    """
    params = ForestParams() if params is None else params
    X, y = _check_data(X, y)
    n = X.shape[0]

    trees, seeds, in_bag = [], [], []
    for b in tqdm(range(params.n_trees), desc="trees", disable=not progress):
        tree_seed = derive_seed(seed, b)
        if params.bootstrap:
            rows = make_rng(seed, b).integers(0, n, size=n)
        else:
            rows = np.arange(n)
        trees.append(fit_tree(X[rows], y[rows], params, seed=tree_seed))
        seeds.append(tree_seed)
        in_bag.append(rows)

    logger.debug("forest of {} trees, mean depth {:.1f}".format(
        len(trees), np.mean([tree.depth for tree in trees])))
    return Forest(trees, seeds, in_bag, params, n)

def feature_importance(forest: Forest, feature_names: Optional[Sequence[str]] = None) -> List[Tuple[str, float]]:
    """Variance reduction per feature summed over all splits of all trees, normalized to 1

    Returns:
        List[Tuple[str, float]]: (feature, importance) by decreasing importance, ties by feature index
    """
    names = [str(j) for j in range(forest.n_features)] if feature_names is None else list(feature_names)
    assert len(names) == forest.n_features, \
        "{} names for {} features".format(len(names), forest.n_features)

    total = np.sum([tree.impurity_decrease for tree in forest.trees], axis=0)
    norm = total.sum()
    if norm > 0:
        importances = total / norm
    else:
        logger.warning("forest has no splits, all feature importances are 0")
        importances = np.zeros_like(total)

    order = sorted(range(len(names)), key=lambda j: (-importances[j], j))
    return [(names[j], float(importances[j])) for j in order]

def oob_error(forest: Forest, X: np.ndarray, y: np.ndarray) -> float:
    """Mean absolute out of bag error on the training rows

    Each row is predicted by the trees whose resample left it out; rows that every
    tree saw are skipped. Without any out of bag row the error is nan.
    """
    X, y = _check_data(X, y)
    assert X.shape[0] == forest.n_rows, \
        "forest was fitted on {} rows, got {}".format(forest.n_rows, X.shape[0])
    targets = y.reshape(y.shape[0], -1)

    total = np.zeros_like(targets)
    count = np.zeros(X.shape[0])
    for tree, rows in zip(forest.trees, forest.in_bag):
        out = np.ones(X.shape[0], dtype=bool)
        out[rows] = False
        if not np.any(out):
            continue
        total[out] += tree.predict(X[out]).reshape(int(out.sum()), -1)
        count[out] += 1

    seen = count > 0
    if not np.any(seen):
        logger.warning("no out of bag rows, out of bag error is undefined")
        return float("nan")
    preds = total[seen] / count[seen, None]
    return float(np.mean(np.abs(preds - targets[seen])))
