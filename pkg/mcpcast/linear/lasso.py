__all__ = [
    "LassoFit", "LassoPath", "soft_threshold", "lambda_max", "lambda_grid",
    "lasso_fit", "lasso_fit_many", "lasso_path",
    "cross_validate_lambda", "cross_validate_lambdas"
]

from typing import List, Optional, Sequence, Tuple, Union
from dataclasses import dataclass
import logging

import numpy as np

from ..errors import TooFewRows

logger = logging.getLogger("mcpcast.linear")

def soft_threshold(z: Union[float, np.ndarray], lam: Union[float, np.ndarray]) -> np.ndarray:
    """argmin_t 0.5 (t - z)^2 + lam |t|

    >>> soft_threshold(np.array([3.0, -0.5, -2.0]), 1.0)
    array([ 2.,  0., -1.])
    """
    return np.sign(z) * np.maximum(np.abs(z) - lam, 0.0)


@dataclass(frozen=True)
class LassoFit:
    """Lasso estimate of `0.5 * RSS + lam * |theta|_1` on z-scored columns and centered target.

    `coef` and `intercept` are in the original scale, `x_mean`/`x_std` hold the
    column scaling used during descent, `objective` is the final value on the
    standardized problem.
    """
    coef: np.ndarray
    intercept: float
    lam: float
    x_mean: Optional[np.ndarray] = None
    x_std: Optional[np.ndarray] = None
    n_iter: int = 0
    objective: float = 0.0
    converged: bool = True
    degenerate: Optional[np.ndarray] = None

    def predict(self, X: np.ndarray) -> np.ndarray:
        return np.asarray(X, dtype=np.float64) @ self.coef + self.intercept

    @property
    def n_nonzero(self) -> int:
        return int(np.count_nonzero(self.coef))


@dataclass(frozen=True)
class LassoPath:
    """Warm started solutions along a descending lambda sequence, `coef` is (L, p, k)"""
    lambdas: np.ndarray
    coef: np.ndarray
    intercept: np.ndarray


class _Problem():
    """Gram form of the standardized multi target problem"""

    def __init__(self, X: np.ndarray, Y: np.ndarray, standardize: bool = True, fit_intercept: bool = True):
        X = np.asarray(X, dtype=np.float64)
        Y = np.asarray(Y, dtype=np.float64)
        assert X.ndim == 2, "X must be 2 dimensional not {}".format(X.ndim)
        assert Y.ndim == 2 and Y.shape[0] == X.shape[0], \
            "rows of X ({}) and y ({}) must match".format(X.shape[0], Y.shape[0])
        assert X.shape[0] >= 2, "at least 2 rows are required, found {}".format(X.shape[0])

        self.x_mean = X.mean(axis=0) if fit_intercept else np.zeros(X.shape[1])
        self.y_mean = Y.mean(axis=0) if fit_intercept else np.zeros(Y.shape[1])
        Xc = X - self.x_mean
        if standardize:
            std = Xc.std(axis=0)
            self.degenerate = std <= 1e-12 * np.maximum(1.0, np.abs(self.x_mean))
        else:
            std = np.ones(X.shape[1])
            self.degenerate = ~np.any(Xc != 0, axis=0)
        self.x_std = np.where(self.degenerate, 1.0, std)

        Z = Xc / self.x_std
        Z[:, self.degenerate] = 0.0
        Yc = Y - self.y_mean

        self.G = Z.T @ Z
        self.B = Z.T @ Yc
        self.yy = np.einsum("ij,ij->j", Yc, Yc)
        y_std = Yc.std(axis=0)
        self.y_scale = np.where(y_std > 0, y_std, 1.0)

    @property
    def lambda_max(self) -> np.ndarray:
        if self.B.shape[0] == 0:
            return np.zeros(self.B.shape[1])
        return np.abs(self.B).max(axis=0)

    def back_transform(self, theta: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        coef = theta / self.x_std[:, None]
        coef[self.degenerate] = 0.0
        intercept = self.y_mean - self.x_mean @ coef
        return coef, intercept

    def objective(self, theta: np.ndarray, grad: np.ndarray, lams: np.ndarray) -> np.ndarray:
        # 0.5 |y - Z t|^2 = 0.5 yy - t.B + 0.5 t.G t, and G t = B - grad
        return 0.5 * self.yy - 0.5 * np.einsum("ij,ij->j", theta, self.B + grad) \
            + lams * np.abs(theta).sum(axis=0)

    def descent(self, lams: np.ndarray, theta: Optional[np.ndarray] = None, tol: float = 1e-8,
            max_iter: int = 10000) -> Tuple[np.ndarray, int, np.ndarray, bool]:
        """Cyclic coordinate descent over an active set, all targets updated together.

        A sweep visits every active coordinate once. On convergence of the active set
        the full gradient is recomputed and coordinates violating the optimality
        condition join the set; the solve ends when none does.
        """
        G, B = self.G, self.B
        p, k = B.shape
        lams = np.broadcast_to(np.asarray(lams, dtype=np.float64), (k,)).copy()
        theta = np.zeros((p, k)) if theta is None else np.array(theta, dtype=np.float64)
        theta[self.degenerate] = 0.0

        diag = np.diag(G).copy()
        usable = (diag > 0) & ~self.degenerate
        grad = B - G @ theta
        obj = self.objective(theta, grad, lams)

        active = usable & (np.any(theta != 0, axis=1) | np.any(np.abs(grad) > lams, axis=1))
        n_iter = 0
        converged = False

        while n_iter < max_iter:
            n_iter += 1
            max_delta = 0.0
            for j in np.flatnonzero(active):
                old = theta[j]
                new = soft_threshold(grad[j] + diag[j] * old, lams) / diag[j]
                delta = new - old
                if not np.any(delta):
                    continue
                theta[j] = new
                grad -= np.outer(G[:, j], delta)
                max_delta = max(max_delta, float(np.max(np.abs(delta) / self.y_scale)))

            new_obj = self.objective(theta, grad, lams)
            assert np.all(new_obj <= obj + 1e-9 * (1.0 + np.abs(obj))), \
                "coordinate descent increased the objective from {} to {}".format(obj, new_obj)
            obj = new_obj

            if max_delta < tol:
                grad = B - G @ theta
                violators = usable & ~active & np.any(np.abs(grad) > lams, axis=1)
                if not np.any(violators):
                    converged = True
                    break
                active |= violators

        obj = self.objective(theta, B - G @ theta, lams)
        return theta, n_iter, obj, converged


def _as_2d(y: np.ndarray) -> Tuple[np.ndarray, bool]:
    y = np.asarray(y, dtype=np.float64)
    return (y[:, None], True) if y.ndim == 1 else (y, False)

def _warn(fits: Sequence[LassoFit], quiet: bool):
    log = logger.debug if quiet else logger.warning
    for idx, fit in enumerate(fits):
        if not fit.converged:
            log("lasso target {} did not converge in {} sweeps at lambda {:.4g}".format(idx, fit.n_iter, fit.lam))
    if fits and fits[0].degenerate is not None and fits[0].degenerate.any():
        log("columns {} have zero variance, their coefficients are forced to 0".format(
            np.flatnonzero(fits[0].degenerate).tolist()))

def lambda_max(X: np.ndarray, y: np.ndarray, standardize: bool = True, fit_intercept: bool = True) -> np.ndarray:
    """smallest penalty with an all zero solution, `max_j |z_j . (y - mean y)|` per target"""
    Y, squeeze = _as_2d(y)
    lmax = _Problem(X, Y, standardize, fit_intercept).lambda_max
    return lmax[0] if squeeze else lmax

def lambda_grid(lam_max: float, n: int = 20, ratio: float = 1e-4) -> np.ndarray:
    """`n` log spaced values from `lam_max` down to `ratio * lam_max`

    >>> lambda_grid(1.0, n=3, ratio=1e-2)
    array([1.  , 0.1 , 0.01])
    """
    assert n >= 1, "grid size must be positive"
    if lam_max <= 0:
        return np.zeros(n)
    return np.logspace(np.log10(lam_max), np.log10(lam_max * ratio), n)

def lasso_fit_many(X: np.ndarray, Y: np.ndarray, lams: Union[float, Sequence[float]], tol: float = 1e-8,
        max_iter: int = 10000, standardize: bool = True, fit_intercept: bool = True,
        quiet: bool = False) -> List[LassoFit]:
    """Fits one lasso per column of `Y` on the shared design `X`

    Args:
        X (np.ndarray): (n, p) design
        Y (np.ndarray): (n, k) targets
        lams (Union[float, Sequence[float]]): penalty per target or a shared one
        tol (float, optional): convergence threshold on the largest coefficient change, relative to the target std. Defaults to 1e-8.
        max_iter (int, optional): sweep limit. Defaults to 10000.
        standardize (bool, optional): z-score columns before descent. Defaults to True.
        fit_intercept (bool, optional): center columns and targets. Defaults to True.
        quiet (bool, optional): log convergence issues at debug level. Defaults to False.

    Returns:
        List[LassoFit]: one fit per target
    """
    Y, _ = _as_2d(Y)
    problem = _Problem(X, Y, standardize, fit_intercept)
    lams = np.broadcast_to(np.asarray(lams, dtype=np.float64), (Y.shape[1],))
    assert np.all(lams >= 0), "lambda must be non negative"

    theta, n_iter, obj, converged = problem.descent(lams, tol=tol, max_iter=max_iter)
    coef, intercept = problem.back_transform(theta)

    fits = [
        LassoFit(coef=coef[:, k].copy(), intercept=float(intercept[k]), lam=float(lams[k]),
            x_mean=problem.x_mean, x_std=problem.x_std, n_iter=n_iter, objective=float(obj[k]),
            converged=converged, degenerate=problem.degenerate)
        for k in range(Y.shape[1])
    ]
    _warn(fits, quiet)
    return fits

def lasso_fit(X: np.ndarray, y: np.ndarray, lam: float, tol: float = 1e-8, max_iter: int = 10000,
        standardize: bool = True, fit_intercept: bool = True) -> LassoFit:
    """Lasso by cyclic coordinate descent with soft thresholding

    >>> fit = lasso_fit(np.array([[1.0], [2.0], [3.0]]), np.array([2.0, 4.0, 6.0]), 0.0)
    >>> round(float(fit.coef[0]), 9), abs(round(fit.intercept, 9))
    (2.0, 0.0)
    """
    y = np.asarray(y, dtype=np.float64)
    assert y.ndim == 1, "y must be a vector, use lasso_fit_many for several targets"
    return lasso_fit_many(X, y[:, None], lam, tol=tol, max_iter=max_iter,
        standardize=standardize, fit_intercept=fit_intercept)[0]

def lasso_path(X: np.ndarray, Y: np.ndarray, lambdas: np.ndarray, tol: float = 1e-8, max_iter: int = 10000,
        standardize: bool = True, fit_intercept: bool = True) -> LassoPath:
    """Solves along `lambdas` (L,) shared or (k, L) per target, each solve warm started from the previous one

    Returns:
        LassoPath: coefficients (L, p, k) and intercepts (L, k) in the original scale
    """
    Y, _ = _as_2d(Y)
    problem = _Problem(X, Y, standardize, fit_intercept)
    return _path(problem, lambdas, tol, max_iter)

def _path(problem: _Problem, lambdas: np.ndarray, tol: float, max_iter: int) -> LassoPath:
    p, k = problem.B.shape
    lambdas = np.asarray(lambdas, dtype=np.float64)
    grid = np.tile(lambdas, (k, 1)) if lambdas.ndim == 1 else lambdas
    assert grid.shape[0] == k, "per target grid must have {} rows".format(k)

    L = grid.shape[1]
    coefs = np.zeros((L, p, k))
    intercepts = np.zeros((L, k))
    theta = None
    for idx in range(L):
        theta, _, _, _ = problem.descent(grid[:, idx], theta=theta, tol=tol, max_iter=max_iter)
        coefs[idx], intercepts[idx] = problem.back_transform(theta)
    return LassoPath(lambdas=grid, coef=coefs, intercept=intercepts)

def _folds(n: int, k: int) -> List[np.ndarray]:
    return [fold for fold in np.array_split(np.arange(n), k)]

def cross_validate_lambdas(X: np.ndarray, Y: np.ndarray, k: int = 5, grid: Optional[np.ndarray] = None,
        n_grid: int = 20, ratio: float = 1e-4, tol: float = 1e-6, max_iter: int = 10000,
        standardize: bool = True, fit_intercept: bool = True) -> np.ndarray:
    """Selects one penalty per target by k fold cross validation over contiguous time blocks

    Each fold is standardized on its own training rows and penalties are scaled by
    `n_train / n` so that a grid value means the same regularization on a fold as on
    the full sample. Ties go to the larger penalty.

    Args:
        X (np.ndarray): (n, p) design
        Y (np.ndarray): (n, k_targets) targets
        k (int, optional): number of folds. Defaults to 5.
        grid (np.ndarray, optional): (L,) shared or (k_targets, L) per target grid, descending.
            Defaults to `n_grid` points from each target's lambda max down to `ratio` times it.

    Returns:
        np.ndarray: selected penalty per target
    """
    Y, _ = _as_2d(Y)
    X = np.asarray(X, dtype=np.float64)
    n, n_targets = Y.shape
    assert k >= 2, "at least 2 folds are required, given {}".format(k)
    folds = _folds(n, k)
    if n < k or n - max(len(fold) for fold in folds) < 2:
        raise TooFewRows("{} rows cannot be split into {} folds with 2 training rows each".format(n, k))

    if grid is None:
        lmax = _Problem(X, Y, standardize, fit_intercept).lambda_max
        grid = np.stack([lambda_grid(value, n_grid, ratio) for value in lmax])
    else:
        grid = np.asarray(grid, dtype=np.float64)
        assert grid.size > 0, "lambda grid must not be empty"
        grid = np.tile(grid, (n_targets, 1)) if grid.ndim == 1 else grid
    assert grid.shape[0] == n_targets, "grid must have one row per target"

    errors = np.zeros((grid.shape[1], n_targets))
    for fold in folds:
        train = np.setdiff1d(np.arange(n), fold)
        problem = _Problem(X[train], Y[train], standardize, fit_intercept)
        path = _path(problem, grid * (train.size / n), tol, max_iter)
        preds = np.einsum("ip,lpk->lik", X[fold], path.coef) + path.intercept[:, None, :]
        errors += ((preds - Y[fold][None, :, :]) ** 2).sum(axis=1)

    best = np.argmin(errors / n, axis=0)
    selected = grid[np.arange(n_targets), best]
    logger.debug("cross validation picked grid positions {}".format(best.tolist()))
    return selected

def cross_validate_lambda(X: np.ndarray, y: np.ndarray, k: int = 5, grid: Optional[np.ndarray] = None,
        **kwargs) -> float:
    """Single target `cross_validate_lambdas`"""
    y = np.asarray(y, dtype=np.float64)
    assert y.ndim == 1, "y must be a vector"
    return float(cross_validate_lambdas(X, y[:, None], k=k, grid=grid, **kwargs)[0])
