from typing import Callable, List, Optional, Sequence, Tuple
from fractions import Fraction
import itertools

import numpy as np
import torch

import mcpcast as mc

def build_module_args() -> Tuple:
    for arch in mc.list_archs():
        for config in mc.list_arch_configs(arch):
            yield (arch, config)

def mixup_arguments(*args) -> List:
    """mixups given arguments
    [argument_1_1, argument_1_2], [argument_2_1] =>
    [(argument_1_1, argument_2_1), (argument_1_2, argument_2_1)]

    Returns:
        List: [(arg1, arg2), ...]
    """
    return list(itertools.product(*args))

def make_panel(n_days: int = 30, seed: int = 0, series: Sequence[str] = ("load", "wind"),
        start: str = "2021-01-04") -> mc.dataset.HourlyPanel:
    """random panel with a weekly price shape and the named exogenous series"""
    rng = np.random.default_rng(seed)
    hours = np.arange(n_days * 24)
    data = {"price": 40.0 + 10.0 * np.sin(2 * np.pi * hours / 24) + rng.normal(0.0, 1.0, size=hours.size)}
    for name in series:
        data[name] = rng.uniform(100.0, 200.0, size=hours.size)
    dates = np.datetime64(start, "D") + np.arange(n_days)
    return mc.dataset.HourlyPanel(dates, data)

def synth_panel(n_days: int = 60, seed: int = 0, **kwargs):
    config = mc.dataset.SynthConfig(n_days=n_days, **kwargs)
    return mc.dataset.synth_market(config, seed)

# exact lp oracle

def _solve_exact(M: List[List[Fraction]], rhs: List[Fraction]) -> Optional[List[Fraction]]:
    """gaussian elimination over the rationals, None when singular"""
    n = len(rhs)
    aug = [list(row) + [value] for row, value in zip(M, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col] / aug[col][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][n] / aug[r][r] for r in range(n)]

def vertex_enumeration(c: Sequence[float], A: Sequence[Sequence[float]], b: Sequence[float],
        senses: Sequence[str], upper: Sequence[float], sense: str = "min") -> Fraction:
    """Optimal objective of a bounded lp with 0 <= x <= upper by enumerating every vertex
    in rational arithmetic"""
    n = len(c)
    rows = []
    for row, value, s in zip(A, b, senses):
        row = [Fraction(v) for v in row]
        rows.append((row, Fraction(value), s))
    for j in range(n):
        unit = [Fraction(int(k == j)) for k in range(n)]
        rows.append((unit, Fraction(0), ">="))
        rows.append((unit, Fraction(upper[j]), "<="))

    def feasible(x: List[Fraction]) -> bool:
        for row, value, s in rows:
            lhs = sum(a * v for a, v in zip(row, x))
            if (s == "<=" and lhs > value) or (s == ">=" and lhs < value) or (s == "=" and lhs != value):
                return False
        return True

    equalities = [k for k, (_, _, s) in enumerate(rows) if s == "="]
    others = [k for k, (_, _, s) in enumerate(rows) if s != "="]
    costs = [Fraction(v) for v in c]
    best = None
    for active in itertools.combinations(others, n - len(equalities)):
        picked = equalities + list(active)
        x = _solve_exact([rows[k][0] for k in picked], [rows[k][1] for k in picked])
        if x is None or not feasible(x):
            continue
        value = sum(a * v for a, v in zip(costs, x))
        if best is None or (value < best if sense == "min" else value > best):
            best = value
    return best

def random_lp(rng: np.random.Generator, n_vars: int = 3, n_rows: int = 3) -> dict:
    """small feasible lp with integer data and box bounds"""
    A = rng.integers(-3, 4, size=(n_rows, n_vars)).astype(np.float64)
    A[np.all(A == 0, axis=1), 0] = 1.0
    upper = rng.integers(1, 6, size=n_vars).astype(np.float64)
    x0 = rng.integers(0, upper.astype(np.int64) + 1).astype(np.float64)
    # at most one equality row keeps the equality block full rank
    senses = [["<=", ">=", "="][k] for k in rng.integers(0, 3, size=1)]
    senses += [["<=", ">="][k] for k in rng.integers(0, 2, size=n_rows - 1)]
    slack = rng.integers(0, 3, size=n_rows).astype(np.float64)
    b = A @ x0 + np.array([{"<=": 1.0, ">=": -1.0, "=": 0.0}[s] for s in senses]) * slack
    c = rng.integers(-5, 6, size=n_vars).astype(np.float64)
    return {"c": c, "A": A, "b": b, "senses": senses, "upper": upper,
        "sense": ["min", "max"][int(rng.integers(2))]}

# merit order oracle

def stack_walk(costs: Sequence[float], capacities: Sequence[float], net_load: float,
        curtailment_cost: float = 20.0, shedding_cost: float = 3000.0) -> float:
    """price of the marginal unit when walking the cost sorted supply stack"""
    if net_load < 0:
        return -curtailment_cost
    covered = 0.0
    for k in sorted(range(len(costs)), key=lambda k: (costs[k], k)):
        if capacities[k] <= 0:
            continue
        covered += capacities[k]
        if covered >= net_load:
            return float(costs[k])
    return shedding_cost

# storage oracle

def storage_dp(prices: Sequence[float], cap: float, ecr: float, eta: float, step: float) -> float:
    """Best daily arbitrage value over levels on a grid of width `step`, losses on generation,
    storage empty at the start and the end of the day, no generation in the first hour"""
    levels = np.arange(0.0, cap * ecr + step / 2, step)
    # delta[i, j] moves the level from levels[i] to levels[j]
    delta = levels[None, :] - levels[:, None]
    charge = np.maximum(delta, 0.0)
    generation = np.maximum(-delta, 0.0) * eta
    allowed = (charge <= cap + 1e-12) & (generation <= cap + 1e-12)
    value = np.full(levels.size, -np.inf)
    value[0] = 0.0
    for h, price in enumerate(prices):
        moves = allowed & (generation == 0) if h == 0 else allowed
        gain = np.where(moves, price * (generation - charge), -np.inf)
        value = np.max(value[:, None] + gain, axis=0)
    return float(value[0])

# gradient oracle

def central_differences(loss: Callable[[], torch.Tensor], params: Sequence[torch.Tensor],
        step: float = 1e-5) -> List[np.ndarray]:
    """numerical gradient of `loss` with respect to every entry of every parameter"""
    grads = []
    with torch.no_grad():
        for param in params:
            grad = np.zeros(tuple(param.shape))
            flat = param.view(-1)
            for k in range(flat.numel()):
                original = float(flat[k])
                flat[k] = original + step
                up = float(loss())
                flat[k] = original - step
                down = float(loss())
                flat[k] = original
                grad.reshape(-1)[k] = (up - down) / (2 * step)
            grads.append(grad)
    return grads

def max_relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    scale = max(float(np.max(np.abs(numeric))), float(np.max(np.abs(analytic))), 1e-8)
    return float(np.max(np.abs(analytic - numeric))) / scale

# least squares oracle

def normal_equations(X: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, float]:
    """ordinary least squares with intercept"""
    design = np.hstack([np.ones((X.shape[0], 1)), X])
    theta = np.linalg.solve(design.T @ design, design.T @ y)
    return theta[1:], float(theta[0])
