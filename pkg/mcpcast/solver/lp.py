__all__ = ["LpProblem", "LpSolution", "solve_lp", "MINIMIZE", "MAXIMIZE", "LE", "EQ", "GE"]

from typing import Optional, Sequence
from dataclasses import dataclass, field
import logging

import numpy as np

from .simplex import StandardForm, TableauSimplex

logger = logging.getLogger("mcpcast.solver")

MINIMIZE = "min"
MAXIMIZE = "max"
LE = "<="
EQ = "="
GE = ">="

@dataclass(frozen=True)
class LpProblem:
    """Linear program `sense c.x` subject to `A x (row senses) b` and `lower <= x <= upper`.

    Lower bounds default to 0 and upper bounds to +inf. Lower bounds may be -inf.
    """
    c: np.ndarray
    A: np.ndarray
    b: np.ndarray
    senses: Sequence[str]
    sense: str = MINIMIZE
    lower: Optional[np.ndarray] = None
    upper: Optional[np.ndarray] = None
    var_names: Optional[Sequence[str]] = None
    row_names: Optional[Sequence[str]] = None

    def __post_init__(self):
        c = np.asarray(self.c, dtype=np.float64).reshape(-1)
        n = c.size
        A = np.asarray(self.A, dtype=np.float64).reshape(-1, n) if n > 0 else np.zeros((len(self.b), 0))
        b = np.asarray(self.b, dtype=np.float64).reshape(-1)
        lower = np.zeros(n) if self.lower is None else np.asarray(self.lower, dtype=np.float64).reshape(-1)
        upper = np.full(n, np.inf) if self.upper is None else np.asarray(self.upper, dtype=np.float64).reshape(-1)
        senses = tuple(self.senses)

        assert self.sense in (MINIMIZE, MAXIMIZE), "objective sense must be `min` or `max` not {}".format(self.sense)
        assert A.shape == (b.size, n), "constraint matrix must be {} not {}".format((b.size, n), A.shape)
        assert len(senses) == b.size, "{} row senses given for {} rows".format(len(senses), b.size)
        assert all(s in (LE, EQ, GE) for s in senses), "row senses must be one of <=, =, >="
        assert lower.size == n and upper.size == n, "bounds must have {} entries".format(n)
        assert np.all(lower <= upper), "lower bounds must not exceed upper bounds"
        assert np.all(np.isfinite(c)) and np.all(np.isfinite(A)) and np.all(np.isfinite(b)), \
            "objective, matrix and right hand side must be finite"
        assert not np.any(np.isposinf(lower)) and not np.any(np.isneginf(upper)), "invalid infinite bound"
        assert self.var_names is None or len(self.var_names) == n, "one name per variable required"
        assert self.row_names is None or len(self.row_names) == b.size, "one name per row required"

        object.__setattr__(self, "c", c)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "senses", senses)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def n_vars(self) -> int:
        return self.c.size

    @property
    def n_rows(self) -> int:
        return self.b.size


@dataclass(frozen=True)
class LpSolution:
    """Optimal solution of an `LpProblem`.

    `duals[i]` is the change of the optimal objective per unit increase of `b[i]`,
    whatever the objective sense. `reduced_costs` is `c - A.T @ duals`.
    """
    status: str
    x: np.ndarray
    duals: np.ndarray
    objective: float
    reduced_costs: np.ndarray = field(default_factory=lambda: np.zeros(0))
    iterations: int = 0


def solve_lp(problem: LpProblem, max_iter: Optional[int] = None, tol: float = 1e-9) -> LpSolution:
    """Solves the linear program with a two phase dense tableau simplex

    Args:
        problem (LpProblem): problem to solve
        max_iter (int, optional): pivot limit over both phases. Defaults to 50 * (rows + cols) of the tableau.
        tol (float, optional): optimality tolerance on reduced costs. Defaults to 1e-9.

    Returns:
        LpSolution: optimal primal, row duals and objective

    Raises:
        Infeasible, Unbounded, IterationLimit

    >>> sol = solve_lp(LpProblem(c=[1.0], A=[[1.0]], b=[5.0], senses=["<="], sense="max"))
    >>> float(sol.x[0]), float(sol.duals[0]), sol.objective
    (5.0, 1.0, 5.0)
    """
    form = StandardForm.from_problem(problem)
    engine = TableauSimplex(form, max_iter=max_iter, tol=tol)
    z, y, iterations = engine.solve()

    x = form.recover_x(z)
    duals = form.recover_duals(y)
    if problem.sense == MAXIMIZE:
        duals = -duals

    objective = float(problem.c @ x)
    reduced_costs = problem.c - problem.A.T @ duals
    logger.debug("lp solved: {} vars, {} rows, {} pivots, objective {}".format(
        problem.n_vars, problem.n_rows, iterations, objective))

    return LpSolution(status="optimal", x=x, duals=duals, objective=objective,
        reduced_costs=reduced_costs, iterations=iterations)
