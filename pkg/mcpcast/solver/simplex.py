__all__ = ["StandardForm", "TableauSimplex"]

from typing import List, Optional, Tuple
import logging

import numpy as np

from ..errors import Infeasible, Unbounded, IterationLimit

logger = logging.getLogger("mcpcast.solver")

class StandardForm():
    """`min cost.z s.t. A z = b, z >= 0, b >= 0` rewrite of an `LpProblem`.

    Original variables map to standard ones as `x = transform @ z + offset`:
    finite lower bounds are shifted out, variables with only an upper bound are
    mirrored and free variables are split. Finite upper bounds become `<=` rows
    appended after the original rows.
    """

    def __init__(self, A: np.ndarray, b: np.ndarray, cost: np.ndarray, basis: List[int],
            artificial: np.ndarray, transform: np.ndarray, offset: np.ndarray,
            row_signs: np.ndarray, n_rows: int):
        self.A = A
        self.b = b
        self.cost = cost
        self.basis = basis
        self.artificial = artificial
        self.transform = transform
        self.offset = offset
        self.row_signs = row_signs
        self.n_rows = n_rows

    @classmethod
    def from_problem(cls, problem) -> "StandardForm":
        n = problem.n_vars
        columns: List[np.ndarray] = []
        offset = np.zeros(n)
        bound_rows: List[Tuple[int, float]] = []

        for j in range(n):
            lo, up = problem.lower[j], problem.upper[j]
            unit = np.zeros(n)
            unit[j] = 1.0
            if np.isfinite(lo):
                offset[j] = lo
                columns.append(unit)
                if np.isfinite(up):
                    bound_rows.append((len(columns) - 1, up - lo))
            elif np.isfinite(up):
                offset[j] = up
                columns.append(-unit)
            else:
                columns.append(unit)
                columns.append(-unit)

        transform = np.stack(columns, axis=1) if columns else np.zeros((n, 0))
        nz = transform.shape[1]

        rows = problem.A @ transform
        rhs = problem.b - problem.A @ offset
        senses = list(problem.senses)

        for k, width in bound_rows:
            row = np.zeros(nz)
            row[k] = 1.0
            rows = np.vstack([rows, row[None, :]])
            rhs = np.append(rhs, width)
            senses.append("<=")

        m = rhs.size
        signs = np.where(rhs < 0, -1.0, 1.0)
        rows = rows * signs[:, None]
        rhs = rhs * signs
        flip = {"<=": ">=", ">=": "<=", "=": "="}
        senses = [flip[s] if sign < 0 else s for s, sign in zip(senses, signs)]

        n_slack = sum(1 for s in senses if s != "=")
        n_art = sum(1 for s in senses if s != "<=")
        A = np.zeros((m, nz + n_slack + n_art))
        A[:, :nz] = rows
        basis = [0] * m
        slack_col = nz
        art_col = nz + n_slack
        for i, s in enumerate(senses):
            if s == "<=":
                A[i, slack_col] = 1.0
                basis[i] = slack_col
                slack_col += 1
            else:
                if s == ">=":
                    A[i, slack_col] = -1.0
                    slack_col += 1
                A[i, art_col] = 1.0
                basis[i] = art_col
                art_col += 1

        c = problem.c if problem.sense == "min" else -problem.c
        cost = np.zeros(A.shape[1])
        cost[:nz] = transform.T @ c

        artificial = np.zeros(A.shape[1], dtype=bool)
        artificial[nz + n_slack:] = True

        return cls(A=A, b=rhs, cost=cost, basis=basis, artificial=artificial,
            transform=transform, offset=offset, row_signs=signs, n_rows=problem.n_rows)

    def recover_x(self, z: np.ndarray) -> np.ndarray:
        nz = self.transform.shape[1]
        return self.transform @ z[:nz] + self.offset

    def recover_duals(self, y: np.ndarray) -> np.ndarray:
        # sensitivity of the minimized objective to the original right hand sides
        return (y * self.row_signs)[:self.n_rows]


class TableauSimplex():
    """Two phase dense tableau simplex.

    Entering columns follow Dantzig's rule with ties to the lowest index, leaving
    rows the minimum ratio with ties to the lowest basic variable index. After
    `stall_limit` consecutive degenerate pivots the engine switches to Bland's rule
    for the rest of the solve.
    """

    def __init__(self, form: StandardForm, max_iter: Optional[int] = None, tol: float = 1e-9,
            pivot_tol: float = 1e-11, stall_limit: Optional[int] = None):
        self.form = form
        m, N = form.A.shape
        self.max_iter = 50 * (m + N) if max_iter is None else int(max_iter)
        self.tol = tol
        self.pivot_tol = pivot_tol
        self.feas_tol = 1e-9 * (1.0 + (np.abs(form.b).max() if form.b.size > 0 else 0.0))
        self.stall_limit = max(10, m) if stall_limit is None else stall_limit
        self.iterations = 0
        self.bland = False

    def _pivot(self, T: np.ndarray, basis: List[int], row: int, col: int):
        T[row] /= T[row, col]
        factors = T[:, col].copy()
        factors[row] = 0.0
        T -= np.outer(factors, T[row])
        basis[row] = col

    def _run(self, T: np.ndarray, basis: List[int], cost: np.ndarray, n_cols: int):
        d = cost[:n_cols] - cost[basis] @ T[:, :n_cols]
        stall = 0
        while True:
            candidates = np.flatnonzero(d < -self.tol)
            if candidates.size == 0:
                return

            if self.bland:
                col = int(candidates[0])
            else:
                col = int(candidates[np.argmin(d[candidates])])

            column = T[:, col]
            eligible = np.flatnonzero(column > self.pivot_tol)
            if eligible.size == 0:
                raise Unbounded("objective is unbounded along column {}".format(col))

            rhs = np.maximum(T[eligible, -1], 0.0)
            ratios = rhs / column[eligible]
            best = ratios.min()
            ties = eligible[ratios <= best + self.feas_tol]
            row = int(min(ties, key=lambda r: basis[r]))

            self._pivot(T, basis, row, col)
            d = d - d[col] * T[row, :n_cols]
            d[col] = 0.0

            self.iterations += 1
            if self.iterations > self.max_iter:
                raise IterationLimit(self.max_iter)

            stall = stall + 1 if best <= self.feas_tol else 0
            if not self.bland and stall > self.stall_limit:
                logger.debug("simplex stalled for {} pivots, switching to Bland's rule".format(stall))
                self.bland = True

    def solve(self) -> Tuple[np.ndarray, np.ndarray, int]:
        """Returns standard form primal, standard row duals and the pivot count"""
        form = self.form
        m, N = form.A.shape
        T = np.hstack([form.A, form.b[:, None]]).astype(np.float64)
        basis = list(form.basis)
        rows = np.arange(m)

        if form.artificial.any():
            phase1 = form.artificial.astype(np.float64)
            self._run(T, basis, phase1, N)
            infeasibility = float(phase1[basis] @ T[:, -1])
            if infeasibility > self.feas_tol:
                raise Infeasible("no feasible point, phase one residual {:.3g}".format(infeasibility))

            # drive zero level artificials out of the basis, drop redundant rows
            keep = []
            for i in range(m):
                if not form.artificial[basis[i]]:
                    keep.append(i)
                    continue
                candidates = np.flatnonzero((np.abs(T[i, :N]) > self.pivot_tol) & ~form.artificial)
                if candidates.size == 0:
                    logger.debug("dropping redundant row {}".format(i))
                    continue
                self._pivot(T, basis, i, int(candidates[0]))
                keep.append(i)
            T = T[keep]
            basis = [basis[i] for i in keep]
            rows = rows[keep]

        active = np.flatnonzero(~form.artificial)
        remap = {int(col): idx for idx, col in enumerate(active)}
        T = np.hstack([T[:, active], T[:, -1:]])
        cost = form.cost[active]
        basis = [remap[col] for col in basis]

        self._run(T, basis, cost, active.size)

        A = form.A[rows][:, active]
        B = A[:, basis]
        z_basic = np.linalg.solve(B, form.b[rows]) if basis else np.zeros(0)
        y_kept = np.linalg.solve(B.T, cost[basis]) if basis else np.zeros(0)

        z = np.zeros(N)
        z[active[basis]] = np.maximum(z_basic, 0.0)
        y = np.zeros(m)
        y[rows] = y_kept
        return z, y, self.iterations
