from .lp import (
    LpProblem,
    LpSolution,
    solve_lp,
    MINIMIZE,
    MAXIMIZE,
    LE,
    EQ,
    GE
)
from .lpfile import write_lp
