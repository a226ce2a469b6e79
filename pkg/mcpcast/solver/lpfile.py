__all__ = ["write_lp"]

from typing import IO, List, Union
import numpy as np

from .lp import LpProblem, MINIMIZE

def _num(value: float) -> str:
    return "{:.17g}".format(value)

def _expr(coefs: np.ndarray, names: List[str]) -> str:
    terms = []
    for coef, name in zip(coefs, names):
        if coef == 0:
            continue
        sign = "-" if coef < 0 else "+"
        terms.append("{} {} {}".format(sign, _num(abs(coef)), name))
    if not terms:
        return "0 {}".format(names[0]) if names else "0"
    text = " ".join(terms)
    return text[2:] if text.startswith("+ ") else text

def write_lp(problem: LpProblem, stream: Union[str, IO]):
    """Dumps the problem in CPLEX LP text format for external cross checking

    Args:
        problem (LpProblem): problem to dump
        stream (Union[str, IO]): file path or text stream
    """
    names = list(problem.var_names) if problem.var_names is not None else \
        ["x{}".format(j) for j in range(problem.n_vars)]
    rows = list(problem.row_names) if problem.row_names is not None else \
        ["r{}".format(i) for i in range(problem.n_rows)]

    lines = ["\\ written by mcpcast", "Minimize" if problem.sense == MINIMIZE else "Maximize"]
    lines.append(" obj: {}".format(_expr(problem.c, names)))
    lines.append("Subject To")
    for i in range(problem.n_rows):
        lines.append(" {}: {} {} {}".format(rows[i], _expr(problem.A[i], names),
            problem.senses[i], _num(problem.b[i])))

    lines.append("Bounds")
    for name, lo, up in zip(names, problem.lower, problem.upper):
        if np.isneginf(lo) and np.isposinf(up):
            lines.append(" {} free".format(name))
        elif np.isneginf(lo):
            lines.append(" -inf <= {} <= {}".format(name, _num(up)))
        elif np.isposinf(up):
            if lo != 0:
                lines.append(" {} >= {}".format(name, _num(lo)))
        else:
            lines.append(" {} <= {} <= {}".format(_num(lo), name, _num(up)))
    lines.append("End")

    text = "\n".join(lines) + "\n"
    if isinstance(stream, str):
        with open(stream, "w") as foo:
            foo.write(text)
    else:
        stream.write(text)
