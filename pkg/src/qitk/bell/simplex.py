"""Phase-I simplex for small feasibility problems  A x = b, x >= 0."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    x: np.ndarray | None
    residual: float  # phase-I objective at termination
    pivots: int


def find_feasible(a, b, tol: float = 1e-9, max_pivots: int = 10_000) -> FeasibilityResult:
    """Find x >= 0 with a @ x = b, or report that none exists.

    Artificial variables start in the basis and are driven out by minimizing
    their sum. Bland's rule picks entering and leaving columns, so the method
    cannot cycle.
    """
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    m, n = a.shape
    neg = b < 0
    a[neg] *= -1
    b[neg] *= -1
    # tableau [A | I | b]; last row holds reduced costs of the phase-I objective
    t = np.zeros((m + 1, n + m + 1))
    t[:m, :n] = a
    t[:m, n:n + m] = np.eye(m)
    t[:m, -1] = b
    t[m, :n] = -a.sum(axis=0)
    t[m, -1] = -b.sum()
    basis = list(range(n, n + m))
    pivots = 0
    while pivots < max_pivots:
        cost = t[m, :-1]
        enter = next((k for k in range(n + m) if cost[k] < -tol), None)
        if enter is None:
            break
        col = t[:m, enter]
        rows = [i for i in range(m) if col[i] > tol]
        if not rows:  # cannot happen for a bounded phase-I problem
            break
        ratios = [t[i, -1] / col[i] for i in rows]
        best = min(ratios)
        leave = min((i for i, r in zip(rows, ratios) if r <= best + tol), key=lambda i: basis[i])
        t[leave] /= t[leave, enter]
        others = np.arange(m + 1) != leave
        t[others] -= np.outer(t[others, enter], t[leave])
        basis[leave] = enter
        pivots += 1
    residual = -t[m, -1]
    if residual > tol:
        return FeasibilityResult(False, None, float(residual), pivots)
    x = np.zeros(n)
    for i, k in enumerate(basis):
        if k < n:
            x[k] = t[i, -1]
    return FeasibilityResult(True, np.clip(x, 0, None), float(max(residual, 0.0)), pivots)
