"""Membership in the local polytope of the two-input, two-output scenario."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .simplex import find_feasible
from .tables import NsTable, all_deterministic, facet_values


@lru_cache(maxsize=None)
def vertex_matrix() -> np.ndarray:
    """Columns are the 16 deterministic tables as 8-vectors, in D_11, D_12, ..., D_44 order."""
    m = np.column_stack([d.vector() for _, d in all_deterministic()])
    m.setflags(write=False)
    return m


def vertex_labels() -> list[tuple[int, int]]:
    return [ij for ij, _ in all_deterministic()]


@dataclass(frozen=True)
class MembershipResult:
    is_local: bool
    weights: np.ndarray | None  # over vertex_labels(), when local
    violated_facet: int | None  # index into ch_symmetries(), when nonlocal
    violation: float | None  # how far outside [-1, 0] that facet's value lies
    facet_values: np.ndarray

    def facets_agree(self, tol: float = 1e-9) -> bool:
        """Does the eight-facet test give the same verdict as the LP?"""
        outside = bool(np.any(self.facet_values > tol) or np.any(self.facet_values < -1 - tol))
        return outside != self.is_local


def decompose(x: NsTable, columns: np.ndarray | None = None, tol: float = 1e-9):
    """Convex weights over ``columns`` (default: all vertices) reproducing x, or None."""
    v = vertex_matrix() if columns is None else columns
    a = np.vstack([v, np.ones(v.shape[1])])
    b = np.append(x.vector(), 1.0)
    res = find_feasible(a, b, tol=tol)
    return res.x if res.feasible else None


def local_membership(x: NsTable, tol: float = 1e-9) -> MembershipResult:
    """Decide whether a table is a mixture of deterministic strategies.

    Local tables come back with explicit weights. Otherwise the result names
    the CH facet that is violated the most.
    """
    fv = facet_values(x)
    w = decompose(x, tol=tol)
    if w is not None:
        err = float(np.max(np.abs(vertex_matrix() @ w - x.vector())))
        if err > 1e-7 or abs(w.sum() - 1) > 1e-7:
            raise ArithmeticError(f"decomposition fails to reproduce the table (error {err:.3g})")
        return MembershipResult(True, w, None, None, fv)
    excess = np.maximum(fv, -1 - fv)
    k = int(np.argmax(excess))
    return MembershipResult(False, None, k, float(excess[k]), fv)


def is_extreme(index: int) -> bool:
    """True when vertex ``index`` is not a mixture of the other fifteen."""
    v = vertex_matrix()
    others = np.delete(v, index, axis=1)
    return decompose(NsTable.from_vector(v[:, index]), others) is None


def random_ns_table(rng) -> NsTable:
    """Uniform marginals, then each joint uniform within its Frechet bounds."""
    ma = rng.random(2)
    mb = rng.random(2)
    lo = np.maximum(0, ma[:, None] + mb[None, :] - 1)
    hi = np.minimum(ma[:, None], mb[None, :])
    j = lo + rng.random((2, 2)) * (hi - lo)
    return NsTable(ma, mb, j)
