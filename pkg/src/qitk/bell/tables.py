"""Behaviors and eight-number tables for two parties with binary inputs and outputs.

Table layout: ``mA[A] = P_A(a=0)``, ``mB[B] = P_B(b=0)``, ``j[A][B] = P_AB(0,0)``.
Flattened vectors use the order [mA0, mA1, mB0, mB1, j00, j01, j10, j11].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Behavior:
    """Conditional distribution p[a, b, A, B] = P(a, b | A, B).

    Any output and input alphabet sizes are allowed; most of the polytope
    code assumes all four are binary.
    """

    p: np.ndarray

    def __post_init__(self):
        p = np.array(self.p, dtype=float)
        if p.ndim != 4:
            raise ValueError("behavior needs indices (a, b, A, B)")
        if np.min(p) < -TOL:
            raise ValueError("behavior has negative probabilities")
        sums = p.sum(axis=(0, 1))
        if np.max(np.abs(sums - 1)) > TOL:
            raise ValueError("each conditional distribution must sum to 1")
        p.setflags(write=False)
        object.__setattr__(self, "p", p)

    def correlator(self, a_in: int, b_in: int) -> float:
        """E = P(a=b) - P(a!=b) for binary outputs."""
        q = self.p[:, :, a_in, b_in]
        return float(q[0, 0] + q[1, 1] - q[0, 1] - q[1, 0])

    def correlators(self) -> np.ndarray:
        return np.array([[self.correlator(x, y) for y in range(2)] for x in range(2)])

    def chsh(self) -> float:
        e = self.correlators()
        return float(e[0, 0] + e[0, 1] + e[1, 0] - e[1, 1])


@dataclass(frozen=True, eq=False)
class NsTable:
    mA: np.ndarray
    mB: np.ndarray
    j: np.ndarray

    def __post_init__(self):
        for name, shape in (("mA", (2,)), ("mB", (2,)), ("j", (2, 2))):
            arr = np.array(getattr(self, name), dtype=float)
            if arr.shape != shape:
                raise ValueError(f"{name} must have shape {shape}")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @classmethod
    def from_vector(cls, v) -> NsTable:
        v = np.asarray(v, dtype=float)
        if v.shape != (8,):
            raise ValueError(f"table vector must have 8 entries, got shape {v.shape}")
        return cls(v[0:2], v[2:4], v[4:8].reshape(2, 2))

    def vector(self) -> np.ndarray:
        return np.concatenate([self.mA, self.mB, self.j.reshape(-1)])

    def defect(self) -> float:
        """Largest violation of 0 <= P_AB(a,b) over the four joint distributions."""
        lo = np.maximum(0, self.mA[:, None] + self.mB[None, :] - 1)
        hi = np.minimum(self.mA[:, None], self.mB[None, :])
        return float(max(np.max(lo - self.j), np.max(self.j - hi), 0.0))

    def is_valid(self, tol: float = TOL) -> bool:
        return self.defect() <= tol

    def allclose(self, other: NsTable, atol: float = 1e-10) -> bool:
        return bool(np.allclose(self.vector(), other.vector(), atol=atol, rtol=0))

    def to_json(self) -> dict:
        return {"mA": self.mA.tolist(), "mB": self.mB.tolist(), "j": self.j.tolist()}

    @classmethod
    def from_json(cls, obj) -> NsTable:
        """Accept the dict form or a flat 8-vector."""
        if isinstance(obj, dict):
            return cls(obj["mA"], obj["mB"], obj["j"])
        return cls.from_vector(obj)

    def __repr__(self):
        return f"NsTable(mA={self.mA.tolist()}, mB={self.mB.tolist()}, j={self.j.tolist()})"


@dataclass(frozen=True, eq=False)
class BellFunctional:
    """Affine form x -> coeffs . x + offset in table layout."""

    coeffs: NsTable
    offset: float = 0.0

    def __call__(self, x: NsTable) -> float:
        return functional_value(self, x)

    def vector(self) -> np.ndarray:
        return self.coeffs.vector()


T_CH = BellFunctional(NsTable([-1, 0], [-1, 0], [[1, 1], [1, -1]]))


def functional_value(t: BellFunctional, x: NsTable) -> float:
    """Term-by-term product summed, plus the offset."""
    return float(np.dot(t.vector(), x.vector()) + t.offset)


# -- behaviors <-> tables ---------------------------------------------------

def signaling_defect(b: Behavior) -> float:
    """Largest change of a party's marginal when the other party switches input."""
    pa = b.p.sum(axis=1)  # [a, A, B]
    pb = b.p.sum(axis=0)  # [b, A, B]
    da = np.max(np.ptp(pa, axis=2)) if pa.shape[2] > 1 else 0.0
    db = np.max(np.ptp(pb, axis=1)) if pb.shape[1] > 1 else 0.0
    return float(max(da, db))


def is_no_signaling(b: Behavior, tol: float = 1e-7) -> tuple[bool, float]:
    d = signaling_defect(b)
    return d <= tol, d


def behavior_to_table(b: Behavior, tol: float = 1e-7) -> NsTable:
    if b.p.shape != (2, 2, 2, 2):
        raise ValueError("tables describe binary inputs and outputs only")
    ok, d = is_no_signaling(b, tol)
    if not ok:
        raise ValueError(f"behavior is signaling (defect {d:.3g})")
    mA = b.p[0].sum(axis=0).mean(axis=1)  # average over B of P(a=0|A,B)
    mB = b.p[:, 0].sum(axis=0).mean(axis=0)
    return NsTable(mA, mB, b.p[0, 0])


def table_to_behavior(x: NsTable) -> Behavior:
    p = np.empty((2, 2, 2, 2))
    ma, mb, j = x.mA[:, None], x.mB[None, :], x.j
    p[0, 0] = j
    p[0, 1] = ma - j
    p[1, 0] = mb - j
    p[1, 1] = 1 - ma - mb + j
    return Behavior(p)


# -- special points -------------------------------------------------------

_F = (lambda A: 0, lambda A: 1, lambda A: A, lambda A: A ^ 1)


def deterministic_behavior(i: int, j: int) -> NsTable:
    """Vertex D_ij: Alice outputs f_i(A), Bob f_j(B), with f = (0, 1, A, A xor 1) for 1..4."""
    if not (1 <= i <= 4 and 1 <= j <= 4):
        raise ValueError(f"strategy indices must lie in 1..4, got ({i}, {j})")
    ma = np.array([float(_F[i - 1](A) == 0) for A in range(2)])
    mb = np.array([float(_F[j - 1](B) == 0) for B in range(2)])
    return NsTable(ma, mb, np.outer(ma, mb))


def all_deterministic() -> list[tuple[tuple[int, int], NsTable]]:
    return [((i, j), deterministic_behavior(i, j)) for i, j in itertools.product(range(1, 5), repeat=2)]


def pr_box(alpha: int = 0, beta: int = 0, gamma: int = 0) -> Behavior:
    """Uniform-marginal box obeying a xor b = (A xor alpha)(B xor beta) xor gamma."""
    p = np.zeros((2, 2, 2, 2))
    for a, b, A, B in itertools.product(range(2), repeat=4):
        if a ^ b == ((A ^ alpha) & (B ^ beta)) ^ gamma:
            p[a, b, A, B] = 0.5
    return Behavior(p)


def uniform_table() -> NsTable:
    return NsTable([0.5, 0.5], [0.5, 0.5], [[0.25, 0.25], [0.25, 0.25]])


# -- relabelings and the eight CH facets ----------------------------------

def relabel(x: NsTable, flip_a_in: int = 0, flip_b_in: int = 0, flip_a_out: int = 0) -> NsTable:
    """Table of the box seen after A -> A xor flip_a_in, B -> B xor flip_b_in, a -> a xor flip_a_out.

    Works on any vector in table layout, valid or not, so it can be used to
    transport linear functionals.
    """
    ma, mb, j = x.mA, x.mB, x.j
    if flip_a_in:
        ma, j = ma[::-1], j[::-1, :]
    if flip_b_in:
        mb, j = mb[::-1], j[:, ::-1]
    if flip_a_out:
        ma, j = 1 - ma, mb[None, :] - j
    return NsTable(ma, mb, j)


def _pull_back(t: BellFunctional, flips: tuple[int, int, int]) -> BellFunctional:
    """The affine functional x -> t(relabel(x, *flips)), read off from its values."""
    zero = NsTable.from_vector(np.zeros(8))
    offset = functional_value(t, relabel(zero, *flips))
    coeffs = np.array([
        functional_value(t, relabel(NsTable.from_vector(e), *flips)) - offset
        for e in np.eye(8)
    ])
    return BellFunctional(NsTable.from_vector(coeffs), offset)


@dataclass(frozen=True)
class ChFacet:
    functional: BellFunctional
    box: tuple[int, int, int]  # (alpha, beta, gamma) of the PR box above it


def ch_symmetries() -> list[ChFacet]:
    return list(_ch_symmetries())


@lru_cache(maxsize=None)
def _ch_symmetries() -> tuple[ChFacet, ...]:
    """The eight CH facets, each paired with the PR variant that violates it.

    Facet k is T_CH composed with the relabeling that maps PR variant k onto
    the standard box, so each one is bounded by 0 over local points.
    """
    facets = []
    for alpha, beta, gamma in itertools.product(range(2), repeat=3):
        # a xor b = (A xor alpha)(B xor beta) xor gamma becomes a' xor b = A' B'
        facets.append(ChFacet(_pull_back(T_CH, (alpha, beta, gamma)), (alpha, beta, gamma)))
    return tuple(facets)


@lru_cache(maxsize=None)
def facet_matrix() -> tuple[np.ndarray, np.ndarray]:
    """Rows of facet coefficients (8 x 8) and their offsets."""
    fs = _ch_symmetries()
    m = np.array([f.functional.vector() for f in fs])
    c = np.array([f.functional.offset for f in fs])
    m.setflags(write=False)
    c.setflags(write=False)
    return m, c


def facet_values(x: NsTable) -> np.ndarray:
    m, c = facet_matrix()
    return m @ x.vector() + c
