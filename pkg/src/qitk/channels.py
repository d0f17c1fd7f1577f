"""Completely positive maps, the collision thermalization model and qubit cloners."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import qubits as qb
from .sampling import _rng, random_directions
from .tensor import (
    ATOL,
    DenseOperator,
    DimensionError,
    PureState,
    as_operator,
    kron,
    partial_trace,
    require_density,
)


@dataclass(frozen=True)
class KrausChannel:
    """Operator-sum map rho -> sum_k K rho K^dag, checked to be trace preserving."""

    kraus: tuple[np.ndarray, ...]
    in_dims: tuple[int, ...]
    out_dims: tuple[int, ...]

    def __init__(self, kraus: Sequence, in_dims=None, out_dims=None, tol: float = ATOL):
        ks = tuple(np.array(as_operator(k).data if isinstance(k, DenseOperator) else k, dtype=complex)
                   for k in kraus)
        if not ks:
            raise ValueError("a channel needs at least one Kraus operator")
        shape = ks[0].shape
        if any(k.shape != shape or k.ndim != 2 for k in ks):
            raise DimensionError("Kraus operators must share one 2-D shape")
        total = sum(k.conj().T @ k for k in ks)
        defect = float(np.max(np.abs(total - np.eye(shape[1]))))
        if defect > tol:
            raise ValueError(f"channel is not trace preserving (defect {defect:.3g})")
        object.__setattr__(self, "kraus", ks)
        object.__setattr__(self, "in_dims", tuple(in_dims or (shape[1],)))
        object.__setattr__(self, "out_dims", tuple(out_dims or (shape[0],)))

    def __call__(self, rho) -> DenseOperator:
        return apply_channel(self, rho)


def apply_channel(ch: KrausChannel, rho) -> DenseOperator:
    rho = as_operator(rho)
    if rho.side != ch.kraus[0].shape[1]:
        raise DimensionError(f"channel acts on dimension {ch.kraus[0].shape[1]}, state has {rho.side}")
    out = sum(k @ rho.data @ k.conj().T for k in ch.kraus)
    return DenseOperator(out, ch.out_dims)


def unitary_channel(u) -> KrausChannel:
    return KrausChannel([u])


def isometry_channel(v, env_dim: int, out_dim: int) -> KrausChannel:
    """Stinespring isometry V: in -> out (x) env, traced over env."""
    v = np.asarray(v, dtype=complex)
    blocks = v.reshape(out_dim, env_dim, v.shape[1])
    return KrausChannel([blocks[:, e, :] for e in range(env_dim)])


# -- collision model --------------------------------------------------------

@dataclass(frozen=True)
class CollisionParams:
    p: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"reservoir weight p must lie in [0, 1], got {self.p}")

    @property
    def reservoir(self) -> DenseOperator:
        return DenseOperator(np.diag([self.p, 1 - self.p]))


def collision_unitary(phi: float) -> np.ndarray:
    """Partial swap on (system, reservoir): |01> -> c|01> + is|10>, |10> -> c|10> + is|01>."""
    c, s = np.cos(phi), np.sin(phi)
    u = np.eye(4, dtype=complex)
    u[1, 1] = u[2, 2] = c
    u[2, 1] = u[1, 2] = 1j * s
    return u


def collision_step_unitary(rho, params: CollisionParams) -> DenseOperator:
    """One collision by explicit conjugation of rho (x) xi and a partial trace."""
    rho = require_density(rho)
    joint = kron(rho, params.reservoir)
    u = collision_unitary(params.phi)
    return partial_trace(DenseOperator(u @ joint.data @ u.conj().T, (2, 2)), 0)


def collision_step(rho, params: CollisionParams) -> DenseOperator:
    """One collision via d' = c^2 d + s^2 p, k' = c k."""
    rho = require_density(rho)
    c, s = np.cos(params.phi), np.sin(params.phi)
    d, k = rho.data[0, 0].real, rho.data[0, 1]
    d2 = c * c * d + s * s * params.p
    k2 = c * k
    return DenseOperator([[d2, k2], [np.conj(k2), 1 - d2]])


def collision_channel(params: CollisionParams) -> KrausChannel:
    """Kraus form of one collision, obtained from the unitary and the reservoir spectrum."""
    u = collision_unitary(params.phi).reshape(2, 2, 2, 2)  # (s', r', s, r)
    ks = []
    for r, w in enumerate((params.p, 1 - params.p)):
        if w <= 0:
            continue
        for r2 in range(2):
            ks.append(np.sqrt(w) * u[:, r2, :, r])
    return KrausChannel(ks)


def collision_closed_form(rho, params: CollisionParams, n: int) -> DenseOperator:
    rho = as_operator(rho)
    c = np.cos(params.phi)
    d0, k0 = rho.data[0, 0].real, rho.data[0, 1]
    dn = c ** (2 * n) * d0 + (1 - c ** (2 * n)) * params.p
    kn = c**n * k0
    return DenseOperator([[dn, kn], [np.conj(kn), 1 - dn]])


def collision_iterate(rho, params: CollisionParams, n: int) -> tuple[DenseOperator, DenseOperator]:
    """Apply ``n`` collisions; returns (iterated state, closed-form prediction)."""
    if n < 0:
        raise ValueError("number of collisions must be nonnegative")
    cur = require_density(rho)
    for _ in range(n):
        cur = collision_step(cur, params)
    return cur, collision_closed_form(rho, params, n)


# -- cloning ----------------------------------------------------------------

_R23 = np.sqrt(2 / 3)
_R16 = np.sqrt(1 / 6)


def bh_isometry() -> np.ndarray:
    """8x2 isometry of the Buzek-Hillery cloner on its basis inputs, ordering (A, B, C)."""
    v = np.zeros((8, 2), dtype=complex)
    v[0b000, 0] = _R23
    v[0b011, 0] = v[0b101, 0] = _R16
    v[0b111, 1] = _R23
    v[0b100, 1] = v[0b010, 1] = _R16
    return v


def bh_output(psi: PureState) -> PureState:
    """sqrt(2/3)|psi psi psi*> + sqrt(1/6)(|psi psi_perp> + |psi_perp psi>)|psi*_perp>."""
    p = psi
    pp = qb.perp(psi)
    pc = qb.conj(psi)
    pcp = qb.perp(pc)
    vec = _R23 * kron(p, p, pc).amplitudes + _R16 * (
        kron(p, pp, pcp).amplitudes + kron(pp, p, pcp).amplitudes
    )
    return PureState(vec, (2, 2, 2))


def bh_clone(psi: PureState) -> DenseOperator:
    """Three-qubit output (clone A, clone B, ancilla C) of the symmetric universal cloner."""
    if psi.side != 2:
        raise DimensionError("bh_clone takes a single qubit")
    return bh_output(psi).proj()


def universal_not(psi: PureState) -> DenseOperator:
    """(2/3)|psi_perp><psi_perp| + (1/3)|psi><psi|."""
    return (2 / 3) * qb.perp(psi).proj() + (1 / 3) * psi.proj()


def symmetric_projector() -> DenseOperator:
    r = 1 / np.sqrt(2)
    cols = np.array([[1, 0, 0, 0], [0, 0, 0, 1], [0, r, r, 0]], dtype=complex).T
    return DenseOperator(cols @ cols.conj().T, (2, 2))


def symmetric_projection_clone(rho) -> DenseOperator:
    """T[rho] = (2/3) S2 (rho (x) 1) S2."""
    rho = require_density(rho)
    if rho.side != 2:
        raise DimensionError("symmetric_projection_clone takes a single qubit")
    s2 = symmetric_projector().data
    out = (2 / 3) * s2 @ np.kron(rho.data, np.eye(2)) @ s2
    return DenseOperator(out, (2, 2))


_STRATEGIES = ("random-new-qubit", "measure-and-reprepare")


def _strategy_integrand(strategy: str, u):
    """Average fidelity of the two copies given u = cos(angle) between input and random direction."""
    if strategy == "random-new-qubit":
        return 0.5 * (1.0 + (1 + u) / 2)
    if strategy == "measure-and-reprepare":
        return ((1 + u) / 2) ** 2 + ((1 - u) / 2) ** 2
    raise ValueError(f"unknown strategy {strategy!r}; expected one of {_STRATEGIES}")


def trivial_clone_fidelity(strategy: str) -> float:
    """Average single-copy fidelity of a trivial cloning strategy.

    The average over uniformly random directions reduces to one dimension,
    since u = n.m is uniform on [-1, 1]. The integrand is a low-degree
    polynomial, so Gauss-Legendre quadrature is exact.
    """
    nodes, weights = np.polynomial.legendre.leggauss(8)
    return float(0.5 * np.sum(weights * _strategy_integrand(strategy, nodes)))


def trivial_clone_fidelity_mc(strategy: str, samples: int = 10**6, rng=0) -> float:
    """Monte-Carlo estimate of :func:`trivial_clone_fidelity` by direct simulation."""
    if strategy not in _STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {_STRATEGIES}")
    rng = _rng(rng)
    m = np.array([0.0, 0.0, 1.0])
    n = random_directions(samples, rng)
    u = n @ m
    if strategy == "random-new-qubit":
        # copy A is the original, copy B a random pure state along n
        return float(np.mean(0.5 * (1.0 + (1 + u) / 2)))
    # measure along n, get +/- with Born probability, reprepare that spin twice
    up = rng.random(samples) < (1 + u) / 2
    f = np.where(up, (1 + u) / 2, (1 - u) / 2)
    return float(np.mean(f))


AMPLIFIER_WEIGHTS = (2.0, 1.0)  # stimulated : spontaneous emission


def amplifier_fidelity() -> float:
    """Clone fidelity of an ideal stimulated-emission amplifier.

    A second photon copies the input with stimulated weight 2 and is random
    with spontaneous weight 1.
    """
    stim, spont = AMPLIFIER_WEIGHTS
    p_stim = stim / (stim + spont)
    return p_stim * 1.0 + (1 - p_stim) * 0.5


def amplifier_state() -> PureState:
    """sqrt(2/3)|HH>|e_H> + sqrt(1/3)|Psi+>|e_V> on (photon A, photon B, medium)."""
    hh_eh = kron(qb.ZERO, qb.ZERO, qb.ZERO).amplitudes
    psip_ev = kron(qb.bell_state("psi+"), qb.ONE).amplitudes
    return PureState(_R23 * hh_eh + np.sqrt(1 / 3) * psip_ev, (2, 2, 2))


def basis_cloner_output(psi: PureState, memory: Sequence = ((1, 0), (0, 1))) -> PureState:
    """Linear extension of |k>|0>|M> -> |k>|k>|M_k> applied to psi, on (A, B, M)."""
    mem = [np.asarray(m, dtype=complex) / np.linalg.norm(m) for m in memory]
    vec = sum(psi.amplitudes[k] * np.kron(np.kron(qb.basis_vec(k), qb.basis_vec(k)), mem[k])
              for k in range(2))
    return PureState(vec, (2, 2, len(mem[0])))


def cloning_overlap(psi: PureState, memory: Sequence = ((1, 0), (0, 1))) -> float:
    """max over memory states |M> of |<psi psi M| out>|; equals 1 only if cloning succeeded."""
    out = basis_cloner_output(psi, memory)
    dm = out.dims[2]
    t = out.amplitudes.reshape(4, dm)
    pp = np.kron(psi.amplitudes, psi.amplitudes)
    return float(np.linalg.norm(pp.conj() @ t))
