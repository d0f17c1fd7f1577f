"""Quantum correlations for two qubits: CHSH, Tsirelson, optimal settings, the arcsin criterion."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .. import qubits as qb
from ..tensor import DimensionError, as_operator, eig_hermitian
from .tables import Behavior

SQ2 = math.sqrt(2)
Z = np.array([0.0, 0.0, 1.0])
X = np.array([1.0, 0.0, 0.0])


def optimal_singlet_settings() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """a = z, a' = x, b = (z+x)/sqrt2, b' = (z-x)/sqrt2."""
    return Z, X, (Z + X) / SQ2, (Z - X) / SQ2


def chsh_operator(a, a2, b, b2) -> np.ndarray:
    """S = A(x)B + A'(x)B + A(x)B' - A'(x)B' with A = a.sigma etc."""
    A, A2, B, B2 = (qb.sigma_n(qb.unit(n)).data for n in (a, a2, b, b2))
    return np.kron(A, B) + np.kron(A2, B) + np.kron(A, B2) - np.kron(A2, B2)


def _two_qubit(state):
    rho = as_operator(state)
    if rho.side != 4:
        raise DimensionError("CHSH needs a two-qubit state")
    return rho


def chsh_value(state, a, a2, b, b2) -> float:
    rho = _two_qubit(state)
    return float(np.real(np.trace(rho.data @ chsh_operator(a, a2, b, b2))))


@dataclass(frozen=True)
class TsirelsonReport:
    max_eig_s: float
    max_eig_s2: float
    identity_residual: float  # max |S^2 - (4 - [A,A'](x)[B,B'])|


def tsirelson_check(a, a2, b, b2) -> TsirelsonReport:
    """Spectral data of S and S^2, and the residual of S^2 = 4 - [A,A'](x)[B,B'].

    The commutator term carries a minus sign for this ordering of S; it has
    a spectrum symmetric about zero, so the bound max eig S^2 <= 8 holds
    either way.
    """
    A, A2, B, B2 = (qb.sigma_n(qb.unit(n)).data for n in (a, a2, b, b2))
    s = chsh_operator(a, a2, b, b2)
    s2 = s @ s
    rhs = 4 * np.eye(4) - np.kron(A @ A2 - A2 @ A, B @ B2 - B2 @ B)
    return TsirelsonReport(
        float(eig_hermitian(s).eigenvalues[0]),
        float(eig_hermitian(s2).eigenvalues[0]),
        float(np.max(np.abs(s2 - rhs))),
    )


def partially_entangled(theta: float):
    """cos(theta)|00> + sin(theta)|11>."""
    return qb.PureState([np.cos(theta), 0, 0, np.sin(theta)], (2, 2))


def optimal_chsh_settings(theta: float):
    """A = sz, A' = sx, B/B' = cos(beta) sz +- sin(beta) sx with cos(beta) = 1/sqrt(1 + sin^2 2theta)."""
    beta = math.acos(1 / math.sqrt(1 + math.sin(2 * theta) ** 2))
    b = np.array([math.sin(beta), 0, math.cos(beta)])
    b2 = np.array([-math.sin(beta), 0, math.cos(beta)])
    return (Z, X, b, b2), beta


def optimal_chsh_pure(theta: float) -> tuple[float, float]:
    """Best CHSH value of cos(theta)|00> + sin(theta)|11> and the Bob angle that reaches it."""
    if not 0 <= theta <= math.pi / 4 + 1e-12:
        raise ValueError(f"theta must lie in [0, pi/4], got {theta}")
    settings, beta = optimal_chsh_settings(theta)
    return chsh_value(partially_entangled(theta), *settings), beta


def werner_chsh_threshold() -> float:
    """Smallest singlet weight W whose Werner state breaks |S| <= 2 at the best settings.

    S is affine in W, so two evaluations fix the line.
    """
    settings = optimal_singlet_settings()
    s1 = chsh_value(qb.werner_state(1.0), *settings)
    s0 = chsh_value(qb.werner_state(0.0), *settings)
    # |s0 + W (s1 - s0)| = 2 on the side where s1 points
    return (math.copysign(2.0, s1) - s0) / (s1 - s0)


def behavior_from_state(state, alice_dirs, bob_dirs) -> Behavior:
    """Born-rule behavior; outcome 0 is the +1 eigenvalue, projector (1 + n.sigma)/2."""
    rho = _two_qubit(state).data
    p = np.zeros((2, 2, 2, 2))
    for A, na in enumerate(alice_dirs):
        pa = [(qb.I2 + s * qb.sigma_n(qb.unit(na)).data) / 2 for s in (1, -1)]
        for B, nb in enumerate(bob_dirs):
            pb = [(qb.I2 + s * qb.sigma_n(qb.unit(nb)).data) / 2 for s in (1, -1)]
            for a in range(2):
                for b in range(2):
                    p[a, b, A, B] = np.real(np.trace(rho @ np.kron(pa[a], pb[b])))
    return Behavior(np.clip(p, 0, None))


def me_behavior() -> Behavior:
    """Phi+ measured at the optimal singlet settings: joints (1 +- 1/sqrt2)/4, minus at (1,1)."""
    a, a2, b, b2 = optimal_singlet_settings()
    return behavior_from_state(qb.bell_state("phi+"), (a, a2), (b, b2))


@dataclass(frozen=True)
class TlmResult:
    passes: bool
    slack: float  # pi minus the worst |sum| over the four sign placements


def tlm_criterion(e_ab: float, e_ab2: float, e_a2b: float, e_a2b2: float, tol: float = 1e-9) -> TlmResult:
    """Arcsin test for correlators of the quantum set, symmetrized over the minus-sign position."""
    es = np.array([e_ab, e_ab2, e_a2b, e_a2b2], dtype=float)
    if np.any(np.abs(es) > 1):
        raise ValueError(f"correlators must lie in [-1, 1], got {es}")
    angles = np.arcsin(es)
    worst = max(abs(angles.sum() - 2 * angles[k]) for k in range(4))
    return TlmResult(bool(worst <= math.pi + tol), float(math.pi - worst))
