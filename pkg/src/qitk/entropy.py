"""Entropies in bits."""

from __future__ import annotations

import math

import numpy as np

from .discrimination import Ensemble
from .tensor import (
    ZERO_EIG,
    DenseOperator,
    DimensionError,
    eig_hermitian,
    partial_trace,
    psd_eigs,
    require_density,
)


def _h(vals) -> float:
    vals = np.asarray(vals, dtype=float)
    vals = vals[vals > ZERO_EIG]
    return float(-np.sum(vals * np.log2(vals)))


def binary_entropy(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of range: {p}")
    return _h([p, 1 - p])


def von_neumann(rho) -> float:
    """S(rho) = -Tr rho log2 rho."""
    return _h(psd_eigs(require_density(rho)))


def relative_entropy(rho, sigma) -> float:
    """S(rho||sigma) = -S(rho) - Tr rho log2 sigma; math.inf if supp rho is not inside supp sigma."""
    rho, sigma = require_density(rho), require_density(sigma)
    if rho.side != sigma.side:
        raise DimensionError("states must share a dimension")
    eig = eig_hermitian(sigma)
    lam = eig.eigenvalues
    v = eig.eigenvectors
    # weight of rho on each eigenvector of sigma
    w = np.real(np.einsum("ik,ij,jk->k", v.conj(), rho.data, v))
    null = lam <= ZERO_EIG
    if np.any(w[null] > 1e-10):
        return math.inf
    cross = float(np.sum(w[~null] * np.log2(lam[~null])))
    return max(-von_neumann(rho) - cross, 0.0)


def conditional_entropy(rho_ab, cut: int = 1) -> float:
    """S(A|B) = S(AB) - S(B) where subsystem ``cut`` is B and the rest form A."""
    rho_ab = require_density(rho_ab)
    if len(rho_ab.dims) < 2:
        raise DimensionError("conditional entropy needs at least two subsystems")
    return von_neumann(rho_ab) - von_neumann(partial_trace(rho_ab, cut))


def mutual_information(rho_ab) -> float:
    rho_ab = require_density(rho_ab)
    if len(rho_ab.dims) != 2:
        raise DimensionError("mutual information needs exactly two subsystems")
    return (von_neumann(partial_trace(rho_ab, 0)) + von_neumann(partial_trace(rho_ab, 1))
            - von_neumann(rho_ab))


def holevo_chi(e: Ensemble) -> float:
    """S(sum p rho) - sum p S(rho)."""
    avg = von_neumann(e.average())
    return avg - float(sum(p * von_neumann(s) for p, s in zip(e.priors, e.states)))


def bb84_eve_ensemble(eps: float) -> Ensemble:
    """Eve's two conditional states in a 4-dim probe space for an intercept that causes error eps."""
    if not 0.0 <= eps <= 0.5:
        raise ValueError(f"eps must lie in [0, 1/2], got {eps}")
    e = np.eye(4)
    a, b = np.sqrt(1 - eps), np.sqrt(eps)
    psi1 = [a * e[0] + b * e[1], a * e[0] - b * e[1]]
    psi2 = [a * e[2] + b * e[3], a * e[2] - b * e[3]]
    rho0 = (1 - eps) * np.outer(psi1[0], psi1[0]) + eps * np.outer(psi2[0], psi2[0])
    rho1 = (1 - eps) * np.outer(psi1[1], psi1[1]) + eps * np.outer(psi2[1], psi2[1])
    return Ensemble([DenseOperator(rho0), DenseOperator(rho1)], [0.5, 0.5])


def werner_spectrum(lam: float) -> np.ndarray:
    return np.array([(1 + 3 * lam) / 4] + [(1 - lam) / 4] * 3)
