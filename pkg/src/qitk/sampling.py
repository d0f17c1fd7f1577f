"""Random states, unitaries and directions for property checks and Monte-Carlo."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .tensor import DenseOperator, PureState


def _rng(rng) -> np.random.Generator:
    return rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)


def random_unitary(d: int, rng=None) -> np.ndarray:
    """Haar-random unitary via QR of a Ginibre matrix with phase fix."""
    rng = _rng(rng)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_pure(dims: int | Sequence[int], rng=None) -> PureState:
    rng = _rng(rng)
    dims = (dims,) if isinstance(dims, (int, np.integer)) else tuple(dims)
    d = int(np.prod(dims))
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return PureState.normalized(v, dims)


def random_density(dims: int | Sequence[int], rng=None, rank: int | None = None) -> DenseOperator:
    """Random mixed state from the induced (Ginibre) measure; full rank unless ``rank`` given."""
    rng = _rng(rng)
    dims = (dims,) if isinstance(dims, (int, np.integer)) else tuple(dims)
    d = int(np.prod(dims))
    k = rank or d
    g = rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))
    rho = g @ g.conj().T
    return DenseOperator(rho / np.trace(rho).real, dims)


def random_directions(n: int, rng=None) -> np.ndarray:
    """n uniformly distributed unit 3-vectors, shape (n, 3)."""
    rng = _rng(rng)
    v = rng.standard_normal((n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def random_bloch_ball(rng=None) -> np.ndarray:
    """A point drawn uniformly from the unit ball."""
    rng = _rng(rng)
    return random_directions(1, rng)[0] * rng.random() ** (1 / 3)
