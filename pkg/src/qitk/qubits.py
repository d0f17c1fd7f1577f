"""Single- and few-qubit constructions.

Conventions: sigma_z|0> = |0>, sigma_z|1> = -|1>; the Bloch vector of a qubit
state rho is m_k = Tr(sigma_k rho) so that rho = (1 + m.sigma)/2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tensor import (
    ATOL,
    DenseOperator,
    DimensionError,
    InvalidStateError,
    PureState,
    as_operator,
    identity,
    kron,
    permute,
)

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SX, SY, SZ)

sigma_x = DenseOperator(SX)
sigma_y = DenseOperator(SY)
sigma_z = DenseOperator(SZ)

ZERO = PureState([1, 0])
ONE = PureState([0, 1])
PLUS = PureState(np.array([1, 1]) / np.sqrt(2))
MINUS = PureState(np.array([1, -1]) / np.sqrt(2))

BELL_KINDS = ("phi+", "phi-", "psi+", "psi-")


def basis_vec(k: int) -> np.ndarray:
    v = np.zeros(2, dtype=complex)
    v[k] = 1.0
    return v


def sigma_n(n) -> DenseOperator:
    """n.sigma for a 3-vector n (not required to be unit)."""
    n = np.asarray(n, dtype=float)
    return DenseOperator(n[0] * SX + n[1] * SY + n[2] * SZ)


def direction(theta: float, phi: float) -> np.ndarray:
    return np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])


def unit(n, tol: float = ATOL) -> np.ndarray:
    """Validate a measurement direction."""
    n = np.asarray(n, dtype=float).reshape(-1)
    if n.shape != (3,):
        raise DimensionError("a direction has three components")
    if abs(np.linalg.norm(n) - 1.0) > tol:
        raise ValueError(f"direction {n} is not a unit vector")
    return n


def bloch_to_state(m, tol: float = ATOL) -> DenseOperator:
    m = np.asarray(m, dtype=float).reshape(-1)
    if m.shape != (3,):
        raise DimensionError("Bloch vector needs three components")
    if np.linalg.norm(m) > 1 + tol:
        raise InvalidStateError(f"Bloch vector {m} lies outside the unit ball")
    return DenseOperator(0.5 * (I2 + m[0] * SX + m[1] * SY + m[2] * SZ))


def state_to_bloch(rho) -> np.ndarray:
    rho = as_operator(rho)
    if rho.side != 2:
        raise DimensionError(f"expected a single qubit, got dimension {rho.side}")
    return np.array([np.real(np.trace(s @ rho.data)) for s in PAULIS])


def spin_state(theta: float, phi: float) -> PureState:
    """|+n> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>, the +1 eigenstate of n.sigma."""
    return PureState([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])


def prob_up(n, rho) -> float:
    """Born-rule probability of the outcome +n on a qubit state."""
    n = unit(n)
    rho = as_operator(rho)
    if rho.side != 2:
        raise DimensionError("prob_up needs a single-qubit state")
    proj = 0.5 * (I2 + sigma_n(n).data)
    return float(np.real(np.trace(proj @ rho.data)))


def perp(psi: PureState) -> PureState:
    """|psi_perp> = beta*|0> - alpha*|1> for |psi> = alpha|0> + beta|1>."""
    a, b = psi.amplitudes
    return PureState([np.conj(b), -np.conj(a)])


def conj(psi: PureState) -> PureState:
    return PureState(psi.amplitudes.conj(), psi.dims)


def bell_state(kind: str) -> PureState:
    """Bell basis vector; ``kind`` is one of phi+, phi-, psi+, psi- (unicode names accepted)."""
    key = _bell_key(kind)
    r = 1 / np.sqrt(2)
    amps = {
        "phi+": [r, 0, 0, r],
        "phi-": [r, 0, 0, -r],
        "psi+": [0, r, r, 0],
        "psi-": [0, r, -r, 0],
    }[key]
    return PureState(amps, (2, 2))


def _bell_key(kind: str) -> str:
    k = kind.strip().lower().replace("ψ", "psi").replace("φ", "phi").replace("−", "-")
    k = k.replace("_minus", "-").replace("_plus", "+").replace("-minus", "-").replace("-plus", "+")
    k = {"phiplus": "phi+", "phiminus": "phi-", "psiplus": "psi+", "psiminus": "psi-"}.get(k, k)
    if k not in BELL_KINDS:
        raise ValueError(f"unknown Bell state {kind!r}; expected one of {BELL_KINDS}")
    return k


def singlet_statistics(a, b) -> dict[tuple[int, int], float]:
    """Joint outcome distribution for the singlet measured along a (first) and b (second).

    Keys are (r_A, r_B) with r in {+1, -1}.
    """
    ab = float(np.dot(unit(a), unit(b)))
    same = (1 - ab) / 4
    diff = (1 + ab) / 4
    return {(1, 1): same, (-1, -1): same, (1, -1): diff, (-1, 1): diff}


def werner_state(w: float) -> DenseOperator:
    """w |Psi-><Psi-| + (1-w) 1/4."""
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"Werner weight must lie in [0, 1], got {w}")
    singlet = bell_state("psi-").proj()
    return w * singlet + (1 - w) * identity((2, 2)) / 4


def ghz_state() -> PureState:
    amps = np.zeros(8, dtype=complex)
    amps[0] = amps[7] = 1 / np.sqrt(2)
    return PureState(amps, (2, 2, 2))


@dataclass(frozen=True)
class UpbConstruction:
    product_states: tuple[PureState, ...]
    completion: np.ndarray  # orthonormal columns spanning the complement (8 x 4)
    rho: DenseOperator


def upb_construction() -> UpbConstruction:
    """Three-qubit unextendible product basis and the normalized projector onto its complement."""
    phis = (
        kron(ZERO, ONE, PLUS),
        kron(ONE, PLUS, ZERO),
        kron(PLUS, ZERO, ONE),
        kron(MINUS, MINUS, MINUS),
    )
    vecs = np.column_stack([p.amplitudes for p in phis])
    # Gram-Schmidt against the product vectors, then over the standard basis
    q, _ = np.linalg.qr(np.column_stack([vecs, np.eye(8)]))
    completion = q[:, 4:8]
    p_upb = sum(p.proj().data for p in phis)
    rho = DenseOperator((np.eye(8) - p_upb) / 4, (2, 2, 2))
    return UpbConstruction(phis, completion, rho)


def cyclic_shift(x):
    """Move qubit order (A, B, C) -> (B, C, A)."""
    return permute(x, [1, 2, 0])


# -- named-state registry (CLI) --------------------------------------------

def named_state(name: str):
    """Resolve psi-minus, phi-plus, psi-plus, phi-minus, werner:w, ghz, upb-rho."""
    key = name.strip().lower()
    if key.startswith("werner:"):
        return werner_state(float(key.split(":", 1)[1]))
    if key == "ghz":
        return ghz_state()
    if key == "upb-rho":
        return upb_construction().rho
    try:
        return bell_state(key)
    except ValueError:
        raise ValueError(
            f"unknown state name {name!r}; try psi-minus, phi-plus, werner:0.5, ghz, upb-rho"
        ) from None
