"""Teleportation, entanglement swapping and repeater timing."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import qubits as qb
from .sampling import _rng
from .tensor import DenseOperator, DimensionError, PureState, as_operator, kron, partial_trace

# sigma_y tilde = -i sigma_y, real and orthogonal
SY_TILDE = np.array([[0, -1], [1, 0]], dtype=complex)

BRANCH_OPS = {
    "phi+": ("I", qb.I2),
    "phi-": ("sz", qb.SZ),
    "psi+": ("sx", qb.SX),
    "psi-": ("sy~", SY_TILDE),
}
OUTCOMES = tuple(BRANCH_OPS)


@dataclass(frozen=True)
class TeleportBranch:
    bell_outcome: str
    correction: str  # label of U_k; Bob applies U_k^dag
    probability: float
    conditional: PureState  # Bob's qubit before correction, U_k|psi>
    corrected: PureState


def _bell_matrix() -> np.ndarray:
    """Rows are <bell_k| in OUTCOMES order."""
    return np.array([qb.bell_state(k).amplitudes.conj() for k in OUTCOMES])


def teleport_decompose(psi: PureState) -> list[TeleportBranch]:
    """Split |psi>_A |Phi+>_BC over the Bell basis of AB."""
    if psi.side != 2:
        raise DimensionError("teleportation takes a single qubit")
    total = kron(psi, qb.bell_state("phi+")).amplitudes.reshape(4, 2)
    branches = []
    for row, k in zip(_bell_matrix(), OUTCOMES):
        label, u = BRANCH_OPS[k]
        c = row @ total  # unnormalized C amplitude for this outcome
        prob = float(np.vdot(c, c).real)
        cond = PureState(c / np.sqrt(prob))
        branches.append(TeleportBranch(k, label, prob, cond, PureState(u.conj().T @ cond.amplitudes)))
    return branches


def teleport_identity_residual(psi: PureState) -> float:
    """Max entrywise gap between |psi>|Phi+> and (1/2) sum_k |bell_k>(U_k|psi>)."""
    lhs = kron(psi, qb.bell_state("phi+")).amplitudes
    rhs = sum(
        0.5 * np.kron(qb.bell_state(k).amplitudes, u @ psi.amplitudes)
        for k, (_, u) in BRANCH_OPS.items()
    )
    return float(np.max(np.abs(lhs - rhs)))


@dataclass(frozen=True)
class TeleportResult:
    outcome: str
    probability: float
    state: DenseOperator  # Bob's corrected qubit, together with any reference systems


def teleport_run(state, rng=None, resource=None) -> TeleportResult:
    """Run one round of the protocol with a sampled Bell outcome.

    Parameters
    ----------
    state : PureState or DenseOperator
        Input. Its last tensor factor is the qubit to send; earlier factors are
        reference systems that stay untouched, which lets a purification carry
        a mixed input.
    rng : seed or Generator
        Source for the Bell-measurement outcome.
    resource : two-qubit state, optional
        Shared pair on (B, C); defaults to |Phi+>.

    Returns
    -------
    TeleportResult
        Outcome label, its probability, and the corrected state on
        (references..., C).
    """
    rng = _rng(rng)
    rho = as_operator(state)
    if rho.dims[-1] != 2:
        raise DimensionError("the teleported factor must be a qubit")
    res = as_operator(qb.bell_state("phi+") if resource is None else resource)
    if res.dims != (2, 2):
        raise DimensionError("resource must be a two-qubit state")
    ref_dims = rho.dims[:-1]
    r = int(np.prod(ref_dims)) if ref_dims else 1
    full = np.kron(rho.data, res.data)  # (R, A, B, C)
    t = full.reshape(r, 4, 2, r, 4, 2)
    bells = _bell_matrix()
    conds, probs = [], []
    for row in bells:
        # <bell|_AB rho |bell>_AB leaves an operator on (R, C)
        m = np.einsum("i,xiyzjw,j->xyzw", row, t, row.conj()).reshape(2 * r, 2 * r)
        probs.append(max(float(np.trace(m).real), 0.0))
        conds.append(m)
    probs = np.array(probs)
    k = int(rng.choice(4, p=probs / probs.sum()))
    _, u = BRANCH_OPS[OUTCOMES[k]]
    corr = np.kron(np.eye(r), u.conj().T)
    out = corr @ conds[k] @ corr.conj().T / probs[k]
    dims = ref_dims + (2,)
    return TeleportResult(OUTCOMES[k], float(probs[k]), DenseOperator(out, dims))


def teleport_average_fidelity(psi: PureState, resource=None) -> float:
    """Outcome-averaged fidelity sum_k p_k <psi|rho_k|psi> for a given resource."""
    rho = psi.proj().data
    res = as_operator(qb.bell_state("phi+") if resource is None else resource).data
    t = np.kron(rho, res).reshape(4, 2, 4, 2)
    f = 0.0
    for row, k in zip(_bell_matrix(), OUTCOMES):
        _, u = BRANCH_OPS[k]
        m = np.einsum("i,iajb,j->ab", row, t, row.conj())
        f += float(np.real(np.vdot(psi.amplitudes, u.conj().T @ m @ u @ psi.amplitudes)))
    return f


# -- entanglement swapping -------------------------------------------------

@dataclass
class _FourQubitRegister:
    """State of qubits (A, B, C, D) that records which qubits each operation touches."""

    amps: np.ndarray = field(default_factory=lambda: np.zeros(16, dtype=complex))
    log: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)

    def record(self, name: str, qubits: tuple[int, ...]):
        if 0 in qubits and 3 in qubits:
            raise AssertionError("an operation touched A and D jointly")
        self.log.append((name, qubits))


@dataclass(frozen=True)
class SwapResult:
    branches: dict[str, tuple[float, PureState]]  # outcome on BC -> (probability, AD state)
    ad_marginal: DenseOperator  # AD state averaged over outcomes
    log: tuple[tuple[str, tuple[int, ...]], ...]


def entanglement_swap() -> SwapResult:
    """Pairs Phi+ on (A,B) and (C,D); a Bell measurement on (B,C) entangles A with D."""
    reg = _FourQubitRegister()
    reg.record("prepare", (0, 1))
    reg.record("prepare", (2, 3))
    phi = qb.bell_state("phi+").amplitudes
    reg.amps = np.kron(phi, phi)
    reg.record("bell-measure", (1, 2))
    t = reg.amps.reshape(2, 2, 2, 2)  # a b c d
    branches = {}
    ad_avg = np.zeros((4, 4), dtype=complex)
    for k in OUTCOMES:
        bell = qb.bell_state(k).amplitudes.conj().reshape(2, 2)
        ad = np.einsum("bc,abcd->ad", bell, t).reshape(4)
        p = float(np.vdot(ad, ad).real)
        ad_avg += np.outer(ad, ad.conj())
        branches[k] = (p, PureState(ad / np.sqrt(p), (2, 2)))
    return SwapResult(branches, DenseOperator(ad_avg, (2, 2)), tuple(reg.log))


def ad_marginal_before_message() -> DenseOperator:
    """Reduced state of (A, D) straight after preparation."""
    phi = qb.bell_state("phi+")
    return partial_trace(kron(phi, phi), [0, 3])


# -- repeaters --------------------------------------------------------------

@dataclass(frozen=True)
class RepeaterTimes:
    direct: float
    one_repeater: float
    crossover: float  # below this transmission the repeater is faster


def repeater_time(t: float) -> RepeaterTimes:
    """Mean time to share a pair: 1/t directly, (3/2)/sqrt(t) with one repeater."""
    if not 0.0 < t <= 1.0:
        raise ValueError(f"transmission must lie in (0, 1], got {t}")
    # 1/t = 1.5/sqrt(t)  <=>  sqrt(t) = 1/1.5
    crossover = (1 / 1.5) ** 2
    return RepeaterTimes(1.0 / t, float(1.5 / np.sqrt(t)), crossover)
