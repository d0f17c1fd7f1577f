"""Quantum state discrimination: minimum error, unambiguous, pretty good, and the Chernoff exponent."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .tensor import (
    ATOL,
    ZERO_EIG,
    DenseOperator,
    DimensionError,
    PureState,
    as_operator,
    eig_hermitian,
    psd_power,
    require_density,
    support_projector,
    trace_norm,
)


@dataclass(frozen=True)
class Ensemble:
    states: tuple[DenseOperator, ...]
    priors: np.ndarray

    def __init__(self, states: Sequence, priors: Sequence[float] | None = None, tol: float = 1e-12):
        ops = tuple(require_density(as_operator(s)) for s in states)
        if not ops:
            raise ValueError("an ensemble needs at least one state")
        if any(o.dims != ops[0].dims for o in ops):
            raise DimensionError("ensemble states must share dims")
        p = np.full(len(ops), 1 / len(ops)) if priors is None else np.asarray(priors, dtype=float)
        if p.shape != (len(ops),):
            raise ValueError("one prior per state")
        if np.any(p < 0) or abs(p.sum() - 1) > tol:
            raise ValueError(f"priors must be nonnegative and sum to 1, got {p}")
        object.__setattr__(self, "states", ops)
        object.__setattr__(self, "priors", p)

    def average(self) -> DenseOperator:
        return sum((p * s for p, s in zip(self.priors, self.states)), 0 * self.states[0])


@dataclass(frozen=True)
class Povm:
    """Measurement in effect form. ``labels`` name the outcomes; None marks 'inconclusive'."""

    effects: tuple[DenseOperator, ...]
    labels: tuple

    def __init__(self, effects: Sequence, labels: Sequence | None = None, tol: float = ATOL):
        effs = tuple(as_operator(e) for e in effects)
        labs = tuple(range(len(effs))) if labels is None else tuple(labels)
        if len(labs) != len(effs):
            raise ValueError("one label per effect")
        for e in effs:
            if eig_hermitian(e, tol).eigenvalues[-1] < -tol:
                raise ValueError("POVM effect is not positive semidefinite")
        defect = completeness_defect(effs)
        if defect > tol:
            raise ValueError(f"POVM effects do not sum to identity (defect {defect:.3g})")
        object.__setattr__(self, "effects", effs)
        object.__setattr__(self, "labels", labs)

    def probabilities(self, rho) -> np.ndarray:
        rho = as_operator(rho)
        return np.array([e.expect(rho) for e in self.effects])

    def __len__(self):
        return len(self.effects)


def completeness_defect(effects) -> float:
    total = sum(as_operator(e).data for e in effects)
    return float(np.max(np.abs(total - np.eye(total.shape[0]))))


def trace_distance(rho, sigma) -> float:
    """(1/2) Tr|rho - sigma|."""
    rho, sigma = as_operator(rho), as_operator(sigma)
    if rho.side != sigma.side:
        raise DimensionError(f"dimension mismatch {rho.side} vs {sigma.side}")
    return 0.5 * trace_norm(DenseOperator(rho.data - sigma.data))


# -- minimum error ----------------------------------------------------------

@dataclass(frozen=True)
class HelstromResult:
    p_error: float
    povm: Povm

    @property
    def p_success(self) -> float:
        return 1 - self.p_error


def helstrom(e: Ensemble) -> HelstromResult:
    """Minimum-error measurement for two states: project on the sign eigenspaces of p1 rho1 - p2 rho2.

    Zero eigenvalues of the difference go to outcome 0; any split gives the
    same error.
    """
    if len(e.states) != 2:
        raise ValueError(f"Helstrom needs exactly two states, got {len(e.states)}")
    (r1, r2), (p1, p2) = e.states, e.priors
    m = DenseOperator(p1 * r1.data - p2 * r2.data)
    eig = eig_hermitian(m)
    v = eig.eigenvectors[:, eig.eigenvalues >= -ZERO_EIG]
    e1 = v @ v.conj().T
    e2 = np.eye(m.side) - e1
    p_err = 0.5 * (1 - float(np.sum(np.abs(eig.eigenvalues))))
    return HelstromResult(p_err, Povm([e1, e2], labels=(0, 1)))


def error_probability(e: Ensemble, povm: Povm) -> float:
    """Probability of a wrong guess when outcome k is read as state k."""
    ok = sum(p * povm.effects[k].expect(s) for k, (p, s) in enumerate(zip(e.priors, e.states)))
    return 1 - ok


# -- unambiguous discrimination --------------------------------------------

@dataclass(frozen=True)
class UsdTwoResult:
    states: tuple[PureState, PureState]
    kraus: tuple[np.ndarray, np.ndarray]  # A+, A-
    povm: Povm  # effects (+, -, inconclusive)
    p_success: float


def usd_two_pure(alpha: float) -> UsdTwoResult:
    """Unambiguous discrimination of cos(a)|H> +- sin(a)|V>, equal priors."""
    if not 0 < alpha < np.pi / 4:
        raise ValueError(f"alpha must lie in (0, pi/4), got {alpha}")
    c, s = np.cos(alpha), np.sin(alpha)
    plus, minus = PureState([c, s]), PureState([c, -s])
    plus_perp = np.array([s, -c])
    minus_perp = np.array([s, c])
    eta = 1 / (np.sqrt(2) * c)
    out_p = np.array([1, 1]) / np.sqrt(2)
    out_m = np.array([1, -1]) / np.sqrt(2)
    a_p = eta * np.outer(out_p, minus_perp)
    a_m = eta * np.outer(out_m, plus_perp)
    e_p = a_p.conj().T @ a_p
    e_m = a_m.conj().T @ a_m
    povm = Povm([e_p, e_m, np.eye(2) - e_p - e_m], labels=("+", "-", None))
    p = 0.5 * (povm.effects[0].expect(plus) + povm.effects[1].expect(minus))
    return UsdTwoResult((plus, minus), (a_p, a_m), povm, p)


@dataclass(frozen=True)
class UsdResult:
    povm: Povm  # N conclusive effects, then the inconclusive one (labelled None)
    success: np.ndarray  # per-state conclusive probability
    lam: float  # largest eigenvalue of sum_k P_k
    optimal: bool | None  # known optimum met (two states); None when no reference exists

    @property
    def p_success(self) -> float:
        return float(np.mean(self.success))


def usd_linear_independent(states: Sequence[PureState], max_cond: float = 1e8) -> UsdResult:
    """Unambiguous measurement from the reciprocal basis of linearly independent pure states."""
    psi = np.column_stack([np.asarray(s.amplitudes) for s in states])
    d, n = psi.shape
    if n > d:
        raise ValueError(f"{n} states in dimension {d} cannot be linearly independent")
    gram = psi.conj().T @ psi
    if np.linalg.cond(gram) > max_cond:
        raise ValueError("states are linearly dependent")
    phi = psi @ np.linalg.inv(gram)  # <phi_k|psi_j> = delta_kj
    phi = phi / np.linalg.norm(phi, axis=0)
    projs = [np.outer(phi[:, k], phi[:, k].conj()) for k in range(n)]
    lam = float(np.linalg.eigvalsh(sum(projs))[-1])
    effects = [p / lam for p in projs]
    rest = np.eye(d) - sum(effects)
    povm = Povm(effects + [rest], labels=list(range(n)) + [None])
    success = np.array([povm.effects[k].expect(states[k]) for k in range(n)])
    optimal = None
    if n == 2:
        best = 1 - abs(np.vdot(psi[:, 0], psi[:, 1]))
        optimal = bool(abs(success.mean() - best) < 1e-9)
    return UsdResult(povm, success, lam, optimal)


def cross_firing(povm: Povm, states: Sequence[PureState]) -> np.ndarray:
    """Matrix of Tr(E_k psi_j) over the conclusive outcomes k and the states j."""
    conclusive = [e for e, lab in zip(povm.effects, povm.labels) if lab is not None]
    return np.array([[e.expect(s) for s in states] for e in conclusive])


@dataclass(frozen=True)
class TimeBinReport:
    p_conclusive: float
    unambiguous: bool
    p_error: float  # wrong conclusive answers of the naive click-reading strategy
    cutoff: int
    truncated_norm: float


def default_cutoff(alpha_amp: complex) -> int:
    n = abs(alpha_amp) ** 2
    return math.ceil(n + 10 * math.sqrt(n) + 20)


def coherent_amplitudes(alpha_amp: complex, cutoff: int) -> np.ndarray:
    """Fock amplitudes e^{-|a|^2/2} a^n / sqrt(n!) for n = 0..cutoff."""
    c = np.empty(cutoff + 1, dtype=complex)
    c[0] = np.exp(-abs(alpha_amp) ** 2 / 2)
    for n in range(1, cutoff + 1):
        c[n] = c[n - 1] * alpha_amp / np.sqrt(n)
    return c


def usd_time_bin(alpha_amp: complex, detector_eta: float = 1.0, dark_prob: float = 0.0,
                 cutoff: int | None = None) -> TimeBinReport:
    """Tell |alpha>|0> from |0>|alpha> by watching which time bin clicks.

    A click in a bin that should be empty can only come from a dark count, so
    with ``dark_prob > 0`` conclusive answers may be wrong. The naive strategy
    names the bin that clicked and flips a fair coin on a double click.
    """
    for name, v in (("detector_eta", detector_eta), ("dark_prob", dark_prob)):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {v}")
    cutoff = default_cutoff(alpha_amp) if cutoff is None else int(cutoff)
    c = coherent_amplitudes(alpha_amp, cutoff)
    weights = np.abs(c) ** 2
    norm = float(weights.sum())
    if norm < 1 - 1e-10:
        raise ValueError(f"cutoff {cutoff} keeps only {norm:.12f} of the state norm")
    # each photon is missed independently with probability 1 - eta
    miss = float(np.sum(weights * (1 - detector_eta) ** np.arange(cutoff + 1)))
    if dark_prob == 0:
        return TimeBinReport(1 - miss, True, 0.0, cutoff, norm)
    quiet_signal = (1 - dark_prob) * miss
    p_conclusive = 1 - quiet_signal * (1 - dark_prob)
    p_error = dark_prob * quiet_signal + 0.5 * dark_prob * (1 - quiet_signal)
    return TimeBinReport(p_conclusive, False, p_error, cutoff, norm)


# -- pretty good measurement -----------------------------------------------

def pgm(e: Ensemble, tol: float = ATOL) -> Povm:
    """Square-root measurement E_k = p_k M^{-1/2} rho_k M^{-1/2} with M the average state.

    M^{-1/2} acts on the support of M only. If M is rank deficient an extra
    effect (labelled None) covers the orthogonal complement.
    """
    m = e.average()
    inv_sqrt = psd_power(m, -0.5).data
    supp = support_projector(m).data
    for k, (p, s) in enumerate(zip(e.priors, e.states)):
        outside = float(np.real(np.trace(s.data @ (np.eye(m.side) - supp))))
        if outside > tol:
            raise ValueError(f"state {k} has weight {outside:.3g} outside the support of the average")
    effects = [p * inv_sqrt @ s.data @ inv_sqrt for p, s in zip(e.priors, e.states)]
    labels: list = list(range(len(effects)))
    off = np.eye(m.side) - supp
    if np.max(np.abs(off)) > tol:
        effects.append(off)
        labels.append(None)
    return Povm(effects, labels=labels)


# -- Chernoff ---------------------------------------------------------------

_GOLDEN = (math.sqrt(5) - 1) / 2


def chernoff_q(rho0, rho1, s: float) -> float:
    """Tr(rho0^s rho1^(1-s)) with powers taken on the supports."""
    a = psd_power(rho0, s).data
    b = psd_power(rho1, 1 - s).data
    return float(np.real(np.trace(a @ b)))


def chernoff_exponent(rho0, rho1, tol: float = 1e-8) -> float:
    """xi = -ln min_s Tr(rho0^s rho1^(1-s)); errors decay like exp(-xi N).

    Returns math.inf when the supports are orthogonal.
    """
    rho0, rho1 = require_density(rho0), require_density(rho1)
    if rho0.side != rho1.side:
        raise DimensionError("states must share a dimension")
    grid = np.linspace(0.0, 1.0, 101)
    vals = [chernoff_q(rho0, rho1, s) for s in grid]
    i = int(np.argmin(vals))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, 100)]
    f = lambda s: chernoff_q(rho0, rho1, s)  # noqa: E731
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 < f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = f(x2)
    qmin = min(vals[i], f1, f2)
    if qmin <= ZERO_EIG:
        return math.inf
    return max(-math.log(min(qmin, 1.0)), 0.0)


def tensor_power_error(rho0, rho1, n: int) -> float:
    """Helstrom error for N copies with equal priors, by exact tensor powers."""
    a, b = as_operator(rho0).data, as_operator(rho1).data
    an, bn = a, b
    for _ in range(n - 1):
        an, bn = np.kron(an, a), np.kron(bn, b)
    return 0.5 * (1 - 0.5 * trace_norm(DenseOperator(an - bn)))
