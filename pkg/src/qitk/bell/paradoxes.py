"""Local-variable models, GHZ, the detection loophole, box cloning and a nonlocal game."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .. import qubits as qb
from ..sampling import _rng, random_directions
from .tables import Behavior, is_no_signaling


def singlet_lv_model(a, m, samples: int = 10**6, rng=0) -> float:
    """Monte-Carlo mean of r = sign((m - lam).a) with lam uniform on the unit sphere.

    Reproduces the quantum expectation m.a of a qubit with Bloch vector m.
    """
    a = qb.unit(a)
    m = np.asarray(m, dtype=float)
    if np.linalg.norm(m) > 1 + 1e-9:
        raise ValueError("Bloch vector must lie in the unit ball")
    lam = random_directions(samples, _rng(rng))
    r = np.where((m - lam) @ a >= 0, 1.0, -1.0)
    return float(r.mean())


# -- GHZ ----------------------------------------------------------------------

GHZ_TERMS = ("XXX", "XYY", "YXY", "YYX")
GHZ_TARGETS = (1, -1, -1, -1)


@dataclass(frozen=True)
class GhzProof:
    expectations: dict[str, float]
    satisfying: int  # assignments meeting all four constraints
    best: int  # most constraints met by any assignment
    total: int
    constraint_product: set  # product of the four left-hand sides, over all assignments


def ghz_paradox() -> GhzProof:
    ops = {"X": qb.SX, "Y": qb.SY}
    psi = qb.ghz_state()
    expect = {}
    for term in GHZ_TERMS:
        op = np.kron(np.kron(ops[term[0]], ops[term[1]]), ops[term[2]])
        expect[term] = float(np.real(np.vdot(psi.amplitudes, op @ psi.amplitudes)))
    satisfying, best, products = 0, 0, set()
    for vals in itertools.product((1, -1), repeat=6):
        v = {"AX": vals[0], "AY": vals[1], "BX": vals[2], "BY": vals[3], "CX": vals[4], "CY": vals[5]}
        lhs = [v["A" + t[0]] * v["B" + t[1]] * v["C" + t[2]] for t in GHZ_TERMS]
        met = sum(x == y for x, y in zip(lhs, GHZ_TARGETS))
        satisfying += met == 4
        best = max(best, met)
        products.add(int(np.prod(lhs)))
    return GhzProof(expect, satisfying, best, 64, products)


# -- detection loophole -----------------------------------------------------

@dataclass(frozen=True)
class DetectionResult:
    observed: float
    threshold: float | None  # efficiency above which the observed value exceeds 2


def detection_loophole(eta: float, s2: float = 2 * math.sqrt(2), s1: float = 0.0,
                       s0: float = 2.0) -> DetectionResult:
    """Observed CHSH when each detector fires with probability eta.

    Both fire with weight eta^2, one with 2 eta (1-eta), none with (1-eta)^2;
    the s_k are the CHSH values reached in each case.
    """
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"eta must lie in [0, 1], got {eta}")
    w = (eta**2, 2 * eta * (1 - eta), (1 - eta) ** 2)
    observed = w[0] * s2 + w[1] * s1 + w[2] * s0
    # observed(eta) - 2 as a polynomial in eta
    c2 = s2 - 2 * s1 + s0
    c1 = 2 * s1 - 2 * s0
    c0 = s0 - 2
    roots = np.roots([c2, c1, c0]) if abs(c2) > 1e-15 else np.roots([c1, c0])
    real = [float(r.real) for r in np.atleast_1d(roots) if abs(r.imag) < 1e-12 and -1e-12 <= r.real <= 1]
    thr = max(real) if real and s2 > 2 else None
    return DetectionResult(float(observed), thr)


# -- PR boxes cannot be cloned ------------------------------------------------

@dataclass(frozen=True)
class CloneRecord:
    distribution: np.ndarray  # P[a, b, b', x, y, y']
    xor_rule_holds: bool  # b xor b' = x (y xor y') whenever P > 0
    x_recovered: bool  # Bob reads x off (b, b', y, y') whenever y != y'
    same_input_equal: bool  # y = y' forces b = b'
    no_signaling: bool  # A versus (B, B') treated as two parties
    signaling_defect: float


def pr_clone_distribution() -> np.ndarray:
    """A tripartite box with a xor b = xy and a xor b' = xy', Alice's output uniform."""
    p = np.zeros((2, 2, 2, 2, 2, 2))
    for a, x, y, y2 in itertools.product(range(2), repeat=4):
        p[a, a ^ (x & y), a ^ (x & y2), x, y, y2] = 0.5
    return p


def pr_clone_signaling() -> CloneRecord:
    p = pr_clone_distribution()
    xor_ok = recovered = same_ok = True
    for a, b, b2, x, y, y2 in itertools.product(range(2), repeat=6):
        if p[a, b, b2, x, y, y2] == 0:
            continue
        xor_ok &= (b ^ b2) == (x & (y ^ y2))
        if y != y2:
            recovered &= (b ^ b2) == x
        else:
            same_ok &= b == b2
    # group (b, b') and (y, y') into one party with four outputs and four inputs
    q = p.reshape(2, 4, 2, 4)
    ok, defect = is_no_signaling(Behavior(q))
    return CloneRecord(p, bool(xor_ok), bool(recovered), bool(same_ok), ok, defect)


def pr_with_marginal(q: float) -> Behavior:
    """Box with a xor b = AB always and P(a=0) = q for both of Alice's inputs."""
    if not 0.0 <= q <= 1.0:
        raise ValueError("q must be a probability")
    p = np.zeros((2, 2, 2, 2))
    for a, A, B in itertools.product(range(2), repeat=3):
        p[a, a ^ (A & B), A, B] = q if a == 0 else 1 - q
    return Behavior(p)


# -- the same-input game ------------------------------------------------------

MAX_STRATEGIES = 10**7


def same_input_game(n_inputs: int, n_outputs: int) -> bool:
    """Can deterministic players output equal values exactly when their inputs are equal?

    A winning pair (f, g) needs f(x) = g(x) for every x, so g = f and only f
    is enumerated; f must also be injective.
    """
    if n_inputs < 1 or n_outputs < 1:
        raise ValueError("counts must be positive")
    if n_outputs ** (2 * n_inputs) > MAX_STRATEGIES:
        raise ValueError(f"strategy space {n_outputs}^{2 * n_inputs} is too large to search")
    for f in itertools.product(range(n_outputs), repeat=n_inputs):
        if all((f[x] == f[y]) == (x == y) for x in range(n_inputs) for y in range(n_inputs)):
            return True
    return False


def same_input_game_bruteforce(n_inputs: int, n_outputs: int) -> bool:
    """The same question answered by enumerating every pair (f, g)."""
    if n_outputs ** (2 * n_inputs) > MAX_STRATEGIES:
        raise ValueError("strategy space too large to search")
    funcs = list(itertools.product(range(n_outputs), repeat=n_inputs))
    xs = range(n_inputs)
    return any(all((f[x] == g[y]) == (x == y) for x in xs for y in xs) for f in funcs for g in funcs)
