"""Reference-number suite: recomputes every headline value and compares it with its known closed form."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import channels as ch
from . import discrimination as dsc
from . import entropy as ent
from . import qubits as qb
from . import teleport as tp
from .bell import paradoxes as px
from .bell import quantum as bq
from .bell import tables as bt
from .bell.polytope import local_membership
from .tensor import PureState, partial_trace, trace_norm

SQ2 = math.sqrt(2)


@dataclass(frozen=True)
class CheckLine:
    name: str
    expected: float
    computed: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(abs(self.expected - self.computed) <= self.tol)


def _bh_fidelity() -> float:
    psi = qb.spin_state(1.1, 0.4)
    return psi.fidelity(partial_trace(ch.bh_clone(psi), 0))


def _ex12_norm() -> float:
    r23, r13 = math.sqrt(2 / 3), math.sqrt(1 / 3)
    psi = PureState(r23 * np.kron(qb.ZERO.amplitudes, qb.PLUS.amplitudes)
                    + r13 * np.kron(qb.PLUS.amplitudes, qb.MINUS.amplitudes), (2, 2))
    return float(np.linalg.norm(qb.state_to_bloch(partial_trace(psi, 0))))


def _ex31_trace_norm(theta: float) -> float:
    a = PureState([math.cos(theta), math.sin(theta)])
    b = PureState([math.cos(theta), -math.sin(theta)])
    return trace_norm(a.proj() - b.proj())


def _collision_limit() -> float:
    rho, _ = ch.collision_iterate(qb.ONE.proj(), ch.CollisionParams(0.3, math.acos(0.99)), 2000)
    return float(rho.data[0, 0].real)


def _swap_phi_plus() -> float:
    _, state = tp.entanglement_swap().branches["phi+"]
    return state.fidelity(qb.bell_state("phi+"))


CHECKS: list[tuple[str, float, Callable[[], float], float]] = [
    ("bh-fidelity", 5 / 6, _bh_fidelity, 1e-10),
    ("universal-not-fidelity", 2 / 3,
     lambda: qb.perp(qb.spin_state(0.7, 2.0)).fidelity(ch.universal_not(qb.spin_state(0.7, 2.0))), 1e-10),
    ("trivial-clone-random", 0.75, lambda: ch.trivial_clone_fidelity("random-new-qubit"), 1e-12),
    ("trivial-clone-measure", 2 / 3, lambda: ch.trivial_clone_fidelity("measure-and-reprepare"), 1e-12),
    ("amplifier-fidelity", 5 / 6, ch.amplifier_fidelity, 1e-12),
    ("ex12-bloch-norm", math.sqrt(5) / 3, _ex12_norm, 1e-10),
    ("werner-marginal-x", 0.0,
     lambda: float(np.linalg.norm(qb.state_to_bloch(partial_trace(qb.werner_state(0.6), 0)))), 1e-12),
    ("collision-limit", 0.3, _collision_limit, 1e-6),
    ("teleport-branch-prob", 0.25, lambda: tp.teleport_decompose(qb.spin_state(1.0, 0.5))[3].probability,
     1e-12),
    ("swap-phi-plus", 1.0, _swap_phi_plus, 1e-12),
    ("repeater-t0.01", 15.0, lambda: tp.repeater_time(0.01).one_repeater, 1e-12),
    ("trace-norm-ex31", 2 * math.sin(0.6), lambda: _ex31_trace_norm(0.3), 1e-10),
    ("helstrom-ex31", 0.5 * (1 - math.sin(0.6)), lambda: dsc.helstrom(dsc.Ensemble([
        PureState([math.cos(0.3), math.sin(0.3)]), PureState([math.cos(0.3), -math.sin(0.3)])])).p_error,
     1e-10),
    ("usd-two-pure", 1 - math.cos(0.8), lambda: dsc.usd_two_pure(0.4).p_success, 1e-10),
    ("usd-time-bin", 1 - math.exp(-1), lambda: dsc.usd_time_bin(1.0).p_conclusive, 1e-8),
    ("usd-time-bin-eta", 1 - math.exp(-0.5), lambda: dsc.usd_time_bin(1.0, 0.5).p_conclusive, 1e-8),
    ("cond-entropy-phi+", -1.0, lambda: ent.conditional_entropy(qb.bell_state("phi+")), 1e-10),
    ("bb84-chi-0.11", ent.binary_entropy(0.11), lambda: ent.holevo_chi(ent.bb84_eve_ensemble(0.11)), 1e-10),
    ("tsirelson", 2 * SQ2,
     lambda: abs(bq.chsh_value(qb.bell_state("psi-"), *bq.optimal_singlet_settings())), 1e-10),
    ("tsirelson-s2", 8.0, lambda: bq.tsirelson_check(*bq.optimal_singlet_settings()).max_eig_s2, 1e-9),
    ("chsh-theta-pi/8", math.sqrt(6), lambda: bq.optimal_chsh_pure(math.pi / 8)[0], 1e-9),
    ("werner-chsh-threshold", 1 / SQ2, bq.werner_chsh_threshold, 1e-6),
    ("tch-pr", 0.5, lambda: bt.functional_value(bt.T_CH, bt.behavior_to_table(bt.pr_box())), 1e-10),
    ("tch-me", 1 / SQ2 - 0.5, lambda: bt.functional_value(bt.T_CH, bt.behavior_to_table(bq.me_behavior())),
     1e-10),
    ("pr-membership-violation", 0.5,
     lambda: local_membership(bt.behavior_to_table(bt.pr_box())).violation or 0.0, 1e-9),
    ("ch-facet-count", 8, lambda: len(bt.ch_symmetries()), 0),
    ("ghz-xxx", 1.0, lambda: px.ghz_paradox().expectations["XXX"], 1e-12),
    ("ghz-xyy", -1.0, lambda: px.ghz_paradox().expectations["XYY"], 1e-12),
    ("ghz-satisfying", 0, lambda: px.ghz_paradox().satisfying, 0),
    ("detection-threshold", 2 / (SQ2 + 1), lambda: px.detection_loophole(1.0).threshold, 1e-9),
    ("lv-model-mean", 0.5, lambda: px.singlet_lv_model([0, 0, 1], [0, 0, 0.5], 10**6, 0), 0.004),
    ("same-input-3-2", 0, lambda: float(px.same_input_game(3, 2)), 0),
]


def verify_paper() -> list[CheckLine]:
    return [CheckLine(name, float(exp), float(fn()), tol) for name, exp, fn, tol in CHECKS]
